// pietsch-lab: compute abstract p-summing constants and Pietsch-type
// domination certificates on finite (or cutting-plane discretized) instances.

#include <CLI11.hpp>

#include "pietsch/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Numerical laboratory for abstract p-summing constants and Pietsch-type "
        "domination certificates"};
    app.require_subcommand(1);

    pietsch::cli::RunConfig config;
    double tol = 0.0;
    int max_iter = 0;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("-i,--input", config.input, "input JSON document");
        if (needs_input) in->required();
        sub->add_option("-o,--output", config.output,
                        "output path (omit to print to stdout)");
        sub->add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
        sub->add_option("--seed", config.seed, "random seed for sampling");
        sub->add_option("--max-iter", max_iter, "iteration cap override")
            ->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand(
        "validate", "check an instance or family spec (schema + structural axioms)");
    add_common(validate, true);
    auto* pi = app.add_subcommand(
        "pi", "compute the summing constant and an extremal witness");
    add_common(pi, true);
    auto* measure = app.add_subcommand(
        "measure", "compute the dominating probability measure certificate");
    add_common(measure, true);
    auto* verify = app.add_subcommand(
        "verify", "check a certificate file against an instance file");
    add_common(verify, true);
    verify->add_option("-c,--certificate", config.certificate, "certificate JSON file")
        ->required();
    auto* duality = app.add_subcommand(
        "duality", "compare the primal constant with the dual certificate constant");
    add_common(duality, true);
    auto* bruteforce = app.add_subcommand(
        "bruteforce", "reference search over integer repetition multisets");
    add_common(bruteforce, true);
    bruteforce->add_option("--bound", config.bound, "largest multiplicity per pair")
        ->check(CLI::PositiveNumber);
    auto* exchange = app.add_subcommand(
        "exchange", "cutting-plane solve against a built-in K oracle");
    add_common(exchange, true);
    exchange->add_option("--oracle", config.oracle, "oracle name (circle, finite)");
    auto* suite = app.add_subcommand(
        "suite", "run the built-in corpus and write a CSV summary");
    add_common(suite, false);

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) config.command = pietsch::cli::Command::Validate;
    if (pi->parsed()) config.command = pietsch::cli::Command::Pi;
    if (measure->parsed()) config.command = pietsch::cli::Command::Measure;
    if (verify->parsed()) config.command = pietsch::cli::Command::Verify;
    if (duality->parsed()) config.command = pietsch::cli::Command::Duality;
    if (bruteforce->parsed()) config.command = pietsch::cli::Command::Bruteforce;
    if (exchange->parsed()) config.command = pietsch::cli::Command::Exchange;
    if (suite->parsed()) config.command = pietsch::cli::Command::Suite;

    if (tol > 0.0) config.tol = tol;
    if (max_iter > 0) config.max_iter = max_iter;

    return pietsch::cli::run(config);
}
