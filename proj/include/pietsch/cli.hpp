#pragma once

// Command front end shared by the binary and the in-process tests. Every
// command loads JSON documents, runs the solvers and writes machine-readable
// artifacts; exit codes are a stable scripting contract:
//   0 success, 2 input error, 3 tolerance failure, 4 non-convergence.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pietsch/corpus.hpp"
#include "pietsch/json_io.hpp"

namespace pietsch::cli {

enum class Command { Validate, Pi, Measure, Verify, Duality, Bruteforce, Exchange, Suite };

struct RunConfig {
    Command command = Command::Validate;
    std::string input;
    std::string output;       // empty: print to stdout
    std::string certificate;  // verify only
    std::optional<double> tol;
    std::uint64_t seed = 1;
    std::optional<int> max_iter;
    std::string oracle;  // exchange override
    long long bound = 5; // bruteforce multiplicity bound
};

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitToleranceFailure = 3;
constexpr int kExitNonConvergence = 4;

namespace detail {

inline void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
    if (config.output.empty()) {
        out << content;
        if (!content.empty() && content.back() != '\n') out << "\n";
    } else {
        atomic_write_file(config.output, content);
    }
}

inline int run_validate(const RunConfig& config, std::ostream& out) {
    const json doc = load_json_file(config.input);
    const std::string kind = doc.value("kind", "instance");
    json report{{"schema_version", 1}, {"kind", "validate_report"}, {"input_kind", kind}};
    bool clean = true;
    if (kind == "instance") {
        const SummingInstance inst = instance_from_json(doc);
        report["k"] = inst.k_count();
        report["m"] = inst.pair_count();
        report["p"] = inst.p();
        report["schema_ok"] = true;
        report["axioms"] = "not applicable (instance carries evaluated numbers only)";
    } else if (kind == "family_spec") {
        const SummingInstance inst = build_from_family_spec(doc);
        report["k"] = inst.k_count();
        report["m"] = inst.pair_count();
        report["family"] = inst.family();
        report["schema_ok"] = true;
        const AxiomProbe probe = axiom_probe_from_family_spec(doc, 100, config.seed);
        const AxiomReport axioms = validate_axioms(probe, default_eta_grid());
        report["null_element_ok"] = axioms.null_element_ok;
        report["r_subhomogeneous_ok"] = axioms.r_subhomogeneous_ok;
        report["s_superhomogeneous_ok"] = axioms.s_superhomogeneous_ok;
        report["continuity"] = axioms.continuity_note;
        report["violations"] = json::array();
        for (const auto& v : axioms.violations)
            report["violations"].push_back({{"axiom", v.axiom},
                                            {"sample", v.sample},
                                            {"eta", v.eta},
                                            {"lhs", v.lhs},
                                            {"rhs", v.rhs}});
        report["invalid_samples"] = axioms.invalid_samples;
        clean = axioms.all_ok();
    } else {
        throw std::invalid_argument("validate: unsupported kind \"" + kind + "\"");
    }
    report["clean"] = clean;
    emit(config, report.dump(2), out);
    return clean ? kExitOk : kExitToleranceFailure;
}

inline int run_pi(const RunConfig& config, std::ostream& out) {
    const SummingInstance inst = load_instance_or_spec(load_json_file(config.input));
    const SummingResult result = summing_constant(inst);
    json doc = summing_result_to_json(result);
    doc["instance_hash"] = instance_hash(inst);
    emit(config, doc.dump(2), out);
    return kExitOk;
}

inline int run_measure(const RunConfig& config, std::ostream& out) {
    const SummingInstance inst = load_instance_or_spec(load_json_file(config.input));
    const DominationResult result = dominating_measure(inst);
    if (!result.summing) {
        json doc{{"schema_version", 1},
                 {"kind", "certificate"},
                 {"summing", false},
                 {"diagnostic",
                  "not summing: some pair has positive s but a zero r column"}};
        emit(config, doc.dump(2), out);
        return kExitOk;
    }
    json doc = certificate_to_json(result.certificate);
    doc["summing"] = true;
    emit(config, doc.dump(2), out);
    return kExitOk;
}

inline int run_verify(const RunConfig& config, std::ostream& out) {
    const SummingInstance inst = load_instance_or_spec(load_json_file(config.input));
    const json cert_doc = load_json_file(config.certificate);
    const DominationCertificate cert = certificate_from_json(cert_doc);
    if (!cert.instance_hash.empty() && cert.instance_hash != instance_hash(inst))
        throw std::invalid_argument(
            "verify: certificate instance_hash does not match the instance");
    const double tol = config.tol.value_or(default_certificate_tol(inst));
    const CertificateValidity validity = verify_certificate(inst, cert, tol);
    json doc = validity_to_json(validity);
    doc["tol"] = tol;
    emit(config, doc.dump(2), out);
    return validity.valid ? kExitOk : kExitToleranceFailure;
}

inline int run_duality(const RunConfig& config, std::ostream& out) {
    const SummingInstance inst = load_instance_or_spec(load_json_file(config.input));
    const EquivalenceReport report = check_equivalence(inst, config.tol.value_or(1e-7));
    emit(config, equivalence_report_to_json(report).dump(2), out);
    return report.within_tol ? kExitOk : kExitToleranceFailure;
}

inline int run_bruteforce(const RunConfig& config, std::ostream& out) {
    const SummingInstance inst = load_instance_or_spec(load_json_file(config.input));
    const MultisetSearchReport report = pi_by_multisets(inst, config.bound);
    emit(config, multiset_report_to_json(report).dump(2), out);
    return kExitOk;
}

inline int run_exchange(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const json doc = load_json_file(config.input);
    if (doc.value("kind", "") != "exchange_problem")
        throw std::invalid_argument("exchange: kind is not \"exchange_problem\"");
    const double p = doc.at("p").get<double>();
    const std::string oracle_name =
        !config.oracle.empty() ? config.oracle : doc.value("oracle", "circle");
    const double gap_tol = config.tol.value_or(doc.value("gap_tol", 1e-6));
    const int max_iter = config.max_iter.value_or(doc.value("max_iter", 200));

    KOracle oracle;
    Vec s_vector;
    std::vector<KPoint> seeds;
    if (oracle_name == "circle") {
        const auto tests = pietsch::detail::vectors_from_json(doc.at("test_vectors"), "test_vectors");
        Vec scalars = doc.contains("scalars") ? doc.at("scalars").get<Vec>()
                                              : Vec(tests.size(), 1.0);
        if (scalars.size() != tests.size())
            throw std::invalid_argument("exchange: scalars length " +
                                        std::to_string(scalars.size()) +
                                        " does not match " +
                                        std::to_string(tests.size()) + " test vectors");
        Matrix op = doc.contains("matrix")
                        ? Matrix::from_rows(
                              pietsch::detail::vectors_from_json(doc.at("matrix"), "matrix"))
                        : Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
        s_vector.resize(tests.size());
        for (std::size_t j = 0; j < tests.size(); ++j)
            s_vector[j] = std::abs(scalars[j]) *
                          vector_norm(pietsch::detail::apply_matrix(op, tests[j]));
        oracle = make_circle_oracle(tests, scalars, p);
        Vec seed_angles = doc.value("seed_angles", Vec{0.0});
        for (double theta : seed_angles) {
            KPoint pt;
            char buf[48];
            std::snprintf(buf, sizeof buf, "seed theta=%.12f", theta);
            pt.label = buf;
            const Vec phi = {std::cos(theta), std::sin(theta)};
            for (std::size_t j = 0; j < tests.size(); ++j)
                pt.r_row.push_back(std::abs(scalars[j]) * std::abs(dot(phi, tests[j])));
            seeds.push_back(std::move(pt));
        }
    } else if (oracle_name == "finite") {
        s_vector = doc.at("s_vector").get<Vec>();
        std::vector<KPoint> points;
        for (const auto& pj : doc.at("points")) {
            points.push_back({pj.value("label", ""), pj.at("r_row").get<Vec>()});
            if (points.back().r_row.size() != s_vector.size())
                throw std::invalid_argument(
                    "exchange: point \"" + points.back().label + "\" has r_row length " +
                    std::to_string(points.back().r_row.size()) + ", expected " +
                    std::to_string(s_vector.size()));
        }
        const auto seed_indices =
            doc.value("seed_indices", std::vector<std::size_t>{0});
        for (std::size_t idx : seed_indices) {
            if (idx >= points.size())
                throw std::invalid_argument("exchange: seed index out of range");
            seeds.push_back(points[idx]);
        }
        oracle = make_finite_oracle(std::move(points), p);
    } else {
        throw std::invalid_argument("exchange: unknown oracle \"" + oracle_name +
                                    "\" (built-ins: circle, finite)");
    }

    const ExchangeResult result =
        solve_with_oracle(s_vector, p, oracle, seeds, gap_tol, max_iter);
    std::ostringstream lines;
    history_to_jsonl(result.history, lines);
    emit(config, lines.str(), out);
    err << exchange_result_to_json(result).dump(2) << "\n";
    if (result.status == "converged" || result.status == "not_summing") return kExitOk;
    return kExitNonConvergence;
}

inline int run_suite(const RunConfig& config, std::ostream& out) {
    const double tol = config.tol.value_or(1e-7);
    const std::vector<CorpusEntry> corpus = make_suite_corpus(config.seed);
    std::ostringstream csv;
    csv << "family,m,k,p,pi,c,gap,status\n";
    bool all_ok = true;
    for (const auto& entry : corpus) {
        const EquivalenceReport rep = check_equivalence(entry.instance, tol);
        bool ok = rep.within_tol;
        if (rep.summing) {
            const DominationResult dm = dominating_measure(entry.instance);
            ok = ok && verify_certificate(entry.instance, dm.certificate,
                                          default_certificate_tol(entry.instance))
                           .valid;
        }
        all_ok = all_ok && ok;
        csv << entry.name << "," << entry.instance.pair_count() << ","
            << entry.instance.k_count() << "," << format_g17(entry.instance.p()) << ","
            << format_g17(rep.pi) << "," << format_g17(rep.c) << ","
            << format_g17(rep.gap) << "," << (ok ? "ok" : "FAIL") << "\n";
    }
    emit(config, csv.str(), out);
    return all_ok ? kExitOk : kExitToleranceFailure;
}

}  // namespace detail

inline int run(const RunConfig& config, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    try {
        switch (config.command) {
            case Command::Validate: return detail::run_validate(config, out);
            case Command::Pi: return detail::run_pi(config, out);
            case Command::Measure: return detail::run_measure(config, out);
            case Command::Verify: return detail::run_verify(config, out);
            case Command::Duality: return detail::run_duality(config, out);
            case Command::Bruteforce: return detail::run_bruteforce(config, out);
            case Command::Exchange: return detail::run_exchange(config, out, err);
            case Command::Suite: return detail::run_suite(config, out);
        }
        err << "error: unknown command\n";
        return kExitInputError;
    } catch (const IterationLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed document: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    }
}

}  // namespace pietsch::cli
