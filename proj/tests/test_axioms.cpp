#include <catch2/catch_amalgamated.hpp>

#include "pietsch/axioms.hpp"

using namespace pietsch;

namespace {

/// Hand-built probe for the linear kernel R = |lambda||phi(x)|,
/// S = |lambda|||T x|| with T = diag(2, 1) on random samples.
AxiomProbe linear_probe(std::size_t samples, std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    auto phis = std::make_shared<std::vector<Vec>>();
    auto xs = std::make_shared<std::vector<Vec>>();
    auto lambdas = std::make_shared<Vec>();
    for (std::size_t t = 0; t < samples; ++t) {
        Vec phi = {normal(*rng), normal(*rng)};
        const double n = vector_norm(phi);
        if (n > 0) { phi[0] /= n; phi[1] /= n; }
        phis->push_back(phi);
        xs->push_back({uniform(*rng, -2.0, 2.0), uniform(*rng, -2.0, 2.0)});
        lambdas->push_back(uniform(*rng, -2.0, 2.0));
    }
    AxiomProbe probe;
    probe.sample_count = samples;
    probe.r_eval = [=](std::size_t t, double eta) {
        return std::abs(eta * (*lambdas)[t]) * std::abs(dot((*phis)[t], (*xs)[t]));
    };
    probe.s_eval = [=](std::size_t t, double eta) {
        const Vec tx = {2.0 * (*xs)[t][0], (*xs)[t][1]};
        return std::abs(eta * (*lambdas)[t]) * vector_norm(tx);
    };
    probe.r_null = [=](std::size_t t) {
        return std::abs((*lambdas)[t]) * std::abs(dot((*phis)[t], Vec{0.0, 0.0}));
    };
    probe.s_null = [=](std::size_t) { return 0.0; };
    return probe;
}

}  // namespace

TEST_CASE("linear kernels satisfy all three axioms", "[axioms]") {
    auto probe = linear_probe(120, 555);
    auto report = validate_axioms(probe, default_eta_grid());
    CHECK(report.all_ok());
    CHECK(report.violations.empty());
    CHECK(report.invalid_samples.empty());
    CHECK(report.continuity_note == "not applicable (finite K)");
}

TEST_CASE("a quadratically scaling S is flagged", "[axioms]") {
    auto probe = linear_probe(50, 556);
    auto base = probe.s_eval;
    probe.s_eval = [base](std::size_t t, double eta) {
        return eta * eta * base(t, 1.0);  // S(f, x, eta b) = eta^2 S(f, x, b)
    };
    auto report = validate_axioms(probe, default_eta_grid());
    CHECK_FALSE(report.s_superhomogeneous_ok);
    CHECK(report.r_subhomogeneous_ok);
    CHECK_FALSE(report.violations.empty());
    CHECK(report.violations.front().axiom == "s_superhomogeneous");
    CHECK(report.violations.front().eta > 0.0);
    CHECK(report.violations.front().eta < 1.0);
}

TEST_CASE("a superlinear R is flagged", "[axioms]") {
    auto probe = linear_probe(50, 557);
    auto base = probe.r_eval;
    probe.r_eval = [base](std::size_t t, double eta) {
        return std::sqrt(eta) * base(t, 1.0);  // R(phi, x, eta b) = sqrt(eta) R
    };
    auto report = validate_axioms(probe, default_eta_grid());
    CHECK_FALSE(report.r_subhomogeneous_ok);
    CHECK(report.s_superhomogeneous_ok);
}

TEST_CASE("null element violations are reported", "[axioms]") {
    auto probe = linear_probe(20, 558);
    probe.s_null = [](std::size_t) { return 0.25; };
    auto report = validate_axioms(probe, default_eta_grid());
    CHECK_FALSE(report.null_element_ok);
    CHECK_FALSE(report.all_ok());
}

TEST_CASE("bad evaluator output marks the sample invalid without aborting",
          "[axioms]") {
    auto probe = linear_probe(30, 559);
    auto base = probe.r_eval;
    probe.r_eval = [base](std::size_t t, double eta) {
        if (t == 7) return std::nan("");
        if (t == 11) return -1.0;
        return base(t, eta);
    };
    auto report = validate_axioms(probe, default_eta_grid());
    REQUIRE(report.invalid_samples.size() == 2);
    CHECK(report.invalid_samples[0] == 7);
    CHECK(report.invalid_samples[1] == 11);
    CHECK(report.all_ok());  // remaining samples are clean
}

TEST_CASE("eta grid outside the unit interval is rejected", "[axioms]") {
    auto probe = linear_probe(5, 560);
    CHECK_THROWS_AS(validate_axioms(probe, {0.0, 1.5}), std::invalid_argument);
}

TEST_CASE("report consistency: booleans match the violation list", "[axioms]") {
    auto good = validate_axioms(linear_probe(40, 561), default_eta_grid());
    CHECK(good.all_ok() == good.violations.empty());
    auto probe = linear_probe(40, 562);
    auto base = probe.s_eval;
    probe.s_eval = [base](std::size_t t, double eta) { return eta * eta * base(t, 1.0); };
    auto bad = validate_axioms(probe, default_eta_grid());
    CHECK(bad.all_ok() == bad.violations.empty());
}
