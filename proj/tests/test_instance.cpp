#include <catch2/catch_amalgamated.hpp>

#include "pietsch/domination.hpp"
#include "pietsch/instance.hpp"
#include "support.hpp"

using namespace pietsch;
using Catch::Approx;

TEST_CASE("minimal 1x1 instance builds", "[instance]") {
    auto inst = SummingInstance::build(Matrix::from_rows({{1.0}}), {1.0}, 1.0);
    CHECK(inst.k_count() == 1);
    CHECK(inst.pair_count() == 1);
    CHECK(inst.p() == 1.0);
    CHECK(inst.k_labels()[0] == "K0");
}

TEST_CASE("zero mapping is a valid instance", "[instance]") {
    auto inst =
        SummingInstance::build(Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}), {0.0, 0.0}, 2.0);
    CHECK(inst.s_all_zero());
}

TEST_CASE("construction rejects bad input with the offending index", "[instance]") {
    CHECK_THROWS_WITH(
        SummingInstance::build(Matrix::from_rows({{1.0, -0.1}}), {1.0, 1.0}, 1.0),
        Catch::Matchers::ContainsSubstring("(0,1)"));
    CHECK_THROWS_AS(SummingInstance::build(Matrix::from_rows({{1.0}}), {1.0}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(SummingInstance::build(Matrix::from_rows({{1.0}}), {1.0, 2.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        SummingInstance::build(Matrix::from_rows({{1.0}}), {std::nan("")}, 1.0),
        std::invalid_argument);
}

TEST_CASE("null pair must be an all-zero column", "[instance]") {
    InstanceMetadata meta;
    meta.null_pair = 1;
    CHECK_NOTHROW(SummingInstance::build(Matrix::from_rows({{1.0, 0.0}}), {1.0, 0.0},
                                         2.0, meta));
    CHECK_THROWS_AS(SummingInstance::build(Matrix::from_rows({{1.0, 0.5}}), {1.0, 0.0},
                                           2.0, meta),
                    std::invalid_argument);
}

TEST_CASE("lhs_rhs worked example", "[instance]") {
    auto inst =
        SummingInstance::build(Matrix::from_rows({{1.0, 2.0}, {3.0, 1.0}}), {2.0, 2.0}, 1.0);
    auto [lhs, rhs] = lhs_rhs(inst, {1.0, 1.0});
    CHECK(lhs == Approx(4.0));
    CHECK(rhs == Approx(4.0));  // max(1+2, 3+1)
}

TEST_CASE("lhs_rhs edge cases", "[instance]") {
    auto inst =
        SummingInstance::build(Matrix::from_rows({{1.0, 2.0}, {3.0, 1.0}}), {2.0, 2.0}, 1.0);
    auto [lhs0, rhs0] = lhs_rhs(inst, {0.0, 0.0});
    CHECK(lhs0 == 0.0);
    CHECK(rhs0 == 0.0);

    InstanceMetadata meta;
    meta.null_pair = 0;
    auto null_only = SummingInstance::build(Matrix::from_rows({{0.0}}), {0.0}, 2.0, meta);
    auto [lhsn, rhsn] = lhs_rhs(null_only, {1.0});
    CHECK(lhsn == 0.0);
    CHECK(rhsn == 0.0);

    CHECK_THROWS_AS(lhs_rhs(inst, {1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(lhs_rhs(inst, {1.0}), std::invalid_argument);
}

TEST_CASE("lhs_rhs scales linearly in the multiplicities", "[instance][property]") {
    std::mt19937_64 rng(881100);
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = testsupport::random_instance(rng, 6, 6);
        Vec w(inst.pair_count());
        for (double& x : w) x = uniform(rng, 0.0, 3.0);
        const double t = uniform(rng, 0.0, 4.0);
        Vec tw = w;
        for (double& x : tw) x *= t;
        auto [lhs, rhs] = lhs_rhs(inst, w);
        auto [lhs_t, rhs_t] = lhs_rhs(inst, tw);
        CHECK(lhs_t == Approx(t * lhs).margin(1e-12 * (1.0 + lhs)));
        CHECK(rhs_t == Approx(t * rhs).margin(1e-12 * (1.0 + rhs)));
    }
}

TEST_CASE("adding a K row can only raise the rhs", "[instance][property]") {
    std::mt19937_64 rng(881101);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = testsupport::random_instance(rng, 5, 5);
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < inst.k_count(); ++i)
            rows.push_back(inst.r_matrix().row(i));
        Vec extra(inst.pair_count());
        for (double& x : extra) x = uniform(rng, 0.0, 2.0);
        rows.push_back(extra);
        auto bigger = SummingInstance::build(Matrix::from_rows(rows), inst.s_vector(),
                                             inst.p());
        Vec w(inst.pair_count());
        for (double& x : w) x = uniform(rng, 0.0, 2.0);
        auto [lhs_a, rhs_a] = lhs_rhs(inst, w);
        auto [lhs_b, rhs_b] = lhs_rhs(bigger, w);
        CHECK(lhs_b == Approx(lhs_a));
        CHECK(rhs_b >= rhs_a - 1e-12);
    }
}

TEST_CASE("psi with zero pi returns the pure s power", "[instance]") {
    auto inst =
        SummingInstance::build(Matrix::from_rows({{1.0, 2.0}, {3.0, 1.0}}), {2.0, 3.0}, 2.0);
    for (std::size_t i = 0; i < inst.k_count(); ++i) {
        CHECK(psi_value(inst, 0.0, {1.0, 0.0}, i) == Approx(4.0));
        CHECK(psi_value(inst, 0.0, {0.0, 1.0}, i) == Approx(9.0));
    }
    CHECK_THROWS_AS(psi_value(inst, 0.0, {1.0, 0.0}, 2), std::invalid_argument);
}

TEST_CASE("psi over the null pair vanishes for any pi", "[instance]") {
    InstanceMetadata meta;
    meta.null_pair = 0;
    auto inst = SummingInstance::build(Matrix::from_rows({{0.0}}), {0.0}, 1.0, meta);
    for (double pi : {0.0, 1.0, 17.0}) CHECK(psi_value(inst, pi, {1.0}, 0) == 0.0);
}

TEST_CASE("at the summing constant some K row makes psi nonpositive",
          "[instance][property]") {
    std::mt19937_64 rng(881102);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = testsupport::random_instance(rng, 5, 5);
        const auto result = summing_constant(inst);
        REQUIRE(result.summing);
        Vec w(inst.pair_count());
        for (double& x : w) x = uniform(rng, 0.0, 2.0);
        double min_psi = kInf;
        for (std::size_t i = 0; i < inst.k_count(); ++i)
            min_psi = std::min(min_psi, psi_value(inst, result.pi, w, i));
        CHECK(min_psi <= 1e-8 * (1.0 + result.pi));
    }
}

TEST_CASE("psi is linear in the multiplicities", "[instance][property]") {
    std::mt19937_64 rng(881103);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = testsupport::random_instance(rng, 5, 5);
        Vec w1(inst.pair_count()), w2(inst.pair_count());
        for (double& x : w1) x = uniform(rng, 0.0, 2.0);
        for (double& x : w2) x = uniform(rng, 0.0, 2.0);
        const double a = uniform(rng, 0.0, 1.0), b = 1.0 - a;
        Vec mix(inst.pair_count());
        for (std::size_t j = 0; j < mix.size(); ++j) mix[j] = a * w1[j] + b * w2[j];
        const double pi = uniform(rng, 0.0, 3.0);
        for (std::size_t i = 0; i < inst.k_count(); ++i) {
            const double direct = psi_value(inst, pi, mix, i);
            const double split =
                a * psi_value(inst, pi, w1, i) + b * psi_value(inst, pi, w2, i);
            CHECK(direct == Approx(split).margin(1e-10 * (1.0 + std::abs(split))));
        }
    }
}

TEST_CASE("scaling the G component by t^(1/p) folds into the multiplicities",
          "[instance][property]") {
    // scaling b_j scales both kernels linearly, so at p-th power it acts as a
    // multiplicity factor t_j; both sides of the inequality must agree
    std::mt19937_64 rng(881104);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = testsupport::random_instance(rng, 5, 5);
        const double p = inst.p();
        Vec t(inst.pair_count());
        for (double& x : t) x = uniform(rng, 0.1, 3.0);
        Matrix r2 = inst.r_matrix();
        Vec s2 = inst.s_vector();
        for (std::size_t j = 0; j < inst.pair_count(); ++j) {
            const double factor = std::pow(t[j], 1.0 / p);
            for (std::size_t i = 0; i < inst.k_count(); ++i) r2(i, j) *= factor;
            s2[j] *= factor;
        }
        auto scaled = SummingInstance::build(r2, s2, p);
        Vec w(inst.pair_count()), wt(inst.pair_count());
        for (std::size_t j = 0; j < w.size(); ++j) {
            w[j] = uniform(rng, 0.0, 2.0);
            wt[j] = w[j] * t[j];
        }
        auto [lhs_scaled, rhs_scaled] = lhs_rhs(scaled, w);
        auto [lhs_folded, rhs_folded] = lhs_rhs(inst, wt);
        CHECK(lhs_scaled == Approx(lhs_folded).margin(1e-10 * (1.0 + lhs_folded)));
        CHECK(rhs_scaled == Approx(rhs_folded).margin(1e-10 * (1.0 + rhs_folded)));
    }
}

TEST_CASE("instance json round-trips", "[instance]") {
    InstanceMetadata meta;
    meta.family = "linear";
    meta.family_meta = {{"resolution", 16}};
    meta.null_pair = 1;
    auto inst = SummingInstance::build(
        Matrix::from_rows({{0.1, 0.0}, {0.30000000000000004, 0.0}}), {0.7, 0.0}, 1.5,
        meta);
    auto j = instance_to_json(inst);
    auto back = instance_from_json(j);
    CHECK(instance_to_json(back) == j);  // bit-exact value round trip
    CHECK(back.p() == inst.p());
    CHECK(back.r(1, 0) == inst.r(1, 0));
    CHECK(back.null_pair() == inst.null_pair());
    CHECK(instance_hash(back) == instance_hash(inst));
}

TEST_CASE("instance json rejects malformed documents", "[instance]") {
    CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"kind":"instance"})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(
                        R"({"kind":"certificate","p":1,"r_matrix":[[1]],"s_vector":[1]})")),
                    std::invalid_argument);
}
