#include <catch2/catch_amalgamated.hpp>

#include "pietsch/bruteforce.hpp"
#include "support.hpp"

using namespace pietsch;
using Catch::Approx;

TEST_CASE("single pair multiset search", "[bruteforce]") {
    auto inst = SummingInstance::build(Matrix::from_rows({{1.0}}), {1.0}, 1.0);
    for (long long bound : {1ll, 5ll, 20ll}) {
        auto rep = pi_by_multisets(inst, bound);
        CHECK(rep.best_value == Approx(1.0));
        CHECK(rep.exhaustive);
    }
}

TEST_CASE("zero mapping multiset search", "[bruteforce]") {
    auto inst = SummingInstance::build(Matrix::from_rows({{1.0, 0.5}}), {0.0, 0.0}, 2.0);
    auto rep = pi_by_multisets(inst, 5);
    CHECK(rep.best_value == 0.0);
}

TEST_CASE("diagonal example enumerates 35 vectors at bound 5", "[bruteforce]") {
    auto inst = SummingInstance::build(Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}),
                                       {1.0, 1.0}, 1.0);
    auto rep = pi_by_multisets(inst, 5);
    CHECK(rep.sequences_examined == 35);
    CHECK(rep.best_value == Approx(2.0));
    CHECK(rep.best_multiplicities[0] == rep.best_multiplicities[1]);
}

TEST_CASE("zero-denominator vectors report the not-summing sentinel", "[bruteforce]") {
    auto inst = SummingInstance::build(Matrix::from_rows({{1.0, 0.0}}), {1.0, 1.0}, 1.0);
    auto rep = pi_by_multisets(inst, 3);
    CHECK(rep.not_summing);
    CHECK(rep.best_value == kInf);
}

TEST_CASE("multiset value never exceeds the LP constant", "[bruteforce][property]") {
    std::mt19937_64 rng(440011);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = testsupport::random_instance(rng, 4, 4);
        auto lp = summing_constant(inst);
        REQUIRE(lp.summing);
        auto rep = pi_by_multisets(inst, 6);
        CHECK(rep.best_value <= lp.pi + 1e-9 * (1.0 + lp.pi));
    }
}

TEST_CASE("rational optima are attained exactly", "[bruteforce]") {
    // r^p = [[1,1],[0,2]], s^p = (1,1): optimum at w = (1/2, 1/2), value 1
    // after normalization; integer (1,1) achieves it at bound >= 1.
    auto inst = SummingInstance::build(Matrix::from_rows({{1.0, 1.0}, {0.0, 2.0}}),
                                       {1.0, 1.0}, 1.0);
    auto lp = summing_constant(inst);
    auto rep = pi_by_multisets(inst, 10);
    CHECK(rep.best_value == lp.pi);  // dyadic data, both routes exact

    // identity r: w = (1,...,1) is optimal, integer already
    auto id = SummingInstance::build(
        Matrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}),
        {1.0, 2.0, 1.0}, 1.0);
    auto lp_id = summing_constant(id);
    auto rep_id = pi_by_multisets(id, 10);
    CHECK(rep_id.best_value == lp_id.pi);
}

TEST_CASE("guided search engages beyond the enumeration budget", "[bruteforce]") {
    std::mt19937_64 rng(440012);
    auto inst = testsupport::random_instance(rng, 8, 5);
    auto lp = summing_constant(inst);
    REQUIRE(lp.summing);
    // (20+1)^8 >> budget, so coordinate ascent takes over
    auto rep = pi_by_multisets(inst, 20, 10'000);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.best_value <= lp.pi + 1e-9 * (1.0 + lp.pi));
    CHECK(rep.best_value > 0.0);
}

TEST_CASE("bad arguments are rejected", "[bruteforce]") {
    auto inst = SummingInstance::build(Matrix::from_rows({{1.0}}), {1.0}, 1.0);
    CHECK_THROWS_AS(pi_by_multisets(inst, 0), std::invalid_argument);
    CHECK_THROWS_AS(pi_by_multisets(inst, 5, 0), std::invalid_argument);
}
