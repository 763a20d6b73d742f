// A nonlinear scalar map f(x) = x + x^2, handled around the base point a = 1:
// summing constants need no algebraic structure on f. Compares the LP value
// with the integer-multiset reference search.

#include <cstdio>

#include "pietsch/families.hpp"

using namespace pietsch;

int main() {
    ArbitraryAtPointSpec spec;
    spec.base_point = {1.0};
    spec.tests = {{0.1}, {-0.1}};
    auto f = [](double x) { return x + x * x; };
    spec.table.emplace_back(Vec{1.0}, Vec{f(1.0)});
    spec.table.emplace_back(Vec{1.1}, Vec{f(1.1)});
    spec.table.emplace_back(Vec{0.9}, Vec{f(0.9)});
    spec.domain_ball.kind = BallSpec::Kind::CubeDual;

    const SummingInstance inst = build_arbitrary_at_point(spec, 1.0);
    const SummingResult lp = summing_constant(inst);
    std::printf("pi (LP over real multiplicities)      = %.9f\n", lp.pi);

    for (long long bound : {1ll, 5ll, 20ll}) {
        const WeightedEquivalenceReport rep = weighted_equivalence_check(inst, bound);
        std::printf("multiset bound %-3lld best = %.9f   gap = %.2e\n", bound,
                    rep.multiset_value, rep.gap);
    }
    return 0;
}
