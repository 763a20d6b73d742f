// The identity on 2-dimensional Euclidean space, p = 2: the dense circle-grid
// route and the cutting-plane route both land on pi = 2, c = sqrt(2) (the
// uniform measure on the circle averages |phi(x)|^2 to ||x||^2 / 2).

#include <cstdio>
#include <iostream>

#include "pietsch/corpus.hpp"
#include "pietsch/families.hpp"
#include "pietsch/json_io.hpp"

using namespace pietsch;

int main() {
    LinearOperatorSpec spec;
    spec.matrix = Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
    spec.domain_ball.kind = BallSpec::Kind::SphereGrid;
    spec.domain_ball.resolution = 720;
    std::mt19937_64 rng(7);
    for (int j = 0; j < 32; ++j) {
        const double alpha = uniform(rng, 0.0, 6.283185307179586);
        spec.test_vectors.push_back({std::cos(alpha), std::sin(alpha)});
    }

    const SummingInstance inst = build_linear(spec, 2.0);
    const EquivalenceReport rep = check_equivalence(inst);
    std::printf("dense grid (%zu rows):  pi = %.9f   c = %.9f   gap = %.2e\n",
                inst.k_count(), rep.pi, rep.c, rep.gap);

    const KOracle oracle = make_circle_oracle(spec.test_vectors, {}, 2.0);
    std::vector<KPoint> seeds;
    KPoint seed;
    seed.label = "theta=0";
    for (const Vec& x : spec.test_vectors) seed.r_row.push_back(std::abs(x[0]));
    seeds.push_back(seed);
    const ExchangeResult ex = solve_with_oracle(inst.s_vector(), 2.0, oracle, seeds);
    std::printf("exchange (%d oracle calls): pi = %.9f   status = %s\n",
                ex.oracle_calls, ex.pi, ex.status.c_str());
    history_to_jsonl(ex.history, std::cout);
    return 0;
}
