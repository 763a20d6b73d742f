#pragma once

// Deterministic corpus spanning every shipped family, used by the `suite`
// command and by the acceptance checks. All randomness flows from the given
// seed through the portable generators in common.hpp, so a seed pins the
// corpus bit for bit.

#include <string>
#include <vector>

#include "pietsch/families.hpp"

namespace pietsch {

struct CorpusEntry {
    std::string name;
    SummingInstance instance;
};

namespace detail {

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                            double lo = -1.5, double hi = 1.5) {
    Matrix m(rows, cols);
    for (double& v : m.data) v = uniform(rng, lo, hi);
    return m;
}

inline std::vector<Vec> random_vectors(std::mt19937_64& rng, std::size_t count,
                                       std::size_t dim, double lo = -1.5,
                                       double hi = 1.5) {
    std::vector<Vec> out(count, Vec(dim));
    for (auto& v : out)
        for (double& x : v) x = uniform(rng, lo, hi);
    return out;
}

/// Metric from random plane points; the Euclidean embedding guarantees the
/// triangle inequality.
inline Matrix random_embedded_metric(std::mt19937_64& rng, std::size_t n) {
    std::vector<Vec> pts = random_vectors(rng, n, 2, -2.0, 2.0);
    Matrix d(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vec diff = {pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]};
            d(i, j) = i == j ? 0.0 : vector_norm(diff);
        }
    // exact symmetry despite float evaluation order
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d(j, i) = d(i, j);
    return d;
}

/// max_resolution caps the sphere grids; product families pass a small value
/// so that K stays desk-sized for every seed.
inline BallSpec pick_ball(std::mt19937_64& rng, std::size_t dim,
                          std::size_t max_resolution = 64) {
    BallSpec ball;
    switch (uniform_index(rng, 3)) {
        case 0: ball.kind = BallSpec::Kind::CubeDual; break;
        case 1: ball.kind = BallSpec::Kind::CrossPolytopeDual; break;
        default:
            ball.kind = BallSpec::Kind::SphereGrid;
            ball.resolution = std::min<std::size_t>(max_resolution, dim <= 2 ? 64 : 48);
            ball.seed = rng();
            break;
    }
    return ball;
}

inline double pick_p(std::mt19937_64& rng) {
    const Vec ps = {1.0, 1.5, 2.0, 4.0};
    return ps[uniform_index(rng, ps.size())];
}

}  // namespace detail

inline std::vector<CorpusEntry> make_suite_corpus(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CorpusEntry> corpus;

    for (int v = 0; v < 6; ++v) {
        const std::size_t dim = 1 + uniform_index(rng, 3);
        LinearOperatorSpec spec;
        spec.matrix = detail::random_matrix(rng, 1 + uniform_index(rng, 3), dim);
        spec.domain_ball = detail::pick_ball(rng, dim);
        spec.test_vectors = detail::random_vectors(rng, 3 + uniform_index(rng, 4), dim);
        for (std::size_t j = 0; j < spec.test_vectors.size(); ++j)
            spec.scalars.push_back(uniform(rng, -2.0, 2.0));
        corpus.push_back({"linear#" + std::to_string(v), build_linear(spec, detail::pick_p(rng))});
    }

    for (int v = 0; v < 3; ++v) {
        const std::size_t n = 3 + uniform_index(rng, 3);
        LipschitzSpec spec;
        spec.x_distances = detail::random_embedded_metric(rng, n);
        spec.y_distances = detail::random_embedded_metric(rng, n);
        for (std::size_t i = 0; i < n; ++i) spec.map.push_back(uniform_index(rng, n));
        for (int t = 0; t < 5; ++t)
            spec.triples.push_back({uniform_index(rng, n), uniform_index(rng, n),
                                    uniform(rng, -2.0, 2.0)});
        spec.triples.push_back({0, 0, 0.0});  // the null element
        spec.sample_count = 40;
        spec.sample_seed = rng();
        spec.k_functions =
            sample_lipschitz_ball(spec.x_distances, spec.sample_count, spec.sample_seed);
        corpus.push_back(
            {"lipschitz#" + std::to_string(v), build_lipschitz(spec, detail::pick_p(rng))});
    }

    const MultiFamily multi_families[] = {MultiFamily::Dominated,
                                          MultiFamily::StronglySumming,
                                          MultiFamily::SemiIntegral, MultiFamily::TauP};
    for (MultiFamily family : multi_families) {
        MultilinearSpec spec;
        spec.family = family;
        spec.tensor.in_dims = {2, 2};
        spec.tensor.out_dim = 2;
        spec.tensor.data.resize(spec.tensor.out_dim * spec.tensor.input_size());
        for (double& x : spec.tensor.data) x = uniform(rng, -1.5, 1.5);
        for (int t = 0; t < 4; ++t) {
            spec.tuples.push_back(
                {Vec{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)},
                 Vec{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)}});
            spec.scalars.push_back(uniform(rng, -2.0, 2.0));
            spec.dual_targets.push_back(
                {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)});
        }
        spec.component_balls = {detail::pick_ball(rng, 2, 12),
                                detail::pick_ball(rng, 2, 12)};
        spec.target_ball.kind = BallSpec::Kind::SphereGrid;
        spec.target_ball.resolution = 16;
        spec.form_samples = 48;
        spec.sample_seed = rng();
        if (family == MultiFamily::TauP) spec.scalars.clear();
        corpus.push_back({std::string("multilinear-") + multi_family_name(family),
                          build_multilinear(spec, detail::pick_p(rng))});
    }

    for (PolyFamily family : {PolyFamily::Dominated, PolyFamily::StronglySumming}) {
        PolynomialSpec spec;
        spec.degree = 2;
        spec.family = family;
        spec.tensor.in_dims = {2, 2};
        spec.tensor.out_dim = 1;
        spec.tensor.data.resize(4);
        const double a = uniform(rng, -1.5, 1.5), b = uniform(rng, -1.5, 1.5),
                     c = uniform(rng, -1.5, 1.5);
        spec.tensor.data = {a, b, b, c};  // symmetric 2x2 representative
        spec.tests = detail::random_vectors(rng, 4, 2);
        spec.domain_ball = detail::pick_ball(rng, 2);
        spec.form_samples = 48;
        spec.sample_seed = rng();
        corpus.push_back({family == PolyFamily::Dominated ? "polynomial-dominated"
                                                          : "polynomial-strongly-summing",
                          build_polynomial(spec, detail::pick_p(rng))});
    }

    for (double alpha : {1.0, 2.0}) {
        SubhomogeneousSpec spec;
        spec.alpha = alpha;
        const std::size_t dim = 2;
        spec.points = detail::random_vectors(rng, 5, dim);
        spec.points.push_back(Vec(dim, 0.0));
        for (const Vec& x : spec.points) {
            const double n2 = dot(x, x);
            spec.values.push_back({std::pow(n2, alpha / 2.0), 0.5 * n2});
        }
        spec.domain_ball = detail::pick_ball(rng, dim);
        corpus.push_back({"subhomogeneous-alpha" + std::to_string(static_cast<int>(alpha)),
                          build_subhomogeneous(spec, detail::pick_p(rng))});
    }

    for (int v = 0; v < 2; ++v) {
        ArbitraryAtPointSpec spec;
        const std::size_t dim = 2;
        spec.base_point = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
        spec.tests = detail::random_vectors(rng, 4, dim, -0.5, 0.5);
        auto f = [](const Vec& x) {
            return Vec{x[0] + x[0] * x[0], x[1] - 0.5 * x[1] * x[1]};
        };
        spec.table.emplace_back(spec.base_point, f(spec.base_point));
        for (const Vec& x : spec.tests) {
            Vec shifted = spec.base_point;
            for (std::size_t i = 0; i < dim; ++i) shifted[i] += x[i];
            spec.table.emplace_back(shifted, f(shifted));
        }
        for (std::size_t j = 0; j < spec.tests.size(); ++j)
            spec.weights.push_back(uniform(rng, 0.2, 3.0));
        spec.domain_ball = detail::pick_ball(rng, dim);
        corpus.push_back({"arbitrary-at-point#" + std::to_string(v),
                          build_arbitrary_at_point(spec, detail::pick_p(rng))});
    }

    return corpus;
}

}  // namespace pietsch
