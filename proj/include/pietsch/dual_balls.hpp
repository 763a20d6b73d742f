#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pietsch/common.hpp"

namespace pietsch {

/// Discretization recipe for a dual unit ball serving as (part of) K.
/// Polytope balls are enumerated exactly by their vertices; Euclidean balls
/// get an angular grid in dimension 2, a Fibonacci spiral in dimension 3 and
/// seeded sphere samples beyond.
struct BallSpec {
    enum class Kind { CubeDual, CrossPolytopeDual, SphereGrid };
    Kind kind = Kind::SphereGrid;
    std::size_t resolution = 64;  // sphere grids only
    std::uint64_t seed = 1;       // sphere samples in dimension >= 4 only

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::CubeDual: return "cube-dual";
            case Kind::CrossPolytopeDual: return "cross-polytope-dual";
            case Kind::SphereGrid: return "sphere-grid";
        }
        return "?";
    }
    static Kind kind_from_name(const std::string& name) {
        if (name == "cube-dual") return Kind::CubeDual;
        if (name == "cross-polytope-dual") return Kind::CrossPolytopeDual;
        if (name == "sphere-grid") return Kind::SphereGrid;
        throw std::invalid_argument("unknown ball kind \"" + name + "\"");
    }
    nlohmann::json to_json() const {
        return {{"kind", kind_name(kind)}, {"resolution", resolution}, {"seed", seed}};
    }
    static BallSpec from_json(const nlohmann::json& j) {
        BallSpec spec;
        spec.kind = kind_from_name(j.at("kind").get<std::string>());
        if (j.contains("resolution")) spec.resolution = j.at("resolution").get<std::size_t>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        return spec;
    }
};

struct BallPoints {
    std::vector<Vec> points;
    std::vector<std::string> labels;
};

namespace detail {

inline BallPoints cube_vertices(std::size_t dim) {
    if (dim > 16)
        throw std::invalid_argument("cube-dual ball: 2^" + std::to_string(dim) +
                                    " vertices is beyond desk scale");
    BallPoints out;
    const std::size_t total = std::size_t{1} << dim;
    for (std::size_t mask = 0; mask < total; ++mask) {
        Vec v(dim);
        std::string label;
        for (std::size_t t = 0; t < dim; ++t) {
            const bool plus = (mask >> t) & 1u;
            v[t] = plus ? 1.0 : -1.0;
            label += plus ? '+' : '-';
        }
        out.points.push_back(std::move(v));
        out.labels.push_back(label);
    }
    return out;
}

inline BallPoints cross_polytope_vertices(std::size_t dim) {
    BallPoints out;
    for (std::size_t t = 0; t < dim; ++t) {
        for (double sign : {1.0, -1.0}) {
            Vec v(dim, 0.0);
            v[t] = sign;
            out.points.push_back(std::move(v));
            out.labels.push_back((sign > 0 ? "+e" : "-e") + std::to_string(t));
        }
    }
    return out;
}

inline BallPoints sphere_points(std::size_t dim, std::size_t resolution,
                                std::uint64_t seed) {
    if (resolution < 8)
        throw std::invalid_argument("sphere-grid: resolution must be >= 8");
    BallPoints out;
    if (dim == 1) {
        out.points = {{1.0}, {-1.0}};
        out.labels = {"+1", "-1"};
        return out;
    }
    if (dim == 2) {
        for (std::size_t t = 0; t < resolution; ++t) {
            const double theta =
                6.283185307179586 * static_cast<double>(t) / static_cast<double>(resolution);
            out.points.push_back({std::cos(theta), std::sin(theta)});
            char buf[40];
            std::snprintf(buf, sizeof buf, "theta=%.9f", theta);
            out.labels.emplace_back(buf);
        }
        return out;
    }
    if (dim == 3) {
        // Fibonacci spiral: quasi-uniform, deterministic without a seed
        const double golden = 2.399963229728653;  // pi * (3 - sqrt(5))
        for (std::size_t t = 0; t < resolution; ++t) {
            const double z =
                1.0 - 2.0 * (static_cast<double>(t) + 0.5) / static_cast<double>(resolution);
            const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double ang = golden * static_cast<double>(t);
            out.points.push_back({rad * std::cos(ang), rad * std::sin(ang), z});
            out.labels.push_back("fib" + std::to_string(t));
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < resolution; ++t) {
        Vec v(dim);
        double norm = 0.0;
        do {
            for (double& x : v) x = normal(rng);
            norm = vector_norm(v);
        } while (norm < 1e-8);
        for (double& x : v) x /= norm;
        out.points.push_back(std::move(v));
        out.labels.push_back("s" + std::to_string(t));
    }
    return out;
}

}  // namespace detail

/// Points of the dual unit ball named by the spec (the K discretization).
inline BallPoints dual_ball_points(const BallSpec& spec, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("ball points: zero dimension");
    switch (spec.kind) {
        case BallSpec::Kind::CubeDual: return detail::cube_vertices(dim);
        case BallSpec::Kind::CrossPolytopeDual: return detail::cross_polytope_vertices(dim);
        case BallSpec::Kind::SphereGrid:
            return detail::sphere_points(dim, spec.resolution, spec.seed);
    }
    throw std::invalid_argument("ball points: unknown kind");
}

/// Extreme points of the corresponding domain unit ball (the predual side),
/// used when estimating norms of forms by maximizing over the domain.
inline BallPoints domain_ball_points(const BallSpec& spec, std::size_t dim) {
    switch (spec.kind) {
        case BallSpec::Kind::CubeDual:  // l1 domain
            return detail::cross_polytope_vertices(dim);
        case BallSpec::Kind::CrossPolytopeDual:  // l-infinity domain
            return detail::cube_vertices(dim);
        case BallSpec::Kind::SphereGrid:
            return detail::sphere_points(dim, spec.resolution, spec.seed);
    }
    throw std::invalid_argument("ball points: unknown kind");
}

/// One random point of the named dual ball; used by the axiom probes, which
/// sample K afresh instead of walking the fixed discretization.
inline Vec random_dual_ball_point(const BallSpec& spec, std::size_t dim,
                                  std::mt19937_64& rng) {
    Vec v(dim, 0.0);
    switch (spec.kind) {
        case BallSpec::Kind::CubeDual:
            for (double& x : v) x = rng() & 1u ? 1.0 : -1.0;
            return v;
        case BallSpec::Kind::CrossPolytopeDual:
            v[uniform_index(rng, dim)] = rng() & 1u ? 1.0 : -1.0;
            return v;
        case BallSpec::Kind::SphereGrid: {
            double norm = 0.0;
            do {
                for (double& x : v) x = normal(rng);
                norm = vector_norm(v);
            } while (norm < 1e-8);
            for (double& x : v) x /= norm;
            return v;
        }
    }
    throw std::invalid_argument("ball points: unknown kind");
}

}  // namespace pietsch
