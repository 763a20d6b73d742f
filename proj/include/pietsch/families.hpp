#pragma once

// Builders translating each concrete summing class into a SummingInstance:
// linear operators, Lipschitz maps between finite metric spaces, the four
// multilinear classes (dominated, strongly summing, semi-integral, tau-p),
// dominated / strongly summing polynomials, alpha-subhomogeneous maps and
// arbitrary maps around a base point. Each builder also has an axiom probe
// that re-evaluates its R/S kernels on fresh random samples.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pietsch/axioms.hpp"
#include "pietsch/bruteforce.hpp"
#include "pietsch/domination.hpp"
#include "pietsch/dual_balls.hpp"
#include "pietsch/exchange.hpp"
#include "pietsch/instance.hpp"
#include "pietsch/lp.hpp"

namespace pietsch {

namespace detail {

inline Vec apply_matrix(const Matrix& m, const Vec& x) {
    if (x.size() != m.cols)
        throw std::invalid_argument("apply_matrix: vector length " +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(m.cols) + " columns");
    Vec y(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) y[i] += m(i, j) * x[j];
    return y;
}

inline bool all_zero(const Vec& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

inline Vec resolve_scalars(const Vec& scalars, std::size_t m, const char* what) {
    if (scalars.empty()) return Vec(m, 1.0);
    if (scalars.size() != m)
        throw std::invalid_argument(std::string(what) + ": scalars length " +
                                    std::to_string(scalars.size()) + ", expected " +
                                    std::to_string(m));
    return scalars;
}

/// Drops exact duplicate K rows (sign symmetry of |phi(x)| makes these
/// common); pi and every certificate question are unchanged.
struct RowAssembly {
    std::vector<Vec> rows;
    std::vector<std::string> labels;
    std::size_t dropped = 0;

    void push(Vec row, std::string label) {
        rows.push_back(std::move(row));
        labels.push_back(std::move(label));
    }
    void dedup() {
        std::map<Vec, bool> seen;
        std::vector<Vec> kept;
        std::vector<std::string> kept_labels;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (seen.emplace(rows[i], true).second) {
                kept.push_back(std::move(rows[i]));
                kept_labels.push_back(std::move(labels[i]));
            } else {
                ++dropped;
            }
        }
        rows = std::move(kept);
        labels = std::move(kept_labels);
    }
};

}  // namespace detail

// --- linear operators ---------------------------------------------------------

struct LinearOperatorSpec {
    Matrix matrix;                  // the operator, n_out x n_in
    BallSpec domain_ball;           // discretization of the dual unit ball
    std::vector<Vec> test_vectors;  // each of length n_in
    Vec scalars;                    // lambda_j; empty means all ones
    NormTag target_norm = NormTag::Euclidean;
};

inline SummingInstance build_linear(const LinearOperatorSpec& spec, double p) {
    if (spec.test_vectors.empty())
        throw std::invalid_argument("build_linear: empty test set");
    const std::size_t n_in = spec.matrix.cols;
    const std::size_t m = spec.test_vectors.size();
    for (std::size_t j = 0; j < m; ++j)
        if (spec.test_vectors[j].size() != n_in)
            throw std::invalid_argument("build_linear: test vector " +
                                        std::to_string(j) + " has length " +
                                        std::to_string(spec.test_vectors[j].size()) +
                                        ", expected " + std::to_string(n_in));
    const Vec lambda = detail::resolve_scalars(spec.scalars, m, "build_linear");
    const BallPoints ball = dual_ball_points(spec.domain_ball, n_in);

    detail::RowAssembly rowset;
    for (std::size_t i = 0; i < ball.points.size(); ++i) {
        Vec row(m);
        for (std::size_t j = 0; j < m; ++j)
            row[j] = std::abs(lambda[j]) * std::abs(dot(ball.points[i], spec.test_vectors[j]));
        rowset.push(std::move(row), ball.labels[i]);
    }
    rowset.dedup();

    Vec s(m);
    InstanceMetadata meta;
    for (std::size_t j = 0; j < m; ++j) {
        s[j] = std::abs(lambda[j]) *
               vector_norm(detail::apply_matrix(spec.matrix, spec.test_vectors[j]),
                           spec.target_norm);
        if (!meta.null_pair && detail::all_zero(spec.test_vectors[j]))
            meta.null_pair = j;
    }
    meta.family = "linear";
    meta.family_meta = {{"domain_ball", spec.domain_ball.to_json()},
                        {"rows_deduped", rowset.dropped}};
    return SummingInstance::build(Matrix::from_rows(rowset.rows), std::move(s), p,
                                  std::move(meta));
}

// --- Lipschitz maps between finite metric spaces -------------------------------

struct LipschitzSpec {
    Matrix x_distances;  // n x n metric on the domain points
    Matrix y_distances;  // metric on the target points
    std::vector<std::size_t> map;  // domain point index -> target point index
    struct Triple {
        std::size_t x = 0, y = 0;
        double a = 0.0;
    };
    std::vector<Triple> triples;   // the (x, y, a) test elements
    Vec scalars;                   // lambda_j; empty means all ones
    std::vector<Vec> k_functions;  // 1-Lipschitz functions sampling the dual ball
    // provenance of sampled k_functions, recorded for reproducibility
    std::size_t sample_count = 0;
    std::uint64_t sample_seed = 0;
};

namespace detail {

inline void validate_metric(const Matrix& d, const char* name) {
    if (d.rows != d.cols || d.rows == 0)
        throw std::invalid_argument(std::string(name) + ": not a square matrix");
    for (std::size_t i = 0; i < d.rows; ++i) {
        if (d(i, i) != 0.0)
            throw std::invalid_argument(std::string(name) + ": nonzero diagonal at " +
                                        std::to_string(i));
        for (std::size_t j = 0; j < d.cols; ++j) {
            if (!is_finite(d(i, j)) || d(i, j) < 0.0)
                throw std::invalid_argument(std::string(name) + ": bad entry at (" +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            ")");
            if (std::abs(d(i, j) - d(j, i)) > 1e-12)
                throw std::invalid_argument(std::string(name) + ": asymmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            ")");
        }
    }
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.rows; ++j)
            for (std::size_t k = 0; k < d.rows; ++k)
                if (d(i, j) > d(i, k) + d(k, j) + 1e-12)
                    throw std::invalid_argument(
                        std::string(name) + ": triangle inequality fails for (" +
                        std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + "): " + std::to_string(d(i, j)) + " > " +
                        std::to_string(d(i, k) + d(k, j)));
}

}  // namespace detail

/// Vertices of the 1-Lipschitz polytope {g : |g(u)-g(v)| <= d(u,v), g(0)=0},
/// found by maximizing random linear objectives with the in-house LP solver.
/// Each optimum of a generic objective is an exact extreme point; results are
/// rescaled by their realized Lipschitz constant to absorb solver roundoff,
/// normalized at the base point and deduplicated.
inline std::vector<Vec> sample_lipschitz_ball(const Matrix& distances,
                                              std::size_t count,
                                              std::uint64_t seed) {
    detail::validate_metric(distances, "sample_lipschitz_ball");
    const std::size_t n = distances.rows;
    if (n == 1) return {Vec{0.0}};

    // variables [gp gm] with g = gp - gm, both nonnegative
    std::vector<Vec> rows;
    Vec rhs;
    auto push_row = [&](const Vec& coeff_g, double bound) {
        Vec row(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = coeff_g[i];
            row[n + i] = -coeff_g[i];
        }
        rows.push_back(std::move(row));
        rhs.push_back(bound);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec diff(n, 0.0);
            diff[i] = 1.0;
            diff[j] = -1.0;
            push_row(diff, distances(i, j));
            for (double& c : diff) c = -c;
            push_row(diff, distances(i, j));
        }
    Vec base(n, 0.0);
    base[0] = 1.0;
    push_row(base, 0.0);
    base[0] = -1.0;
    push_row(base, 0.0);

    LpProblem prob;
    prob.constraints = Matrix::from_rows(rows);
    prob.rhs = rhs;

    std::mt19937_64 rng(seed);
    std::vector<Vec> found;
    for (std::size_t trial = 0; trial < count; ++trial) {
        prob.objective.assign(2 * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double c = normal(rng);
            prob.objective[i] = c;
            prob.objective[n + i] = -c;
        }
        const LpSolution sol = solve_lp(prob);
        if (sol.status != LpSolution::Status::Optimal) continue;
        Vec g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = sol.primal[i] - sol.primal[n + i];
        const double g0 = g[0];
        for (double& v : g) v -= g0;
        double lip = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (distances(i, j) > 0.0)
                    lip = std::max(lip, std::abs(g[i] - g[j]) / distances(i, j));
        if (lip > 1.0)
            for (double& v : g) v /= lip;
        bool duplicate = false;
        for (const auto& h : found)
            if (inf_norm_dist(g, h) <= 1e-9) { duplicate = true; break; }
        if (!duplicate) found.push_back(std::move(g));
    }
    return found;
}

inline SummingInstance build_lipschitz(const LipschitzSpec& spec, double p) {
    detail::validate_metric(spec.x_distances, "build_lipschitz: x_distances");
    detail::validate_metric(spec.y_distances, "build_lipschitz: y_distances");
    const std::size_t n = spec.x_distances.rows;
    if (spec.map.size() != n)
        throw std::invalid_argument("build_lipschitz: map length mismatch");
    for (std::size_t u : spec.map)
        if (u >= spec.y_distances.rows)
            throw std::invalid_argument("build_lipschitz: map target out of range");
    if (spec.triples.empty())
        throw std::invalid_argument("build_lipschitz: empty test set");
    if (spec.k_functions.empty())
        throw std::invalid_argument("build_lipschitz: no k_functions supplied");
    const std::size_t m = spec.triples.size();
    const Vec lambda = detail::resolve_scalars(spec.scalars, m, "build_lipschitz");

    std::vector<Vec> normalized;
    for (std::size_t fi = 0; fi < spec.k_functions.size(); ++fi) {
        const Vec& g = spec.k_functions[fi];
        if (g.size() != n)
            throw std::invalid_argument("build_lipschitz: k_function " +
                                        std::to_string(fi) + " has wrong length");
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (std::abs(g[u] - g[v]) > spec.x_distances(u, v) + 1e-12)
                    throw std::invalid_argument(
                        "build_lipschitz: k_function " + std::to_string(fi) +
                        " is not 1-Lipschitz on pair (" + std::to_string(u) + "," +
                        std::to_string(v) + ")");
        Vec h = g;
        const double h0 = h[0];
        for (double& x : h) x -= h0;
        normalized.push_back(std::move(h));
    }

    const double inv_p = 1.0 / p;
    detail::RowAssembly rowset;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        Vec row(m);
        for (std::size_t j = 0; j < m; ++j) {
            const auto& tr = spec.triples[j];
            if (tr.x >= n || tr.y >= n)
                throw std::invalid_argument("build_lipschitz: triple " +
                                            std::to_string(j) + " index out of range");
            row[j] = std::pow(std::abs(tr.a), inv_p) * std::abs(lambda[j]) *
                     std::abs(normalized[i][tr.x] - normalized[i][tr.y]);
        }
        rowset.push(std::move(row), "g" + std::to_string(i));
    }
    rowset.dedup();

    Vec s(m);
    InstanceMetadata meta;
    std::optional<std::size_t> diagonal_triple;
    for (std::size_t j = 0; j < m; ++j) {
        const auto& tr = spec.triples[j];
        s[j] = std::pow(std::abs(tr.a), inv_p) * std::abs(lambda[j]) *
               spec.y_distances(spec.map[tr.x], spec.map[tr.y]);
        if (tr.x == tr.y) {
            if (!meta.null_pair && tr.a == 0.0) meta.null_pair = j;
            if (!diagonal_triple) diagonal_triple = j;
        }
    }
    if (!meta.null_pair) meta.null_pair = diagonal_triple;
    meta.family = "lipschitz";
    meta.family_meta = {{"k_functions", spec.k_functions.size()},
                        {"rows_deduped", rowset.dropped}};
    if (spec.sample_count > 0) {
        meta.family_meta["k_sample_count"] = spec.sample_count;
        meta.family_meta["k_sample_seed"] = spec.sample_seed;
    }
    return SummingInstance::build(Matrix::from_rows(rowset.rows), std::move(s), p,
                                  std::move(meta));
}

// --- multilinear mappings -------------------------------------------------------

/// Dense coefficient tensor of an n-linear map into a finite-dimensional
/// target. data is laid out output-major, then input indices row-major.
struct MultiTensor {
    std::vector<std::size_t> in_dims;
    std::size_t out_dim = 1;
    Vec data;

    std::size_t arity() const { return in_dims.size(); }
    std::size_t input_size() const {
        std::size_t t = 1;
        for (std::size_t d : in_dims) t *= d;
        return t;
    }
    void validate() const {
        if (in_dims.empty()) throw std::invalid_argument("tensor: zero arity");
        for (std::size_t d : in_dims)
            if (d == 0) throw std::invalid_argument("tensor: zero input dimension");
        if (out_dim == 0) throw std::invalid_argument("tensor: zero output dimension");
        if (data.size() != out_dim * input_size())
            throw std::invalid_argument("tensor: data size " +
                                        std::to_string(data.size()) + ", expected " +
                                        std::to_string(out_dim * input_size()));
        for (double v : data)
            if (!is_finite(v)) throw std::invalid_argument("tensor: non-finite entry");
    }

    Vec apply(const std::vector<Vec>& tuple) const {
        const std::size_t n = arity();
        if (tuple.size() != n) throw std::invalid_argument("tensor: arity mismatch");
        for (std::size_t t = 0; t < n; ++t)
            if (tuple[t].size() != in_dims[t])
                throw std::invalid_argument("tensor: component " + std::to_string(t) +
                                            " has length " +
                                            std::to_string(tuple[t].size()) +
                                            ", expected " + std::to_string(in_dims[t]));
        const std::size_t total = input_size();
        Vec out(out_dim, 0.0);
        std::vector<std::size_t> idx(n, 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            double prod = 1.0;
            for (std::size_t t = 0; t < n; ++t) prod *= tuple[t][idx[t]];
            if (prod != 0.0)
                for (std::size_t o = 0; o < out_dim; ++o) out[o] += data[o * total + flat] * prod;
            for (std::size_t t = n; t-- > 0;) {
                if (++idx[t] < in_dims[t]) break;
                idx[t] = 0;
            }
        }
        return out;
    }

    double apply_scalar(const std::vector<Vec>& tuple) const {
        return apply(tuple)[0];
    }

    /// Diagonal evaluation P(x) = T(x, ..., x).
    Vec apply_diagonal(const Vec& x) const {
        return apply(std::vector<Vec>(arity(), x));
    }
};

enum class MultiFamily { Dominated, StronglySumming, SemiIntegral, TauP };

inline const char* multi_family_name(MultiFamily f) {
    switch (f) {
        case MultiFamily::Dominated: return "dominated";
        case MultiFamily::StronglySumming: return "strongly-summing";
        case MultiFamily::SemiIntegral: return "semi-integral";
        case MultiFamily::TauP: return "tau-p";
    }
    return "?";
}

inline MultiFamily multi_family_from_name(const std::string& name) {
    if (name == "dominated") return MultiFamily::Dominated;
    if (name == "strongly-summing") return MultiFamily::StronglySumming;
    if (name == "semi-integral") return MultiFamily::SemiIntegral;
    if (name == "tau-p") return MultiFamily::TauP;
    throw std::invalid_argument("unknown multilinear family \"" + name + "\"");
}

struct MultilinearSpec {
    MultiTensor tensor;
    MultiFamily family = MultiFamily::Dominated;
    std::vector<std::vector<Vec>> tuples;   // m test tuples (x_1, ..., x_n)
    Vec scalars;                            // lambda_j for the scalar-G families
    std::vector<Vec> dual_targets;          // b_j in the target dual, tau-p only
    std::vector<BallSpec> component_balls;  // per component; defaulted when empty
    BallSpec target_ball;                   // tau-p: discretization of the target ball
    std::size_t form_samples = 64;          // strongly-summing sampling
    std::uint64_t sample_seed = 1;
    NormTag target_norm = NormTag::Euclidean;
};

namespace detail {

inline std::vector<BallSpec> resolve_component_balls(const MultilinearSpec& spec) {
    if (spec.component_balls.empty())
        return std::vector<BallSpec>(spec.tensor.arity(), BallSpec{});
    if (spec.component_balls.size() != spec.tensor.arity())
        throw std::invalid_argument("build_multilinear: component_balls size mismatch");
    return spec.component_balls;
}

/// Cartesian product enumeration over per-component point sets, bounded to
/// desk scale.
inline void for_each_product(const std::vector<BallPoints>& sets,
                             const std::function<void(const std::vector<std::size_t>&)>& fn) {
    double total = 1.0;
    for (const auto& s : sets) total *= static_cast<double>(s.points.size());
    // the dense solver holds a q x (m + q) tableau, so product discretizations
    // must stay at desk scale
    if (total > 2e4)
        throw std::invalid_argument(
            "K discretization would have " + std::to_string(total) +
            " product points; reduce resolutions");
    std::vector<std::size_t> idx(sets.size(), 0);
    while (true) {
        fn(idx);
        std::size_t t = sets.size();
        bool done = true;
        while (t-- > 0) {
            if (++idx[t] < sets[t].points.size()) { done = false; break; }
            idx[t] = 0;
            if (t == 0) break;
        }
        if (done) break;
    }
}

inline std::string product_label(const std::vector<BallPoints>& sets,
                                 const std::vector<std::size_t>& idx) {
    std::string label = "(";
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t) label += ",";
        label += sets[t].labels[idx[t]];
    }
    return label + ")";
}

/// Sup of |form| over the product of domain unit balls, by enumeration of the
/// domain extreme points (exact for polytopes, a grid estimate for spheres).
inline double estimate_form_norm(const MultiTensor& form,
                                 const std::vector<BallSpec>& balls) {
    std::vector<BallPoints> sets;
    for (std::size_t t = 0; t < form.arity(); ++t)
        sets.push_back(domain_ball_points(balls[t], form.in_dims[t]));
    double best = 0.0;
    for_each_product(sets, [&](const std::vector<std::size_t>& idx) {
        std::vector<Vec> tuple;
        tuple.reserve(idx.size());
        for (std::size_t t = 0; t < idx.size(); ++t)
            tuple.push_back(sets[t].points[idx[t]]);
        best = std::max(best, std::abs(form.apply_scalar(tuple)));
    });
    return best;
}

}  // namespace detail

inline SummingInstance build_multilinear(const MultilinearSpec& spec, double p) {
    spec.tensor.validate();
    const std::size_t n = spec.tensor.arity();
    const std::size_t m = spec.tuples.size();
    if (m == 0) throw std::invalid_argument("build_multilinear: empty test set");
    for (std::size_t j = 0; j < m; ++j) {
        if (spec.tuples[j].size() != n)
            throw std::invalid_argument("build_multilinear: tuple " + std::to_string(j) +
                                        " arity mismatch");
        for (std::size_t t = 0; t < n; ++t)
            if (spec.tuples[j][t].size() != spec.tensor.in_dims[t])
                throw std::invalid_argument("build_multilinear: tuple " +
                                            std::to_string(j) + " component " +
                                            std::to_string(t) + " dimension mismatch");
    }
    const std::vector<BallSpec> balls = detail::resolve_component_balls(spec);
    const Vec lambda = detail::resolve_scalars(spec.scalars, m, "build_multilinear");

    InstanceMetadata meta;
    meta.family = std::string("multilinear-") + multi_family_name(spec.family);
    for (std::size_t j = 0; j < m && !meta.null_pair; ++j) {
        bool zero = true;
        for (const Vec& comp : spec.tuples[j]) zero = zero && detail::all_zero(comp);
        if (zero) meta.null_pair = j;
    }

    // target values per tuple
    std::vector<Vec> t_values(m);
    for (std::size_t j = 0; j < m; ++j) t_values[j] = spec.tensor.apply(spec.tuples[j]);

    detail::RowAssembly rowset;
    Vec s(m);

    switch (spec.family) {
        case MultiFamily::Dominated: {
            // K = unit ball of the dual of the max-normed product; its extreme
            // points are dual-ball extreme points embedded in one component.
            for (std::size_t t = 0; t < n; ++t) {
                const BallPoints pts = dual_ball_points(balls[t], spec.tensor.in_dims[t]);
                for (std::size_t i = 0; i < pts.points.size(); ++i) {
                    Vec row(m);
                    for (std::size_t j = 0; j < m; ++j)
                        row[j] = std::abs(lambda[j]) *
                                 std::abs(dot(pts.points[i], spec.tuples[j][t]));
                    rowset.push(std::move(row),
                                "X" + std::to_string(t) + ":" + pts.labels[i]);
                }
            }
            for (std::size_t j = 0; j < m; ++j)
                s[j] = std::abs(lambda[j]) *
                       std::pow(vector_norm(t_values[j], spec.target_norm),
                                1.0 / static_cast<double>(n));
            break;
        }
        case MultiFamily::StronglySumming: {
            // K = sampled forms of norm <= 1 on the projective tensor product.
            // Norms are grid estimates, so the sampled ball sits slightly
            // inside the true one; pi can only be overestimated.
            std::mt19937_64 rng(spec.sample_seed);
            for (std::size_t fi = 0; fi < spec.form_samples; ++fi) {
                MultiTensor form;
                form.in_dims = spec.tensor.in_dims;
                form.out_dim = 1;
                form.data.resize(form.input_size());
                double norm = 0.0;
                do {
                    for (double& v : form.data) v = normal(rng);
                    norm = detail::estimate_form_norm(form, balls);
                } while (norm < 1e-12);
                for (double& v : form.data) v /= norm;
                Vec row(m);
                for (std::size_t j = 0; j < m; ++j)
                    row[j] = std::abs(lambda[j]) *
                             std::abs(form.apply_scalar(spec.tuples[j]));
                rowset.push(std::move(row), "B" + std::to_string(fi));
            }
            for (std::size_t j = 0; j < m; ++j)
                s[j] = std::abs(lambda[j]) * vector_norm(t_values[j], spec.target_norm);
            meta.family_meta["form_norm"] = "grid estimate; sampled ball may sit "
                                            "inside the true one (pi overestimated)";
            break;
        }
        case MultiFamily::SemiIntegral: {
            // K = product of the component dual balls; phi acts coordinatewise
            // and R multiplies the component values.
            std::vector<BallPoints> sets;
            for (std::size_t t = 0; t < n; ++t)
                sets.push_back(dual_ball_points(balls[t], spec.tensor.in_dims[t]));
            detail::for_each_product(sets, [&](const std::vector<std::size_t>& idx) {
                Vec row(m);
                for (std::size_t j = 0; j < m; ++j) {
                    double prod = std::abs(lambda[j]);
                    for (std::size_t t = 0; t < n; ++t)
                        prod *= std::abs(dot(sets[t].points[idx[t]], spec.tuples[j][t]));
                    row[j] = prod;
                }
                rowset.push(std::move(row), detail::product_label(sets, idx));
            });
            for (std::size_t j = 0; j < m; ++j)
                s[j] = std::abs(lambda[j]) * vector_norm(t_values[j], spec.target_norm);
            break;
        }
        case MultiFamily::TauP: {
            // K = product of component dual balls and the target ball (the
            // finite-dimensional target stands in for its bidual); G-elements
            // are functionals b_j on the target.
            if (spec.dual_targets.size() != m)
                throw std::invalid_argument(
                    "build_multilinear: tau-p needs one dual_target per tuple");
            for (const Vec& b : spec.dual_targets)
                if (b.size() != spec.tensor.out_dim)
                    throw std::invalid_argument(
                        "build_multilinear: dual_target dimension mismatch");
            std::vector<BallPoints> sets;
            for (std::size_t t = 0; t < n; ++t)
                sets.push_back(dual_ball_points(balls[t], spec.tensor.in_dims[t]));
            sets.push_back(dual_ball_points(spec.target_ball, spec.tensor.out_dim));
            detail::for_each_product(sets, [&](const std::vector<std::size_t>& idx) {
                const Vec& z = sets[n].points[idx[n]];
                Vec row(m);
                for (std::size_t j = 0; j < m; ++j) {
                    double prod = std::abs(dot(spec.dual_targets[j], z));
                    for (std::size_t t = 0; t < n; ++t)
                        prod *= std::abs(dot(sets[t].points[idx[t]], spec.tuples[j][t]));
                    row[j] = prod;
                }
                rowset.push(std::move(row), detail::product_label(sets, idx));
            });
            for (std::size_t j = 0; j < m; ++j)
                s[j] = std::abs(dot(spec.dual_targets[j], t_values[j]));
            meta.family_meta["bidual"] =
                "finite-dimensional target: bidual ball equals the target ball";
            break;
        }
    }

    rowset.dedup();
    meta.family_meta["rows_deduped"] = rowset.dropped;
    meta.family_meta["arity"] = n;
    nlohmann::json ball_meta = nlohmann::json::array();
    for (const BallSpec& ball : balls) ball_meta.push_back(ball.to_json());
    meta.family_meta["component_balls"] = std::move(ball_meta);
    if (spec.family == MultiFamily::StronglySumming) {
        meta.family_meta["form_samples"] = spec.form_samples;
        meta.family_meta["sample_seed"] = spec.sample_seed;
    }
    if (spec.family == MultiFamily::TauP)
        meta.family_meta["target_ball"] = spec.target_ball.to_json();
    return SummingInstance::build(Matrix::from_rows(rowset.rows), std::move(s), p,
                                  std::move(meta));
}

// --- homogeneous polynomials ----------------------------------------------------

enum class PolyFamily { Dominated, StronglySumming };

struct PolynomialSpec {
    std::size_t degree = 1;
    MultiTensor tensor;  // symmetric n-linear representative on X^n
    std::vector<Vec> tests;
    Vec scalars;
    PolyFamily family = PolyFamily::Dominated;
    BallSpec domain_ball;
    std::size_t form_samples = 64;
    std::uint64_t sample_seed = 1;
    NormTag target_norm = NormTag::Euclidean;
};

namespace detail {

inline void check_symmetric(const MultiTensor& tensor) {
    tensor.validate();
    const std::size_t n = tensor.arity();
    const std::size_t d = tensor.in_dims[0];
    for (std::size_t t = 1; t < n; ++t)
        if (tensor.in_dims[t] != d)
            throw std::invalid_argument("polynomial tensor: unequal input dimensions");
    const std::size_t total = tensor.input_size();
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<std::size_t> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        std::size_t canon = 0;
        for (std::size_t t = 0; t < n; ++t) canon = canon * d + sorted[t];
        for (std::size_t o = 0; o < tensor.out_dim; ++o)
            if (std::abs(tensor.data[o * total + flat] - tensor.data[o * total + canon]) >
                1e-12)
                throw std::invalid_argument(
                    "polynomial tensor: asymmetric at flat index " + std::to_string(flat));
        for (std::size_t t = n; t-- > 0;) {
            if (++idx[t] < d) break;
            idx[t] = 0;
        }
    }
}

}  // namespace detail

inline SummingInstance build_polynomial(const PolynomialSpec& spec, double p) {
    if (spec.degree == 0) throw std::invalid_argument("build_polynomial: degree 0");
    if (spec.tensor.arity() != spec.degree)
        throw std::invalid_argument("build_polynomial: tensor arity != degree");
    detail::check_symmetric(spec.tensor);
    if (spec.tests.empty()) throw std::invalid_argument("build_polynomial: empty test set");

    if (spec.family == PolyFamily::Dominated) {
        MultilinearSpec ml;
        ml.tensor = spec.tensor;
        ml.family = MultiFamily::Dominated;
        for (const Vec& x : spec.tests)
            ml.tuples.push_back(std::vector<Vec>(spec.degree, x));
        ml.scalars = spec.scalars;
        ml.component_balls.assign(spec.degree, spec.domain_ball);
        ml.target_norm = spec.target_norm;
        SummingInstance inst = build_multilinear(ml, p);
        InstanceMetadata meta;
        meta.family = "polynomial-dominated";
        meta.family_meta = inst.family_meta();
        meta.family_meta["degree"] = spec.degree;
        meta.family_meta["certificate_exponent"] =
            static_cast<double>(spec.degree) / p;  // the n/p in the polynomial display
        meta.k_labels = inst.k_labels();
        meta.pair_labels = inst.pair_labels();
        meta.null_pair = inst.null_pair();
        return SummingInstance::build(inst.r_matrix(), inst.s_vector(), p,
                                      std::move(meta));
    }

    // strongly summing: K is a sampled unit ball of scalar n-homogeneous
    // polynomials Q, with norms estimated over the domain ball.
    const std::size_t m = spec.tests.size();
    const Vec lambda = detail::resolve_scalars(spec.scalars, m, "build_polynomial");
    const std::vector<BallSpec> balls(spec.degree, spec.domain_ball);
    std::mt19937_64 rng(spec.sample_seed);
    detail::RowAssembly rowset;
    for (std::size_t fi = 0; fi < spec.form_samples; ++fi) {
        MultiTensor form;
        form.in_dims = spec.tensor.in_dims;
        form.out_dim = 1;
        form.data.resize(form.input_size());
        double norm = 0.0;
        do {
            for (double& v : form.data) v = normal(rng);
            norm = 0.0;
            // ||Q|| = sup |Q(x)| over the domain ball; enumerate its points
            const BallPoints pts = domain_ball_points(spec.domain_ball,
                                                      spec.tensor.in_dims[0]);
            for (const Vec& x : pts.points)
                norm = std::max(norm, std::abs(form.apply_diagonal(x)[0]));
        } while (norm < 1e-12);
        for (double& v : form.data) v /= norm;
        Vec row(m);
        for (std::size_t j = 0; j < m; ++j)
            row[j] = std::abs(lambda[j]) * std::abs(form.apply_diagonal(spec.tests[j])[0]);
        rowset.push(std::move(row), "Q" + std::to_string(fi));
    }
    rowset.dedup();

    Vec s(m);
    InstanceMetadata meta;
    for (std::size_t j = 0; j < m; ++j) {
        s[j] = std::abs(lambda[j]) *
               vector_norm(spec.tensor.apply_diagonal(spec.tests[j]), spec.target_norm);
        if (!meta.null_pair && detail::all_zero(spec.tests[j])) meta.null_pair = j;
    }
    meta.family = "polynomial-strongly-summing";
    meta.family_meta = {{"degree", spec.degree},
                        {"rows_deduped", rowset.dropped},
                        {"form_norm", "domain-ball estimate"},
                        {"domain_ball", spec.domain_ball.to_json()},
                        {"form_samples", spec.form_samples},
                        {"sample_seed", spec.sample_seed}};
    return SummingInstance::build(Matrix::from_rows(rowset.rows), std::move(s), p,
                                  std::move(meta));
}

// --- alpha-subhomogeneous maps ----------------------------------------------------

struct SubhomogeneousSpec {
    std::vector<Vec> points;  // sampled domain points, must include 0
    std::vector<Vec> values;  // f at those points, f(0) = 0
    Vec scalars;              // eta_j; empty means all ones
    double alpha = 1.0;
    BallSpec domain_ball;
    NormTag target_norm = NormTag::Euclidean;
};

inline SummingInstance build_subhomogeneous(const SubhomogeneousSpec& spec, double p) {
    if (!(spec.alpha > 0.0) || !is_finite(spec.alpha))
        throw std::invalid_argument("build_subhomogeneous: alpha must be positive");
    if (spec.points.empty() || spec.points.size() != spec.values.size())
        throw std::invalid_argument("build_subhomogeneous: malformed mapping table");
    const std::size_t m = spec.points.size();
    const std::size_t dim = spec.points.front().size();
    const Vec eta = detail::resolve_scalars(spec.scalars, m, "build_subhomogeneous");

    InstanceMetadata meta;
    for (std::size_t j = 0; j < m; ++j) {
        if (spec.points[j].size() != dim)
            throw std::invalid_argument("build_subhomogeneous: ragged table");
        if (detail::all_zero(spec.points[j])) {
            if (vector_norm(spec.values[j], spec.target_norm) != 0.0)
                throw std::invalid_argument("build_subhomogeneous: f(0) != 0");
            if (!meta.null_pair) meta.null_pair = j;
        }
    }
    if (!meta.null_pair)
        throw std::invalid_argument(
            "build_subhomogeneous: the table must contain the origin with f(0) = 0");

    const BallPoints ball = dual_ball_points(spec.domain_ball, dim);
    detail::RowAssembly rowset;
    for (std::size_t i = 0; i < ball.points.size(); ++i) {
        Vec row(m);
        for (std::size_t j = 0; j < m; ++j)
            row[j] = std::abs(eta[j]) * std::abs(dot(ball.points[i], spec.points[j]));
        rowset.push(std::move(row), ball.labels[i]);
    }
    rowset.dedup();

    Vec s(m);
    for (std::size_t j = 0; j < m; ++j)
        s[j] = std::abs(eta[j]) *
               std::pow(vector_norm(spec.values[j], spec.target_norm), 1.0 / spec.alpha);
    meta.family = "subhomogeneous";
    meta.family_meta = {{"alpha", spec.alpha},
                        {"domain_ball", spec.domain_ball.to_json()},
                        {"rows_deduped", rowset.dropped}};
    return SummingInstance::build(Matrix::from_rows(rowset.rows), std::move(s), p,
                                  std::move(meta));
}

// --- arbitrary maps, summing at a point --------------------------------------------

struct ArbitraryAtPointSpec {
    Vec base_point;                              // a
    std::vector<Vec> tests;                      // x_j
    std::vector<std::pair<Vec, Vec>> table;      // (point, f(point)) samples
    Vec weights;                                 // b_j; empty means all ones
    BallSpec domain_ball;
    NormTag target_norm = NormTag::Euclidean;
};

namespace detail {

inline const Vec& table_lookup(const std::vector<std::pair<Vec, Vec>>& table,
                               const Vec& point, const char* what) {
    for (const auto& [x, fx] : table)
        if (inf_norm_dist(x, point) <= 1e-12) return fx;
    std::string msg = std::string(what) + ": missing table entry for (";
    for (std::size_t i = 0; i < point.size(); ++i)
        msg += (i ? "," : "") + std::to_string(point[i]);
    throw std::invalid_argument(msg + ")");
}

}  // namespace detail

inline SummingInstance build_arbitrary_at_point(const ArbitraryAtPointSpec& spec,
                                                double p) {
    if (spec.tests.empty())
        throw std::invalid_argument("build_arbitrary_at_point: empty test set");
    const std::size_t dim = spec.base_point.size();
    const std::size_t m = spec.tests.size();
    const Vec b = detail::resolve_scalars(spec.weights, m, "build_arbitrary_at_point");
    const Vec& f_a =
        detail::table_lookup(spec.table, spec.base_point, "build_arbitrary_at_point");

    const double inv_p = 1.0 / p;
    Vec s(m);
    InstanceMetadata meta;
    for (std::size_t j = 0; j < m; ++j) {
        if (spec.tests[j].size() != dim)
            throw std::invalid_argument("build_arbitrary_at_point: test " +
                                        std::to_string(j) + " dimension mismatch");
        Vec shifted = spec.base_point;
        for (std::size_t i = 0; i < dim; ++i) shifted[i] += spec.tests[j][i];
        const Vec& f_shifted =
            detail::table_lookup(spec.table, shifted, "build_arbitrary_at_point");
        Vec diff(f_shifted.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = f_shifted[i] - f_a[i];
        s[j] = std::pow(std::abs(b[j]), inv_p) * vector_norm(diff, spec.target_norm);
        if (!meta.null_pair && detail::all_zero(spec.tests[j])) meta.null_pair = j;
    }

    const BallPoints ball = dual_ball_points(spec.domain_ball, dim);
    detail::RowAssembly rowset;
    for (std::size_t i = 0; i < ball.points.size(); ++i) {
        Vec row(m);
        for (std::size_t j = 0; j < m; ++j)
            row[j] = std::pow(std::abs(b[j]), inv_p) *
                     std::abs(dot(ball.points[i], spec.tests[j]));
        rowset.push(std::move(row), ball.labels[i]);
    }
    rowset.dedup();

    meta.family = "arbitrary-at-point";
    meta.family_meta = {{"domain_ball", spec.domain_ball.to_json()},
                        {"rows_deduped", rowset.dropped}};
    return SummingInstance::build(Matrix::from_rows(rowset.rows), std::move(s), p,
                                  std::move(meta));
}

/// Numerical face of the rational-multiplicity reduction: the LP value over
/// real weights against the best integer-repetition multiset up to the given
/// bound. The gap shrinks as the bound grows and vanishes exactly when the LP
/// optimum has small rational coordinates.
struct WeightedEquivalenceReport {
    double lp_value = 0.0;
    double multiset_value = 0.0;
    double gap = 0.0;
    double relative_gap = 0.0;
    long long bound = 0;
    bool exhaustive = true;
};

inline WeightedEquivalenceReport weighted_equivalence_check(const SummingInstance& inst,
                                                            long long multiplicity_bound,
                                                            long long budget = 1'000'000) {
    WeightedEquivalenceReport rep;
    rep.bound = multiplicity_bound;
    const SummingResult lp = summing_constant(inst);
    rep.lp_value = lp.pi;
    const MultisetSearchReport ms = pi_by_multisets(inst, multiplicity_bound, budget);
    rep.multiset_value = ms.best_value;
    rep.exhaustive = ms.exhaustive;
    rep.gap = rep.lp_value - rep.multiset_value;
    rep.relative_gap = rep.gap / (1.0 + rep.lp_value);
    return rep;
}

// --- the circle oracle ---------------------------------------------------------

/// Continuum-K oracle for linear families on 2-dimensional Euclidean space:
/// K is the whole unit circle of functionals. For p = 2 the weighted sum is
/// the quadratic form of M = sum_j w_j lambda_j^2 x_j x_j^T and the argmax is
/// its top eigenvector, in closed form; other p fall back to a dense angular
/// grid with golden-section refinement.
inline KOracle make_circle_oracle(std::vector<Vec> test_vectors, Vec scalars, double p) {
    for (const Vec& x : test_vectors)
        if (x.size() != 2)
            throw std::invalid_argument("circle oracle: test vectors must be 2-dimensional");
    const std::size_t m = test_vectors.size();
    if (scalars.empty()) scalars.assign(m, 1.0);
    if (scalars.size() != m)
        throw std::invalid_argument("circle oracle: scalars length mismatch");

    auto result_at = [test_vectors, scalars, p](double theta, const Vec& w) {
        OracleResult out;
        const Vec phi = {std::cos(theta), std::sin(theta)};
        out.point.r_row.resize(test_vectors.size());
        out.value = 0.0;
        for (std::size_t j = 0; j < test_vectors.size(); ++j) {
            out.point.r_row[j] = std::abs(scalars[j]) * std::abs(dot(phi, test_vectors[j]));
            out.value += w[j] * std::pow(out.point.r_row[j], p);
        }
        char buf[48];
        std::snprintf(buf, sizeof buf, "theta=%.12f", theta);
        out.point.label = buf;
        return out;
    };

    return [test_vectors, scalars, p, result_at](const Vec& w) {
        if (w.size() != test_vectors.size())
            throw std::invalid_argument("circle oracle: weight length mismatch");
        if (p == 2.0) {
            double a = 0.0, bb = 0.0, c = 0.0;
            for (std::size_t j = 0; j < test_vectors.size(); ++j) {
                const double lj2 = scalars[j] * scalars[j] * w[j];
                a += lj2 * test_vectors[j][0] * test_vectors[j][0];
                bb += lj2 * test_vectors[j][0] * test_vectors[j][1];
                c += lj2 * test_vectors[j][1] * test_vectors[j][1];
            }
            const double half_gap = 0.5 * (a - c);
            const double disc = std::sqrt(half_gap * half_gap + bb * bb);
            const double lam_max = 0.5 * (a + c) + disc;
            Vec v = {bb, lam_max - a};
            if (vector_norm(v) < 1e-14 * (1.0 + std::abs(lam_max)))
                v = {lam_max - c, bb};
            if (vector_norm(v) < 1e-14 * (1.0 + std::abs(lam_max))) v = {1.0, 0.0};
            return result_at(std::atan2(v[1], v[0]), w);
        }
        // dense grid plus golden-section polish around the best cell
        const int grid = 2048;
        double best_theta = 0.0, best_value = -kInf;
        for (int t = 0; t < grid; ++t) {
            const double theta = 3.141592653589793 * t / grid;  // |phi(x)| has period pi
            const OracleResult cand = result_at(theta, w);
            if (cand.value > best_value) { best_value = cand.value; best_theta = theta; }
        }
        const double step = 3.141592653589793 / grid;
        double lo = best_theta - step, hi = best_theta + step;
        const double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = result_at(x1, w).value, f2 = result_at(x2, w).value;
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = result_at(x2, w).value;
            } else {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = result_at(x1, w).value;
            }
        }
        return result_at(0.5 * (lo + hi), w);
    };
}

}  // namespace pietsch
