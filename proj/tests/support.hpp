#pragma once

// Shared helpers for the unit and acceptance suites: independent reference
// computations (vertex enumeration for LPs) and seeded random generators.

#include <algorithm>
#include <optional>
#include <vector>

#include "pietsch/common.hpp"
#include "pietsch/instance.hpp"
#include "pietsch/lp.hpp"

namespace testsupport {

using pietsch::Matrix;
using pietsch::Vec;

// --- brute-force LP oracle ---------------------------------------------------
//
// Enumerates candidate vertices of {A x <= b, x >= 0} by activating every
// n-subset of the q + n constraints and solving the square system. Only valid
// for bounded feasible regions, which the generators below guarantee.

inline bool solve_square(std::vector<Vec> M, Vec rhs, Vec& out) {
    const std::size_t n = rhs.size();
    out.assign(n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) < 1e-11) return false;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = M[r][col] / M[col][col];
            if (f == 0.0) continue;
            for (std::size_t c2 = col; c2 < n; ++c2) M[r][c2] -= f * M[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / M[i][i];
    return true;
}

/// Max of c.x over the (bounded) region by vertex enumeration; nullopt when
/// no feasible vertex exists.
inline std::optional<double> lp_value_by_vertex_enumeration(const pietsch::LpProblem& prob,
                                                            double feas_tol = 1e-7) {
    const std::size_t n = prob.objective.size();
    const std::size_t q = prob.rhs.size();
    const std::size_t total = q + n;  // q rows then n sign constraints
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    std::optional<double> best;

    auto feasible = [&](const Vec& x) {
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] < -feas_tol) return false;
        for (std::size_t i = 0; i < q; ++i) {
            double ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) ax += prob.constraints(i, j) * x[j];
            if (ax > prob.rhs[i] + feas_tol * (1.0 + std::abs(prob.rhs[i]))) return false;
        }
        return true;
    };

    while (true) {
        std::vector<Vec> M(n, Vec(n, 0.0));
        Vec rhs(n, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t c = pick[r];
            if (c < q) {
                for (std::size_t j = 0; j < n; ++j) M[r][j] = prob.constraints(c, j);
                rhs[r] = prob.rhs[c];
            } else {
                M[r][c - q] = 1.0;
                rhs[r] = 0.0;
            }
        }
        Vec x;
        if (solve_square(M, rhs, x) && feasible(x)) {
            double val = 0.0;
            for (std::size_t j = 0; j < n; ++j) val += prob.objective[j] * x[j];
            if (!best || val > *best) best = val;
        }
        // next combination
        bool advanced = false;
        std::size_t i = n;
        while (i-- > 0) {
            if (pick[i] + (n - i) < total) {
                ++pick[i];
                for (std::size_t r = i + 1; r < n; ++r) pick[r] = pick[r - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return best;
}

// --- random problem generators ------------------------------------------------

/// Random bounded-feasible LP on an integer grid. An all-positive covering row
/// keeps the region bounded so the vertex oracle is exact.
inline pietsch::LpProblem random_bounded_lp(std::mt19937_64& rng, std::size_t max_n,
                                            std::size_t max_q) {
    using namespace pietsch;
    const std::size_t n = 1 + uniform_index(rng, max_n);
    const std::size_t q0 = 1 + uniform_index(rng, max_q);
    LpProblem prob;
    prob.objective.resize(n);
    for (double& c : prob.objective)
        c = static_cast<double>(static_cast<long long>(uniform_index(rng, 13)) - 3);
    prob.constraints = Matrix(q0 + 1, n);
    prob.rhs.resize(q0 + 1);
    for (std::size_t i = 0; i < q0; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            prob.constraints(i, j) =
                static_cast<double>(static_cast<long long>(uniform_index(rng, 11)) - 5);
        prob.rhs[i] = static_cast<double>(1 + uniform_index(rng, 10));
    }
    for (std::size_t j = 0; j < n; ++j)
        prob.constraints(q0, j) = static_cast<double>(1 + uniform_index(rng, 3));
    prob.rhs[q0] = static_cast<double>(5 + uniform_index(rng, 20));
    return prob;
}

/// Random summing instance; every pair with s_j > 0 is covered by a positive
/// r entry, so the instance is always summing.
inline pietsch::SummingInstance random_instance(std::mt19937_64& rng, std::size_t max_m,
                                                std::size_t max_k,
                                                const Vec& p_choices = {1.0, 1.5, 2.0, 4.0}) {
    using namespace pietsch;
    const std::size_t m = 1 + uniform_index(rng, max_m);
    const std::size_t k = 1 + uniform_index(rng, max_k);
    const double p = p_choices[uniform_index(rng, p_choices.size())];
    Matrix r(k, m);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j)
            r(i, j) = uniform01(rng) < 0.25 ? 0.0 : uniform(rng, 0.0, 2.0);
    for (std::size_t j = 0; j < m; ++j) {
        bool covered = false;
        for (std::size_t i = 0; i < k; ++i) covered = covered || r(i, j) > 0.0;
        if (!covered) r(uniform_index(rng, k), j) = uniform(rng, 0.5, 2.0);
    }
    Vec s(m);
    for (std::size_t j = 0; j < m; ++j)
        s[j] = uniform01(rng) < 0.15 ? 0.0 : uniform(rng, 0.0, 2.0);
    return SummingInstance::build(std::move(r), std::move(s), p);
}

}  // namespace testsupport
