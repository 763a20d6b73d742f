#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pietsch/common.hpp"

namespace pietsch {

/// maximize c.w  subject to  A.w <= rhs, w >= 0.
struct LpProblem {
    Vec objective;      // length n
    Matrix constraints; // q x n
    Vec rhs;            // length q
};

struct LpSolution {
    enum class Status { Optimal, Unbounded, Infeasible };
    Status status = Status::Optimal;
    double value = 0.0;
    Vec primal;      // length n, >= 0
    Vec dual;        // length q, >= 0 (for Optimal)
    Vec ray;         // length n, certified improving ray (for Unbounded)
    int iterations = 0;
};

struct DualityGapReport {
    double primal_residual = 0.0;   // max constraint violation of the primal
    double dual_residual = 0.0;     // max violation of A^T y >= c
    double objective_gap = 0.0;     // |c.x - rhs.y|
    bool ok = false;
};

/// Thrown when the pivot cap is hit; carries the best bound seen so that a
/// caller never mistakes a truncated run for an optimum.
class IterationLimitError : public std::runtime_error {
  public:
    IterationLimitError(const std::string& what, double bound)
        : std::runtime_error(what), best_bound(bound) {}
    double best_bound;
};

namespace detail {

constexpr double kPivotTol = 1e-10;
constexpr int kStallWindow = 50;  // degenerate Dantzig pivots before Bland kicks in

/// Dense Gaussian solve with partial pivoting; returns false on singularity.
inline bool solve_dense(std::vector<Vec> M, Vec rhs, Vec& out) {
    const std::size_t n = rhs.size();
    out.assign(n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) < 1e-13) return false;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = M[r][col] / M[col][col];
            if (f == 0.0) continue;
            for (std::size_t c2 = col; c2 < n; ++c2) M[r][c2] -= f * M[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t r = n; r-- > 0;) {
        double acc = rhs[r];
        for (std::size_t c2 = r + 1; c2 < n; ++c2) acc -= M[r][c2] * out[c2];
        out[r] = acc / M[r][r];
    }
    return true;
}

/// Full-tableau primal simplex, two phases. Columns are laid out as
/// [structural | slack | artificial]. Rows with negative rhs are negated up
/// front and given an artificial variable, so phase 1 starts from an identity
/// basis; the final answers are refactorized against the original data.
class SimplexTableau {
  public:
    SimplexTableau(const LpProblem& prob)
        : prob_(&prob), n_(prob.objective.size()), q_(prob.rhs.size()) {
        for (double v : prob.objective)
            if (!is_finite(v)) throw std::invalid_argument("lp: non-finite objective");
        for (double v : prob.rhs)
            if (!is_finite(v)) throw std::invalid_argument("lp: non-finite rhs");
        for (double v : prob.constraints.data)
            if (!is_finite(v)) throw std::invalid_argument("lp: non-finite constraint");
        if (prob.constraints.rows != q_ || prob.constraints.cols != n_)
            throw std::invalid_argument("lp: dimension mismatch");

        art_rows_.clear();
        for (std::size_t i = 0; i < q_; ++i)
            if (prob.rhs[i] < 0.0) art_rows_.push_back(i);
        n_art_ = art_rows_.size();
        width_ = n_ + q_ + n_art_;
        if (static_cast<double>(q_) * static_cast<double>(width_) > 2.5e8)
            throw std::invalid_argument(
                "lp: " + std::to_string(q_) + " x " + std::to_string(width_) +
                " tableau exceeds the dense desk-scale budget");

        tab_ = Matrix(q_, width_);
        b_.assign(q_, 0.0);
        basis_.assign(q_, 0);
        row_sign_.assign(q_, 1.0);
        std::size_t art = 0;
        for (std::size_t i = 0; i < q_; ++i) {
            const double sign = prob.rhs[i] < 0.0 ? -1.0 : 1.0;
            row_sign_[i] = sign;
            for (std::size_t j = 0; j < n_; ++j) tab_(i, j) = sign * prob.constraints(i, j);
            tab_(i, n_ + i) = sign;
            b_[i] = sign * prob.rhs[i];
            if (sign < 0.0) {
                tab_(i, n_ + q_ + art) = 1.0;
                basis_[i] = n_ + q_ + art;
                ++art;
            } else {
                basis_[i] = n_ + i;
            }
        }

        cost_.assign(width_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) cost_[j] = prob.objective[j];
        max_iter_ = 50 * static_cast<int>(n_ + q_);
    }

    LpSolution solve() {
        LpSolution sol;
        if (n_art_ > 0) {
            Vec phase1_cost(width_, 0.0);
            for (std::size_t a = 0; a < n_art_; ++a) phase1_cost[n_ + q_ + a] = -1.0;
            load_objective(phase1_cost);
            const bool bounded = iterate(/*allow_unbounded=*/false);
            (void)bounded;  // phase-1 objective is bounded above by 0
            if (value_ < -feasibility_tol()) {
                sol.status = LpSolution::Status::Infeasible;
                sol.iterations = iterations_;
                return sol;
            }
            expel_artificials();
        }
        load_objective(cost_);
        if (!iterate(/*allow_unbounded=*/true)) {
            sol.status = LpSolution::Status::Unbounded;
            sol.ray = extract_ray();
            sol.iterations = iterations_;
            return sol;
        }
        sol.status = LpSolution::Status::Optimal;
        sol.iterations = iterations_;
        if (!refactorize(sol)) {
            // drifted basis turned out numerically singular; fall back to the
            // tableau values and let the caller's residual check arbitrate
            sol.value = value_;
            sol.primal = extract_primal();
            sol.dual = extract_dual();
        }
        return sol;
    }

  private:
    double feasibility_tol() const {
        double bmax = 0.0;
        for (double v : b_) bmax = std::max(bmax, std::abs(v));
        return 1e-9 * (1.0 + bmax);
    }

    /// Reduced costs d_j = c_j - c_B B^{-1} A_j and objective value for the
    /// given cost vector, from scratch over the current tableau. Recomputed
    /// after every pivot: the incremental objective-row update accumulates
    /// error fast enough on dense desk-scale tableaus to break the dual
    /// residual bounds, and a full recompute costs no more than the pivot.
    void load_objective(const Vec& cost) {
        active_cost_ = cost;
        refresh_reduced_costs();
    }

    void refresh_reduced_costs() {
        d_.assign(width_, 0.0);
        value_ = 0.0;
        for (std::size_t j = 0; j < width_; ++j) d_[j] = active_cost_[j];
        for (std::size_t i = 0; i < q_; ++i) {
            const double cb = active_cost_[basis_[i]];
            if (cb == 0.0) continue;
            value_ += cb * b_[i];
            for (std::size_t j = 0; j < width_; ++j) d_[j] -= cb * tab_(i, j);
        }
    }

    double entering_tol() const {
        double cmax = 0.0;
        for (double v : active_cost_) cmax = std::max(cmax, std::abs(v));
        return 1e-10 * (1.0 + cmax);
    }

    bool column_allowed(std::size_t j) const {
        // artificials never re-enter once phase 1 seats the basis
        return j < n_ + q_;
    }

    /// Runs pivots until optimal (true) or unbounded (false). Dantzig pricing
    /// with a stall counter; after kStallWindow degenerate pivots in a row the
    /// rule switches to Bland until the objective strictly moves again.
    bool iterate(bool allow_unbounded) {
        const double enter_tol = entering_tol();
        int stall = 0;
        bool bland = false;
        while (true) {
            std::size_t e = width_;
            if (!bland) {
                double best = enter_tol;
                for (std::size_t j = 0; j < width_; ++j)
                    if (column_allowed(j) && d_[j] > best) { best = d_[j]; e = j; }
            } else {
                for (std::size_t j = 0; j < width_; ++j)
                    if (column_allowed(j) && d_[j] > enter_tol) { e = j; break; }
            }
            if (e == width_) return true;  // optimal for current objective

            std::size_t leave = q_;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < q_; ++i) {
                const double a = tab_(i, e);
                if (a <= kPivotTol) continue;
                const double ratio = std::max(b_[i], 0.0) / a;
                if (leave == q_) {
                    best_ratio = ratio;
                    leave = i;
                    continue;
                }
                const double window = 1e-9 * (1.0 + best_ratio);
                if (ratio < best_ratio - window) {
                    best_ratio = ratio;
                    leave = i;
                } else if (ratio < best_ratio + window) {
                    if (bland) {
                        if (basis_[i] < basis_[leave]) leave = i;
                    } else if (a > tab_(leave, e)) {
                        leave = i;  // larger pivot, better conditioning
                        best_ratio = std::min(best_ratio, ratio);
                    }
                }
            }
            if (leave == q_) {
                if (allow_unbounded) { unbounded_col_ = e; return false; }
                // phase 1 is bounded; numerically stuck counts as done
                return true;
            }

            const double before = value_;
            pivot(leave, e);
            if (++iterations_ > max_iter_)
                throw IterationLimitError(
                    "lp: iteration cap " + std::to_string(max_iter_) +
                    " exceeded; best objective bound " + std::to_string(value_),
                    value_);
            if (value_ - before <= 1e-12 * (1.0 + std::abs(before))) {
                if (++stall >= kStallWindow) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
        }
    }

    void pivot(std::size_t r, std::size_t e) {
        const double piv = tab_(r, e);
        const double inv = 1.0 / piv;
        for (std::size_t j = 0; j < width_; ++j) tab_(r, j) *= inv;
        b_[r] *= inv;
        tab_(r, e) = 1.0;
        for (std::size_t i = 0; i < q_; ++i) {
            if (i == r) continue;
            const double a = tab_(i, e);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) tab_(i, j) -= a * tab_(r, j);
            tab_(i, e) = 0.0;
            b_[i] -= a * b_[r];
        }
        basis_[r] = e;
        refresh_reduced_costs();
    }

    /// After phase 1, swap any artificial still seated (at value ~0) for a
    /// real column; a row with no eligible pivot is redundant and keeps its
    /// artificial frozen at zero.
    void expel_artificials() {
        for (std::size_t i = 0; i < q_; ++i) {
            if (basis_[i] < n_ + q_) continue;
            std::size_t e = width_;
            for (std::size_t j = 0; j < n_ + q_; ++j)
                if (std::abs(tab_(i, j)) > kPivotTol) { e = j; break; }
            if (e == width_) continue;
            pivot(i, e);
        }
    }

    Vec extract_primal() const {
        Vec x(n_, 0.0);
        for (std::size_t i = 0; i < q_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = std::max(b_[i], 0.0);
        return x;
    }

    /// Column of the equality system [DA | D | artificials] from original data.
    Vec equality_column(std::size_t j) const {
        Vec col(q_, 0.0);
        if (j < n_) {
            for (std::size_t i = 0; i < q_; ++i)
                col[i] = row_sign_[i] * prob_->constraints(i, j);
        } else if (j < n_ + q_) {
            col[j - n_] = row_sign_[j - n_];
        } else {
            col[art_rows_[j - n_ - q_]] = 1.0;
        }
        return col;
    }

    /// The tableau accumulates elimination error over pivots; once the final
    /// basis is known, primal and dual come from one clean solve against the
    /// original matrix: B x_B = b and B^T w = c_B. Two iterative-refinement
    /// steps keep the residuals at backward-stable size even for
    /// ill-conditioned optimal bases.
    bool refactorize(LpSolution& sol) const {
        std::vector<Vec> B(q_, Vec(q_, 0.0));
        std::vector<Vec> Bt(q_, Vec(q_, 0.0));
        Vec cb(q_, 0.0), bt(q_, 0.0);
        for (std::size_t i = 0; i < q_; ++i) {
            const Vec col = equality_column(basis_[i]);
            for (std::size_t r = 0; r < q_; ++r) {
                B[r][i] = col[r];
                Bt[i][r] = col[r];
            }
            cb[i] = basis_[i] < n_ ? prob_->objective[basis_[i]] : 0.0;
            bt[i] = row_sign_[i] * prob_->rhs[i];
        }
        auto refined_solve = [this](const std::vector<Vec>& M, const Vec& rhs, Vec& x) {
            if (!solve_dense(M, rhs, x)) return false;
            for (int step = 0; step < 2; ++step) {
                Vec resid(q_);
                for (std::size_t i = 0; i < q_; ++i) {
                    long double acc = rhs[i];
                    for (std::size_t j = 0; j < q_; ++j)
                        acc -= static_cast<long double>(M[i][j]) * x[j];
                    resid[i] = static_cast<double>(acc);
                }
                Vec delta;
                if (!solve_dense(M, resid, delta)) break;
                for (std::size_t j = 0; j < q_; ++j) x[j] += delta[j];
            }
            return true;
        };
        Vec xb, w;
        if (!refined_solve(B, bt, xb) || !refined_solve(Bt, cb, w)) return false;
        sol.primal.assign(n_, 0.0);
        for (std::size_t i = 0; i < q_; ++i)
            if (basis_[i] < n_) sol.primal[basis_[i]] = std::max(xb[i], 0.0);
        sol.dual.assign(q_, 0.0);
        for (std::size_t i = 0; i < q_; ++i)
            sol.dual[i] = std::max(row_sign_[i] * w[i], 0.0);
        sol.value = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            sol.value += prob_->objective[j] * sol.primal[j];
        return true;
    }

    /// y_i = -d_{slack_i}; the row-negation signs cancel, see the residual
    /// checks in solve_lp for the independent confirmation.
    Vec extract_dual() const {
        Vec y(q_, 0.0);
        for (std::size_t i = 0; i < q_; ++i) y[i] = std::max(-d_[n_ + i], 0.0);
        return y;
    }

    Vec extract_ray() const {
        Vec ray(n_, 0.0);
        if (unbounded_col_ < n_) ray[unbounded_col_] = 1.0;
        for (std::size_t i = 0; i < q_; ++i)
            if (basis_[i] < n_) ray[basis_[i]] = std::max(-tab_(i, unbounded_col_), 0.0);
        return ray;
    }

    const LpProblem* prob_;
    std::size_t n_, q_, n_art_ = 0, width_ = 0;
    std::vector<std::size_t> art_rows_;
    Vec row_sign_;
    Matrix tab_;
    Vec b_;
    std::vector<std::size_t> basis_;
    Vec cost_;         // phase-2 costs over all columns
    Vec active_cost_;  // costs for the phase currently iterating
    Vec d_;            // reduced costs
    double value_ = 0.0;
    int iterations_ = 0;
    int max_iter_ = 0;
    std::size_t unbounded_col_ = 0;
};

inline DualityGapReport residuals(const LpProblem& prob, const LpSolution& sol) {
    DualityGapReport rep;
    const std::size_t n = prob.objective.size(), q = prob.rhs.size();
    for (std::size_t i = 0; i < q; ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < n; ++j) ax += prob.constraints(i, j) * sol.primal[j];
        rep.primal_residual = std::max(rep.primal_residual, ax - prob.rhs[i]);
    }
    for (std::size_t j = 0; j < n; ++j)
        rep.primal_residual = std::max(rep.primal_residual, -sol.primal[j]);
    for (std::size_t j = 0; j < n; ++j) {
        double aty = 0.0;
        for (std::size_t i = 0; i < q; ++i) aty += prob.constraints(i, j) * sol.dual[i];
        rep.dual_residual = std::max(rep.dual_residual, prob.objective[j] - aty);
    }
    for (std::size_t i = 0; i < q; ++i)
        rep.dual_residual = std::max(rep.dual_residual, -sol.dual[i]);
    double cx = 0.0, by = 0.0;
    for (std::size_t j = 0; j < n; ++j) cx += prob.objective[j] * sol.primal[j];
    for (std::size_t i = 0; i < q; ++i) by += prob.rhs[i] * sol.dual[i];
    rep.objective_gap = std::abs(cx - by);
    return rep;
}

}  // namespace detail

/// Solves the LP. When the result says Optimal, the primal/dual pair has been
/// re-checked against the residual bounds below; a solve that cannot meet
/// them throws instead of returning a wrong answer.
inline LpSolution solve_lp(const LpProblem& prob) {
    detail::SimplexTableau tableau(prob);
    LpSolution sol = tableau.solve();
    if (sol.status == LpSolution::Status::Optimal) {
        const auto rep = detail::residuals(prob, sol);
        double bmax = 0.0, cmax = 0.0;
        for (double v : prob.rhs) bmax = std::max(bmax, std::abs(v));
        for (double v : prob.objective) cmax = std::max(cmax, std::abs(v));
        if (rep.primal_residual > 1e-9 * (1.0 + bmax) ||
            rep.dual_residual > 1e-9 * (1.0 + cmax) ||
            rep.objective_gap > 1e-8 * (1.0 + std::abs(sol.value))) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "lp: solution failed residual verification "
                          "(primal %.3e, dual %.3e, gap %.3e)",
                          rep.primal_residual, rep.dual_residual, rep.objective_gap);
            throw std::runtime_error(msg);
        }
    }
    return sol;
}

/// Recomputes feasibility and the objective gap from the reported vectors.
inline DualityGapReport check_strong_duality(const LpProblem& prob,
                                             const LpSolution& sol, double tol) {
    if (sol.status != LpSolution::Status::Optimal)
        throw std::invalid_argument("check_strong_duality: solution not optimal");
    if (!(tol > 0.0)) throw std::invalid_argument("check_strong_duality: tol <= 0");
    DualityGapReport rep = detail::residuals(prob, sol);
    double bmax = 0.0, cmax = 0.0;
    for (double v : prob.rhs) bmax = std::max(bmax, std::abs(v));
    for (double v : prob.objective) cmax = std::max(cmax, std::abs(v));
    rep.ok = rep.primal_residual <= tol * (1.0 + bmax) &&
             rep.dual_residual <= tol * (1.0 + cmax) &&
             rep.objective_gap <= tol * (1.0 + std::abs(sol.value));
    return rep;
}

}  // namespace pietsch
