#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pietsch/domination.hpp"
#include "pietsch/instance.hpp"

namespace pietsch {

/// One sampled point of a continuum K: an opaque descriptor plus its row of
/// R-values over the m test pairs.
struct KPoint {
    std::string label;
    Vec r_row;
};

struct OracleResult {
    KPoint point;
    double value = 0.0;  // sup over K of sum_j w_j R(phi, x_j, b_j)^p, at this point
};

/// The compactness argmax as an interface: given multiplicities w over the
/// test pairs, return a K point maximizing the weighted p-th power sum, with
/// value equal to that sum at the returned point (up to the oracle's own
/// tolerance).
using KOracle = std::function<OracleResult(const Vec& weights)>;

struct ExchangeHistory {
    struct Iteration {
        int iter = 0;
        std::string added_label;
        double primal = 0.0;      // finite-K optimum, upper bound
        double dual_bound = 0.0;  // primal / oracle value, valid lower bound
        double gap = 0.0;         // oracle value - 1 at the normalized optimum
        double oracle_value = 0.0;
        std::size_t rows = 0;
        bool cert_valid = false;  // certificate of this round's row set
    };
    std::vector<Iteration> iterations;
    std::string final_status;
};

struct ExchangeResult {
    bool summing = true;
    bool converged = false;
    std::string status;  // "converged" | "max_iter" | "stalled" | "not_summing"
    double pi = 0.0;
    double lower_bound = 0.0;
    double upper_bound = kInf;
    int oracle_calls = 0;
    std::optional<SummingInstance> instance;  // final generated row set
    std::optional<DominationCertificate> certificate;
    ExchangeHistory history;
    std::string diagnostic;
};

/// Exchange (cutting-plane) solve over a continuum K. Each round solves the
/// finite relaxation on the rows generated so far, asks the oracle for the
/// most violated K point at the optimal multiplicities, and either stops
/// (violation within gap_tol) or appends the new row. Rows are never dropped.
inline ExchangeResult solve_with_oracle(const Vec& s_vector, double p,
                                        const KOracle& oracle,
                                        const std::vector<KPoint>& seed_points,
                                        double gap_tol = 1e-6, int max_iter = 200) {
    if (seed_points.empty())
        throw std::invalid_argument("solve_with_oracle: need at least one seed point");
    if (!(gap_tol > 0.0)) throw std::invalid_argument("solve_with_oracle: gap_tol <= 0");
    const std::size_t m = s_vector.size();

    std::vector<Vec> rows;
    std::vector<std::string> labels;
    for (const auto& pt : seed_points) {
        if (pt.r_row.size() != m)
            throw std::invalid_argument("solve_with_oracle: seed row length mismatch");
        rows.push_back(pt.r_row);
        labels.push_back(pt.label);
    }

    ExchangeResult out;
    auto build_current = [&]() {
        InstanceMetadata meta;
        meta.family = "exchange";
        meta.k_labels = labels;
        return SummingInstance::build(Matrix::from_rows(rows), s_vector, p, meta);
    };

    auto is_duplicate = [&](const Vec& row) {
        for (const auto& existing : rows)
            if (inf_norm_dist(existing, row) <= 1e-12) return true;
        return false;
    };

    double best_lower = 0.0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        SummingInstance inst = build_current();
        const SummingResult lp = summing_constant(inst);

        Vec query;
        double primal = kInf;
        if (!lp.summing) {
            // Uncovered pair: the LP ray has positive lhs and zero rhs over
            // the current rows. Ask the oracle along the ray; a positive
            // answer cuts it off, a zero answer proves there is nothing in K
            // to cover the pair.
            query = lp.witness.weights;
        } else {
            primal = lp.pi;
            out.upper_bound = primal;
            if (primal == 0.0) {
                out.summing = true;
                out.converged = true;
                out.status = "converged";
                out.pi = 0.0;
                out.lower_bound = 0.0;
                out.instance = inst;
                out.certificate = dominating_measure(inst).certificate;
                out.history.final_status = out.status;
                return out;
            }
            query = lp.witness.weights;  // normalized: binding row sums to 1
        }

        OracleResult ans = oracle(query);
        ++out.oracle_calls;
        if (ans.point.r_row.size() != m)
            throw std::invalid_argument("solve_with_oracle: oracle row length mismatch");

        ExchangeHistory::Iteration h;
        h.iter = iter;
        h.rows = rows.size();
        h.primal = primal;
        h.oracle_value = ans.value;
        std::optional<DominationCertificate> round_cert;
        if (lp.summing) {
            const DominationResult dm = dominating_measure(inst);
            round_cert = dm.certificate;
            h.cert_valid =
                dm.summing &&
                verify_certificate(inst, dm.certificate, default_certificate_tol(inst))
                    .valid;
        }

        if (!lp.summing) {
            h.dual_bound = 0.0;
            h.gap = kInf;
            if (ans.value <= gap_tol) {
                out.summing = false;
                out.status = "not_summing";
                out.pi = kInf;
                out.instance = inst;
                out.diagnostic =
                    "oracle confirms a pair with positive s has no covering K point";
                h.added_label = "";
                out.history.iterations.push_back(h);
                out.history.final_status = out.status;
                return out;
            }
        } else {
            const double violation = ans.value;  // constraint value at the optimum
            h.dual_bound = primal / std::max(violation, 1.0);
            h.gap = violation - 1.0;
            best_lower = std::max(best_lower, h.dual_bound);
            if (violation <= 1.0 + gap_tol) {
                out.converged = true;
                out.status = "converged";
                out.pi = primal;
                out.lower_bound = best_lower;
                out.instance = inst;
                out.certificate = round_cert;
                h.added_label = "";
                out.history.iterations.push_back(h);
                out.history.final_status = out.status;
                return out;
            }
        }

        if (is_duplicate(ans.point.r_row)) {
            out.status = "stalled";
            out.pi = lp.summing ? primal : kInf;
            out.lower_bound = best_lower;
            out.instance = inst;
            out.certificate = round_cert;
            out.diagnostic = "oracle returned an already generated row (" +
                             ans.point.label +
                             ") with residual violation above gap_tol; the oracle's "
                             "claimed maximum is inconsistent with its row";
            out.history.iterations.push_back(h);
            out.history.final_status = out.status;
            return out;
        }

        h.added_label = ans.point.label;
        out.history.iterations.push_back(h);
        rows.push_back(ans.point.r_row);
        labels.push_back(ans.point.label.empty()
                             ? "K" + std::to_string(rows.size() - 1)
                             : ans.point.label);
    }

    SummingInstance inst = build_current();
    const SummingResult lp = summing_constant(inst);
    out.status = "max_iter";
    out.summing = lp.summing;
    out.pi = lp.pi;
    out.upper_bound = lp.pi;
    out.lower_bound = best_lower;
    out.instance = inst;
    if (lp.summing) out.certificate = dominating_measure(inst).certificate;
    out.diagnostic = "iteration cap reached; true value bracketed by [lower, upper]";
    out.history.final_status = out.status;
    return out;
}

/// Finite-K oracle over a fixed row set; the degenerate continuum, and the
/// "finite" built-in of the command line.
inline KOracle make_finite_oracle(std::vector<KPoint> points, double p) {
    if (points.empty())
        throw std::invalid_argument("make_finite_oracle: empty point set");
    return [points = std::move(points), p](const Vec& w) {
        OracleResult best;
        best.value = -kInf;
        for (const auto& pt : points) {
            double acc = 0.0;
            for (std::size_t j = 0; j < w.size(); ++j)
                acc += w[j] * std::pow(pt.r_row[j], p);
            if (acc > best.value) {
                best.value = acc;
                best.point = pt;
            }
        }
        return best;
    };
}

}  // namespace pietsch
