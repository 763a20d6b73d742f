#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pietsch/common.hpp"

namespace pietsch {

/// A bundle of evaluators over pre-drawn sample triples (phi, x, b).
/// r_eval(t, eta) must compute R(phi_t, x_t, eta * b_t) from the family's
/// formula (not from a cached base value), and likewise s_eval for S; the
/// structural inequalities are only meaningfully checked when the scaling
/// behaviour emerges from the evaluation itself.
struct AxiomProbe {
    std::function<double(std::size_t, double)> r_eval;
    std::function<double(std::size_t, double)> s_eval;
    std::function<double(std::size_t)> r_null;  // R(phi_t, x0, b_t)
    std::function<double(std::size_t)> s_null;  // S(f, x0, b_t)
    std::size_t sample_count = 0;
    bool has_null = true;
};

struct AxiomReport {
    bool null_element_ok = true;
    bool r_subhomogeneous_ok = true;
    bool s_superhomogeneous_ok = true;
    struct Violation {
        std::string axiom;  // "null_element" | "r_subhomogeneous" | "s_superhomogeneous"
        std::size_t sample = 0;
        double eta = 0.0;
        double lhs = 0.0;
        double rhs = 0.0;
    };
    std::vector<Violation> violations;
    std::vector<std::size_t> invalid_samples;  // evaluator returned a bad value
    // Continuity of R in the K argument is vacuous on a finite sample of K,
    // so it is recorded as out of scope rather than reported as a pass.
    std::string continuity_note = "not applicable (finite K)";

    bool all_ok() const {
        return null_element_ok && r_subhomogeneous_ok && s_superhomogeneous_ok;
    }
};

/// Checks, for every sample and every eta in the grid,
///   R(phi, x, eta b) <= eta R(phi, x, b) + tol
///   eta S(f, x, b)   <= S(f, x, eta b) + tol
/// plus R(phi, x0, b) = S(f, x0, b) = 0 when the probe carries a null element.
/// An evaluator returning a negative or non-finite value marks that sample
/// invalid instead of aborting the run.
inline AxiomReport validate_axioms(const AxiomProbe& probe, const Vec& eta_grid,
                                   double tol = 1e-12) {
    for (double eta : eta_grid)
        if (!(eta >= 0.0 && eta <= 1.0))
            throw std::invalid_argument("validate_axioms: eta grid not within [0,1]");
    AxiomReport report;
    auto bad = [](double v) { return !is_finite(v) || v < 0.0; };
    for (std::size_t t = 0; t < probe.sample_count; ++t) {
        const double r_base = probe.r_eval(t, 1.0);
        const double s_base = probe.s_eval(t, 1.0);
        if (bad(r_base) || bad(s_base)) {
            report.invalid_samples.push_back(t);
            continue;
        }
        bool invalid = false;
        for (double eta : eta_grid) {
            const double r_scaled = probe.r_eval(t, eta);
            const double s_scaled = probe.s_eval(t, eta);
            if (bad(r_scaled) || bad(s_scaled)) {
                invalid = true;
                break;
            }
            if (r_scaled > eta * r_base + tol) {
                report.r_subhomogeneous_ok = false;
                report.violations.push_back(
                    {"r_subhomogeneous", t, eta, r_scaled, eta * r_base});
            }
            if (eta * s_base > s_scaled + tol) {
                report.s_superhomogeneous_ok = false;
                report.violations.push_back(
                    {"s_superhomogeneous", t, eta, eta * s_base, s_scaled});
            }
        }
        if (invalid) {
            report.invalid_samples.push_back(t);
            continue;
        }
        if (probe.has_null) {
            const double rn = probe.r_null(t);
            const double sn = probe.s_null(t);
            if (bad(rn) || bad(sn)) {
                report.invalid_samples.push_back(t);
                continue;
            }
            if (rn > tol || sn > tol) {
                report.null_element_ok = false;
                report.violations.push_back({"null_element", t, 0.0, rn, sn});
            }
        }
    }
    return report;
}

/// The 11-point grid {0, 0.1, ..., 1} used throughout the shipped checks.
inline Vec default_eta_grid() {
    Vec grid(11);
    for (int i = 0; i <= 10; ++i) grid[static_cast<std::size_t>(i)] = 0.1 * i;
    return grid;
}

}  // namespace pietsch
