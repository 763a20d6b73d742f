#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "pietsch/instance.hpp"
#include "pietsch/lp.hpp"

namespace pietsch {

/// Extremal finite sequence realizing the summing constant, with repetitions
/// expressed as continuous multiplicities. Normalized so the binding K row
/// sums to 1 (when any r column is nonzero).
struct SummingWitness {
    Vec weights;
    double value = 0.0;
    std::size_t active_row = 0;
};

struct SummingResult {
    bool summing = true;
    double pi = 0.0;  // +inf when not summing
    SummingWitness witness;
    LpSolution::Status lp_status = LpSolution::Status::Optimal;
    int lp_iterations = 0;
};

/// The domination inequality's witness pair in finite form: a constant and a
/// probability vector over the K rows.
struct DominationCertificate {
    double c = 0.0;
    Vec mu;
    double p = 1.0;
    std::string instance_hash;
    Vec residuals;  // c*(sum_i mu_i r_ij^p)^{1/p} - s_j per pair
    double residual_min = 0.0;
};

struct DominationResult {
    bool summing = true;
    DominationCertificate certificate;
    LpSolution::Status lp_status = LpSolution::Status::Optimal;
    int lp_iterations = 0;
};

namespace detail {

inline LpProblem primal_lp(const SummingInstance& inst) {
    LpProblem prob;
    const std::size_t k = inst.k_count(), m = inst.pair_count();
    prob.objective.resize(m);
    for (std::size_t j = 0; j < m; ++j) prob.objective[j] = inst.s_pow(j);
    prob.constraints = Matrix(k, m);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j) prob.constraints(i, j) = inst.r_pow(i, j);
    prob.rhs.assign(k, 1.0);
    return prob;
}

/// min sum y  s.t.  sum_i y_i r_ij^p >= s_j^p, y >= 0, fed to the solver as a
/// negated max. Pairs with s_j = 0 hold trivially (y >= 0, r >= 0) and are
/// dropped. The solver meets its tolerances at the scale of the largest
/// constraints; pairs far below that scale are slack there anyway, and the
/// certificate constant is lifted afterwards to exact per-pair feasibility.
inline LpProblem dual_lp(const SummingInstance& inst) {
    LpProblem prob;
    const std::size_t k = inst.k_count(), m = inst.pair_count();
    prob.objective.assign(k, -1.0);
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < m; ++j)
        if (inst.s_pow(j) > 0.0) active.push_back(j);
    prob.constraints = Matrix(active.size(), k);
    prob.rhs.resize(active.size());
    for (std::size_t row = 0; row < active.size(); ++row) {
        const std::size_t j = active[row];
        for (std::size_t i = 0; i < k; ++i)
            prob.constraints(row, i) = -inst.r_pow(i, j);
        prob.rhs[row] = -inst.s_pow(j);
    }
    return prob;
}

/// Working copy with r and s scaled to unit max. The defining ratio is
/// homogeneous in both kernels, so pi and c transform exactly; the payoff is
/// that the normalized LP optimum is always >= 1, which keeps the solver's
/// relative tolerances meaningful however the caller scaled the data.
struct NormalizedInstance {
    SummingInstance instance;
    double r_scale = 1.0;  // max r entry of the original
    double s_scale = 1.0;  // max s entry of the original
};

inline NormalizedInstance normalized_copy(const SummingInstance& inst) {
    double r_max = 0.0;
    for (double v : inst.r_matrix().data) r_max = std::max(r_max, v);
    const double s_max = inst.max_s();
    NormalizedInstance out{inst, 1.0, 1.0};
    if (r_max <= 0.0 || s_max <= 0.0) return out;
    Matrix r = inst.r_matrix();
    for (double& v : r.data) v /= r_max;
    Vec s = inst.s_vector();
    for (double& v : s) v /= s_max;
    out.instance = SummingInstance::build(std::move(r), std::move(s), inst.p());
    out.r_scale = r_max;
    out.s_scale = s_max;
    return out;
}

inline Vec certificate_residuals(const SummingInstance& inst, double c, const Vec& mu) {
    Vec res(inst.pair_count());
    for (std::size_t j = 0; j < inst.pair_count(); ++j) {
        long double integral = 0.0L;
        for (std::size_t i = 0; i < inst.k_count(); ++i)
            integral += static_cast<long double>(mu[i]) * inst.r_pow(i, j);
        const double moment =
            std::pow(static_cast<double>(integral), 1.0 / inst.p());
        res[j] = c * moment - inst.s(j);
    }
    return res;
}

}  // namespace detail

/// The least constant of the defining inequality, as the optimum of
///   maximize sum_j w_j s_j^p  s.t.  sum_j w_j r_ij^p <= 1 per K row, w >= 0.
/// Scale invariance of the defining ratio makes real multiplicities
/// equivalent to integer repetition counts, so this LP value is exactly the
/// constant quantified over finite sequences.
inline SummingResult summing_constant(const SummingInstance& inst) {
    SummingResult out;
    if (inst.s_all_zero()) {
        out.pi = 0.0;
        out.witness.weights.assign(inst.pair_count(), 0.0);
        return out;
    }
    const detail::NormalizedInstance norm = detail::normalized_copy(inst);
    const LpProblem prob = detail::primal_lp(norm.instance);
    const LpSolution sol = solve_lp(prob);
    out.lp_status = sol.status;
    out.lp_iterations = sol.iterations;
    if (sol.status == LpSolution::Status::Unbounded) {
        // some pair has s_j > 0 with a zero r column: no finite constant
        out.summing = false;
        out.pi = kInf;
        out.witness.weights = sol.ray;
        out.witness.value = kInf;
        return out;
    }
    out.pi = sol.value * std::pow(norm.s_scale / norm.r_scale, inst.p());
    out.witness.weights = sol.primal;
    // renormalize against the original data: binding K row sums to one
    double max_row = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < inst.k_count(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < inst.pair_count(); ++j)
            acc += sol.primal[j] * inst.r_pow(i, j);
        if (acc > max_row) { max_row = acc; arg = i; }
    }
    out.witness.active_row = arg;
    if (max_row > 0.0) {
        for (double& w : out.witness.weights) w /= max_row;
        double lhs = 0.0;
        for (std::size_t j = 0; j < inst.pair_count(); ++j)
            lhs += out.witness.weights[j] * inst.s_pow(j);
        out.witness.value = lhs;
    }
    return out;
}

/// The dominating measure, from the dual program
///   minimize sum_i y_i  s.t.  sum_i y_i r_ij^p >= s_j^p per pair, y >= 0,
/// with the optimum normalized to a probability vector:
/// c = (sum y)^{1/p}, mu = y / sum y.
inline DominationResult dominating_measure(const SummingInstance& inst) {
    DominationResult out;
    out.certificate.p = inst.p();
    out.certificate.instance_hash = instance_hash(inst);
    const std::size_t k = inst.k_count();
    if (inst.s_all_zero()) {
        out.certificate.c = 0.0;
        out.certificate.mu.assign(k, 1.0 / static_cast<double>(k));
        out.certificate.residuals.assign(inst.pair_count(), 0.0);
        out.certificate.residual_min = 0.0;
        return out;
    }
    const detail::NormalizedInstance norm = detail::normalized_copy(inst);
    const LpProblem prob = detail::dual_lp(norm.instance);
    const LpSolution sol = solve_lp(prob);
    out.lp_status = sol.status;
    out.lp_iterations = sol.iterations;
    if (sol.status == LpSolution::Status::Infeasible) {
        out.summing = false;
        out.certificate.c = kInf;
        return out;
    }
    const Vec& y = sol.primal;  // mu is scale free; only c needs rescaling
    long double total = 0.0L;
    for (double v : y) total += v;
    const double mass = static_cast<double>(total);
    out.certificate.c = std::pow(mass, 1.0 / inst.p()) * norm.s_scale / norm.r_scale;
    out.certificate.mu.resize(k);
    if (mass > 0.0) {
        for (std::size_t i = 0; i < k; ++i) out.certificate.mu[i] = y[i] / mass;
    } else {
        out.certificate.mu.assign(k, 1.0 / static_cast<double>(k));
    }
    // lift c to exact per-pair feasibility: rounding dust from the solve and
    // the normalizations must never produce a certificate that fails its own
    // verification (a genuinely short c would still fail check_equivalence)
    Vec moments(inst.pair_count(), 0.0);
    for (std::size_t j = 0; j < inst.pair_count(); ++j) {
        long double acc = 0.0L;
        for (std::size_t i = 0; i < k; ++i)
            acc += static_cast<long double>(out.certificate.mu[i]) * inst.r_pow(i, j);
        moments[j] = std::pow(static_cast<double>(acc), 1.0 / inst.p());
        if (moments[j] > 0.0)
            out.certificate.c = std::max(out.certificate.c, inst.s(j) / moments[j]);
    }
    out.certificate.residuals =
        detail::certificate_residuals(inst, out.certificate.c, out.certificate.mu);
    out.certificate.residual_min =
        *std::min_element(out.certificate.residuals.begin(),
                          out.certificate.residuals.end());
    return out;
}

struct CertificateValidity {
    bool valid = false;
    double worst_residual = 0.0;
    std::size_t worst_pair = 0;
    double mu_sum = 0.0;
};

/// Recomputes every pointwise residual s_j <= c * (sum_i mu_i r_ij^p)^{1/p} + tol.
inline CertificateValidity verify_certificate(const SummingInstance& inst,
                                              const DominationCertificate& cert,
                                              double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("verify_certificate: tol <= 0");
    if (cert.mu.size() != inst.k_count())
        throw std::invalid_argument("verify_certificate: mu length " +
                                    std::to_string(cert.mu.size()) + ", expected " +
                                    std::to_string(inst.k_count()));
    long double total = 0.0L;
    for (double v : cert.mu) {
        if (!is_finite(v) || v < 0.0)
            throw std::invalid_argument("verify_certificate: negative or non-finite mass");
        total += v;
    }
    CertificateValidity rep;
    rep.mu_sum = static_cast<double>(total);
    if (std::abs(rep.mu_sum - 1.0) > 1e-9)
        throw std::invalid_argument("verify_certificate: mu sums to " +
                                    std::to_string(rep.mu_sum) + ", not 1");
    const Vec res = detail::certificate_residuals(inst, cert.c, cert.mu);
    rep.worst_residual = kInf;
    for (std::size_t j = 0; j < res.size(); ++j)
        if (res[j] < rep.worst_residual) { rep.worst_residual = res[j]; rep.worst_pair = j; }
    rep.valid = rep.worst_residual >= -tol;
    return rep;
}

inline double default_certificate_tol(const SummingInstance& inst) {
    return 1e-9 * (1.0 + inst.max_s());
}

struct EasyDirectionReport {
    double c_power_p = 0.0;
    double implied_pi_bound = 0.0;
    bool holds = false;
    bool samples_ok = false;
    bool pi_bound_ok = false;
    std::size_t samples = 0;
    std::size_t failures = 0;
    double worst_slack = 0.0;  // most negative of c^p * rhs - lhs over samples
    double pi = 0.0;
};

/// Replays the measure-implies-summing chain on random multiplicity vectors:
/// sum w s^p <= c^p * max_i sum w r^p must hold for every sample, and the
/// summing constant itself must sit below c^p.
inline EasyDirectionReport easy_direction(const SummingInstance& inst,
                                          const DominationCertificate& cert,
                                          std::size_t n_samples = 100,
                                          std::uint64_t seed = 20240901,
                                          double tol = 1e-9) {
    EasyDirectionReport rep;
    rep.c_power_p = std::pow(cert.c, inst.p());
    rep.implied_pi_bound = rep.c_power_p;
    rep.samples = n_samples;
    rep.worst_slack = kInf;
    std::mt19937_64 rng(seed);
    Vec w(inst.pair_count());
    for (std::size_t t = 0; t < n_samples; ++t) {
        for (double& wj : w) {
            wj = uniform(rng, 0.0, 2.0);
            if (uniform01(rng) < 0.2) wj = 0.0;
        }
        const auto [lhs, rhs] = lhs_rhs(inst, w);
        const double bound = rep.c_power_p * rhs;
        const double slack = bound - lhs;
        rep.worst_slack = std::min(rep.worst_slack, slack);
        if (lhs > bound + tol * (1.0 + std::abs(bound))) ++rep.failures;
    }
    rep.samples_ok = rep.failures == 0;
    const SummingResult sc = summing_constant(inst);
    rep.pi = sc.pi;
    rep.pi_bound_ok = sc.summing && sc.pi <= rep.c_power_p + tol * (1.0 + sc.pi);
    rep.holds = rep.samples_ok && rep.pi_bound_ok;
    return rep;
}

struct EquivalenceReport {
    bool summing = true;
    double pi = 0.0;
    double c = 0.0;
    double c_power_p = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    bool within_tol = false;
    LpSolution::Status primal_status = LpSolution::Status::Optimal;
    LpSolution::Status dual_status = LpSolution::Status::Optimal;
};

/// Both routes to the constant: pi from the primal program, c from the dual
/// one, with |c^p - pi| <= tol * (1 + pi) as the equivalence check.
inline EquivalenceReport check_equivalence(const SummingInstance& inst,
                                           double tol = 1e-7) {
    if (!(tol > 0.0)) throw std::invalid_argument("check_equivalence: tol <= 0");
    EquivalenceReport rep;
    rep.tol = tol;
    const SummingResult primal = summing_constant(inst);
    const DominationResult dual = dominating_measure(inst);
    rep.primal_status = primal.lp_status;
    rep.dual_status = dual.lp_status;
    rep.pi = primal.pi;
    rep.c = dual.certificate.c;
    if (!primal.summing || !dual.summing) {
        rep.summing = false;
        // both programs must agree that no finite constant exists
        rep.within_tol = primal.summing == dual.summing;
        rep.gap = rep.within_tol ? 0.0 : kInf;
        rep.c_power_p = kInf;
        return rep;
    }
    rep.c_power_p = std::pow(rep.c, inst.p());
    rep.gap = std::abs(rep.c_power_p - rep.pi);
    rep.within_tol = rep.gap <= tol * (1.0 + rep.pi);
    return rep;
}

}  // namespace pietsch
