#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pietsch/domination.hpp"
#include "pietsch/instance.hpp"

namespace pietsch {

/// Reference search over integer repetition counts: the object the defining
/// inequality actually quantifies over. Exhaustive while it fits the budget,
/// deterministic coordinate ascent from the rounded LP witness beyond.
struct MultisetSearchReport {
    double best_value = 0.0;  // +inf sentinel when a zero-denominator vector wins
    std::vector<long long> best_multiplicities;
    long long sequences_examined = 0;
    long long bound = 0;
    bool exhaustive = true;
    bool not_summing = false;
};

namespace detail {

inline double multiset_ratio(const SummingInstance& inst,
                             const std::vector<long long>& w, bool& zero_den) {
    double num = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        if (w[j] > 0) num += static_cast<double>(w[j]) * inst.s_pow(j);
    double den = 0.0;
    for (std::size_t i = 0; i < inst.k_count(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] > 0) acc += static_cast<double>(w[j]) * inst.r_pow(i, j);
        den = std::max(den, acc);
    }
    zero_den = den == 0.0;
    if (zero_den) return num > 0.0 ? kInf : 0.0;
    return num / den;
}

}  // namespace detail

inline MultisetSearchReport pi_by_multisets(const SummingInstance& inst,
                                            long long bound,
                                            long long budget = 1'000'000) {
    if (bound < 1) throw std::invalid_argument("pi_by_multisets: bound < 1");
    if (budget < 1) throw std::invalid_argument("pi_by_multisets: budget < 1");
    const std::size_t m = inst.pair_count();
    MultisetSearchReport rep;
    rep.bound = bound;
    rep.best_multiplicities.assign(m, 0);

    double combos = 1.0;
    for (std::size_t j = 0; j < m; ++j) combos *= static_cast<double>(bound + 1);
    rep.exhaustive = combos <= static_cast<double>(budget);

    auto consider = [&](const std::vector<long long>& w) {
        bool zero_den = false;
        const double value = detail::multiset_ratio(inst, w, zero_den);
        ++rep.sequences_examined;
        if (zero_den && value == kInf) {
            rep.not_summing = true;
            rep.best_value = kInf;
            rep.best_multiplicities = w;
            return;
        }
        if (value > rep.best_value) {
            rep.best_value = value;
            rep.best_multiplicities = w;
        }
    };

    if (rep.exhaustive) {
        std::vector<long long> w(m, 0);
        while (true) {
            // odometer step
            std::size_t j = 0;
            while (j < m && w[j] == bound) { w[j] = 0; ++j; }
            if (j == m) break;
            ++w[j];
            consider(w);
            if (rep.not_summing) break;
        }
        return rep;
    }

    // Guided search: round the LP witness to the integer grid, then ascend
    // one coordinate at a time until no step improves the ratio.
    const SummingResult lp = summing_constant(inst);
    std::vector<long long> w(m, 0);
    if (lp.summing && !lp.witness.weights.empty()) {
        double wmax = 0.0;
        for (double v : lp.witness.weights) wmax = std::max(wmax, v);
        if (wmax > 0.0)
            for (std::size_t j = 0; j < m; ++j) {
                const double scaled =
                    lp.witness.weights[j] / wmax * static_cast<double>(bound);
                w[j] = std::min<long long>(bound, std::llround(scaled));
            }
    }
    bool any = false;
    for (long long v : w) any = any || v > 0;
    if (!any) w[0] = 1;
    consider(w);
    bool improved = true;
    while (improved && !rep.not_summing && rep.sequences_examined < budget) {
        improved = false;
        for (std::size_t j = 0; j < m && rep.sequences_examined < budget; ++j) {
            for (long long step : {+1ll, -1ll}) {
                const long long next = w[j] + step;
                if (next < 0 || next > bound) continue;
                std::vector<long long> cand = w;
                cand[j] = next;
                bool all_zero = true;
                for (long long v : cand) all_zero = all_zero && v == 0;
                if (all_zero) continue;
                const double before = rep.best_value;
                consider(cand);
                if (rep.best_value > before) {
                    w = cand;
                    improved = true;
                    break;
                }
            }
        }
    }
    return rep;
}

}  // namespace pietsch
