#pragma once

// Axiom probes for the shipped families: fresh random (phi, x, b) samples
// whose R and S evaluators recompute the family formulas at scaled G
// arguments. The structural inequalities then hold (or fail) because of the
// formulas, not because of any cached scaling law.

#include <memory>

#include "pietsch/axioms.hpp"
#include "pietsch/families.hpp"

namespace pietsch {

namespace detail {

struct LinearSamples {
    std::vector<Vec> phis;
    std::vector<Vec> xs;
    Vec lambdas;
};

}  // namespace detail

inline AxiomProbe linear_axiom_probe(const LinearOperatorSpec& spec, double /*p*/,
                                     std::size_t count, std::uint64_t seed) {
    auto data = std::make_shared<detail::LinearSamples>();
    std::mt19937_64 rng(seed);
    const std::size_t dim = spec.matrix.cols;
    for (std::size_t t = 0; t < count; ++t) {
        data->phis.push_back(random_dual_ball_point(spec.domain_ball, dim, rng));
        data->xs.push_back(spec.test_vectors[uniform_index(rng, spec.test_vectors.size())]);
        data->lambdas.push_back(uniform(rng, -2.0, 2.0));
    }
    auto matrix = std::make_shared<Matrix>(spec.matrix);
    const NormTag norm = spec.target_norm;
    AxiomProbe probe;
    probe.sample_count = count;
    probe.r_eval = [data](std::size_t t, double eta) {
        return std::abs(eta * data->lambdas[t]) * std::abs(dot(data->phis[t], data->xs[t]));
    };
    probe.s_eval = [data, matrix, norm](std::size_t t, double eta) {
        return std::abs(eta * data->lambdas[t]) *
               vector_norm(detail::apply_matrix(*matrix, data->xs[t]), norm);
    };
    probe.r_null = [data, dim](std::size_t t) {
        return std::abs(data->lambdas[t]) * std::abs(dot(data->phis[t], Vec(dim, 0.0)));
    };
    probe.s_null = [data, matrix, norm, dim](std::size_t t) {
        return std::abs(data->lambdas[t]) *
               vector_norm(detail::apply_matrix(*matrix, Vec(dim, 0.0)), norm);
    };
    return probe;
}

inline AxiomProbe lipschitz_axiom_probe(const LipschitzSpec& spec, double p,
                                        std::size_t count, std::uint64_t seed) {
    struct Samples {
        std::vector<Vec> gs;
        std::vector<std::size_t> xs, ys;
        Vec as, lambdas;
    };
    auto data = std::make_shared<Samples>();
    auto sp = std::make_shared<LipschitzSpec>(spec);
    std::mt19937_64 rng(seed);
    const std::size_t n = spec.x_distances.rows;
    for (std::size_t t = 0; t < count; ++t) {
        data->gs.push_back(spec.k_functions[uniform_index(rng, spec.k_functions.size())]);
        data->xs.push_back(uniform_index(rng, n));
        data->ys.push_back(uniform_index(rng, n));
        data->as.push_back(uniform(rng, -2.0, 2.0));
        data->lambdas.push_back(uniform(rng, -2.0, 2.0));
    }
    const double inv_p = 1.0 / p;
    AxiomProbe probe;
    probe.sample_count = count;
    probe.r_eval = [data, inv_p](std::size_t t, double eta) {
        return std::pow(std::abs(data->as[t]), inv_p) *
               std::abs(eta * data->lambdas[t]) *
               std::abs(data->gs[t][data->xs[t]] - data->gs[t][data->ys[t]]);
    };
    probe.s_eval = [data, sp, inv_p](std::size_t t, double eta) {
        return std::pow(std::abs(data->as[t]), inv_p) *
               std::abs(eta * data->lambdas[t]) *
               sp->y_distances(sp->map[data->xs[t]], sp->map[data->ys[t]]);
    };
    // x0 = (x, x, 0): same point twice with zero weight
    probe.r_null = [data, inv_p](std::size_t t) {
        return std::pow(std::abs(0.0), inv_p) * std::abs(data->lambdas[t]) *
               std::abs(data->gs[t][data->xs[t]] - data->gs[t][data->xs[t]]);
    };
    probe.s_null = [data, sp, inv_p](std::size_t t) {
        return std::pow(std::abs(0.0), inv_p) * std::abs(data->lambdas[t]) *
               sp->y_distances(sp->map[data->xs[t]], sp->map[data->xs[t]]);
    };
    return probe;
}

inline AxiomProbe multilinear_axiom_probe(const MultilinearSpec& spec, double /*p*/,
                                          std::size_t count, std::uint64_t seed) {
    struct Samples {
        MultiTensor tensor;
        MultiFamily family;
        NormTag norm;
        std::size_t arity;
        std::vector<std::vector<Vec>> phis;   // per-sample component functionals
        std::vector<std::size_t> comp_pick;   // dominated: embedding component
        std::vector<MultiTensor> forms;       // strongly-summing pool
        std::vector<std::size_t> form_pick;
        std::vector<Vec> targets;             // tau-p z points
        std::vector<Vec> bs;                  // tau-p functionals
        std::vector<std::vector<Vec>> tuples;
        Vec lambdas;
    };
    auto data = std::make_shared<Samples>();
    data->tensor = spec.tensor;
    data->family = spec.family;
    data->norm = spec.target_norm;
    data->arity = spec.tensor.arity();
    const std::vector<BallSpec> balls = detail::resolve_component_balls(spec);
    std::mt19937_64 rng(seed);

    if (spec.family == MultiFamily::StronglySumming) {
        for (std::size_t fi = 0; fi < 8; ++fi) {
            MultiTensor form;
            form.in_dims = spec.tensor.in_dims;
            form.out_dim = 1;
            form.data.resize(form.input_size());
            double norm_est = 0.0;
            do {
                for (double& v : form.data) v = normal(rng);
                norm_est = detail::estimate_form_norm(form, balls);
            } while (norm_est < 1e-12);
            for (double& v : form.data) v /= norm_est;
            data->forms.push_back(std::move(form));
        }
    }
    for (std::size_t t = 0; t < count; ++t) {
        data->tuples.push_back(spec.tuples[uniform_index(rng, spec.tuples.size())]);
        data->lambdas.push_back(uniform(rng, -2.0, 2.0));
        std::vector<Vec> phi;
        for (std::size_t c = 0; c < data->arity; ++c)
            phi.push_back(random_dual_ball_point(balls[c], spec.tensor.in_dims[c], rng));
        data->phis.push_back(std::move(phi));
        data->comp_pick.push_back(uniform_index(rng, data->arity));
        if (spec.family == MultiFamily::StronglySumming)
            data->form_pick.push_back(uniform_index(rng, data->forms.size()));
        if (spec.family == MultiFamily::TauP) {
            data->targets.push_back(
                random_dual_ball_point(spec.target_ball, spec.tensor.out_dim, rng));
            Vec b(spec.tensor.out_dim);
            for (double& v : b) v = uniform(rng, -1.0, 1.0);
            data->bs.push_back(std::move(b));
        }
    }

    auto zero_tuple = [](const Samples& d) {
        std::vector<Vec> z;
        for (std::size_t c = 0; c < d.arity; ++c)
            z.push_back(Vec(d.tensor.in_dims[c], 0.0));
        return z;
    };

    auto r_at = [data](std::size_t t, double eta, const std::vector<Vec>& tuple) {
        switch (data->family) {
            case MultiFamily::Dominated: {
                // embedded extreme point: one component carries phi, rest zero
                const std::size_t c = data->comp_pick[t];
                return std::abs(eta * data->lambdas[t]) *
                       std::abs(dot(data->phis[t][c], tuple[c]));
            }
            case MultiFamily::StronglySumming:
                return std::abs(eta * data->lambdas[t]) *
                       std::abs(data->forms[data->form_pick[t]].apply_scalar(tuple));
            case MultiFamily::SemiIntegral: {
                double prod = std::abs(eta * data->lambdas[t]);
                for (std::size_t c = 0; c < data->arity; ++c)
                    prod *= std::abs(dot(data->phis[t][c], tuple[c]));
                return prod;
            }
            case MultiFamily::TauP: {
                Vec eb = data->bs[t];
                for (double& v : eb) v *= eta;
                double prod = std::abs(dot(eb, data->targets[t]));
                for (std::size_t c = 0; c < data->arity; ++c)
                    prod *= std::abs(dot(data->phis[t][c], tuple[c]));
                return prod;
            }
        }
        return 0.0;
    };
    auto s_at = [data](std::size_t t, double eta, const std::vector<Vec>& tuple) {
        const Vec value = data->tensor.apply(tuple);
        switch (data->family) {
            case MultiFamily::Dominated:
                return std::abs(eta * data->lambdas[t]) *
                       std::pow(vector_norm(value, data->norm),
                                1.0 / static_cast<double>(data->arity));
            case MultiFamily::StronglySumming:
            case MultiFamily::SemiIntegral:
                return std::abs(eta * data->lambdas[t]) * vector_norm(value, data->norm);
            case MultiFamily::TauP: {
                Vec eb = data->bs[t];
                for (double& v : eb) v *= eta;
                return std::abs(dot(eb, value));
            }
        }
        return 0.0;
    };

    AxiomProbe probe;
    probe.sample_count = count;
    probe.r_eval = [data, r_at](std::size_t t, double eta) {
        return r_at(t, eta, data->tuples[t]);
    };
    probe.s_eval = [data, s_at](std::size_t t, double eta) {
        return s_at(t, eta, data->tuples[t]);
    };
    probe.r_null = [data, r_at, zero_tuple](std::size_t t) {
        return r_at(t, 1.0, zero_tuple(*data));
    };
    probe.s_null = [data, s_at, zero_tuple](std::size_t t) {
        return s_at(t, 1.0, zero_tuple(*data));
    };
    return probe;
}

inline AxiomProbe polynomial_axiom_probe(const PolynomialSpec& spec, double /*p*/,
                                         std::size_t count, std::uint64_t seed) {
    struct Samples {
        MultiTensor tensor;
        PolyFamily family;
        NormTag norm;
        std::size_t degree;
        std::vector<Vec> phis;           // dominated: embedded functionals
        std::vector<MultiTensor> forms;  // strongly-summing Q pool
        std::vector<std::size_t> form_pick;
        std::vector<Vec> xs;
        Vec lambdas;
    };
    auto data = std::make_shared<Samples>();
    data->tensor = spec.tensor;
    data->family = spec.family;
    data->norm = spec.target_norm;
    data->degree = spec.degree;
    std::mt19937_64 rng(seed);
    const std::size_t dim = spec.tensor.in_dims[0];

    if (spec.family == PolyFamily::StronglySumming) {
        const BallPoints pts = domain_ball_points(spec.domain_ball, dim);
        for (std::size_t fi = 0; fi < 8; ++fi) {
            MultiTensor form;
            form.in_dims = spec.tensor.in_dims;
            form.out_dim = 1;
            form.data.resize(form.input_size());
            double norm_est = 0.0;
            do {
                for (double& v : form.data) v = normal(rng);
                norm_est = 0.0;
                for (const Vec& x : pts.points)
                    norm_est = std::max(norm_est, std::abs(form.apply_diagonal(x)[0]));
            } while (norm_est < 1e-12);
            for (double& v : form.data) v /= norm_est;
            data->forms.push_back(std::move(form));
        }
    }
    for (std::size_t t = 0; t < count; ++t) {
        data->phis.push_back(random_dual_ball_point(spec.domain_ball, dim, rng));
        data->xs.push_back(spec.tests[uniform_index(rng, spec.tests.size())]);
        data->lambdas.push_back(uniform(rng, -2.0, 2.0));
        if (spec.family == PolyFamily::StronglySumming)
            data->form_pick.push_back(uniform_index(rng, data->forms.size()));
    }

    auto r_at = [data](std::size_t t, double eta, const Vec& x) {
        if (data->family == PolyFamily::Dominated)
            return std::abs(eta * data->lambdas[t]) * std::abs(dot(data->phis[t], x));
        return std::abs(eta * data->lambdas[t]) *
               std::abs(data->forms[data->form_pick[t]].apply_diagonal(x)[0]);
    };
    auto s_at = [data](std::size_t t, double eta, const Vec& x) {
        const double pnorm = vector_norm(data->tensor.apply_diagonal(x), data->norm);
        if (data->family == PolyFamily::Dominated)
            return std::abs(eta * data->lambdas[t]) *
                   std::pow(pnorm, 1.0 / static_cast<double>(data->degree));
        return std::abs(eta * data->lambdas[t]) * pnorm;
    };

    AxiomProbe probe;
    probe.sample_count = count;
    const Vec zero(dim, 0.0);
    probe.r_eval = [data, r_at](std::size_t t, double eta) {
        return r_at(t, eta, data->xs[t]);
    };
    probe.s_eval = [data, s_at](std::size_t t, double eta) {
        return s_at(t, eta, data->xs[t]);
    };
    probe.r_null = [r_at, zero](std::size_t t) { return r_at(t, 1.0, zero); };
    probe.s_null = [s_at, zero](std::size_t t) { return s_at(t, 1.0, zero); };
    return probe;
}

inline AxiomProbe subhomogeneous_axiom_probe(const SubhomogeneousSpec& spec,
                                             double /*p*/, std::size_t count,
                                             std::uint64_t seed) {
    struct Samples {
        std::vector<Vec> phis;
        std::vector<std::size_t> picks;
        Vec etas;
    };
    auto data = std::make_shared<Samples>();
    auto sp = std::make_shared<SubhomogeneousSpec>(spec);
    std::mt19937_64 rng(seed);
    const std::size_t dim = spec.points.front().size();
    std::size_t zero_index = 0;
    for (std::size_t j = 0; j < spec.points.size(); ++j)
        if (detail::all_zero(spec.points[j])) zero_index = j;
    for (std::size_t t = 0; t < count; ++t) {
        data->phis.push_back(random_dual_ball_point(spec.domain_ball, dim, rng));
        data->picks.push_back(uniform_index(rng, spec.points.size()));
        data->etas.push_back(uniform(rng, -2.0, 2.0));
    }
    const double inv_alpha = 1.0 / spec.alpha;
    AxiomProbe probe;
    probe.sample_count = count;
    probe.r_eval = [data, sp](std::size_t t, double eta) {
        return std::abs(eta * data->etas[t]) *
               std::abs(dot(data->phis[t], sp->points[data->picks[t]]));
    };
    probe.s_eval = [data, sp, inv_alpha](std::size_t t, double eta) {
        return std::abs(eta * data->etas[t]) *
               std::pow(vector_norm(sp->values[data->picks[t]], sp->target_norm),
                        inv_alpha);
    };
    probe.r_null = [data, sp, zero_index](std::size_t t) {
        return std::abs(data->etas[t]) *
               std::abs(dot(data->phis[t], sp->points[zero_index]));
    };
    probe.s_null = [data, sp, inv_alpha, zero_index](std::size_t t) {
        return std::abs(data->etas[t]) *
               std::pow(vector_norm(sp->values[zero_index], sp->target_norm), inv_alpha);
    };
    return probe;
}

inline AxiomProbe arbitrary_axiom_probe(const ArbitraryAtPointSpec& spec, double /*p*/,
                                        std::size_t count, std::uint64_t seed) {
    struct Samples {
        std::vector<Vec> phis;
        std::vector<std::size_t> picks;
        Vec lambdas;
    };
    auto data = std::make_shared<Samples>();
    auto sp = std::make_shared<ArbitraryAtPointSpec>(spec);
    std::mt19937_64 rng(seed);
    const std::size_t dim = spec.base_point.size();
    for (std::size_t t = 0; t < count; ++t) {
        data->phis.push_back(random_dual_ball_point(spec.domain_ball, dim, rng));
        data->picks.push_back(uniform_index(rng, spec.tests.size()));
        data->lambdas.push_back(uniform(rng, -2.0, 2.0));
    }
    auto s_of = [sp](const Vec& x) {
        Vec shifted = sp->base_point;
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += x[i];
        const Vec& fa = detail::table_lookup(sp->table, sp->base_point, "probe");
        const Vec& fx = detail::table_lookup(sp->table, shifted, "probe");
        Vec diff(fx.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fx[i] - fa[i];
        return vector_norm(diff, sp->target_norm);
    };
    AxiomProbe probe;
    probe.sample_count = count;
    probe.r_eval = [data, sp](std::size_t t, double eta) {
        return std::abs(eta * data->lambdas[t]) *
               std::abs(dot(data->phis[t], sp->tests[data->picks[t]]));
    };
    probe.s_eval = [data, s_of, sp](std::size_t t, double eta) {
        return std::abs(eta * data->lambdas[t]) * s_of(sp->tests[data->picks[t]]);
    };
    const Vec zero(dim, 0.0);
    probe.r_null = [data, zero](std::size_t t) {
        return std::abs(data->lambdas[t]) * std::abs(dot(data->phis[t], zero));
    };
    probe.s_null = [data, s_of, zero](std::size_t t) {
        return std::abs(data->lambdas[t]) * s_of(zero);
    };
    return probe;
}

}  // namespace pietsch
