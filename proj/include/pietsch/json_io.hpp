#pragma once

// File formats: instances, certificates, solver reports and the per-family
// spec documents the CLI builds from. Every document carries schema_version
// and a kind tag. Doubles round-trip exactly through the JSON layer.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pietsch/bruteforce.hpp"
#include "pietsch/domination.hpp"
#include "pietsch/exchange.hpp"
#include "pietsch/families.hpp"
#include "pietsch/family_probes.hpp"
#include "pietsch/instance.hpp"

namespace pietsch {

using nlohmann::json;

// --- files --------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("parse error in \"" + path + "\": " + e.what());
    }
    return j;
}

/// Write-then-rename so concurrent readers never observe a torn file.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write \"" + tmp + "\"");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// --- certificates ----------------------------------------------------------------

inline json certificate_to_json(const DominationCertificate& cert) {
    return {{"schema_version", 1},
            {"kind", "certificate"},
            {"c", cert.c},
            {"mu", cert.mu},
            {"p", cert.p},
            {"instance_hash", cert.instance_hash},
            {"residual_min", cert.residual_min}};
}

inline DominationCertificate certificate_from_json(const json& j) {
    if (j.value("kind", "") != "certificate")
        throw std::invalid_argument("certificate json: kind is not \"certificate\"");
    DominationCertificate cert;
    cert.c = j.at("c").get<double>();
    cert.mu = j.at("mu").get<Vec>();
    cert.p = j.at("p").get<double>();
    cert.instance_hash = j.value("instance_hash", "");
    cert.residual_min = j.value("residual_min", 0.0);
    return cert;
}

// --- solver reports ----------------------------------------------------------------

inline const char* lp_status_name(LpSolution::Status s) {
    switch (s) {
        case LpSolution::Status::Optimal: return "optimal";
        case LpSolution::Status::Unbounded: return "unbounded";
        case LpSolution::Status::Infeasible: return "infeasible";
    }
    return "?";
}

inline json summing_result_to_json(const SummingResult& r) {
    json j{{"schema_version", 1},
           {"kind", "pi_result"},
           {"summing", r.summing},
           {"lp_status", lp_status_name(r.lp_status)}};
    if (r.summing) {
        j["pi"] = r.pi;
        j["witness"] = {{"weights", r.witness.weights},
                        {"value", r.witness.value},
                        {"active_row", r.witness.active_row}};
    } else {
        j["pi"] = "infinity";
        j["witness"] = {{"weights", r.witness.weights}};
    }
    return j;
}

inline json equivalence_report_to_json(const EquivalenceReport& r) {
    json j{{"schema_version", 1},
           {"kind", "equivalence_report"},
           {"summing", r.summing},
           {"tol", r.tol},
           {"within_tol", r.within_tol},
           {"primal_status", lp_status_name(r.primal_status)},
           {"dual_status", lp_status_name(r.dual_status)}};
    if (r.summing) {
        j["pi"] = r.pi;
        j["c"] = r.c;
        j["c_power_p"] = r.c_power_p;
        j["gap"] = r.gap;
    }
    return j;
}

inline json multiset_report_to_json(const MultisetSearchReport& r) {
    return {{"schema_version", 1},
            {"kind", "multiset_report"},
            {"best_value", r.not_summing ? json("infinity") : json(r.best_value)},
            {"best_multiplicities", r.best_multiplicities},
            {"sequences_examined", r.sequences_examined},
            {"bound", r.bound},
            {"exhaustive", r.exhaustive},
            {"not_summing", r.not_summing}};
}

inline json validity_to_json(const CertificateValidity& v) {
    return {{"schema_version", 1},
            {"kind", "certificate_validity"},
            {"valid", v.valid},
            {"worst_residual", v.worst_residual},
            {"worst_pair", v.worst_pair},
            {"mu_sum", v.mu_sum}};
}

inline void history_to_jsonl(const ExchangeHistory& hist, std::ostream& os) {
    for (const auto& it : hist.iterations) {
        json j{{"iter", it.iter},
               {"rows", it.rows},
               {"primal", it.primal == kInf ? json("infinity") : json(it.primal)},
               {"dual_bound", it.dual_bound},
               {"oracle_value", it.oracle_value},
               {"gap", it.gap == kInf ? json("infinity") : json(it.gap)},
               {"cert_valid", it.cert_valid},
               {"added", it.added_label}};
        os << j.dump() << "\n";
    }
}

inline json exchange_result_to_json(const ExchangeResult& r) {
    json j{{"schema_version", 1},
           {"kind", "exchange_result"},
           {"status", r.status},
           {"summing", r.summing},
           {"converged", r.converged},
           {"oracle_calls", r.oracle_calls},
           {"lower_bound", r.lower_bound},
           {"upper_bound", r.upper_bound == kInf ? json("infinity") : json(r.upper_bound)},
           {"pi", r.pi == kInf ? json("infinity") : json(r.pi)}};
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
    return j;
}

// --- family specs -------------------------------------------------------------------
//
// {"kind": "family_spec", "family": <tag>, "p": <real>, ...}. The per-family
// payloads mirror the builder structs; see the README for worked examples.

namespace detail {

inline std::vector<Vec> vectors_from_json(const json& j, const char* what) {
    if (!j.is_array())
        throw std::invalid_argument(std::string(what) + ": expected an array of vectors");
    std::vector<Vec> out;
    for (const auto& row : j) out.push_back(row.get<Vec>());
    return out;
}

inline MultiTensor tensor_from_json(const json& j) {
    MultiTensor t;
    t.in_dims = j.at("in_dims").get<std::vector<std::size_t>>();
    t.out_dim = j.value("out_dim", std::size_t{1});
    t.data = j.at("data").get<Vec>();
    t.validate();
    return t;
}

inline NormTag norm_from_json(const json& j) {
    const std::string name = j.value("target_norm", "euclidean");
    if (name == "euclidean") return NormTag::Euclidean;
    if (name == "max") return NormTag::Max;
    if (name == "sum") return NormTag::Sum;
    throw std::invalid_argument("unknown target_norm \"" + name + "\"");
}

}  // namespace detail

inline LinearOperatorSpec parse_linear_spec(const json& j) {
    LinearOperatorSpec spec;
    spec.matrix = Matrix::from_rows(detail::vectors_from_json(j.at("matrix"), "matrix"));
    if (j.contains("domain_ball")) spec.domain_ball = BallSpec::from_json(j.at("domain_ball"));
    spec.test_vectors = detail::vectors_from_json(j.at("test_vectors"), "test_vectors");
    if (j.contains("scalars")) spec.scalars = j.at("scalars").get<Vec>();
    spec.target_norm = detail::norm_from_json(j);
    return spec;
}

inline LipschitzSpec parse_lipschitz_spec(const json& j) {
    LipschitzSpec spec;
    spec.x_distances =
        Matrix::from_rows(detail::vectors_from_json(j.at("x_distances"), "x_distances"));
    spec.y_distances =
        Matrix::from_rows(detail::vectors_from_json(j.at("y_distances"), "y_distances"));
    spec.map = j.at("map").get<std::vector<std::size_t>>();
    for (const auto& tr : j.at("triples")) {
        if (!tr.is_array() || tr.size() != 3)
            throw std::invalid_argument("lipschitz spec: each triple is [x, y, a]");
        spec.triples.push_back(
            {tr[0].get<std::size_t>(), tr[1].get<std::size_t>(), tr[2].get<double>()});
    }
    if (j.contains("scalars")) spec.scalars = j.at("scalars").get<Vec>();
    if (j.contains("k_functions")) {
        spec.k_functions = detail::vectors_from_json(j.at("k_functions"), "k_functions");
    } else {
        spec.sample_count = j.value("k_sample_count", std::size_t{200});
        spec.sample_seed = j.value("k_sample_seed", std::uint64_t{1});
        spec.k_functions =
            sample_lipschitz_ball(spec.x_distances, spec.sample_count, spec.sample_seed);
    }
    return spec;
}

inline MultilinearSpec parse_multilinear_spec(const json& j) {
    MultilinearSpec spec;
    spec.tensor = detail::tensor_from_json(j.at("tensor"));
    spec.family = multi_family_from_name(j.at("subfamily").get<std::string>());
    for (const auto& tup : j.at("tuples"))
        spec.tuples.push_back(detail::vectors_from_json(tup, "tuple"));
    if (j.contains("scalars")) spec.scalars = j.at("scalars").get<Vec>();
    if (j.contains("dual_targets"))
        spec.dual_targets = detail::vectors_from_json(j.at("dual_targets"), "dual_targets");
    if (j.contains("component_balls"))
        for (const auto& cb : j.at("component_balls"))
            spec.component_balls.push_back(BallSpec::from_json(cb));
    if (j.contains("target_ball")) spec.target_ball = BallSpec::from_json(j.at("target_ball"));
    spec.form_samples = j.value("form_samples", std::size_t{64});
    spec.sample_seed = j.value("sample_seed", std::uint64_t{1});
    spec.target_norm = detail::norm_from_json(j);
    return spec;
}

inline PolynomialSpec parse_polynomial_spec(const json& j) {
    PolynomialSpec spec;
    spec.degree = j.at("degree").get<std::size_t>();
    spec.tensor = detail::tensor_from_json(j.at("tensor"));
    spec.tests = detail::vectors_from_json(j.at("tests"), "tests");
    if (j.contains("scalars")) spec.scalars = j.at("scalars").get<Vec>();
    const std::string sub = j.value("subfamily", "dominated");
    if (sub == "dominated") spec.family = PolyFamily::Dominated;
    else if (sub == "strongly-summing") spec.family = PolyFamily::StronglySumming;
    else throw std::invalid_argument("unknown polynomial subfamily \"" + sub + "\"");
    if (j.contains("domain_ball")) spec.domain_ball = BallSpec::from_json(j.at("domain_ball"));
    spec.form_samples = j.value("form_samples", std::size_t{64});
    spec.sample_seed = j.value("sample_seed", std::uint64_t{1});
    spec.target_norm = detail::norm_from_json(j);
    return spec;
}

inline SubhomogeneousSpec parse_subhomogeneous_spec(const json& j) {
    SubhomogeneousSpec spec;
    spec.points = detail::vectors_from_json(j.at("points"), "points");
    spec.values = detail::vectors_from_json(j.at("values"), "values");
    if (j.contains("scalars")) spec.scalars = j.at("scalars").get<Vec>();
    spec.alpha = j.at("alpha").get<double>();
    if (j.contains("domain_ball")) spec.domain_ball = BallSpec::from_json(j.at("domain_ball"));
    spec.target_norm = detail::norm_from_json(j);
    return spec;
}

inline ArbitraryAtPointSpec parse_arbitrary_spec(const json& j) {
    ArbitraryAtPointSpec spec;
    spec.base_point = j.at("base_point").get<Vec>();
    spec.tests = detail::vectors_from_json(j.at("tests"), "tests");
    for (const auto& entry : j.at("table"))
        spec.table.emplace_back(entry.at("x").get<Vec>(), entry.at("fx").get<Vec>());
    if (j.contains("weights")) spec.weights = j.at("weights").get<Vec>();
    if (j.contains("domain_ball")) spec.domain_ball = BallSpec::from_json(j.at("domain_ball"));
    spec.target_norm = detail::norm_from_json(j);
    return spec;
}

/// Builds the instance described by a family_spec document.
inline SummingInstance build_from_family_spec(const json& j) {
    if (j.value("kind", "") != "family_spec")
        throw std::invalid_argument("family spec: kind is not \"family_spec\"");
    const std::string family = j.at("family").get<std::string>();
    const double p = j.at("p").get<double>();
    if (family == "linear") return build_linear(parse_linear_spec(j), p);
    if (family == "lipschitz") return build_lipschitz(parse_lipschitz_spec(j), p);
    if (family == "multilinear") return build_multilinear(parse_multilinear_spec(j), p);
    if (family == "polynomial") return build_polynomial(parse_polynomial_spec(j), p);
    if (family == "subhomogeneous")
        return build_subhomogeneous(parse_subhomogeneous_spec(j), p);
    if (family == "arbitrary-at-point")
        return build_arbitrary_at_point(parse_arbitrary_spec(j), p);
    throw std::invalid_argument("unknown family \"" + family + "\"");
}

/// Axiom probe over the family described by a family_spec document.
inline AxiomProbe axiom_probe_from_family_spec(const json& j, std::size_t samples,
                                               std::uint64_t seed) {
    if (j.value("kind", "") != "family_spec")
        throw std::invalid_argument("family spec: kind is not \"family_spec\"");
    const std::string family = j.at("family").get<std::string>();
    const double p = j.at("p").get<double>();
    if (family == "linear")
        return linear_axiom_probe(parse_linear_spec(j), p, samples, seed);
    if (family == "lipschitz")
        return lipschitz_axiom_probe(parse_lipschitz_spec(j), p, samples, seed);
    if (family == "multilinear")
        return multilinear_axiom_probe(parse_multilinear_spec(j), p, samples, seed);
    if (family == "polynomial")
        return polynomial_axiom_probe(parse_polynomial_spec(j), p, samples, seed);
    if (family == "subhomogeneous")
        return subhomogeneous_axiom_probe(parse_subhomogeneous_spec(j), p, samples, seed);
    if (family == "arbitrary-at-point")
        return arbitrary_axiom_probe(parse_arbitrary_spec(j), p, samples, seed);
    throw std::invalid_argument("unknown family \"" + family + "\"");
}

/// Loads either an instance document or a family_spec document.
inline SummingInstance load_instance_or_spec(const json& j) {
    const std::string kind = j.value("kind", "instance");
    if (kind == "instance") return instance_from_json(j);
    if (kind == "family_spec") return build_from_family_spec(j);
    throw std::invalid_argument("expected kind \"instance\" or \"family_spec\", got \"" +
                                kind + "\"");
}

}  // namespace pietsch
