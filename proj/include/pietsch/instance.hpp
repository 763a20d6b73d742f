#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pietsch/common.hpp"

namespace pietsch {

/// Optional annotations attached to an instance at build time. Builders fill
/// these in; hand-built instances can leave everything at the defaults.
struct InstanceMetadata {
    std::string family = "custom";
    nlohmann::json family_meta = nlohmann::json::object();
    std::vector<std::string> k_labels;     // auto-generated when empty
    std::vector<std::string> pair_labels;  // auto-generated when empty
    std::optional<std::size_t> null_pair;
};

/// A finite discretization of an abstract summing setting: k sampled points
/// of the compact index space K, m test pairs, the matrix of R-values raised
/// later to the p-th power, and the vector of S-values. Immutable after
/// construction; p-th powers are cached because every solver consumes them.
class SummingInstance {
  public:
    static SummingInstance build(Matrix r_matrix, Vec s_vector, double p,
                                 InstanceMetadata meta = {}) {
        if (!is_finite(p) || p <= 0.0)
            throw std::invalid_argument("instance: p must be a positive real, got " +
                                        std::to_string(p));
        if (r_matrix.rows < 1 || r_matrix.cols < 1)
            throw std::invalid_argument("instance: need k >= 1 rows and m >= 1 pairs");
        if (s_vector.size() != r_matrix.cols)
            throw std::invalid_argument(
                "instance: s_vector length " + std::to_string(s_vector.size()) +
                " does not match r_matrix columns " + std::to_string(r_matrix.cols));
        for (std::size_t i = 0; i < r_matrix.rows; ++i)
            for (std::size_t j = 0; j < r_matrix.cols; ++j) {
                const double v = r_matrix(i, j);
                if (!is_finite(v))
                    throw std::invalid_argument("instance: non-finite entry at (" +
                                                std::to_string(i) + "," +
                                                std::to_string(j) + ")");
                if (v < 0.0)
                    throw std::invalid_argument("instance: negative entry at (" +
                                                std::to_string(i) + "," +
                                                std::to_string(j) + ")");
            }
        for (std::size_t j = 0; j < s_vector.size(); ++j) {
            if (!is_finite(s_vector[j]))
                throw std::invalid_argument("instance: non-finite s entry at " +
                                            std::to_string(j));
            if (s_vector[j] < 0.0)
                throw std::invalid_argument("instance: negative s entry at " +
                                            std::to_string(j));
        }
        if (meta.null_pair) {
            const std::size_t j0 = *meta.null_pair;
            if (j0 >= r_matrix.cols)
                throw std::invalid_argument("instance: null_pair index out of range");
            if (s_vector[j0] != 0.0)
                throw std::invalid_argument("instance: null pair has nonzero s entry");
            for (std::size_t i = 0; i < r_matrix.rows; ++i)
                if (r_matrix(i, j0) != 0.0)
                    throw std::invalid_argument(
                        "instance: null pair has nonzero r entry in row " +
                        std::to_string(i));
        }
        if (meta.k_labels.empty()) {
            meta.k_labels.reserve(r_matrix.rows);
            for (std::size_t i = 0; i < r_matrix.rows; ++i)
                meta.k_labels.push_back("K" + std::to_string(i));
        } else if (meta.k_labels.size() != r_matrix.rows) {
            throw std::invalid_argument("instance: k_labels length mismatch");
        }
        if (meta.pair_labels.empty()) {
            meta.pair_labels.reserve(r_matrix.cols);
            for (std::size_t j = 0; j < r_matrix.cols; ++j)
                meta.pair_labels.push_back("pair" + std::to_string(j));
        } else if (meta.pair_labels.size() != r_matrix.cols) {
            throw std::invalid_argument("instance: pair_labels length mismatch");
        }
        return SummingInstance(std::move(r_matrix), std::move(s_vector), p,
                               std::move(meta));
    }

    double p() const { return p_; }
    std::size_t k_count() const { return r_.rows; }
    std::size_t pair_count() const { return r_.cols; }

    double r(std::size_t i, std::size_t j) const { return r_(i, j); }
    double s(std::size_t j) const { return s_[j]; }
    /// Cached r(i,j)^p and s(j)^p.
    double r_pow(std::size_t i, std::size_t j) const { return r_pow_(i, j); }
    double s_pow(std::size_t j) const { return s_pow_[j]; }

    const Matrix& r_matrix() const { return r_; }
    const Vec& s_vector() const { return s_; }
    const std::vector<std::string>& k_labels() const { return meta_.k_labels; }
    const std::vector<std::string>& pair_labels() const { return meta_.pair_labels; }
    std::optional<std::size_t> null_pair() const { return meta_.null_pair; }
    const std::string& family() const { return meta_.family; }
    const nlohmann::json& family_meta() const { return meta_.family_meta; }

    double max_s() const { return *std::max_element(s_.begin(), s_.end()); }
    bool s_all_zero() const { return max_s() == 0.0; }

  private:
    SummingInstance(Matrix r, Vec s, double p, InstanceMetadata meta)
        : r_(std::move(r)), s_(std::move(s)), p_(p), meta_(std::move(meta)) {
        r_pow_ = Matrix(r_.rows, r_.cols);
        for (std::size_t i = 0; i < r_.rows; ++i)
            for (std::size_t j = 0; j < r_.cols; ++j)
                r_pow_(i, j) = std::pow(r_(i, j), p_);
        s_pow_.resize(s_.size());
        for (std::size_t j = 0; j < s_.size(); ++j) s_pow_[j] = std::pow(s_[j], p_);
    }

    Matrix r_;
    Vec s_;
    double p_;
    InstanceMetadata meta_;
    Matrix r_pow_;
    Vec s_pow_;
};

/// Both sides of the defining inequality for a given multiplicity vector:
/// lhs = sum_j w_j s_j^p, rhs = max over K rows of sum_j w_j r_ij^p.
inline std::pair<double, double> lhs_rhs(const SummingInstance& inst, const Vec& w) {
    if (w.size() != inst.pair_count())
        throw std::invalid_argument("lhs_rhs: multiplicity length mismatch");
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!is_finite(w[j]) || w[j] < 0.0)
            throw std::invalid_argument("lhs_rhs: invalid multiplicity at " +
                                        std::to_string(j));
    }
    double lhs = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) lhs += w[j] * inst.s_pow(j);
    double rhs = 0.0;
    for (std::size_t i = 0; i < inst.k_count(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * inst.r_pow(i, j);
        rhs = std::max(rhs, acc);
    }
    return {lhs, rhs};
}

/// The separation functional of the finite setting, evaluated at one K row:
/// sum_j w_j (s_j^p - pi * r_{k,j}^p). May be negative.
inline double psi_value(const SummingInstance& inst, double pi_value, const Vec& w,
                        std::size_t k_index) {
    if (k_index >= inst.k_count())
        throw std::invalid_argument("psi_value: k_index out of range");
    if (w.size() != inst.pair_count())
        throw std::invalid_argument("psi_value: multiplicity length mismatch");
    if (!is_finite(pi_value) || pi_value < 0.0)
        throw std::invalid_argument("psi_value: pi_value must be finite nonnegative");
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        acc += w[j] * (inst.s_pow(j) - pi_value * inst.r_pow(k_index, j));
    return acc;
}

// --- JSON -------------------------------------------------------------------

inline nlohmann::json instance_to_json(const SummingInstance& inst) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = "instance";
    j["p"] = inst.p();
    j["k_labels"] = inst.k_labels();
    j["pair_labels"] = inst.pair_labels();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < inst.k_count(); ++i) rows.push_back(inst.r_matrix().row(i));
    j["r_matrix"] = std::move(rows);
    j["s_vector"] = inst.s_vector();
    if (inst.null_pair())
        j["null_pair"] = *inst.null_pair();
    else
        j["null_pair"] = nullptr;
    j["family"] = inst.family();
    j["family_meta"] = inst.family_meta();
    return j;
}

inline SummingInstance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance json: not an object");
    if (j.contains("kind") && j.at("kind") != "instance")
        throw std::invalid_argument("instance json: kind is not \"instance\"");
    for (const char* key : {"p", "r_matrix", "s_vector"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("instance json: missing field \"") +
                                        key + "\"");
    std::vector<Vec> rows;
    for (const auto& row : j.at("r_matrix")) rows.push_back(row.get<Vec>());
    if (rows.empty()) throw std::invalid_argument("instance json: empty r_matrix");
    InstanceMetadata meta;
    if (j.contains("family") && j.at("family").is_string())
        meta.family = j.at("family").get<std::string>();
    if (j.contains("family_meta")) meta.family_meta = j.at("family_meta");
    if (j.contains("k_labels"))
        meta.k_labels = j.at("k_labels").get<std::vector<std::string>>();
    if (j.contains("pair_labels"))
        meta.pair_labels = j.at("pair_labels").get<std::vector<std::string>>();
    if (j.contains("null_pair") && !j.at("null_pair").is_null())
        meta.null_pair = j.at("null_pair").get<std::size_t>();
    return SummingInstance::build(Matrix::from_rows(rows), j.at("s_vector").get<Vec>(),
                                  j.at("p").get<double>(), std::move(meta));
}

/// Content digest of the canonical JSON form; certificates carry it so a
/// certificate file can be matched to the instance it was computed from.
inline std::string instance_hash(const SummingInstance& inst) {
    return to_hex(fnv1a64(instance_to_json(inst).dump()));
}

}  // namespace pietsch
