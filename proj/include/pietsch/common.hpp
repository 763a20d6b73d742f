#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pietsch {

using Vec = std::vector<double>;

/// Dense row-major matrix. All desk-scale problems here are small enough
/// that a flat vector beats any sparse or expression-template machinery.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    static Matrix from_rows(const std::vector<Vec>& row_list) {
        if (row_list.empty()) return Matrix{};
        Matrix m(row_list.size(), row_list.front().size());
        for (std::size_t i = 0; i < row_list.size(); ++i) {
            if (row_list[i].size() != m.cols)
                throw std::invalid_argument("Matrix::from_rows: ragged row " +
                                            std::to_string(i));
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = row_list[i][j];
        }
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Vec row(std::size_t i) const {
        return Vec(data.begin() + static_cast<std::ptrdiff_t>(i * cols),
                   data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
    }
};

inline bool is_finite(double x) { return std::isfinite(x); }

constexpr double kInf = std::numeric_limits<double>::infinity();

// --- deterministic random helpers ------------------------------------------
//
// std::uniform_real_distribution is implementation-defined, so the random
// streams below are built directly on mt19937_64 output. Same seed, same
// bytes, on any platform.

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

/// Standard normal via Box-Muller on the deterministic uniforms.
inline double normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// --- norms ------------------------------------------------------------------

enum class NormTag { Euclidean, Max, Sum };

inline double vector_norm(const Vec& v, NormTag tag = NormTag::Euclidean) {
    double acc = 0.0;
    switch (tag) {
        case NormTag::Euclidean:
            for (double x : v) acc += x * x;
            return std::sqrt(acc);
        case NormTag::Max:
            for (double x : v) acc = std::max(acc, std::abs(x));
            return acc;
        case NormTag::Sum:
            for (double x : v) acc += std::abs(x);
            return acc;
    }
    return acc;
}

inline double dot(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double inf_norm_dist(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return kInf;
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// --- misc -------------------------------------------------------------------

/// FNV-1a over a byte string; used as the content digest binding
/// certificates to the instance they were computed from.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

/// Fixed 17-significant-digit rendering for CSV artifacts.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

}  // namespace pietsch
