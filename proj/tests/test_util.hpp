#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "flowjet/jets.hpp"

namespace flowjet::testutil {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline std::mt19937_64 make_rng(std::uint64_t seed = 42) { return std::mt19937_64(seed); }

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

/// Rotation bounded away from every root of unity of order <= max_order
/// (margin on |omega^m - 1|), as the round-trip fixtures require.
inline double random_generic_alpha(std::mt19937_64& rng, int max_order = 4,
                                   double margin = 1e-3) {
    std::uniform_real_distribution<double> u(0.05, 2.0 * kPi - 0.05);
    for (;;) {
        const double alpha = u(rng);
        bool ok = true;
        for (int m = 1; m <= max_order && ok; ++m)
            ok = std::abs(std::polar(1.0, m * alpha) - Complex(1.0)) > margin;
        if (ok) return alpha;
    }
}

inline MapJet random_map(std::mt19937_64& rng, double alpha, int degree,
                         double scale = 1.0) {
    std::map<Key, Complex> coeffs;
    for (int level = 2; level <= degree; ++level)
        for (int j = level; j >= 0; --j)
            coeffs[Key{j, level - j}] = random_complex(rng, scale);
    return MapJet(alpha, degree, std::move(coeffs));
}

inline VectorFieldJet random_field(std::mt19937_64& rng, double alpha, int degree,
                                   double scale = 1.0) {
    std::map<Key, Complex> coeffs;
    for (int level = 2; level <= degree; ++level)
        for (int j = level; j >= 0; --j)
            coeffs[Key{j, level - j}] = random_complex(rng, scale);
    return VectorFieldJet(alpha, degree, std::move(coeffs));
}

inline Series random_series(std::mt19937_64& rng, int degree, double scale = 1.0) {
    Series s(degree);
    for (int level = 0; level <= degree; ++level)
        for (int j = level; j >= 0; --j)
            s.add_term(Key{j, level - j}, random_complex(rng, scale));
    return s;
}

/// Brute-force dense polynomial product (no truncation until the end):
/// independent oracle for the series Cauchy product.
inline Series dense_mul_then_truncate(const Series& a, const Series& b, int n) {
    std::vector<std::vector<Complex>> dense(2 * a.degree + 1,
                                            std::vector<Complex>(2 * a.degree + 1));
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) dense[ka.j + kb.j][ka.k + kb.k] += ca * cb;
    Series out(n);
    for (int j = 0; j < static_cast<int>(dense.size()); ++j)
        for (int k = 0; k < static_cast<int>(dense.size()); ++k)
            if (j + k <= n && dense[j][k] != Complex(0.0))
                out.add_term(Key{j, k}, dense[j][k]);
    return out;
}

inline double max_coeff_diff(const Series& a, const Series& b) {
    double m = 0.0;
    for (const auto& [key, c] : a.terms) {
        const Complex* other = b.find(key);
        m = std::max(m, std::abs(c - (other ? *other : Complex(0.0))));
    }
    for (const auto& [key, c] : b.terms)
        if (!a.find(key)) m = std::max(m, std::abs(c));
    return m;
}

/// Least-squares slope of log(y) against log(x); the residual-order fits.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace flowjet::testutil
