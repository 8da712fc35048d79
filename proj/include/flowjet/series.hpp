#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <stdexcept>

namespace flowjet {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Monomial exponent pair: the term z^j * conj(z)^k.
struct Key {
    int j = 0;
    int k = 0;

    int level() const { return j + k; }
    friend auto operator<=>(const Key&, const Key&) = default;
};

// Coefficient helpers; overloaded for every coefficient type the series
// machinery is instantiated with (Complex, ParamExpr, ExpPolyT<...>).
inline Complex coef_conj(const Complex& c) { return std::conj(c); }
inline double coef_abs(const Complex& c) { return std::abs(c); }

/// Truncated power series in (z, conj(z)) with coefficients of type C.
/// Keys run over j,k >= 0 with j+k <= degree; missing keys are zero.
template <class C>
struct TruncSeries {
    int degree = 0;
    std::map<Key, C> terms;

    explicit TruncSeries(int deg = 0) : degree(deg) {}

    const C* find(Key key) const {
        auto it = terms.find(key);
        return it == terms.end() ? nullptr : &it->second;
    }

    void add_term(Key key, const C& c) {
        if (key.j < 0 || key.k < 0)
            throw std::invalid_argument("series key with negative exponent");
        if (key.level() > degree) return;
        if (coef_abs(c) == 0.0) return;
        auto [it, inserted] = terms.emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (coef_abs(it->second) == 0.0) terms.erase(it);
        }
    }

    TruncSeries truncated(int n) const {
        TruncSeries out(n);
        for (const auto& [key, c] : terms)
            if (key.level() <= n) out.terms.emplace(key, c);
        return out;
    }

    TruncSeries& operator+=(const TruncSeries& rhs) {
        for (const auto& [key, c] : rhs.terms) add_term(key, c);
        return *this;
    }

    friend TruncSeries operator+(TruncSeries lhs, const TruncSeries& rhs) {
        lhs += rhs;
        return lhs;
    }
};

template <class C>
TruncSeries<C> series_mul(const TruncSeries<C>& a, const TruncSeries<C>& b, int n) {
    TruncSeries<C> out(n);
    for (const auto& [ka, ca] : a.terms) {
        if (ka.level() > n) continue;
        for (const auto& [kb, cb] : b.terms) {
            const Key key{ka.j + kb.j, ka.k + kb.k};
            if (key.level() > n) continue;
            out.add_term(key, ca * cb);
        }
    }
    return out;
}

/// Series of the conjugated function: coefficient (j,k) -> conj at (k,j).
template <class C>
TruncSeries<C> series_conj(const TruncSeries<C>& a) {
    TruncSeries<C> out(a.degree);
    for (const auto& [key, c] : a.terms)
        out.terms.emplace(Key{key.k, key.j}, coef_conj(c));
    return out;
}

/// a^p truncated at degree n; requires p >= 1.
template <class C>
TruncSeries<C> series_pow(const TruncSeries<C>& a, int p, int n) {
    if (p < 1) throw std::invalid_argument("series_pow requires a positive exponent");
    TruncSeries<C> out = a.truncated(n);
    for (int i = 1; i < p; ++i) out = series_mul(out, a, n);
    return out;
}

template <class C>
TruncSeries<C> series_scale(const TruncSeries<C>& a, const C& s) {
    TruncSeries<C> out(a.degree);
    for (const auto& [key, c] : a.terms) out.add_term(key, c * s);
    return out;
}

}  // namespace flowjet
