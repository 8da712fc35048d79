#include "flowjet/jets.hpp"

#include <cmath>
#include <sstream>

namespace flowjet {

namespace {

void check_coeffs(const std::map<Key, Complex>& coeffs, int degree) {
    for (const auto& [key, c] : coeffs) {
        if (key.j < 0 || key.k < 0 || key.level() < 2 || key.level() > degree) {
            throw std::invalid_argument("jet coefficient " + key_to_string(key) +
                                        " outside total degree range [2, " +
                                        std::to_string(degree) + "]");
        }
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("non-finite jet coefficient at " + key_to_string(key));
    }
}

bool same_alpha(double a, double b) { return std::abs(a - b) <= 1e-12; }

std::map<Key, Complex> merged_coeffs(const std::map<Key, Complex>& a,
                                     const std::map<Key, Complex>& b, int n) {
    std::map<Key, Complex> out;
    for (const auto& [key, c] : a)
        if (key.level() <= n) out[key] += c;
    for (const auto& [key, c] : b)
        if (key.level() <= n) out[key] += c;
    return out;
}

bool coeffs_equal(const std::map<Key, Complex>& a, const std::map<Key, Complex>& b,
                  double tol) {
    for (const auto& [key, c] : a) {
        auto it = b.find(key);
        const Complex other = it == b.end() ? Complex(0.0) : it->second;
        if (std::abs(c - other) > tol) return false;
    }
    for (const auto& [key, c] : b)
        if (a.find(key) == a.end() && std::abs(c) > tol) return false;
    return true;
}

}  // namespace

double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

MapJet::MapJet(double alpha, int degree, std::map<Key, Complex> coeffs)
    : alpha_(alpha), degree_(degree), coeffs_(std::move(coeffs)) {
    if (!(alpha > 0.0 && alpha < kTwoPi))
        throw std::invalid_argument("map rotation must lie strictly inside (0, 2*pi)");
    if (degree < 1) throw std::invalid_argument("jet degree must be >= 1");
    check_coeffs(coeffs_, degree_);
}

Complex MapJet::coeff(Key key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

Complex MapJet::rotation() const { return std::polar(1.0, alpha_); }

Series MapJet::to_series() const {
    Series s(degree_);
    s.add_term(Key{1, 0}, rotation());
    for (const auto& [key, c] : coeffs_) s.add_term(key, c);
    return s;
}

VectorFieldJet::VectorFieldJet(double alpha, int degree, std::map<Key, Complex> coeffs)
    : alpha_(alpha), degree_(degree), coeffs_(std::move(coeffs)) {
    if (!(std::abs(alpha) > 0.0 && std::abs(alpha) < kTwoPi))
        throw std::invalid_argument("field rotation rate must be nonzero with |alpha| < 2*pi");
    if (degree < 1) throw std::invalid_argument("jet degree must be >= 1");
    check_coeffs(coeffs_, degree_);
}

Complex VectorFieldJet::coeff(Key key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

MapJet jet_add(const MapJet& a, const MapJet& b, int n) {
    if (!same_alpha(a.alpha(), b.alpha()))
        throw std::runtime_error("incompatible rotation");
    return MapJet(a.alpha(), n, merged_coeffs(a.coeffs(), b.coeffs(), n));
}

VectorFieldJet jet_add(const VectorFieldJet& a, const VectorFieldJet& b, int n) {
    if (!same_alpha(a.alpha(), b.alpha()))
        throw std::runtime_error("incompatible rotation");
    return VectorFieldJet(a.alpha(), n, merged_coeffs(a.coeffs(), b.coeffs(), n));
}

Series jet_mul(const Series& a, const Series& b, int n) { return series_mul(a, b, n); }

Series jet_conjugate(const MapJet& a, int n) {
    return series_conj(a.to_series()).truncated(n);
}

Series series_compose(const Series& outer, const Series& inner, int n) {
    const Series inner_t = inner.truncated(n);
    const Series inner_conj = series_conj(inner_t);
    Series out(n);
    for (const auto& [key, c] : outer.terms) {
        Series term(n);
        if (key.j == 0 && key.k == 0) {
            term.add_term(Key{0, 0}, Complex(1.0));
        } else if (key.k == 0) {
            term = series_pow(inner_t, key.j, n);
        } else if (key.j == 0) {
            term = series_pow(inner_conj, key.k, n);
        } else {
            term = series_mul(series_pow(inner_t, key.j, n),
                              series_pow(inner_conj, key.k, n), n);
        }
        out += series_scale(term, c);
    }
    return out;
}

Series series_invert_near_identity(const Series& phi, int n) {
    const Complex* lin = phi.find(Key{1, 0});
    if (lin == nullptr || std::abs(*lin - Complex(1.0)) > 1e-12 || phi.find(Key{0, 0}) ||
        phi.find(Key{0, 1}))
        throw std::invalid_argument("series inverse requires a near-identity jet");

    Series identity(n);
    identity.add_term(Key{1, 0}, Complex(1.0));

    // psi = id - (nonlinear part); each correction pass gains one order.
    Series psi = identity;
    for (const auto& [key, c] : phi.terms)
        if (key.level() >= 2) psi.add_term(key, -c);

    for (int pass = 0; pass < n; ++pass) {
        Series err = series_compose(psi, phi, n);
        err.add_term(Key{1, 0}, Complex(-1.0));
        bool clean = true;
        for (const auto& [key, c] : err.terms) {
            if (std::abs(c) > 1e-15) clean = false;
            psi.add_term(key, -c);
        }
        if (clean) break;
    }
    return psi;
}

MapJet series_to_mapjet(const Series& s, double tol) {
    const Complex* lin = s.find(Key{1, 0});
    if (lin == nullptr || std::abs(std::abs(*lin) - 1.0) > tol)
        throw std::runtime_error("series linear part is not a unit rotation");
    const Complex* c00 = s.find(Key{0, 0});
    const Complex* c01 = s.find(Key{0, 1});
    if ((c00 && std::abs(*c00) > tol) || (c01 && std::abs(*c01) > tol))
        throw std::runtime_error("series is not an elliptic map jet");

    double rot = normalize_angle(std::arg(*lin));
    if (rot <= 0.0 || rot >= kTwoPi)
        throw std::runtime_error("composition not elliptic in required form");

    std::map<Key, Complex> coeffs;
    for (const auto& [key, c] : s.terms)
        if (key.level() >= 2) coeffs.emplace(key, c);
    return MapJet(rot, s.degree, std::move(coeffs));
}

MapJet jet_compose(const MapJet& outer, const MapJet& inner, int n) {
    double rot = normalize_angle(outer.alpha() + inner.alpha());
    if (rot < 1e-12 || kTwoPi - rot < 1e-12)
        throw std::runtime_error("composition not elliptic in required form");
    Series composed = series_compose(outer.to_series().truncated(n),
                                     inner.to_series().truncated(n), n);
    // Replace the numerically composed rotation with the exact angle sum.
    composed.terms.erase(Key{1, 0});
    composed.add_term(Key{1, 0}, std::polar(1.0, rot));
    return series_to_mapjet(composed);
}

Complex jet_eval(const Series& a, Complex z) {
    const Complex zb = std::conj(z);
    Complex acc(0.0);
    for (const auto& [key, c] : a.terms) {
        Complex m = c;
        for (int i = 0; i < key.j; ++i) m *= z;
        for (int i = 0; i < key.k; ++i) m *= zb;
        acc += m;
    }
    return acc;
}

Complex jet_eval(const MapJet& a, Complex z) { return jet_eval(a.to_series(), z); }

Complex jet_eval(const VectorFieldJet& a, Complex z) {
    Complex acc = Complex(0.0, a.alpha()) * z;
    const Complex zb = std::conj(z);
    for (const auto& [key, c] : a.coeffs()) {
        Complex m = c;
        for (int i = 0; i < key.j; ++i) m *= z;
        for (int i = 0; i < key.k; ++i) m *= zb;
        acc += m;
    }
    return acc;
}

bool jets_equal(const MapJet& a, const MapJet& b, double tol) {
    if (!same_alpha(a.alpha(), b.alpha())) return false;
    return coeffs_equal(a.coeffs(), b.coeffs(), tol);
}

bool jets_equal(const VectorFieldJet& a, const VectorFieldJet& b, double tol) {
    if (!same_alpha(a.alpha(), b.alpha())) return false;
    return coeffs_equal(a.coeffs(), b.coeffs(), tol);
}

std::string key_to_string(Key key) {
    std::ostringstream os;
    os << "(" << key.j << "," << key.k << ")";
    return os.str();
}

}  // namespace flowjet
