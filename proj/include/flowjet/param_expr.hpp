#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "flowjet/series.hpp"

namespace flowjet {

/// Polynomial in a handful of free parameters and their conjugates, with
/// complex coefficients. Atom 2*s stands for parameter s, atom 2*s+1 for its
/// conjugate; a monomial is the sorted list of its atoms. The inverse solver
/// carries these through higher-order forcings so compatibility equations can
/// be checked identically in the parameters.
class ParamExpr {
  public:
    using Monomial = std::vector<int>;

    ParamExpr() = default;
    ParamExpr(double c) : ParamExpr(Complex(c)) {}
    ParamExpr(Complex c) {
        if (c != Complex(0.0)) monomials_.emplace(Monomial{}, c);
    }

    static ParamExpr atom(int slot, bool conjugated = false) {
        ParamExpr out;
        out.monomials_.emplace(Monomial{2 * slot + (conjugated ? 1 : 0)}, Complex(1.0));
        return out;
    }

    const std::map<Monomial, Complex>& monomials() const { return monomials_; }

    ParamExpr& operator+=(const ParamExpr& rhs) {
        for (const auto& [mono, c] : rhs.monomials_) add(mono, c);
        return *this;
    }
    ParamExpr& operator-=(const ParamExpr& rhs) {
        for (const auto& [mono, c] : rhs.monomials_) add(mono, -c);
        return *this;
    }
    friend ParamExpr operator+(ParamExpr lhs, const ParamExpr& rhs) { return lhs += rhs; }
    friend ParamExpr operator-(ParamExpr lhs, const ParamExpr& rhs) { return lhs -= rhs; }
    ParamExpr operator-() const {
        ParamExpr out;
        for (const auto& [mono, c] : monomials_) out.monomials_.emplace(mono, -c);
        return out;
    }

    friend ParamExpr operator*(const ParamExpr& a, const ParamExpr& b) {
        ParamExpr out;
        for (const auto& [ma, ca] : a.monomials_) {
            for (const auto& [mb, cb] : b.monomials_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                out.add(m, ca * cb);
            }
        }
        return out;
    }

    friend ParamExpr operator*(const ParamExpr& a, Complex s) {
        ParamExpr out;
        if (s == Complex(0.0)) return out;
        for (const auto& [mono, c] : a.monomials_) out.monomials_.emplace(mono, c * s);
        return out;
    }
    friend ParamExpr operator*(Complex s, const ParamExpr& a) { return a * s; }
    friend ParamExpr operator*(const ParamExpr& a, double s) { return a * Complex(s); }

    ParamExpr conjugated() const {
        ParamExpr out;
        for (const auto& [mono, c] : monomials_) {
            Monomial m = mono;
            for (int& atom : m) atom ^= 1;
            std::sort(m.begin(), m.end());
            out.add(m, std::conj(c));
        }
        return out;
    }

    Complex eval(const std::vector<Complex>& slot_values) const {
        Complex acc(0.0);
        for (const auto& [mono, c] : monomials_) {
            Complex term = c;
            for (int atom : mono) {
                const int slot = atom / 2;
                if (slot >= static_cast<int>(slot_values.size()))
                    throw std::invalid_argument("parameter value missing for slot");
                const Complex v = slot_values[slot];
                term *= (atom & 1) ? std::conj(v) : v;
            }
            acc += term;
        }
        return acc;
    }

    Complex constant_part() const {
        auto it = monomials_.find(Monomial{});
        return it == monomials_.end() ? Complex(0.0) : it->second;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [mono, c] : monomials_) m = std::max(m, std::abs(c));
        return m;
    }

    double max_nonconstant_abs() const {
        double m = 0.0;
        for (const auto& [mono, c] : monomials_)
            if (!mono.empty()) m = std::max(m, std::abs(c));
        return m;
    }

    bool is_constant(double tol) const { return max_nonconstant_abs() <= tol; }

  private:
    void add(const Monomial& mono, Complex c) {
        auto [it, inserted] = monomials_.emplace(mono, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex(0.0)) monomials_.erase(it);
        }
    }

    std::map<Monomial, Complex> monomials_;
};

inline ParamExpr coef_conj(const ParamExpr& p) { return p.conjugated(); }
inline double coef_abs(const ParamExpr& p) { return p.max_abs(); }

}  // namespace flowjet
