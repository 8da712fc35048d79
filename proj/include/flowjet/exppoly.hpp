#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "flowjet/series.hpp"

namespace flowjet {

/// Exponential polynomial in time: t -> sum_gamma P_gamma(t) * e^{i gamma alpha t},
/// with finitely many integer gamma and polynomial P_gamma stored densely by
/// ascending power of t. The coefficient scalar C is std::complex<double> for
/// plain flows and ParamExpr when free parameters ride along.
template <class C>
class ExpPolyT {
  public:
    static constexpr double kPruneEps = 1e-15;

    explicit ExpPolyT(double alpha = 0.0) : alpha_(alpha) {}

    static ExpPolyT exponential(double alpha, int gamma, C amplitude) {
        ExpPolyT out(alpha);
        out.add_in(gamma, 0, amplitude);
        return out;
    }

    double alpha() const { return alpha_; }
    const std::map<int, std::vector<C>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add_in(int gamma, int power, const C& c) {
        if (power < 0) throw std::invalid_argument("negative power of t");
        auto& poly = terms_[gamma];
        if (static_cast<int>(poly.size()) <= power) poly.resize(power + 1, C(0.0));
        poly[power] += c;
    }

    ExpPolyT& operator+=(const ExpPolyT& rhs) {
        merge_alpha(rhs);
        for (const auto& [gamma, poly] : rhs.terms_)
            for (std::size_t m = 0; m < poly.size(); ++m)
                add_in(gamma, static_cast<int>(m), poly[m]);
        return *this;
    }

    ExpPolyT& operator-=(const ExpPolyT& rhs) {
        merge_alpha(rhs);
        for (const auto& [gamma, poly] : rhs.terms_)
            for (std::size_t m = 0; m < poly.size(); ++m)
                add_in(gamma, static_cast<int>(m), -poly[m]);
        return *this;
    }

    friend ExpPolyT operator+(ExpPolyT lhs, const ExpPolyT& rhs) { return lhs += rhs; }
    friend ExpPolyT operator-(ExpPolyT lhs, const ExpPolyT& rhs) { return lhs -= rhs; }

    friend ExpPolyT operator*(const ExpPolyT& a, const ExpPolyT& b) {
        a.check_alpha(b);
        ExpPolyT out(a.terms_.empty() ? b.alpha_ : a.alpha_);
        for (const auto& [ga, pa] : a.terms_)
            for (const auto& [gb, pb] : b.terms_)
                for (std::size_t ma = 0; ma < pa.size(); ++ma)
                    for (std::size_t mb = 0; mb < pb.size(); ++mb)
                        out.add_in(ga + gb, static_cast<int>(ma + mb), pa[ma] * pb[mb]);
        return out;
    }

    /// Coefficientwise product with a scalar (Complex or the carrier type).
    template <class S>
    ExpPolyT scaled(const S& s) const {
        ExpPolyT out(alpha_);
        for (const auto& [gamma, poly] : terms_)
            for (std::size_t m = 0; m < poly.size(); ++m)
                out.add_in(gamma, static_cast<int>(m), poly[m] * s);
        return out;
    }

    C eval(double t) const {
        C acc(0.0);
        for (const auto& [gamma, poly] : terms_) {
            C val(0.0);
            for (std::size_t m = poly.size(); m-- > 0;) val = val * t + poly[m];
            acc += val * std::polar(1.0, gamma * alpha_ * t);
        }
        return acc;
    }

    /// d/dt: (P' + i gamma alpha P) e^{i gamma alpha t} termwise.
    ExpPolyT derivative() const {
        ExpPolyT out(alpha_);
        for (const auto& [gamma, poly] : terms_) {
            const Complex rate(0.0, gamma * alpha_);
            for (std::size_t m = 0; m < poly.size(); ++m) {
                if (m + 1 < poly.size())
                    out.add_in(gamma, static_cast<int>(m),
                               poly[m + 1] * static_cast<double>(m + 1));
                out.add_in(gamma, static_cast<int>(m), poly[m] * rate);
            }
        }
        out.prune();
        return out;
    }

    /// Conjugate as a function of real t: gamma -> -gamma, coefficients conjugated.
    ExpPolyT conjugated() const {
        ExpPolyT out(alpha_);
        for (const auto& [gamma, poly] : terms_)
            for (std::size_t m = 0; m < poly.size(); ++m)
                out.add_in(-gamma, static_cast<int>(m), coef_conj(poly[m]));
        return out;
    }

    /// Multiply by e^{i dgamma alpha t}.
    ExpPolyT shifted(int dgamma) const {
        ExpPolyT out(alpha_);
        for (const auto& [gamma, poly] : terms_)
            for (std::size_t m = 0; m < poly.size(); ++m)
                out.add_in(gamma + dgamma, static_cast<int>(m), poly[m]);
        return out;
    }

    /// The antiderivative vanishing at t = 0. The gamma = 0 branch raises the
    /// polynomial degree; gamma != 0 uses the closed form of int t^m e^{ct} dt.
    ExpPolyT definite_antiderivative() const {
        ExpPolyT out(alpha_);
        C at_zero(0.0);
        for (const auto& [gamma, poly] : terms_) {
            if (gamma == 0) {
                for (std::size_t m = 0; m < poly.size(); ++m)
                    out.add_in(0, static_cast<int>(m) + 1,
                               poly[m] * (1.0 / (static_cast<double>(m) + 1.0)));
                continue;
            }
            const Complex c(0.0, gamma * alpha_);
            for (std::size_t m = 0; m < poly.size(); ++m) {
                // int t^m e^{ct} dt = e^{ct} sum_{r=0}^m (-1)^r m!/(m-r)! t^{m-r} / c^{r+1}
                double falling = 1.0;
                Complex cpow = c;
                double sign = 1.0;
                for (std::size_t r = 0; r <= m; ++r) {
                    const Complex w = sign * falling / cpow;
                    out.add_in(gamma, static_cast<int>(m - r), poly[m] * w);
                    if (m - r == 0) at_zero += poly[m] * w;
                    falling *= static_cast<double>(m - r);
                    cpow *= c;
                    sign = -sign;
                }
            }
        }
        out.add_in(0, 0, -at_zero);
        out.prune();
        return out;
    }

    void prune(double eps = kPruneEps) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            auto& poly = it->second;
            for (auto& c : poly)
                if (coef_abs(c) < eps) c = C(0.0);
            while (!poly.empty() && coef_abs(poly.back()) == 0.0) poly.pop_back();
            if (poly.empty())
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    double max_coef_abs() const {
        double m = 0.0;
        for (const auto& [gamma, poly] : terms_)
            for (const auto& c : poly) m = std::max(m, coef_abs(c));
        return m;
    }

    bool is_zero(double tol) const { return max_coef_abs() <= tol; }

  private:
    void check_alpha(const ExpPolyT& rhs) const {
        if (!terms_.empty() && !rhs.terms_.empty() && std::abs(alpha_ - rhs.alpha_) > 1e-12)
            throw std::invalid_argument("exp-poly base frequency mismatch");
    }

    void merge_alpha(const ExpPolyT& rhs) {
        check_alpha(rhs);
        if (terms_.empty() && !rhs.terms_.empty()) alpha_ = rhs.alpha_;
    }

    double alpha_;
    std::map<int, std::vector<C>> terms_;
};

template <class C>
double coef_abs(const ExpPolyT<C>& e) {
    return e.max_coef_abs();
}

template <class C>
ExpPolyT<C> coef_conj(const ExpPolyT<C>& e) {
    return e.conjugated();
}

/// Solution of phi' = i alpha phi + f(t), phi(0) = 0, by variation of
/// constants: e^{i alpha t} * int_0^t e^{-i alpha tau} f(tau) dtau.
template <class C>
ExpPolyT<C> twisted_integral(const ExpPolyT<C>& forcing) {
    ExpPolyT<C> out = forcing.shifted(-1).definite_antiderivative().shifted(1);
    out.prune();
    return out;
}

using ExpPoly = ExpPolyT<Complex>;

/// Solution of phi' = i alpha phi + a_jk e^{i (j-k) alpha t} + b(t), phi(0)=0.
inline ExpPoly exppoly_integrate_twisted(const ExpPoly& b, Complex a_jk, int j, int k) {
    ExpPoly forcing = b;
    forcing += ExpPoly::exponential(b.alpha(), j - k, a_jk);
    return twisted_integral(forcing);
}

}  // namespace flowjet
