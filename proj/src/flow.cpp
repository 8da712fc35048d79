#include "flowjet/flow.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

namespace flowjet {

FlowJet flow_expand(const VectorFieldJet& X, int n) {
    if (X.degree() < 2) throw std::invalid_argument("flow expansion needs degree >= 2");
    FlowJet fj;
    fj.alpha = X.alpha();
    fj.degree = n;
    for (int level = 2; level <= n; ++level) {
        auto forcing = detail::forcing_at_level(X.alpha(), X.coeffs(), fj.coeffs, level);
        for (auto& [key, f] : forcing) {
            ExpPoly phi = twisted_integral(f);
            phi.prune();
            if (!phi.empty()) fj.coeffs.emplace(key, std::move(phi));
        }
    }
    return fj;
}

MapJet flow_at(const FlowJet& fj, double t) {
    const double rot = normalize_angle(fj.alpha * t);
    if (rot < 1e-12 || kTwoPi - rot < 1e-12)
        throw std::runtime_error("non-elliptic time slice");
    std::map<Key, Complex> coeffs;
    for (const auto& [key, phi] : fj.coeffs) {
        const Complex v = phi.eval(t);
        if (v != Complex(0.0)) coeffs.emplace(key, v);
    }
    return MapJet(rot, fj.degree, std::move(coeffs));
}

namespace {

using State = std::array<double, 2>;

struct FieldRhs {
    double alpha;
    std::vector<std::pair<Key, Complex>> coeffs;

    explicit FieldRhs(const VectorFieldJet& X) : alpha(X.alpha()) {
        coeffs.assign(X.coeffs().begin(), X.coeffs().end());
    }

    void operator()(const State& s, State& dsdt, double) const {
        const Complex z(s[0], s[1]);
        const Complex zb = std::conj(z);
        Complex w = Complex(0.0, alpha) * z;
        for (const auto& [key, a] : coeffs) {
            Complex m = a;
            for (int i = 0; i < key.j; ++i) m *= z;
            for (int i = 0; i < key.k; ++i) m *= zb;
            w += m;
        }
        dsdt[0] = w.real();
        dsdt[1] = w.imag();
    }
};

}  // namespace

std::vector<Complex> flow_numeric_oracle(const VectorFieldJet& X, double t,
                                         const std::vector<Complex>& samples) {
    namespace ode = boost::numeric::odeint;
    for (const Complex& z0 : samples)
        if (std::abs(z0) > 0.1)
            throw std::invalid_argument("oracle samples must satisfy |z| <= 0.1");

    if (t == 0.0) return samples;

    const FieldRhs rhs(X);
    std::vector<Complex> out;
    out.reserve(samples.size());
    for (const Complex& z0 : samples) {
        State s{z0.real(), z0.imag()};
        try {
            auto stepper =
                ode::make_controlled(1e-12, 1e-12, ode::runge_kutta_fehlberg78<State>());
            ode::integrate_adaptive(stepper, rhs, s, 0.0, t, t / 64.0);
        } catch (const ode::odeint_error&) {
            std::ostringstream os;
            os << "integration failure at z0 = (" << z0.real() << ", " << z0.imag() << ")";
            throw std::runtime_error(os.str());
        }
        out.emplace_back(s[0], s[1]);
    }
    return out;
}

}  // namespace flowjet
