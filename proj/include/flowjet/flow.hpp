#pragma once

#include <map>
#include <vector>

#include "flowjet/exppoly.hpp"
#include "flowjet/jets.hpp"

namespace flowjet {

/// Jet of the flow of a vector field: coefficient functions phi_{j,k}(t)
/// stored as exponential polynomials, all vanishing at t = 0.
struct FlowJet {
    double alpha = 0.0;
    int degree = 0;
    std::map<Key, ExpPoly> coeffs;

    const ExpPoly* find(Key key) const {
        auto it = coeffs.find(key);
        return it == coeffs.end() ? nullptr : &it->second;
    }
};

/// Expand the flow of X order by order up to total degree n, solving the
/// coefficient ODEs in closed form.
FlowJet flow_expand(const VectorFieldJet& X, int n);

/// Time-t slice of a flow jet as a map jet. The reduced rotation alpha*t
/// mod 2*pi must stay strictly inside (0, 2*pi).
MapJet flow_at(const FlowJet& fj, double t);

/// Independent check: integrate dz/dt = X(z, conj z) with an adaptive
/// embedded Runge-Kutta scheme (abs/rel tolerance 1e-12) for each sample.
std::vector<Complex> flow_numeric_oracle(const VectorFieldJet& X, double t,
                                         const std::vector<Complex>& samples);

namespace detail {

/// Forcing terms at a given total degree: the (j,k) coefficients of
/// sum a_{l,m} phi^l conj(phi)^m using the supplied field coefficients and the
/// already-known lower-order phi's (the linear factor e^{i alpha t} included).
/// Field entries of level > `level` cannot contribute and are skipped.
template <class P>
std::map<Key, ExpPolyT<P>> forcing_at_level(double alpha, const std::map<Key, P>& field,
                                            const std::map<Key, ExpPolyT<P>>& phis,
                                            int level) {
    using E = ExpPolyT<P>;
    TruncSeries<E> flow_series(level);
    flow_series.add_term(Key{1, 0}, E::exponential(alpha, 1, P(1.0)));
    for (const auto& [key, phi] : phis)
        if (key.level() <= level) flow_series.add_term(key, phi);
    const TruncSeries<E> flow_conj = series_conj(flow_series);

    TruncSeries<E> acc(level);
    for (const auto& [fkey, a] : field) {
        if (fkey.level() < 2 || fkey.level() > level) continue;
        TruncSeries<E> term(level);
        if (fkey.k == 0)
            term = series_pow(flow_series, fkey.j, level);
        else if (fkey.j == 0)
            term = series_pow(flow_conj, fkey.k, level);
        else
            term = series_mul(series_pow(flow_series, fkey.j, level),
                              series_pow(flow_conj, fkey.k, level), level);
        for (const auto& [key, e] : term.terms) acc.add_term(key, e.scaled(a));
    }

    std::map<Key, ExpPolyT<P>> out;
    for (const auto& [key, e] : acc.terms)
        if (key.level() == level) out.emplace(key, e);
    return out;
}

}  // namespace detail

}  // namespace flowjet
