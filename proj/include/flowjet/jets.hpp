#pragma once

#include <map>
#include <string>

#include "flowjet/series.hpp"

namespace flowjet {

using Series = TruncSeries<Complex>;

/// Reduce an angle to [0, 2*pi).
double normalize_angle(double a);

/// Truncated planar map e^{i*alpha} z + sum f_{j,k} z^j conj(z)^k, 2 <= j+k <= degree.
/// The linear rotation is stored implicitly through alpha in (0, 2*pi).
class MapJet {
  public:
    MapJet(double alpha, int degree, std::map<Key, Complex> coeffs = {});

    double alpha() const { return alpha_; }
    int degree() const { return degree_; }
    const std::map<Key, Complex>& coeffs() const { return coeffs_; }

    /// Coefficient at (j,k); missing keys read as zero.
    Complex coeff(Key key) const;

    /// e^{i*alpha}.
    Complex rotation() const;

    /// Explicit series including the linear term at key (1,0).
    Series to_series() const;

  private:
    double alpha_;
    int degree_;
    std::map<Key, Complex> coeffs_;
};

/// Truncated planar vector field i*alpha z + sum a_{j,k} z^j conj(z)^k.
/// alpha may be negative (reversed rotation) but never zero: the admissible
/// range is (-2*pi, 0) or (0, 2*pi).
class VectorFieldJet {
  public:
    VectorFieldJet(double alpha, int degree, std::map<Key, Complex> coeffs = {});

    double alpha() const { return alpha_; }
    int degree() const { return degree_; }
    const std::map<Key, Complex>& coeffs() const { return coeffs_; }
    Complex coeff(Key key) const;

  private:
    double alpha_;
    int degree_;
    std::map<Key, Complex> coeffs_;
};

MapJet jet_add(const MapJet& a, const MapJet& b, int n);
VectorFieldJet jet_add(const VectorFieldJet& a, const VectorFieldJet& b, int n);

/// Cauchy product of truncated series, all terms above total degree n dropped.
Series jet_mul(const Series& a, const Series& b, int n);

/// Series of conj(F): coefficient (j,k) -> conj at (k,j); the linear part
/// becomes e^{-i*alpha} at key (0,1).
Series jet_conjugate(const MapJet& a, int n);

/// Jet of outer(inner(z,conj z), conj(inner(z,conj z))) truncated at n.
/// The composed rotation alpha_outer + alpha_inner is reduced mod 2*pi and
/// must stay nonzero.
MapJet jet_compose(const MapJet& outer, const MapJet& inner, int n);

Complex jet_eval(const MapJet& a, Complex z);
Complex jet_eval(const VectorFieldJet& a, Complex z);
Complex jet_eval(const Series& a, Complex z);

/// Coefficientwise comparison treating missing keys as zero (absolute tol).
bool jets_equal(const MapJet& a, const MapJet& b, double tol = 1e-12);
bool jets_equal(const VectorFieldJet& a, const VectorFieldJet& b, double tol = 1e-12);

/// Substitute `inner` (and its conjugate) into every monomial of `outer`.
Series series_compose(const Series& outer, const Series& inner, int n);

/// Jet inverse of a near-identity series (linear part exactly z), i.e. the
/// series psi with psi(phi(z, conj z)) = z + O(n+1).
Series series_invert_near_identity(const Series& phi, int n);

/// Convert a series with elliptic linear part back to a MapJet. Checks that
/// the constant and conj-linear entries vanish to `tol` and that the (1,0)
/// entry has unit modulus.
MapJet series_to_mapjet(const Series& s, double tol = 1e-9);

std::string key_to_string(Key key);

}  // namespace flowjet
