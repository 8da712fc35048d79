#pragma once

#include "flowjet/jets.hpp"

namespace flowjet {

enum class Verdict { LAS, Repeller, Inconclusive };

const char* to_string(Verdict v);

/// First Birkhoff constant of a degree-3 elliptic map jet and the resulting
/// stability verdict. V1 = Re(B1): negative means locally asymptotically
/// stable, positive means repelling, |V1| <= 1e-10 is inconclusive.
struct StabilityReport {
    Complex b1;
    double v1 = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

/// Full reduction data: the near-identity change of variables and the map in
/// normal-form coordinates, kept around so tests can check the conjugacy.
struct NormalFormReduction {
    Series normal_form;    ///< degree-3 series, quadratic terms removed
    Series transform;      ///< z = transform(w, conj w)
    Series transform_inv;  ///< inverse jet of the transform
    StabilityReport report;
};

/// Reduce F by two near-identity polynomial changes of variables: remove all
/// quadratic terms, then every removable cubic term; the surviving z^2 conj(z)
/// coefficient equals lambda * B1. Requires lambda^l != 1 for l in {1,2,3}.
/// Only coefficients with j+k <= 3 of F participate.
NormalFormReduction birkhoff_reduce(const MapJet& F);

StabilityReport birkhoff_b1(const MapJet& F);

/// Empirical counterpart: iterate the truncated map from 32 points on the
/// circle |z| = radius and fit the radial drift model
/// delta(|z|^2) ~ 2 V1 |z|^4; returns the fitted V1.
double radial_drift_oracle(const MapJet& F, double radius, int iterations);

}  // namespace flowjet
