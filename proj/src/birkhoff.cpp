#include "flowjet/birkhoff.hpp"

#include <cmath>
#include <vector>

namespace flowjet {

namespace {

constexpr double kVerdictTol = 1e-10;
constexpr double kRootTol = 1e-9;

void require_low_orders_nonresonant(Complex lambda) {
    Complex p = lambda;
    for (int l = 1; l <= 3; ++l) {
        if (std::abs(p - Complex(1.0)) < kRootTol)
            throw std::runtime_error("low-order root of unity: B1 undefined by this method");
        p *= lambda;
    }
}

/// Conjugate s by the near-identity change of variables id + h, i.e. compute
/// (id + h)^{-1} o s o (id + h) truncated at degree 3.
Series conjugate_by(const Series& s, const Series& transform, const Series& transform_inv) {
    return series_compose(transform_inv, series_compose(s, transform, 3), 3);
}

Verdict verdict_from(double v1) {
    if (v1 < -kVerdictTol) return Verdict::LAS;
    if (v1 > kVerdictTol) return Verdict::Repeller;
    return Verdict::Inconclusive;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::LAS: return "LAS";
        case Verdict::Repeller: return "Repeller";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

NormalFormReduction birkhoff_reduce(const MapJet& F) {
    const Complex lambda = F.rotation();
    require_low_orders_nonresonant(lambda);

    Series current = F.to_series().truncated(3);
    current.degree = 3;

    Series transform(3);
    transform.add_term(Key{1, 0}, Complex(1.0));
    Series transform_inv = transform;

    // Pass 1 removes the quadratic terms, pass 2 the removable cubic ones.
    // The homological divisor lambda^{j-k} - lambda never vanishes at degree 2
    // under the precondition; at degree 3 the slot (2,1) is always resonant
    // and (0,3) becomes resonant exactly when lambda^4 = 1, in which case that
    // term simply stays in the normal form.
    for (int level = 2; level <= 3; ++level) {
        Series h(3);
        for (const auto& [key, c] : current.terms) {
            if (key.level() != level) continue;
            const Complex divisor =
                std::pow(lambda, key.j) * std::pow(std::conj(lambda), key.k) - lambda;
            if (std::abs(divisor) < kRootTol) continue;
            h.add_term(key, c / divisor);
        }
        Series step(3);
        step.add_term(Key{1, 0}, Complex(1.0));
        step += h;
        const Series step_inv = series_invert_near_identity(step, 3);
        current = conjugate_by(current, step, step_inv);
        transform = series_compose(transform, step, 3);
        transform_inv = series_compose(step_inv, transform_inv, 3);
    }

    StabilityReport report;
    const Complex* c21 = current.find(Key{2, 1});
    report.b1 = c21 ? *c21 / lambda : Complex(0.0);
    report.v1 = report.b1.real();
    report.verdict = verdict_from(report.v1);

    return NormalFormReduction{std::move(current), std::move(transform),
                               std::move(transform_inv), report};
}

StabilityReport birkhoff_b1(const MapJet& F) { return birkhoff_reduce(F).report; }

double radial_drift_oracle(const MapJet& F, double radius, int iterations) {
    if (!(radius > 0.0 && radius <= 0.05))
        throw std::invalid_argument("oracle radius must lie in (0, 0.05]");
    if (iterations < 1) throw std::invalid_argument("need at least one iteration");
    require_low_orders_nonresonant(F.rotation());

    constexpr int kOrbits = 32;
    std::vector<Complex> z(kOrbits);
    for (int o = 0; o < kOrbits; ++o)
        z[o] = std::polar(radius, kTwoPi * o / kOrbits);

    // Least-squares fit of delta(|z|^2) = 2 V1 |z|^4 pooled over all steps,
    // with the 32-phase mean cancelling the oscillatory lower-order terms.
    double sum_delta = 0.0;
    double sum_r4 = 0.0;
    for (int step = 0; step < iterations; ++step) {
        double delta = 0.0;
        double r4 = 0.0;
        for (int o = 0; o < kOrbits; ++o) {
            const double r2_before = std::norm(z[o]);
            z[o] = jet_eval(F, z[o]);
            if (std::abs(z[o]) > 0.5)
                throw std::runtime_error("left perturbative regime");
            delta += std::norm(z[o]) - r2_before;
            r4 += r2_before * r2_before;
        }
        sum_delta += delta / kOrbits;
        sum_r4 += r4 / kOrbits;
    }
    return sum_delta / (2.0 * sum_r4);
}

}  // namespace flowjet
