#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flowjet/birkhoff.hpp"
#include "flowjet/seasonal.hpp"
#include "test_util.hpp"

using namespace flowjet;
using namespace flowjet::testutil;

TEST_CASE("Birkhoff constant fixtures") {
    const StabilityReport r1 = birkhoff_b1(paradox_map_first());
    CHECK(std::abs(r1.b1 - Complex(-0.5, -5.5)) < 1e-10);
    CHECK(r1.verdict == Verdict::LAS);

    const StabilityReport r2 = birkhoff_b1(paradox_map_second());
    CHECK(std::abs(r2.b1 - Complex(-0.5, std::sqrt(3.0) / 2.0)) < 1e-10);
    CHECK(r2.verdict == Verdict::LAS);

    const MapJet composed = jet_compose(paradox_map_second(), paradox_map_first(), 3);
    const StabilityReport rc = birkhoff_b1(composed);
    CHECK(rc.v1 == doctest::Approx(0.5 * (3.0 * std::sqrt(3.0) - 5.0)).epsilon(1e-10));
    CHECK(rc.verdict == Verdict::Repeller);
}

TEST_CASE("pure rotation is inconclusive") {
    const StabilityReport r = birkhoff_b1(MapJet(1.0, 3));
    CHECK(std::abs(r.b1) == 0.0);
    CHECK(r.verdict == Verdict::Inconclusive);
}

TEST_CASE("low-order roots of unity are rejected") {
    CHECK_THROWS_WITH_AS(birkhoff_b1(MapJet(kPi, 3)),
                         "low-order root of unity: B1 undefined by this method",
                         std::runtime_error);
    CHECK_THROWS_AS(birkhoff_b1(MapJet(kTwoPi / 3.0, 3)), std::runtime_error);
    // A primitive fourth root is fine (lambda^4 = 1 is allowed).
    CHECK_NOTHROW(birkhoff_b1(MapJet(kPi / 2.0, 3)));
}

TEST_CASE("reduction removes everything except the resonant cubic term") {
    auto rng = make_rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const MapJet f = random_map(rng, random_generic_alpha(rng, 4), 3);
        const NormalFormReduction red = birkhoff_reduce(f);
        for (const auto& [key, c] : red.normal_form.terms) {
            if (key == Key{1, 0} || key == Key{2, 1}) continue;
            CHECK(std::abs(c) < 1e-11);
        }
    }
    // At lambda = i the conj(z)^3 slot is resonant too and may survive; the
    // quadratic terms still have to vanish.
    const NormalFormReduction red = birkhoff_reduce(paradox_map_first());
    for (const auto& [key, c] : red.normal_form.terms) {
        if (key.level() == 2) CHECK(std::abs(c) < 1e-11);
        if (key.level() == 3 && !(key == Key{2, 1}) && !(key == Key{0, 3}))
            CHECK(std::abs(c) < 1e-11);
    }
}

TEST_CASE("change of variables conjugates the map to its normal form") {
    auto rng = make_rng(67);
    const MapJet f = random_map(rng, random_generic_alpha(rng, 4), 3);
    const NormalFormReduction red = birkhoff_reduce(f);

    // transform_inv is the jet inverse of transform.
    const Series round = series_compose(red.transform_inv, red.transform, 3);
    Series identity(3);
    identity.add_term(Key{1, 0}, Complex(1.0));
    CHECK(max_coeff_diff(round, identity) < 1e-11);

    std::vector<double> radii, resid;
    for (double r = 1e-3; r < 1.1e-2; r *= 1.6) {
        double worst = 0.0;
        for (int i = 0; i < 8; ++i) {
            const Complex w = std::polar(r, kTwoPi * i / 8.0);
            const Complex via_map = jet_eval(
                red.transform_inv, jet_eval(f, jet_eval(red.transform, w)));
            const Complex via_normal = jet_eval(red.normal_form, w);
            worst = std::max(worst, std::abs(via_map - via_normal));
        }
        radii.push_back(r);
        resid.push_back(worst);
    }
    CHECK(loglog_slope(radii, resid) > 3.7);
}

TEST_CASE("birkhoff_b1 reads only the 3-jet") {
    const MapJet quad(1.1, 2, {{Key{2, 0}, Complex(0.3, 0.2)}});
    const MapJet padded(1.1, 3, {{Key{2, 0}, Complex(0.3, 0.2)}});
    const StabilityReport a = birkhoff_b1(quad);
    const StabilityReport b = birkhoff_b1(padded);
    CHECK(std::abs(a.b1 - b.b1) < 1e-15);
}

TEST_CASE("radial drift oracle fixtures") {
    const double v1_f1 = radial_drift_oracle(paradox_map_first(), 0.01, 5000);
    CHECK(std::abs(v1_f1 - (-0.5)) < 0.15 * 0.5);

    const double v1_rot = radial_drift_oracle(MapJet(1.0, 3), 0.01, 2000);
    CHECK(std::abs(v1_rot) < 1e-6);

    const MapJet composed = jet_compose(paradox_map_second(), paradox_map_first(), 3);
    const double v1_comp = radial_drift_oracle(composed, 0.01, 5000);
    const double expected = 0.5 * (3.0 * std::sqrt(3.0) - 5.0);
    CHECK(std::abs(v1_comp - expected) < 0.15 * expected);
}

TEST_CASE("radial drift oracle error paths") {
    CHECK_THROWS_AS(radial_drift_oracle(paradox_map_first(), 0.2, 100),
                    std::invalid_argument);
    // A strongly repelling cubic term drives the orbit out of the trusted
    // neighborhood.
    const MapJet runaway(1.0, 3, {{Key{2, 1}, Complex(200.0, 0.0)}});
    CHECK_THROWS_WITH_AS(radial_drift_oracle(runaway, 0.05, 100000),
                         "left perturbative regime", std::runtime_error);
}

TEST_CASE("sign agreement between reduction and drift oracle") {
    const MapJet f1 = paradox_map_first();
    const MapJet f2 = paradox_map_second();
    const MapJet composed = jet_compose(f2, f1, 3);
    for (const MapJet* m : {&f1, &f2, &composed}) {
        const double predicted = birkhoff_b1(*m).v1;
        const double fitted = radial_drift_oracle(*m, 0.01, 5000);
        CHECK(predicted * fitted > 0.0);
    }

    auto rng = make_rng(71);
    int checked = 0;
    while (checked < 20) {
        const MapJet m = random_map(rng, random_generic_alpha(rng, 4), 3);
        const StabilityReport rep = birkhoff_b1(m);
        if (std::abs(rep.v1) < 0.05) continue;
        try {
            const double fitted = radial_drift_oracle(m, 0.01, 5000);
            CHECK(rep.v1 * fitted > 0.0);
        } catch (const std::runtime_error&) {
            // Orbit left the perturbative regime: outward drift, so the
            // prediction must be repelling.
            CHECK(rep.v1 > 0.0);
        }
        ++checked;
    }
}
