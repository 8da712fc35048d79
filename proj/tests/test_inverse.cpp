#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flowjet/inverse.hpp"
#include "flowjet/seasonal.hpp"
#include "test_util.hpp"

using namespace flowjet;
using namespace flowjet::testutil;

namespace {

Complex closed_form_a20(double alpha, Complex omega, Complex f20) {
    return Complex(0.0, alpha) * f20 / (omega * (omega - 1.0));
}
Complex closed_form_a11(double alpha, Complex omega, Complex f11) {
    return Complex(0.0, alpha) * f11 / (omega - 1.0);
}
Complex closed_form_a02(double alpha, Complex omega, Complex f02) {
    return 3.0 * Complex(0.0, alpha) * omega * omega * f02 /
           (omega * omega * omega - 1.0);
}

}  // namespace

TEST_CASE("resonance table fixtures") {
    SUBCASE("alpha = pi/2, degree 3: only (0,3) resonates") {
        const ResonanceTable t = resonance_table(kPi / 2.0, 3);
        CHECK(!t.is_resonant(Key{2, 0}));
        CHECK(!t.is_resonant(Key{1, 1}));
        CHECK(!t.is_resonant(Key{0, 2}));
        CHECK(!t.is_resonant(Key{3, 0}));
        CHECK(!t.is_resonant(Key{2, 1}));
        CHECK(!t.is_resonant(Key{1, 2}));
        CHECK(t.is_resonant(Key{0, 3}));
        CHECK(t.resonant_keys() == std::vector<Key>{Key{0, 3}});
        CHECK(t.order_offsets.at(2) == std::set<int>{1, 3});
        CHECK(t.order_offsets.at(3) == std::set<int>{0, 2, 4});
    }
    SUBCASE("alpha = 2*pi/3, degree 2: only (0,2) resonates") {
        const ResonanceTable t = resonance_table(kTwoPi / 3.0, 2);
        CHECK(t.resonant_keys() == std::vector<Key>{Key{0, 2}});
    }
    SUBCASE("alpha = 1: no resonance at any order") {
        const ResonanceTable t = resonance_table(1.0, 6);
        CHECK(t.resonant_keys().empty());
    }
}

TEST_CASE("quadratic closed forms match the generic solver") {
    auto rng = make_rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = random_generic_alpha(rng, 3);
        const MapJet f = random_map(rng, alpha, 2);
        const SolveOutcome generic = invert_map(f);
        const SolveOutcome direct = closed_form_quadratic(f);
        const auto& gf = std::get<UniqueOutcome>(generic).field;
        const auto& df = std::get<UniqueOutcome>(direct).field;
        CHECK(jets_equal(gf, df, 1e-12));

        const Complex omega = f.rotation();
        CHECK(std::abs(gf.coeff(Key{2, 0}) -
                       closed_form_a20(alpha, omega, f.coeff(Key{2, 0}))) < 1e-12);
        CHECK(std::abs(gf.coeff(Key{1, 1}) -
                       closed_form_a11(alpha, omega, f.coeff(Key{1, 1}))) < 1e-12);
        CHECK(std::abs(gf.coeff(Key{0, 2}) -
                       closed_form_a02(alpha, omega, f.coeff(Key{0, 2}))) < 1e-12);
    }
}

TEST_CASE("quadratic closed-form fixture at omega = e^i") {
    const MapJet f(1.0, 2, {{Key{2, 0}, Complex(1.0)}});
    const auto outcome = closed_form_quadratic(f);
    const auto& x = std::get<UniqueOutcome>(outcome).field;
    const Complex omega = std::polar(1.0, 1.0);
    CHECK(std::abs(x.coeff(Key{2, 0}) - Complex(0.0, 1.0) / (omega * (omega - 1.0))) <
          1e-14);
    CHECK(x.coeff(Key{1, 1}) == Complex(0.0));
    CHECK(x.coeff(Key{0, 2}) == Complex(0.0));
}

TEST_CASE("cubic-root rotation: obstruction and family branches at degree 2") {
    const double alpha = kTwoPi / 3.0;
    SUBCASE("nonzero conj(z)^2 coefficient obstructs") {
        const MapJet f(alpha, 2, {{Key{0, 2}, Complex(1.0)}});
        const auto outcome = invert_map(f);
        const auto& obs = std::get<ObstructedOutcome>(outcome);
        CHECK(obs.at == Key{0, 2});
        CHECK(std::abs(obs.defect - Complex(-1.0)) < 1e-12);
        CHECK(std::abs(obs.defect) == doctest::Approx(1.0).epsilon(1e-12));

        const auto direct = closed_form_quadratic(f);
        const auto& obs2 = std::get<ObstructedOutcome>(direct);
        CHECK(obs2.at == obs.at);
        CHECK(std::abs(obs2.defect - obs.defect) < 1e-12);
    }
    SUBCASE("vanishing conj(z)^2 coefficient gives a one-parameter family") {
        auto rng = make_rng(9);
        std::map<Key, Complex> coeffs{{Key{2, 0}, random_complex(rng)},
                                      {Key{1, 1}, random_complex(rng)}};
        const MapJet f(alpha, 2, coeffs);
        const auto outcome = invert_map(f);
        const auto& fam = std::get<FamilyOutcome>(outcome);
        CHECK(fam.free_slots == std::vector<Key>{Key{0, 2}});
        const auto direct = closed_form_quadratic(f);
        CHECK(jets_equal(fam.base, std::get<FamilyOutcome>(direct).base, 1e-12));
    }
}

TEST_CASE("pure rotation target returns the bare rotation field") {
    const MapJet f(1.3, 3);
    const auto outcome = invert_map(f);
    const auto& x = std::get<UniqueOutcome>(outcome).field;
    CHECK(x.coeffs().empty());
    CHECK(x.alpha() == 1.3);
}

TEST_CASE("demonstration map inversions reproduce the printed fields") {
    SUBCASE("first map: one-parameter family matching the printed coefficients") {
        const MapJet f1 = paradox_map_first();
        for (const Complex mu : {Complex(0.0), Complex(1.0, 2.0)}) {
            std::map<Key, Complex> free_values;
            if (mu != Complex(0.0)) free_values[Key{0, 3}] = mu;
            const auto outcome = invert_map(f1, free_values);
            const auto& fam = std::get<FamilyOutcome>(outcome);
            CHECK(fam.free_slots == std::vector<Key>{Key{0, 3}});
            CHECK(jets_equal(fam.base, paradox_field_first(mu), 1e-10));
        }
    }
    SUBCASE("second map: unique field") {
        const auto outcome = invert_map(paradox_map_second());
        const auto& x = std::get<UniqueOutcome>(outcome).field;
        CHECK(jets_equal(x, paradox_field_second(), 1e-12));
    }
}

TEST_CASE("square-root rotation: three compatibility conditions at degree 3") {
    auto rng = make_rng(77);
    const double alpha = kPi;
    for (int trial = 0; trial < 8; ++trial) {
        const Complex f20 = random_complex(rng);
        const Complex f11 = random_complex(rng);
        const Complex f02 = random_complex(rng);
        const Complex f21 = random_complex(rng);
        // Closed-form compatibility conditions at the square-root rotation,
        // derived symbolically from the level-2 coefficients and confirmed by
        // the numeric flow oracle.
        const Complex f30 = -0.5 * f11 * std::conj(f02) - f20 * f20;
        const Complex f12 = -0.5 * f11 * f11 - 0.5 * f11 * std::conj(f20) - f20 * f02 -
                            f02 * std::conj(f11);
        const Complex f03 = -0.5 * f02 * (2.0 * std::conj(f20) + f11);

        std::map<Key, Complex> coeffs{{Key{2, 0}, f20}, {Key{1, 1}, f11},
                                      {Key{0, 2}, f02}, {Key{3, 0}, f30},
                                      {Key{2, 1}, f21}, {Key{1, 2}, f12},
                                      {Key{0, 3}, f03}};
        const MapJet f(alpha, 3, coeffs);
        const auto outcome = invert_map(f);
        const auto& fam = std::get<FamilyOutcome>(outcome);
        CHECK(fam.free_slots == std::vector<Key>{Key{3, 0}, Key{1, 2}, Key{0, 3}});

        // Violating each printed condition obstructs at that very slot.
        for (const Key bad : {Key{3, 0}, Key{1, 2}, Key{0, 3}}) {
            auto broken = coeffs;
            broken[bad] += Complex(0.3, -0.1);
            const auto obs_outcome = invert_map(MapJet(alpha, 3, broken));
            const auto& obs = std::get<ObstructedOutcome>(obs_outcome);
            CHECK(obs.at == bad);
            CHECK(std::abs(obs.defect) > 1e-3);
        }
    }
}

TEST_CASE("printed a30 formula for generic cubic maps") {
    auto rng = make_rng(55);
    for (int trial = 0; trial < 12; ++trial) {
        const double alpha = random_generic_alpha(rng);
        const MapJet f = random_map(rng, alpha, 3);
        const auto outcome = invert_map(f);
        const auto& x = std::get<UniqueOutcome>(outcome).field;

        const Complex omega = f.rotation();
        const Complex f20 = f.coeff(Key{2, 0});
        const Complex f11 = f.coeff(Key{1, 1});
        const Complex f02 = f.coeff(Key{0, 2});
        const Complex f30 = f.coeff(Key{3, 0});
        const Complex p30 = (std::conj(f02) * f11 - 2.0 * f30) * omega * omega * omega +
                            2.0 * (std::conj(f02) * f11 + f20 * f20 - f30) * omega * omega +
                            2.0 * (f20 * f20 - f30) * omega + 2.0 * f20 * f20;
        const Complex a30 = -Complex(0.0, alpha) * p30 /
                            (omega * omega * (omega * omega * omega - 1.0) * (omega + 1.0));
        CHECK(std::abs(x.coeff(Key{3, 0}) - a30) < 1e-10);
    }
}

TEST_CASE("round trip: invert then flow returns the target map") {
    auto rng = make_rng(123);
    for (int trial = 0; trial < 25; ++trial) {
        const double alpha = random_generic_alpha(rng);
        const MapJet f = random_map(rng, alpha, 3);
        const auto outcome = invert_map(f);
        const auto& x = std::get<UniqueOutcome>(outcome).field;
        const MapJet back = flow_at(flow_expand(x, 3), 1.0);
        CHECK(jets_equal(back, f, 1e-9));
    }
}

TEST_CASE("family consistency: the time-1 flow is independent of free values") {
    auto rng = make_rng(321);
    SUBCASE("cubic family over a cubic-root rotation") {
        std::map<Key, Complex> coeffs;
        for (const Key key : {Key{2, 0}, Key{1, 1}, Key{3, 0}, Key{2, 1}, Key{1, 2},
                              Key{0, 3}})
            coeffs[key] = random_complex(rng);
        // Compatibility at (0,2) requires that coefficient to vanish; the
        // higher-order conditions then hold automatically for any target.
        const MapJet f(kTwoPi / 3.0, 3, coeffs);
        const auto outcome = invert_map(f);
        const auto& fam = std::get<FamilyOutcome>(outcome);
        REQUIRE(fam.free_slots == std::vector<Key>{Key{0, 2}});
        for (int i = 0; i < 10; ++i) {
            const Complex w = random_complex(rng, 2.0);
            const auto member = invert_map(f, {{Key{0, 2}, w}});
            const auto& base = std::get<FamilyOutcome>(member).base;
            CHECK(std::abs(base.coeff(Key{0, 2}) - w) < 1e-12);
            const MapJet back = flow_at(flow_expand(base, 3), 1.0);
            CHECK(jets_equal(back, f, 1e-9));
        }
    }
    SUBCASE("first demonstration map for sampled mu") {
        const MapJet f1 = paradox_map_first();
        for (int i = 0; i < 5; ++i) {
            const Complex mu = random_complex(rng, 3.0);
            const auto member = invert_map(f1, {{Key{0, 3}, mu}});
            const auto& base = std::get<FamilyOutcome>(member).base;
            const MapJet back = flow_at(flow_expand(base, 3), 1.0);
            CHECK(jets_equal(back, f1, 1e-9));
        }
    }
    SUBCASE("three-parameter family over the square-root rotation") {
        const Complex f20 = random_complex(rng);
        const Complex f11 = random_complex(rng);
        const Complex f02 = random_complex(rng);
        const std::map<Key, Complex> coeffs{
            {Key{2, 0}, f20},
            {Key{1, 1}, f11},
            {Key{0, 2}, f02},
            {Key{3, 0}, -0.5 * f11 * std::conj(f02) - f20 * f20},
            {Key{2, 1}, random_complex(rng)},
            {Key{1, 2}, -0.5 * f11 * f11 - 0.5 * f11 * std::conj(f20) - f20 * f02 -
                            f02 * std::conj(f11)},
            {Key{0, 3}, -0.5 * f02 * (2.0 * std::conj(f20) + f11)}};
        const MapJet f(kPi, 3, coeffs);
        for (int i = 0; i < 5; ++i) {
            const std::map<Key, Complex> values{{Key{3, 0}, random_complex(rng, 2.0)},
                                                {Key{1, 2}, random_complex(rng, 2.0)},
                                                {Key{0, 3}, random_complex(rng, 2.0)}};
            const auto member = invert_map(f, values);
            const auto& base = std::get<FamilyOutcome>(member).base;
            for (const auto& [key, v] : values) CHECK(std::abs(base.coeff(key) - v) < 1e-12);
            const MapJet back = flow_at(flow_expand(base, 3), 1.0);
            CHECK(jets_equal(back, f, 1e-9));
        }
    }
}

TEST_CASE("degree 4 with resonances on two levels") {
    // At a cubic-root rotation the conj(z)^2 slot resonates at order 2 and
    // the (4,0)/(1,3) slots at order 4. The order-4 compatibility equations
    // then depend on the order-2 free parameter (up to cubic monomials), so
    // they generically fail *identically* even when the map is realizable at
    // one specific parameter value: the symbolic solver reports the
    // obstruction, while solve_level with the exact numeric lower field sees
    // the compatibility pass at that value.
    auto rng = make_rng(888);
    const double alpha = kTwoPi / 3.0;
    for (int trial = 0; trial < 5; ++trial) {
        const VectorFieldJet x = random_field(rng, alpha, 4);
        const MapJet f = flow_at(flow_expand(x, 4), 1.0);

        const auto outcome = invert_map(f);
        const auto* obs = std::get_if<ObstructedOutcome>(&outcome);
        REQUIRE(obs != nullptr);
        CHECK(obs->at == Key{4, 0});

        std::map<Key, Complex> partial;
        for (const auto& [key, c] : x.coeffs())
            if (key.level() < 4) partial[key] = c;
        const auto level4 = solve_level(f, VectorFieldJet(alpha, 4, partial), 4);
        REQUIRE(level4.size() == 5);
        for (const auto& r : level4) {
            if (r.key == Key{4, 0} || r.key == Key{1, 3}) {
                CHECK(r.status == SlotStatus::Free);
            } else {
                CHECK(r.status == SlotStatus::Determined);
                CHECK(std::abs(r.value - x.coeff(r.key)) < 1e-9);
            }
        }
    }
}

TEST_CASE("trichotomy exclusivity") {
    auto rng = make_rng(404);
    // Unique: generic rotation, no resonant entries.
    const MapJet generic = random_map(rng, random_generic_alpha(rng), 3);
    CHECK(std::holds_alternative<UniqueOutcome>(invert_map(generic)));
    CHECK(resonance_table(generic.alpha(), 3).resonant_keys().empty());

    // Family: resonant entries present, compatibility satisfied.
    const MapJet f1 = paradox_map_first();
    CHECK(std::holds_alternative<FamilyOutcome>(invert_map(f1)));
    CHECK(!resonance_table(f1.alpha(), 3).resonant_keys().empty());

    // Obstructed: resonant entry with a failing compatibility equation.
    MapJet broken(f1.alpha(), 3,
                  {{Key{2, 0}, Complex(1.0, -3.0)}, {Key{1, 1}, Complex(1.0)},
                   {Key{0, 3}, Complex(0.5)}});
    CHECK(std::holds_alternative<ObstructedOutcome>(invert_map(broken)));
}

TEST_CASE("solve_level exposes the per-slot breakdown") {
    auto rng = make_rng(31);
    const double alpha = random_generic_alpha(rng, 3);
    const MapJet f = random_map(rng, alpha, 2);
    const VectorFieldJet empty(alpha, 2);
    const auto results = solve_level(f, empty, 2);
    REQUIRE(results.size() == 3);
    const Complex omega = f.rotation();
    CHECK(results[0].key == Key{2, 0});
    CHECK(results[0].status == SlotStatus::Determined);
    CHECK(std::abs(results[0].value - closed_form_a20(alpha, omega, f.coeff(Key{2, 0}))) <
          1e-12);
    CHECK(std::abs(results[1].value - closed_form_a11(alpha, omega, f.coeff(Key{1, 1}))) <
          1e-12);
    CHECK(std::abs(results[2].value - closed_form_a02(alpha, omega, f.coeff(Key{0, 2}))) <
          1e-12);

    // Carrying the quadratic solution into the cubic level matches invert_map.
    const MapJet cubic = random_map(rng, alpha, 3);
    const auto level2 = solve_level(cubic, VectorFieldJet(alpha, 3), 2);
    std::map<Key, Complex> partial_coeffs;
    for (const auto& r : level2) partial_coeffs[r.key] = r.value;
    const auto level3 = solve_level(cubic, VectorFieldJet(alpha, 3, partial_coeffs), 3);
    const auto full_outcome = invert_map(cubic);
    const auto& full = std::get<UniqueOutcome>(full_outcome).field;
    for (const auto& r : level3) {
        CHECK(r.status == SlotStatus::Determined);
        CHECK(std::abs(r.value - full.coeff(r.key)) < 1e-11);
    }
}

TEST_CASE("solve_level input validation") {
    const MapJet f(1.0, 3, {{Key{2, 0}, Complex(1.0)}});
    CHECK_THROWS_AS(solve_level(f, VectorFieldJet(1.0, 3), 5), std::invalid_argument);
    CHECK_THROWS_AS(
        solve_level(f, VectorFieldJet(1.0, 3, {{Key{2, 0}, Complex(1.0)}}), 2),
        std::invalid_argument);
    CHECK_THROWS_AS(solve_level(f, VectorFieldJet(2.0, 3), 2), std::runtime_error);
}

TEST_CASE("free values at non-resonant slots are rejected") {
    const MapJet f1 = paradox_map_first();
    CHECK_THROWS_AS(invert_map(f1, {{Key{2, 0}, Complex(1.0)}}), std::invalid_argument);
}

TEST_CASE("pure rotation claim") {
    CHECK(check_pure_rotation_claim(kTwoPi / 5.0, 4, 2).pass);
    CHECK(check_pure_rotation_claim(kTwoPi / 7.0, 6, 5).pass);
    CHECK_THROWS_AS(check_pure_rotation_claim(kTwoPi / 3.0, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(check_pure_rotation_claim(kTwoPi / 5.0, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(check_pure_rotation_claim(1.0, 4, 2), std::invalid_argument);
}

TEST_CASE("obstruction family") {
    for (int n : {2, 3, 5}) {
        const auto outcome = obstruction_family_demo(n);
        const auto& obs = std::get<ObstructedOutcome>(outcome);
        CHECK(obs.at == Key{0, n});
        CHECK(std::abs(obs.defect) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(obstruction_family_demo(1), std::invalid_argument);
}
