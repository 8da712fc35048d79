#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "flowjet/flow.hpp"
#include "flowjet/jets.hpp"

namespace flowjet {

/// Tolerance below which e^{i(j-k-1)alpha} counts as 1, triggering a resonance.
inline constexpr double kResonanceTol = 1e-9;

/// Tolerance on compatibility defects: below it the equation counts as
/// satisfied and the slot becomes a free parameter.
inline constexpr double kCompatibilityTol = 1e-9;

struct ResonanceEntry {
    Key key;
    bool resonant = false;
};

struct ResonanceTable {
    double alpha = 0.0;
    int degree = 0;
    /// Graded order: by total degree, then j descending.
    std::vector<ResonanceEntry> entries;
    /// Per total degree m, the set {|j-k-1| : j+k = m}.
    std::map<int, std::set<int>> order_offsets;

    bool is_resonant(Key key) const;
    std::vector<Key> resonant_keys() const;
};

ResonanceTable resonance_table(double alpha, int degree);

struct UniqueOutcome {
    VectorFieldJet field;
};

struct FamilyOutcome {
    VectorFieldJet base;          ///< free slots substituted (default 0)
    std::vector<Key> free_slots;  ///< resonant slots whose compatibility held
    std::string dependence;
};

struct ObstructedOutcome {
    Key at;
    /// Left-minus-right residual of the compatibility equation
    /// e^{i alpha} int_0^1 b(tau) e^{-i alpha tau} dtau = f_{j,k}.
    Complex defect;
};

using SolveOutcome = std::variant<UniqueOutcome, FamilyOutcome, ObstructedOutcome>;

/// Construct the vector field(s) whose time-1 flow matches F through its
/// degree. Free parameter values may be supplied per resonant slot; they
/// default to zero. Trichotomy: Unique (no resonant slot), Family (all
/// compatibility equations hold identically in the parameters), or Obstructed
/// at the first failing slot in graded order.
SolveOutcome invert_map(const MapJet& F, const std::map<Key, Complex>& free_values = {});

enum class SlotStatus { Determined, Free, Obstructed };

struct SlotResult {
    Key key;
    SlotStatus status = SlotStatus::Determined;
    /// Determined: the isolated coefficient. Obstructed: the defect.
    Complex value;
};

/// One level of the recursion with everything below already fixed: `partial`
/// must hold exactly the coefficients of total degree < level.
std::vector<SlotResult> solve_level(const MapJet& F, const VectorFieldJet& partial,
                                    int level);

/// Degree-2 closed forms, evaluated directly rather than through the
/// level-by-level solver; agrees with invert_map.
SolveOutcome closed_form_quadratic(const MapJet& F);

struct RotationClaimCheck {
    bool pass = false;
    double max_coeff_abs = 0.0;
};

/// For alpha = 2*pi/(n+1) and 2 <= m <= n-1, a field whose time-1 flow is a
/// pure rotation through order m must itself be a pure rotation through that
/// order: runs the solver on the rotation target and checks the result.
RotationClaimCheck check_pure_rotation_claim(double alpha, int n, int m);

/// The obstruction family e^{2 pi i/(n+1)} z + conj(z)^n: no smooth field
/// realizes it to order n; the solver must report the failing slot (0, n).
SolveOutcome obstruction_family_demo(int n);

}  // namespace flowjet
