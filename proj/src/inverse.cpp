#include "flowjet/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flowjet/param_expr.hpp"

namespace flowjet {

namespace {

using SymExpPoly = ExpPolyT<ParamExpr>;

std::vector<Key> level_keys(int level) {
    std::vector<Key> keys;
    for (int j = level; j >= 0; --j) keys.push_back(Key{j, level - j});
    return keys;
}

/// Time-1 value of the twisted response to the direct forcing e^{i(j-k)alpha t}.
Complex direct_response_at_one(double alpha, int j, int k) {
    const Complex omega = std::polar(1.0, alpha);
    const int d = j - k - 1;
    if (d == 0) return omega;
    return omega * (std::polar(1.0, d * alpha) - Complex(1.0)) / Complex(0.0, d * alpha);
}

struct LevelSolveResult {
    bool obstructed = false;
    Key obstructed_at{};
    ParamExpr defect;
};

/// Level-by-level solver carrying free slots symbolically.
class SymbolicSolver {
  public:
    SymbolicSolver(const MapJet& target, ResonanceTable table)
        : target_(target), table_(std::move(table)), alpha_(target.alpha()) {}

    LevelSolveResult run_level(int level, std::vector<SlotResult>* report = nullptr) {
        auto forcing = detail::forcing_at_level(alpha_, field_, phis_, level);
        for (const Key key : level_keys(level)) {
            SymExpPoly b(alpha_);
            if (auto it = forcing.find(key); it != forcing.end()) b = it->second;

            SymExpPoly phi_b = twisted_integral(b);
            const ParamExpr h1 = phi_b.eval(1.0);
            const Complex f = target_.coeff(key);

            SymExpPoly response = twisted_integral(
                SymExpPoly::exponential(alpha_, key.j - key.k, ParamExpr(1.0)));

            if (table_.is_resonant(key)) {
                const ParamExpr defect = h1 - ParamExpr(f);
                if (defect.max_abs() >= kCompatibilityTol) {
                    if (report)
                        report->push_back({key, SlotStatus::Obstructed,
                                           defect.eval(zero_assignment())});
                    return {true, key, defect};
                }
                const int slot = static_cast<int>(free_slots_.size());
                free_slots_.push_back(key);
                const ParamExpr a = ParamExpr::atom(slot);
                field_[key] = a;
                SymExpPoly phi = response.scaled(a);
                phi += phi_b;
                phi.prune();
                phis_[key] = std::move(phi);
                if (report) report->push_back({key, SlotStatus::Free, Complex(0.0)});
            } else {
                const Complex g1 = direct_response_at_one(alpha_, key.j, key.k);
                const ParamExpr a = (ParamExpr(f) - h1) * (Complex(1.0) / g1);
                field_[key] = a;
                SymExpPoly phi = response.scaled(a);
                phi += phi_b;
                phi.prune();
                phis_[key] = std::move(phi);
                if (report)
                    report->push_back({key, SlotStatus::Determined,
                                       a.eval(zero_assignment())});
            }
        }
        return {};
    }

    /// Seed an already-known coefficient (used by the public solve_level).
    void seed_coefficient(Key key, Complex value) { field_[key] = ParamExpr(value); }

    /// Fill phi's for one level from the seeded field, without solving.
    void expand_seeded_level(int level) {
        auto forcing = detail::forcing_at_level(alpha_, field_, phis_, level);
        for (auto& [key, f] : forcing) {
            SymExpPoly phi = twisted_integral(f);
            phi.prune();
            if (!phi.empty()) phis_[key] = std::move(phi);
        }
    }

    const std::vector<Key>& free_slots() const { return free_slots_; }
    const std::map<Key, ParamExpr>& field() const { return field_; }

    std::vector<Complex> zero_assignment() const {
        return std::vector<Complex>(free_slots_.size(), Complex(0.0));
    }

  private:
    MapJet target_;
    ResonanceTable table_;
    double alpha_;
    std::vector<Key> free_slots_;
    std::map<Key, ParamExpr> field_;
    std::map<Key, SymExpPoly> phis_;
};

VectorFieldJet substitute_field(double alpha, int degree,
                                const std::map<Key, ParamExpr>& field,
                                const std::vector<Complex>& assignment) {
    std::map<Key, Complex> coeffs;
    for (const auto& [key, expr] : field) {
        const Complex v = expr.eval(assignment);
        if (v != Complex(0.0)) coeffs.emplace(key, v);
    }
    return VectorFieldJet(alpha, degree, std::move(coeffs));
}

}  // namespace

bool ResonanceTable::is_resonant(Key key) const {
    for (const auto& e : entries)
        if (e.key == key) return e.resonant;
    return false;
}

std::vector<Key> ResonanceTable::resonant_keys() const {
    std::vector<Key> out;
    for (const auto& e : entries)
        if (e.resonant) out.push_back(e.key);
    return out;
}

ResonanceTable resonance_table(double alpha, int degree) {
    if (!(alpha > 0.0 && alpha < kTwoPi))
        throw std::invalid_argument("rotation must lie strictly inside (0, 2*pi)");
    ResonanceTable table;
    table.alpha = alpha;
    table.degree = degree;
    for (int level = 2; level <= degree; ++level) {
        for (const Key key : level_keys(level)) {
            const int d = key.j - key.k - 1;
            table.order_offsets[level].insert(std::abs(d));
            bool resonant = false;
            if (d != 0) {
                const Complex w = std::polar(1.0, d * alpha);
                resonant = std::abs(w - Complex(1.0)) < kResonanceTol;
            }
            table.entries.push_back({key, resonant});
        }
    }
    return table;
}

SolveOutcome invert_map(const MapJet& F, const std::map<Key, Complex>& free_values) {
    ResonanceTable table = resonance_table(F.alpha(), F.degree());
    for (const auto& [key, value] : free_values) {
        if (!table.is_resonant(key))
            throw std::invalid_argument("free value supplied at non-resonant slot " +
                                        key_to_string(key));
    }

    SymbolicSolver solver(F, table);
    for (int level = 2; level <= F.degree(); ++level) {
        LevelSolveResult res = solver.run_level(level);
        if (res.obstructed) {
            std::vector<Complex> assignment(solver.free_slots().size(), Complex(0.0));
            for (std::size_t i = 0; i < solver.free_slots().size(); ++i)
                if (auto it = free_values.find(solver.free_slots()[i]);
                    it != free_values.end())
                    assignment[i] = it->second;
            return ObstructedOutcome{res.obstructed_at, res.defect.eval(assignment)};
        }
    }

    const std::vector<Key>& slots = solver.free_slots();
    std::vector<Complex> assignment(slots.size(), Complex(0.0));
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (auto it = free_values.find(slots[i]); it != free_values.end())
            assignment[i] = it->second;

    VectorFieldJet base =
        substitute_field(F.alpha(), F.degree(), solver.field(), assignment);
    if (slots.empty()) return UniqueOutcome{std::move(base)};

    std::ostringstream note;
    note << "higher-order coefficients depend polynomially (degree <= 2) on the free "
            "slots";
    for (const Key key : slots) note << " " << key_to_string(key);
    return FamilyOutcome{std::move(base), slots, note.str()};
}

std::vector<SlotResult> solve_level(const MapJet& F, const VectorFieldJet& partial,
                                    int level) {
    if (level < 2 || level > F.degree())
        throw std::invalid_argument("level outside [2, degree]");
    if (std::abs(F.alpha() - partial.alpha()) > 1e-12)
        throw std::runtime_error("incompatible rotation");
    for (const auto& [key, c] : partial.coeffs())
        if (key.level() >= level)
            throw std::invalid_argument(
                "partial field may only hold coefficients of total degree < level");

    SymbolicSolver solver(F, resonance_table(F.alpha(), F.degree()));
    for (const auto& [key, c] : partial.coeffs()) solver.seed_coefficient(key, c);
    for (int l = 2; l < level; ++l) solver.expand_seeded_level(l);

    std::vector<SlotResult> report;
    solver.run_level(level, &report);
    return report;
}

SolveOutcome closed_form_quadratic(const MapJet& F) {
    if (F.degree() != 2) throw std::invalid_argument("closed form requires degree 2");
    const double alpha = F.alpha();
    const Complex omega = F.rotation();
    const Complex ia(0.0, alpha);
    const Complex f20 = F.coeff(Key{2, 0});
    const Complex f11 = F.coeff(Key{1, 1});
    const Complex f02 = F.coeff(Key{0, 2});

    const Complex a20 = ia * f20 / (omega * (omega - 1.0));
    const Complex a11 = ia * f11 / (omega - 1.0);

    std::map<Key, Complex> coeffs;
    if (a20 != Complex(0.0)) coeffs[Key{2, 0}] = a20;
    if (a11 != Complex(0.0)) coeffs[Key{1, 1}] = a11;

    const Complex omega3 = omega * omega * omega;
    if (std::abs(omega3 - Complex(1.0)) >= kResonanceTol) {
        const Complex a02 = 3.0 * ia * omega * omega * f02 / (omega3 - 1.0);
        if (a02 != Complex(0.0)) coeffs[Key{0, 2}] = a02;
        return UniqueOutcome{VectorFieldJet(alpha, 2, std::move(coeffs))};
    }

    if (std::abs(f02) >= kCompatibilityTol) return ObstructedOutcome{Key{0, 2}, -f02};
    return FamilyOutcome{VectorFieldJet(alpha, 2, std::move(coeffs)),
                         {Key{0, 2}},
                         "the conj(z)^2 coefficient is a free parameter"};
}

RotationClaimCheck check_pure_rotation_claim(double alpha, int n, int m) {
    if (n < 3 || m < 2 || m > n - 1)
        throw std::invalid_argument("claim order m must satisfy 2 <= m <= n-1");
    if (std::abs(alpha - kTwoPi / (n + 1)) > 1e-12)
        throw std::invalid_argument("rotation must equal 2*pi/(n+1)");

    const MapJet rotation(alpha, m);
    SolveOutcome outcome = invert_map(rotation);
    const auto* unique = std::get_if<UniqueOutcome>(&outcome);
    if (unique == nullptr) return {false, 0.0};
    double max_abs = 0.0;
    for (const auto& [key, c] : unique->field.coeffs())
        max_abs = std::max(max_abs, std::abs(c));
    return {max_abs < 1e-12, max_abs};
}

SolveOutcome obstruction_family_demo(int n) {
    if (n < 2) throw std::invalid_argument("obstruction family needs degree >= 2");
    const double alpha = kTwoPi / (n + 1);
    const MapJet F(alpha, n, {{Key{0, n}, Complex(1.0)}});
    return invert_map(F);
}

}  // namespace flowjet
