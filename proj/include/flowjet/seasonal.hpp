#pragma once

#include <string>
#include <vector>

#include "flowjet/birkhoff.hpp"
#include "flowjet/jets.hpp"

namespace flowjet {

struct Season {
    VectorFieldJet field;
    double duration = 1.0;
};

/// Periodic switching schedule: the system follows each season's field for its
/// duration, in order, then repeats.
class SeasonSchedule {
  public:
    explicit SeasonSchedule(std::vector<Season> seasons);

    const std::vector<Season>& seasons() const { return seasons_; }
    double period() const { return period_; }

  private:
    std::vector<Season> seasons_;
    double period_ = 0.0;
};

struct TrajectorySample {
    double t = 0.0;
    Complex z;
    double r2 = 0.0;
    int season_index = 0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    bool escaped = false;
};

/// Integrate the switched system from z0 over whole periods with adaptive
/// Runge-Kutta (tol 1e-12), re-anchoring at every season boundary so no step
/// straddles a switch. Samples are emitted at `samples_per_period` uniform
/// phase points per period plus every boundary. Escape past |z| > 0.5
/// truncates the trajectory and sets the flag.
Trajectory integrate_seasonal(const SeasonSchedule& schedule, Complex z0, int periods,
                              int samples_per_period);

struct OriginClassification {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<double> radii;
    /// Drift-corrected per-period log-growth of |z|^2 at each radius.
    std::vector<double> rates;
    /// Pooled estimate of the stability constant (rate / (2 r^2)).
    double v1_estimate = 0.0;
    bool any_escape = false;
};

/// Empirical stability of the origin: per-period growth of |z|^2 measured
/// from 16 phases at each radius, with the verdict requiring a consistent
/// sign and rate scaling proportional to r^2.
OriginClassification classify_origin(const SeasonSchedule& schedule,
                                     const std::vector<double>& radii, int periods);

struct ParadoxCase {
    std::string name;
    double predicted_v1 = 0.0;  ///< from the Birkhoff constant of the period map jet
    OriginClassification empirical;
    bool agrees = false;
};

struct ParadoxReport {
    Complex mu;
    std::vector<ParadoxCase> cases;  ///< two seasons, the alternation, then all negated
    bool agreement = false;
};

struct ParadoxOptions {
    std::vector<double> radii{0.01, 0.02, 0.03, 0.04};
    int periods = 2000;
};

/// The packaged demonstration: each season alone keeps the origin LAS while
/// their alternation repels, and negating both fields swaps every verdict.
ParadoxReport paradox_demo(Complex mu = Complex(0.0),
                           const ParadoxOptions& options = ParadoxOptions{});

/// The demonstration pair: maps with a common elliptic fixed point whose
/// composition reverses the stability, and polynomial fields whose time-1
/// flows realize them through third order.
MapJet paradox_map_first();
MapJet paradox_map_second();
VectorFieldJet paradox_field_first(Complex mu);
VectorFieldJet paradox_field_second();

/// Field with the opposite sign (time reversal); flips every verdict.
VectorFieldJet negated(const VectorFieldJet& X);

}  // namespace flowjet
