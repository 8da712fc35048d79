#include "flowjet/seasonal.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "flowjet/flow.hpp"

namespace flowjet {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 2>;

constexpr double kEscapeRadius = 0.5;

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

void advance(const FieldRhs& rhs, State& s, double t0, double t1) {
    if (t1 <= t0) return;
    try {
        auto stepper = ode::make_controlled(1e-12, 1e-12, ode::runge_kutta_fehlberg78<State>());
        ode::integrate_adaptive(stepper, rhs, s, t0, t1, (t1 - t0) / 16.0);
    } catch (const ode::odeint_error&) {
        throw std::runtime_error("integration failure inside season segment");
    }
}

}  // namespace

SeasonSchedule::SeasonSchedule(std::vector<Season> seasons) : seasons_(std::move(seasons)) {
    if (seasons_.empty()) throw std::invalid_argument("schedule needs at least one season");
    for (const Season& s : seasons_) {
        if (!(s.duration > 0.0))
            throw std::invalid_argument("season durations must be strictly positive");
        period_ += s.duration;
    }
}

Trajectory integrate_seasonal(const SeasonSchedule& schedule, Complex z0, int periods,
                              int samples_per_period) {
    if (std::abs(z0) > 0.1)
        throw std::invalid_argument("initial condition must satisfy |z0| <= 0.1");
    if (periods < 1) throw std::invalid_argument("need at least one period");
    if (samples_per_period < 1) throw std::invalid_argument("need at least one sample per period");

    const double T = schedule.period();
    std::vector<FieldRhs> rhs;
    rhs.reserve(schedule.seasons().size());
    for (const Season& s : schedule.seasons()) rhs.emplace_back(s.field);

    Trajectory traj;
    State s{z0.real(), z0.imag()};
    auto emit = [&](double t, int season_index) {
        const Complex z(s[0], s[1]);
        traj.samples.push_back({t, z, std::norm(z), season_index});
    };
    emit(0.0, 0);

    for (int p = 0; p < periods && !traj.escaped; ++p) {
        const double t_period = p * T;
        double season_start = t_period;
        // Uniform phase samples for this period, consumed season by season.
        std::vector<double> phase_times;
        phase_times.reserve(samples_per_period);
        for (int m = 1; m <= samples_per_period; ++m)
            phase_times.push_back(t_period + T * m / samples_per_period);
        std::size_t next_phase = 0;

        for (std::size_t si = 0; si < rhs.size() && !traj.escaped; ++si) {
            const double season_end = season_start + schedule.seasons()[si].duration;
            double t = season_start;
            while (t < season_end && !traj.escaped) {
                double target = season_end;
                bool is_phase_sample = false;
                if (next_phase < phase_times.size() &&
                    phase_times[next_phase] < season_end - 1e-12) {
                    target = phase_times[next_phase];
                    is_phase_sample = true;
                }
                advance(rhs[si], s, t, target);
                t = target;
                if (is_phase_sample) ++next_phase;
                emit(t, static_cast<int>(si));
                if (std::hypot(s[0], s[1]) > kEscapeRadius) traj.escaped = true;
            }
            // A phase sample that coincides with the boundary was just emitted.
            while (next_phase < phase_times.size() &&
                   phase_times[next_phase] <= season_end + 1e-12)
                ++next_phase;
            season_start = season_end;
        }
    }
    return traj;
}

OriginClassification classify_origin(const SeasonSchedule& schedule,
                                     const std::vector<double>& radii, int periods) {
    if (radii.empty()) throw std::invalid_argument("need at least one radius");
    for (double r : radii)
        if (!(r > 0.0 && r <= 0.05))
            throw std::invalid_argument("classification radii must lie in (0, 0.05]");

    constexpr int kPhases = 16;
    OriginClassification out;
    out.radii = radii;

    double v1_sum = 0.0;
    for (double r : radii) {
        // Drift-corrected estimate: the cubic normal-form model gives
        // d(1/r^2)/dperiod = -2 V1 exactly, so the endpoint difference of the
        // phase-averaged 1/r^2 recovers V1 without curvature bias.
        double inv_r2_sum = 0.0;
        int completed = 0;
        bool escaped = false;
        double v_escape = 0.0;
        for (int ph = 0; ph < kPhases; ++ph) {
            const Complex z0 = std::polar(r, kTwoPi * ph / kPhases);
            Trajectory traj = integrate_seasonal(schedule, z0, periods, 1);
            const TrajectorySample& last = traj.samples.back();
            if (traj.escaped) {
                escaped = true;
                const double periods_done = std::max(1.0, last.t / schedule.period());
                v_escape = std::max(
                    v_escape, (1.0 / (r * r) - 1.0 / last.r2) / (2.0 * periods_done));
                continue;
            }
            inv_r2_sum += 1.0 / last.r2;
            ++completed;
        }

        double v1_r;
        if (escaped && completed == 0) {
            v1_r = v_escape;
        } else {
            const double inv_r2_mean = inv_r2_sum / completed;
            v1_r = (1.0 / (r * r) - inv_r2_mean) / (2.0 * periods);
            if (escaped) v1_r = std::max(v1_r, v_escape);
        }
        out.any_escape = out.any_escape || escaped;
        out.rates.push_back(2.0 * v1_r * r * r);
        v1_sum += v1_r;
    }
    out.v1_estimate = v1_sum / radii.size();

    constexpr double kRateFloor = 1e-9;
    bool all_neg = true;
    bool all_pos = true;
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double rate = out.rates[i];
        all_neg = all_neg && rate < -kRateFloor;
        all_pos = all_pos && rate > kRateFloor;
        const double v = std::abs(rate) / (2.0 * radii[i] * radii[i]);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    // Rate must scale like r^2: the implied constant may not wander by more
    // than a factor of two across the radii.
    const bool scaling_ok = radii.size() < 2 || (vmin > 0.0 && vmax / vmin < 2.0);
    if (all_neg && scaling_ok && !out.any_escape)
        out.verdict = Verdict::LAS;
    else if (all_pos && (scaling_ok || out.any_escape))
        out.verdict = Verdict::Repeller;
    else
        out.verdict = Verdict::Inconclusive;
    return out;
}

MapJet paradox_map_first() {
    const double pi = 2.0 * std::asin(1.0);
    return MapJet(pi / 2.0, 3,
                  {{Key{2, 0}, Complex(1.0, -3.0)}, {Key{1, 1}, Complex(1.0)}});
}

MapJet paradox_map_second() {
    const double pi = 2.0 * std::asin(1.0);
    return MapJet(pi / 3.0, 3, {{Key{2, 1}, Complex(-1.0)}});
}

VectorFieldJet paradox_field_first(Complex mu) {
    const double pi = 2.0 * std::asin(1.0);
    std::map<Key, Complex> coeffs{
        {Key{2, 0}, Complex(-1.0, 0.5) * pi},
        {Key{1, 1}, Complex(0.25, -0.25) * pi},
        {Key{3, 0}, Complex(-3.0, 4.0) * pi},
        {Key{2, 1}, Complex(0.75 * pi - 0.5, 0.5 * pi - 5.5)},
        {Key{1, 2}, Complex(0.75 * pi, 0.0)},
    };
    if (mu != Complex(0.0)) coeffs[Key{0, 3}] = mu;
    return VectorFieldJet(pi / 2.0, 3, std::move(coeffs));
}

VectorFieldJet paradox_field_second() {
    const double pi = 2.0 * std::asin(1.0);
    return VectorFieldJet(pi / 3.0, 3,
                          {{Key{2, 1}, Complex(-0.5, std::sqrt(3.0) / 2.0)}});
}

VectorFieldJet negated(const VectorFieldJet& X) {
    std::map<Key, Complex> coeffs;
    for (const auto& [key, c] : X.coeffs()) coeffs.emplace(key, -c);
    return VectorFieldJet(-X.alpha(), X.degree(), std::move(coeffs));
}

namespace {

double predicted_v1_single(const VectorFieldJet& X) {
    return birkhoff_b1(flow_at(flow_expand(X, 3), 1.0)).v1;
}

double predicted_v1_alternating(const VectorFieldJet& X1, const VectorFieldJet& X2) {
    const MapJet m1 = flow_at(flow_expand(X1, 3), 1.0);
    const MapJet m2 = flow_at(flow_expand(X2, 3), 1.0);
    return birkhoff_b1(jet_compose(m2, m1, 3)).v1;
}

ParadoxCase make_case(std::string name, double predicted_v1,
                      const SeasonSchedule& schedule, const ParadoxOptions& options) {
    ParadoxCase out;
    out.name = std::move(name);
    out.predicted_v1 = predicted_v1;
    out.empirical = classify_origin(schedule, options.radii, options.periods);
    const Verdict predicted = predicted_v1 < 0.0 ? Verdict::LAS : Verdict::Repeller;
    out.agrees = out.empirical.verdict == predicted;
    return out;
}

}  // namespace

ParadoxReport paradox_demo(Complex mu, const ParadoxOptions& options) {
    const VectorFieldJet x1 = paradox_field_first(mu);
    const VectorFieldJet x2 = paradox_field_second();
    const VectorFieldJet n1 = negated(x1);
    const VectorFieldJet n2 = negated(x2);

    ParadoxReport report;
    report.mu = mu;
    report.cases.push_back(make_case("season1", predicted_v1_single(x1),
                                     SeasonSchedule({{x1, 1.0}}), options));
    report.cases.push_back(make_case("season2", predicted_v1_single(x2),
                                     SeasonSchedule({{x2, 1.0}}), options));
    report.cases.push_back(make_case("alternating", predicted_v1_alternating(x1, x2),
                                     SeasonSchedule({{x1, 1.0}, {x2, 1.0}}), options));
    report.cases.push_back(make_case("season1_negated", predicted_v1_single(n1),
                                     SeasonSchedule({{n1, 1.0}}), options));
    report.cases.push_back(make_case("season2_negated", predicted_v1_single(n2),
                                     SeasonSchedule({{n2, 1.0}}), options));
    report.cases.push_back(make_case("alternating_negated",
                                     predicted_v1_alternating(n1, n2),
                                     SeasonSchedule({{n1, 1.0}, {n2, 1.0}}), options));
    report.agreement = std::all_of(report.cases.begin(), report.cases.end(),
                                   [](const ParadoxCase& c) { return c.agrees; });
    return report;
}

}  // namespace flowjet
