#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "flowjet/birkhoff.hpp"
#include "flowjet/flow.hpp"
#include "flowjet/inverse.hpp"
#include "flowjet/jet_io.hpp"
#include "flowjet/seasonal.hpp"

using namespace flowjet;
using nlohmann::json;

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// ---------------------------------------------------------------------------
// small I/O helpers

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot open output file: " + path);
    out << text;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
}

struct AlphaPi {
    long long p = 0;
    long long q = 0;
    double value() const {
        return static_cast<double>(static_cast<long double>(p) * kPiL /
                                   static_cast<long double>(q));
    }
};

AlphaPi parse_alpha_pi(const std::string& s) {
    AlphaPi out;
    char slash = 0;
    std::istringstream is(s);
    if (!(is >> out.p >> slash >> out.q) || slash != '/' || out.q == 0 || !is.eof())
        throw std::invalid_argument("--alpha-pi expects the form p/q with integers");
    return out;
}

Complex parse_complex_pair(const std::string& s, const std::string& flag) {
    double re = 0, im = 0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> re >> comma >> im) || comma != ',' || !is.eof())
        throw std::invalid_argument(flag + " expects the form re,im");
    return {re, im};
}

MapJet override_alpha(const MapJet& m, double alpha) {
    return MapJet(alpha, m.degree(), m.coeffs());
}

VectorFieldJet override_alpha(const VectorFieldJet& f, double alpha) {
    return VectorFieldJet(alpha, f.degree(), f.coeffs());
}

json complex_to_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

// ---------------------------------------------------------------------------
// subcommand payloads

struct CommonIo {
    std::string input = "-";
    std::string output = "-";
    std::optional<std::string> alpha_pi;
};

void add_common(CLI::App* cmd, CommonIo& io) {
    cmd->add_option("input", io.input, "input file (- for stdin)")->capture_default_str();
    cmd->add_option("-o,--output", io.output, "output file (- for stdout)")
        ->capture_default_str();
    cmd->add_option("--alpha-pi", io.alpha_pi,
                    "override the rotation with p*pi/q (correctly rounded)");
}

int run_invert(const CommonIo& io, const std::vector<std::string>& free_specs,
               bool report_resonances) {
    std::map<Key, Complex> free_values;
    for (const std::string& spec : free_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--free expects the form j,k=re,im");
        int j = 0, k = 0;
        char comma = 0;
        std::istringstream is(spec.substr(0, eq));
        if (!(is >> j >> comma >> k) || comma != ',' || !is.eof())
            throw std::invalid_argument("--free expects the form j,k=re,im");
        free_values[Key{j, k}] = parse_complex_pair(spec.substr(eq + 1), "--free");
    }

    MapJet target = map_from_json(parse_json_text(read_input(io.input)));
    if (io.alpha_pi) target = override_alpha(target, parse_alpha_pi(*io.alpha_pi).value());

    if (report_resonances) {
        const ResonanceTable table = resonance_table(target.alpha(), target.degree());
        json entries = json::array();
        for (const auto& e : table.entries)
            entries.push_back({{"j", e.key.j}, {"k", e.key.k}, {"resonant", e.resonant}});
        json orders;
        for (const auto& [level, offsets] : table.order_offsets)
            orders[std::to_string(level)] = offsets;
        const json out{{"alpha", table.alpha},
                       {"degree", table.degree},
                       {"entries", entries},
                       {"orders", orders}};
        write_output(io.output, out.dump(2) + "\n");
        return 0;
    }

    const SolveOutcome outcome = invert_map(target, free_values);
    if (const auto* obs = std::get_if<ObstructedOutcome>(&outcome)) {
        const json out{{"status", "obstructed"},
                       {"at", {obs->at.j, obs->at.k}},
                       {"defect", complex_to_json(obs->defect)}};
        write_output(io.output, out.dump(2) + "\n");
        return 0;
    }
    if (const auto* fam = std::get_if<FamilyOutcome>(&outcome)) {
        std::ostringstream note;
        note << "note: parametric family; free slots:";
        for (const Key key : fam->free_slots) note << " " << key_to_string(key);
        std::cerr << note.str() << "\n";
        write_output(io.output, field_to_json(fam->base).dump(2) + "\n");
        return 0;
    }
    write_output(io.output,
                 field_to_json(std::get<UniqueOutcome>(outcome).field).dump(2) + "\n");
    return 0;
}

int run_flow(const CommonIo& io, double time, int order,
             const std::optional<std::string>& oracle_csv) {
    VectorFieldJet field = field_from_json(parse_json_text(read_input(io.input)));
    if (io.alpha_pi) field = override_alpha(field, parse_alpha_pi(*io.alpha_pi).value());

    const FlowJet fj = flow_expand(field, order);
    const MapJet map = flow_at(fj, time);
    write_output(io.output, map_to_json(map).dump(2) + "\n");

    if (oracle_csv) {
        constexpr double kRadius = 1e-3;
        constexpr int kCount = 16;
        std::vector<Complex> samples;
        for (int i = 0; i < kCount; ++i)
            samples.push_back(std::polar(kRadius, kTwoPi * i / kCount));
        const std::vector<Complex> numeric = flow_numeric_oracle(field, time, samples);
        std::ostringstream csv;
        csv << "z0_re,z0_im,jet_re,jet_im,ode_re,ode_im,abs_err\n";
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const Complex jet = jet_eval(map, samples[i]);
            csv << format_double(samples[i].real()) << ','
                << format_double(samples[i].imag()) << ',' << format_double(jet.real())
                << ',' << format_double(jet.imag()) << ','
                << format_double(numeric[i].real()) << ','
                << format_double(numeric[i].imag()) << ','
                << format_double(std::abs(jet - numeric[i])) << '\n';
        }
        write_output(*oracle_csv, csv.str());
    }
    return 0;
}

int run_birkhoff(const CommonIo& io, const std::optional<std::string>& oracle_spec) {
    MapJet map = map_from_json(parse_json_text(read_input(io.input)));
    if (io.alpha_pi) map = override_alpha(map, parse_alpha_pi(*io.alpha_pi).value());

    const StabilityReport report = birkhoff_b1(map);
    json out{{"B1", complex_to_json(report.b1)},
             {"V1", report.v1},
             {"verdict", to_string(report.verdict)}};
    if (oracle_spec) {
        const auto comma = oracle_spec->find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--oracle expects the form radius,iterations");
        const double radius = std::stod(oracle_spec->substr(0, comma));
        const int iters = std::stoi(oracle_spec->substr(comma + 1));
        out["oracle_v1"] = radial_drift_oracle(map, radius, iters);
    }
    write_output(io.output, out.dump(2) + "\n");
    return 0;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream csv;
    csv << "t,z_re,z_im,r2,season\n";
    for (const TrajectorySample& s : traj.samples)
        csv << format_double(s.t) << ',' << format_double(s.z.real()) << ','
            << format_double(s.z.imag()) << ',' << format_double(s.r2) << ','
            << s.season_index << '\n';
    return csv.str();
}

int run_simulate(const CommonIo& io, const std::string& z0_spec, int periods,
                 int samples_per_period) {
    SeasonSchedule schedule = schedule_from_json(parse_json_text(read_input(io.input)));
    if (io.alpha_pi) {
        const double alpha = parse_alpha_pi(*io.alpha_pi).value();
        std::vector<Season> seasons;
        for (const Season& s : schedule.seasons())
            seasons.push_back({override_alpha(s.field, alpha), s.duration});
        schedule = SeasonSchedule(std::move(seasons));
    }
    const Complex z0 = parse_complex_pair(z0_spec, "--z0");
    const Trajectory traj = integrate_seasonal(schedule, z0, periods, samples_per_period);
    write_output(io.output, trajectory_csv(traj));
    if (traj.escaped)
        std::cerr << json{{"escaped", true}, {"t", traj.samples.back().t}}.dump() << "\n";
    return 0;
}

json classification_to_json(const OriginClassification& c) {
    return json{{"verdict", to_string(c.verdict)},
                {"radii", c.radii},
                {"rates", c.rates},
                {"v1_estimate", c.v1_estimate},
                {"any_escape", c.any_escape}};
}

int run_paradox_demo(const std::string& output, const std::string& mu_spec,
                     const std::vector<double>& radii, int periods,
                     const std::optional<std::string>& csv_dir) {
    ParadoxOptions options;
    if (!radii.empty()) options.radii = radii;
    options.periods = periods;
    const Complex mu = parse_complex_pair(mu_spec, "--mu");
    const ParadoxReport report = paradox_demo(mu, options);

    json cases = json::array();
    for (const ParadoxCase& c : report.cases)
        cases.push_back({{"name", c.name},
                         {"predicted_v1", c.predicted_v1},
                         {"empirical", classification_to_json(c.empirical)},
                         {"agrees", c.agrees}});
    const json out{
        {"mu", complex_to_json(report.mu)}, {"cases", cases}, {"agreement", report.agreement}};
    write_output(output, out.dump(2) + "\n");

    if (csv_dir) {
        std::filesystem::create_directories(*csv_dir);
        const VectorFieldJet x1 = paradox_field_first(mu);
        const VectorFieldJet x2 = paradox_field_second();
        const std::vector<std::pair<std::string, SeasonSchedule>> schedules{
            {"season1", SeasonSchedule({{x1, 1.0}})},
            {"season2", SeasonSchedule({{x2, 1.0}})},
            {"alternating", SeasonSchedule({{x1, 1.0}, {x2, 1.0}})},
            {"season1_negated", SeasonSchedule({{negated(x1), 1.0}})},
            {"season2_negated", SeasonSchedule({{negated(x2), 1.0}})},
            {"alternating_negated", SeasonSchedule({{negated(x1), 1.0}, {negated(x2), 1.0}})},
        };
        const int plot_periods = std::min(periods, 300);
        for (const auto& [name, schedule] : schedules) {
            const Trajectory traj =
                integrate_seasonal(schedule, Complex(0.03), plot_periods, 8);
            std::ofstream out_csv(*csv_dir + "/" + name + ".csv");
            out_csv << trajectory_csv(traj);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// repro targets

struct CheckList {
    json checks = json::array();
    bool all_pass = true;

    void add(const std::string& label, bool pass, double measure) {
        checks.push_back({{"check", label}, {"pass", pass}, {"value", measure}});
        all_pass = all_pass && pass;
        std::printf("  %-58s %-12.3e %s\n", label.c_str(), measure,
                    pass ? "[ok]" : "[FAIL]");
    }
};

double random_alpha_away_from_roots(std::mt19937_64& rng, int max_order, double margin) {
    std::uniform_real_distribution<double> u(0.05, kTwoPi - 0.05);
    for (;;) {
        const double alpha = u(rng);
        bool ok = true;
        for (int m = 1; m <= max_order && ok; ++m)
            ok = std::abs(std::polar(1.0, m * alpha) - Complex(1.0)) > margin;
        if (ok) return alpha;
    }
}

Complex random_coeff(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

MapJet random_map_jet(std::mt19937_64& rng, double alpha, int degree) {
    std::map<Key, Complex> coeffs;
    for (int level = 2; level <= degree; ++level)
        for (int j = level; j >= 0; --j) coeffs[Key{j, level - j}] = random_coeff(rng);
    return MapJet(alpha, degree, std::move(coeffs));
}

double max_field_diff(const VectorFieldJet& a, const VectorFieldJet& b) {
    double worst = 0.0;
    for (int level = 2; level <= a.degree(); ++level)
        for (int j = level; j >= 0; --j) {
            const Key key{j, level - j};
            worst = std::max(worst, std::abs(a.coeff(key) - b.coeff(key)));
        }
    return worst;
}

double max_map_diff(const MapJet& a, const MapJet& b) {
    double worst = 0.0;
    for (int level = 2; level <= a.degree(); ++level)
        for (int j = level; j >= 0; --j) {
            const Key key{j, level - j};
            worst = std::max(worst, std::abs(a.coeff(key) - b.coeff(key)));
        }
    return worst;
}

void repro_prop22(CheckList& list, std::mt19937_64& rng) {
    std::printf("quadratic closed forms vs generic solver (5 seeded maps)\n");
    for (int i = 0; i < 5; ++i) {
        const double alpha = random_alpha_away_from_roots(rng, 3, 1e-3);
        const MapJet f = random_map_jet(rng, alpha, 2);
        const auto via_solver = invert_map(f);
        const auto via_formula = closed_form_quadratic(f);
        const double delta = max_field_diff(std::get<UniqueOutcome>(via_solver).field,
                                            std::get<UniqueOutcome>(via_formula).field);
        list.add("map " + std::to_string(i + 1) + ": max coefficient delta", delta < 1e-12,
                 delta);
    }
}

void repro_prop23_a30(CheckList& list, std::mt19937_64& rng) {
    std::printf("printed a30 closed form vs solver (5 seeded cubic maps)\n");
    for (int i = 0; i < 5; ++i) {
        const double alpha = random_alpha_away_from_roots(rng, 4, 1e-3);
        const MapJet f = random_map_jet(rng, alpha, 3);
        const auto outcome = invert_map(f);
        const auto& x = std::get<UniqueOutcome>(outcome).field;
        const Complex w = f.rotation();
        const Complex f20 = f.coeff(Key{2, 0});
        const Complex f11 = f.coeff(Key{1, 1});
        const Complex f02 = f.coeff(Key{0, 2});
        const Complex f30 = f.coeff(Key{3, 0});
        const Complex p30 = (std::conj(f02) * f11 - 2.0 * f30) * w * w * w +
                            2.0 * (std::conj(f02) * f11 + f20 * f20 - f30) * w * w +
                            2.0 * (f20 * f20 - f30) * w + 2.0 * f20 * f20;
        const Complex a30 =
            -Complex(0.0, alpha) * p30 / (w * w * (w * w * w - 1.0) * (w + 1.0));
        const double delta = std::abs(x.coeff(Key{3, 0}) - a30);
        list.add("map " + std::to_string(i + 1) + ": |a30 - formula|", delta < 1e-10, delta);
    }
}

void repro_prop26a(CheckList& list, std::mt19937_64& rng) {
    std::printf("quartic-root rotation: compatibility and family round trip\n");
    const double alpha = static_cast<double>(kPiL / 2.0L);
    for (int i = 0; i < 3; ++i) {
        const Complex f20 = random_coeff(rng), f11 = random_coeff(rng),
                      f02 = random_coeff(rng), f30 = random_coeff(rng),
                      f21 = random_coeff(rng), f12 = random_coeff(rng);
        const Complex f03 =
            0.5 * f02 * (Complex(2.0, 2.0) * std::conj(f20) + Complex(1.0, -1.0) * f11);
        const MapJet f(alpha, 3,
                       {{Key{2, 0}, f20}, {Key{1, 1}, f11}, {Key{0, 2}, f02},
                        {Key{3, 0}, f30}, {Key{2, 1}, f21}, {Key{1, 2}, f12},
                        {Key{0, 3}, f03}});
        const auto outcome = invert_map(f);
        const auto* fam = std::get_if<FamilyOutcome>(&outcome);
        if (fam == nullptr) {
            list.add("map " + std::to_string(i + 1) + ": family branch", false, 0.0);
            continue;
        }
        const double delta = max_map_diff(flow_at(flow_expand(fam->base, 3), 1.0), f);
        list.add("map " + std::to_string(i + 1) + ": family round trip", delta < 1e-9,
                 delta);
    }
    const MapJet bad(alpha, 3, {{Key{0, 2}, Complex(1.0)}, {Key{0, 3}, Complex(5.0)}});
    const auto outcome = invert_map(bad);
    const auto* obs = std::get_if<ObstructedOutcome>(&outcome);
    list.add("violated compatibility obstructs at (0,3)",
             obs != nullptr && obs->at == Key{0, 3}, obs ? std::abs(obs->defect) : 0.0);
}

void repro_prop31(CheckList& list) {
    std::printf("Birkhoff constants of the demonstration maps\n");
    const StabilityReport r1 = birkhoff_b1(paradox_map_first());
    list.add("B1(first map) = -1/2 - 11i/2, LAS",
             std::abs(r1.b1 - Complex(-0.5, -5.5)) < 1e-10 && r1.verdict == Verdict::LAS,
             std::abs(r1.b1 - Complex(-0.5, -5.5)));
    const StabilityReport r2 = birkhoff_b1(paradox_map_second());
    list.add("B1(second map) = -1/2 + sqrt(3)/2 i, LAS",
             std::abs(r2.b1 - Complex(-0.5, std::sqrt(3.0) / 2.0)) < 1e-10 &&
                 r2.verdict == Verdict::LAS,
             std::abs(r2.b1 - Complex(-0.5, std::sqrt(3.0) / 2.0)));
    const StabilityReport rc =
        birkhoff_b1(jet_compose(paradox_map_second(), paradox_map_first(), 3));
    const double expect = 0.5 * (3.0 * std::sqrt(3.0) - 5.0);
    list.add("V1(composition) = (3 sqrt(3) - 5)/2, repeller",
             std::abs(rc.v1 - expect) < 1e-10 && rc.verdict == Verdict::Repeller,
             std::abs(rc.v1 - expect));
}

void repro_prop32(CheckList& list) {
    std::printf("inverting the demonstration maps reproduces the printed fields\n");
    for (const Complex mu : {Complex(0.0), Complex(1.0, 2.0)}) {
        std::map<Key, Complex> free_values;
        if (mu != Complex(0.0)) free_values[Key{0, 3}] = mu;
        const auto outcome = invert_map(paradox_map_first(), free_values);
        const auto* fam = std::get_if<FamilyOutcome>(&outcome);
        const double delta =
            fam ? max_field_diff(fam->base, paradox_field_first(mu)) : 1.0;
        std::ostringstream label;
        label << "first map, mu = " << mu.real() << "+" << mu.imag() << "i";
        list.add(label.str(), fam != nullptr && delta < 1e-10, delta);
    }
    const auto outcome = invert_map(paradox_map_second());
    const auto* unique = std::get_if<UniqueOutcome>(&outcome);
    const double delta =
        unique ? max_field_diff(unique->field, paradox_field_second()) : 1.0;
    list.add("second map: unique field", unique != nullptr && delta < 1e-12, delta);
}

void repro_thm1(CheckList& list) {
    std::printf("seasonal paradox demonstration (full-scale classification)\n");
    const ParadoxReport report = paradox_demo(Complex(0.0));
    const Verdict expected[6] = {Verdict::LAS,      Verdict::LAS,      Verdict::Repeller,
                                 Verdict::Repeller, Verdict::Repeller, Verdict::LAS};
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        const ParadoxCase& c = report.cases[i];
        list.add(c.name + ": verdict " + to_string(c.empirical.verdict) + ", predicted V1",
                 c.empirical.verdict == expected[i] && c.agrees, c.predicted_v1);
        // Rate accuracy is pinned for the forward triple; the negated runs may
        // escape the trusted neighborhood, which skews the measured rate while
        // leaving the verdict sound.
        if (i >= 3) continue;
        for (std::size_t r = 0; r < c.empirical.radii.size(); ++r) {
            const double radius = c.empirical.radii[r];
            const double expect = 2.0 * c.predicted_v1 * radius * radius;
            const double rate = c.empirical.rates[r];
            std::ostringstream label;
            label << "  " << c.name << " rate at r = " << radius;
            list.add(label.str(), std::abs(rate - expect) < 0.2 * std::abs(expect), rate);
        }
    }
    list.add("overall agreement", report.agreement, report.agreement ? 1.0 : 0.0);
}

void repro_thm3(CheckList& list) {
    std::printf("obstruction family and the pure-rotation claim\n");
    for (int n = 2; n <= 6; ++n) {
        const auto outcome = obstruction_family_demo(n);
        const auto* obs = std::get_if<ObstructedOutcome>(&outcome);
        const bool pass = obs != nullptr && obs->at == Key{0, n} &&
                          std::abs(std::abs(obs->defect) - 1.0) < 1e-9;
        list.add("degree " + std::to_string(n) + ": obstructed at (0," +
                     std::to_string(n) + ") with unit defect",
                 pass, obs ? std::abs(obs->defect) : 0.0);
        for (int m = 2; m <= n - 1; ++m) {
            const auto claim = check_pure_rotation_claim(kTwoPi / (n + 1), n, m);
            list.add("degree " + std::to_string(n) + ": rotation claim at order " +
                         std::to_string(m),
                     claim.pass, claim.max_coeff_abs);
        }
    }
}

int run_repro(const std::string& target, std::uint64_t seed, const std::string& output,
              bool as_json) {
    std::mt19937_64 rng(seed);
    CheckList list;
    std::printf("repro %s (seed %llu)\n", target.c_str(),
                static_cast<unsigned long long>(seed));
    if (target == "prop2.2")
        repro_prop22(list, rng);
    else if (target == "prop2.3-a30")
        repro_prop23_a30(list, rng);
    else if (target == "prop2.6a")
        repro_prop26a(list, rng);
    else if (target == "prop3.1")
        repro_prop31(list);
    else if (target == "prop3.2")
        repro_prop32(list);
    else if (target == "thm1")
        repro_thm1(list);
    else if (target == "thm3")
        repro_thm3(list);
    else
        throw std::invalid_argument(
            "unknown repro target (expected prop2.2, prop2.3-a30, prop2.6a, prop3.1, "
            "prop3.2, thm1 or thm3)");

    std::printf("repro %s: %s\n", target.c_str(), list.all_pass ? "PASS" : "FAIL");
    if (as_json) {
        const json out{{"target", target}, {"seed", seed}, {"checks", list.checks},
                       {"pass", list.all_pass}};
        write_output(output, out.dump(2) + "\n");
    }
    return list.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar jet flows: inverse problems, Birkhoff stability and seasonal "
                 "switching"};
    app.require_subcommand(1);

    CommonIo invert_io;
    std::vector<std::string> free_specs;
    std::string report_kind;
    CLI::App* invert = app.add_subcommand(
        "invert", "construct the field whose time-1 flow realizes a map jet");
    add_common(invert, invert_io);
    invert->add_option("--free", free_specs,
                       "value for a resonant free slot, format j,k=re,im (repeatable)");
    invert->add_option("--report", report_kind,
                       "write a report instead of solving (resonances)")
        ->check(CLI::IsMember({"resonances"}));

    CommonIo flow_io;
    double flow_time = 1.0;
    int flow_order = 3;
    std::optional<std::string> flow_oracle;
    CLI::App* flow = app.add_subcommand("flow", "expand the time-t flow map of a field");
    add_common(flow, flow_io);
    flow->add_option("--time", flow_time, "flow time")->capture_default_str();
    flow->add_option("--order", flow_order, "truncation order")->capture_default_str();
    flow->add_option("--oracle", flow_oracle,
                     "also write a CSV comparing the jet with adaptive integration");

    CommonIo birkhoff_io;
    std::optional<std::string> birkhoff_oracle;
    CLI::App* birkhoff = app.add_subcommand(
        "birkhoff", "first Birkhoff constant and stability verdict of a map jet");
    add_common(birkhoff, birkhoff_io);
    birkhoff->add_option("--oracle", birkhoff_oracle,
                         "append the fitted radial drift, format radius,iterations");

    CommonIo simulate_io;
    std::string z0_spec = "0.05,0";
    int periods = 1;
    int samples_per_period = 32;
    CLI::App* simulate =
        app.add_subcommand("simulate", "integrate a seasonal schedule, emit CSV");
    add_common(simulate, simulate_io);
    simulate->add_option("--z0", z0_spec, "initial condition re,im")->capture_default_str();
    simulate->add_option("--periods", periods, "number of periods")->capture_default_str();
    simulate->add_option("--samples-per-period", samples_per_period, "samples per period")
        ->capture_default_str();

    std::string paradox_output = "-";
    std::string mu_spec = "0,0";
    std::vector<double> paradox_radii;
    int paradox_periods = 2000;
    std::optional<std::string> csv_dir;
    CLI::App* paradox =
        app.add_subcommand("paradox-demo", "run the full seasonal-paradox demonstration");
    paradox->add_option("-o,--output", paradox_output, "output file (- for stdout)")
        ->capture_default_str();
    paradox->add_option("--mu", mu_spec, "free cubic parameter re,im")
        ->capture_default_str();
    paradox->add_option("--radii", paradox_radii, "classification radii")->expected(-1);
    paradox->add_option("--periods", paradox_periods, "classification periods")
        ->capture_default_str();
    paradox->add_option("--csv-dir", csv_dir, "directory for per-case trajectory CSVs");

    std::string repro_target;
    std::uint64_t seed = 42;
    std::string repro_output = "-";
    bool repro_json = false;
    CLI::App* repro =
        app.add_subcommand("repro", "re-run a named result with seeded inputs");
    repro->add_option("target", repro_target,
                      "prop2.2 | prop2.3-a30 | prop2.6a | prop3.1 | prop3.2 | thm1 | thm3")
        ->required();
    repro->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    repro->add_option("-o,--output", repro_output, "JSON summary file")
        ->capture_default_str();
    repro->add_flag("--json", repro_json, "also emit a JSON summary");

    try {
        app.parse(argc, argv);
        if (invert->parsed())
            return run_invert(invert_io, free_specs, report_kind == "resonances");
        if (flow->parsed()) return run_flow(flow_io, flow_time, flow_order, flow_oracle);
        if (birkhoff->parsed()) return run_birkhoff(birkhoff_io, birkhoff_oracle);
        if (simulate->parsed())
            return run_simulate(simulate_io, z0_spec, periods, samples_per_period);
        if (paradox->parsed())
            return run_paradox_demo(paradox_output, mu_spec, paradox_radii,
                                    paradox_periods, csv_dir);
        if (repro->parsed()) return run_repro(repro_target, seed, repro_output, repro_json);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"error", e.what()}, {"category", "usage"}}.dump() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << json{{"error", e.what()}, {"category", "data"}}.dump() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}, {"category", "usage"}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"category", "domain"}}.dump() << "\n";
        return 1;
    }
}
