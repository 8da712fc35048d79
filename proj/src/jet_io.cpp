#include "flowjet/jet_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace flowjet {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (allowed.find(key) == allowed.end())
            throw InputError(where + ": unknown key \"" + key + "\"");
    for (const auto& key : allowed)
        if (!j.contains(key)) throw InputError(where + ": missing key \"" + key + "\"");
}

double finite_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw InputError(where + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError(where + ": non-finite value");
    return x;
}

int integer_number(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<int>();
}

struct ParsedJet {
    std::string kind;
    double alpha = 0.0;
    int degree = 0;
    std::map<Key, Complex> coeffs;
};

ParsedJet parse_jet(const json& j, const std::string& expected_kind) {
    require_keys(j, {"kind", "alpha", "degree", "coeffs"}, "jet");
    ParsedJet out;
    if (!j["kind"].is_string()) throw InputError("jet.kind: expected \"map\" or \"field\"");
    out.kind = j["kind"].get<std::string>();
    if (out.kind != "map" && out.kind != "field")
        throw InputError("jet.kind: expected \"map\" or \"field\", got \"" + out.kind + "\"");
    if (out.kind != expected_kind)
        throw InputError("jet.kind: expected \"" + expected_kind + "\", got \"" + out.kind +
                         "\"");
    out.alpha = finite_number(j["alpha"], "jet.alpha");
    out.degree = integer_number(j["degree"], "jet.degree");
    if (out.degree < 1) throw InputError("jet.degree: must be >= 1");

    if (!j["coeffs"].is_array()) throw InputError("jet.coeffs: expected an array");
    int idx = 0;
    for (const auto& entry : j["coeffs"]) {
        const std::string where = "jet.coeffs[" + std::to_string(idx++) + "]";
        require_keys(entry, {"j", "k", "re", "im"}, where);
        Key key{integer_number(entry["j"], where + ".j"),
                integer_number(entry["k"], where + ".k")};
        if (key.j < 0 || key.k < 0 || key.level() < 2 || key.level() > out.degree)
            throw InputError(where + ": exponents " + key_to_string(key) +
                             " outside total degree range [2, " +
                             std::to_string(out.degree) + "]");
        const Complex c(finite_number(entry["re"], where + ".re"),
                        finite_number(entry["im"], where + ".im"));
        if (!out.coeffs.emplace(key, c).second)
            throw InputError(where + ": duplicate coefficient " + key_to_string(key));
    }
    return out;
}

json jet_to_json(const std::string& kind, double alpha, int degree,
                 const std::map<Key, Complex>& coeffs) {
    json out;
    out["kind"] = kind;
    out["alpha"] = alpha;
    out["degree"] = degree;
    json arr = json::array();
    // Graded order, j descending within a level: deterministic output.
    for (int level = 2; level <= degree; ++level) {
        for (int j = level; j >= 0; --j) {
            auto it = coeffs.find(Key{j, level - j});
            if (it == coeffs.end()) continue;
            arr.push_back({{"j", j},
                           {"k", level - j},
                           {"re", it->second.real()},
                           {"im", it->second.imag()}});
        }
    }
    out["coeffs"] = std::move(arr);
    return out;
}

}  // namespace

MapJet map_from_json(const json& j) {
    ParsedJet p = parse_jet(j, "map");
    if (!(p.alpha > 0.0 && p.alpha < kTwoPi))
        throw InputError("jet.alpha: map rotation must lie strictly inside (0, 2*pi)");
    return MapJet(p.alpha, p.degree, std::move(p.coeffs));
}

VectorFieldJet field_from_json(const json& j) {
    ParsedJet p = parse_jet(j, "field");
    if (!(std::abs(p.alpha) > 0.0 && std::abs(p.alpha) < kTwoPi))
        throw InputError("jet.alpha: field rotation rate must be nonzero with |alpha| < 2*pi");
    return VectorFieldJet(p.alpha, p.degree, std::move(p.coeffs));
}

json map_to_json(const MapJet& m) {
    return jet_to_json("map", m.alpha(), m.degree(), m.coeffs());
}

json field_to_json(const VectorFieldJet& f) {
    return jet_to_json("field", f.alpha(), f.degree(), f.coeffs());
}

SeasonSchedule schedule_from_json(const json& j) {
    require_keys(j, {"seasons"}, "schedule");
    if (!j["seasons"].is_array() || j["seasons"].empty())
        throw InputError("schedule.seasons: expected a non-empty array");
    std::vector<Season> seasons;
    int idx = 0;
    for (const auto& entry : j["seasons"]) {
        const std::string where = "schedule.seasons[" + std::to_string(idx++) + "]";
        require_keys(entry, {"field", "duration"}, where);
        const double duration = finite_number(entry["duration"], where + ".duration");
        if (!(duration > 0.0)) throw InputError(where + ".duration: must be > 0");
        seasons.push_back({field_from_json(entry["field"]), duration});
    }
    return SeasonSchedule(std::move(seasons));
}

json schedule_to_json(const SeasonSchedule& s) {
    json arr = json::array();
    for (const Season& season : s.seasons())
        arr.push_back({{"field", field_to_json(season.field)}, {"duration", season.duration}});
    return json{{"seasons", std::move(arr)}};
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace flowjet
