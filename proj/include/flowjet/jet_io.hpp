#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "flowjet/jets.hpp"
#include "flowjet/seasonal.hpp"

namespace flowjet {

/// Malformed input data (bad JSON structure, out-of-range values). Distinct
/// from std::invalid_argument, which flags API/flag misuse.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Strict parse of the jet interchange format
///   {"kind":"map"|"field","alpha":..,"degree":..,
///    "coeffs":[{"j":..,"k":..,"re":..,"im":..},...]}
/// Unknown keys, duplicate (j,k) entries and coefficients with j+k outside
/// [2, degree] are rejected.
MapJet map_from_json(const nlohmann::json& j);
VectorFieldJet field_from_json(const nlohmann::json& j);

nlohmann::json map_to_json(const MapJet& m);
nlohmann::json field_to_json(const VectorFieldJet& f);

/// Schedule format: {"seasons":[{"field":<field JSON>,"duration":..},...]}.
SeasonSchedule schedule_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const SeasonSchedule& s);

/// Shortest round-trip decimal rendering used by the CSV emitters.
std::string format_double(double x);

}  // namespace flowjet
