#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "peb/analysis.hpp"
#include "peb/network.hpp"

namespace peb {

struct SweepSpec {
  SweepParameter parameter = SweepParameter::rx_antennas;
  std::vector<double> values;
};

/// A parsed scenario file: the library Scenario plus run-level settings.
/// `echo` is the canonical JSON form (exactly the boundary-unit values that
/// were parsed), so serialize → parse round-trips bit-exactly.
struct LoadedConfig {
  Scenario scenario;
  GridSpec grid;
  std::optional<Target> target;  ///< rcs filled from scenario.rcs_m2
  std::optional<SweepSpec> sweep;
  std::vector<double> coverage_thresholds_m{0.01, 0.1, 0.25};
  nlohmann::json echo;
};

/// Parse a scenario JSON document. Unknown keys anywhere are rejected; all
/// unit conversions (dBm→W, dBi→linear, degrees→radians, kHz→Hz, µs→s,
/// GHz→Hz) happen here and only here. Throws config_error with a key path.
LoadedConfig parse_scenario(const nlohmann::json& doc);

/// Read + parse a scenario file. Throws io_error if unreadable, config_error
/// if invalid.
LoadedConfig load_scenario_file(const std::string& path);

/// Canonical JSON form of a parsed config (the stored echo).
nlohmann::json serialize_scenario(const LoadedConfig& config);

}  // namespace peb
