#include "peb/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace peb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw config_error(path + ": " + msg);
}

void check_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "must be an object");
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(path, "unknown key '" + item.key() + "'");
  }
}

double get_number(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, std::string("missing required key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "must be a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const std::string& path, const char* key,
                     double fallback) {
  return obj.contains(key) ? get_number(obj, path, key) : fallback;
}

int get_int(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, std::string("missing required key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "must be an integer");
  const double d = v.get<double>();
  if (!(d >= -2147483647.0 && d <= 2147483647.0)) fail(path + "." + key, "out of range");
  return static_cast<int>(d);
}

int get_int_or(const json& obj, const std::string& path, const char* key, int fallback) {
  return obj.contains(key) ? get_int(obj, path, key) : fallback;
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, std::string("missing required key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "must be a string");
  return v.get<std::string>();
}

// (d / 180) * pi keeps the common sector angles exact: 90 -> pi/2, 180 -> pi.
double deg_to_rad(double d) { return (d / 180.0) * kPi; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace

LoadedConfig parse_scenario(const json& doc) {
  check_object(doc, "config");
  check_keys(doc, "config",
             {"waveform", "radio", "stations", "target", "grid", "sweep",
              "coverage_thresholds_m", "rcs_m2", "r_min_m"});

  LoadedConfig cfg;
  cfg.echo = doc;

  if (!doc.contains("waveform")) fail("config", "missing required key 'waveform'");
  const json& wf = doc.at("waveform");
  check_object(wf, "waveform");
  check_keys(wf, "waveform",
             {"num_subcarriers", "num_symbols", "subcarrier_spacing_khz", "cp_duration_us"});
  const int k = get_int(wf, "waveform", "num_subcarriers");
  const int m = get_int(wf, "waveform", "num_symbols");
  const double df_khz = get_number(wf, "waveform", "subcarrier_spacing_khz");
  const double tcp_us = get_number(wf, "waveform", "cp_duration_us");
  if (!(df_khz > 0.0)) fail("waveform.subcarrier_spacing_khz", "must be positive");
  if (!(tcp_us >= 0.0)) fail("waveform.cp_duration_us", "must be non-negative");
  cfg.scenario.waveform = WaveformParams::make(k, m, df_khz * 1e3, tcp_us * 1e-6);

  if (!doc.contains("radio")) fail("config", "missing required key 'radio'");
  const json& rd = doc.at("radio");
  check_object(rd, "radio");
  check_keys(rd, "radio",
             {"num_tx_antennas", "num_rx_antennas", "tx_array_gain_dbi", "rx_element_gain_dbi",
              "carrier_frequency_ghz", "eirp_dbm", "tx_power_dbm", "noise_psd_w_per_hz",
              "sensing_power_fraction"});
  RadioParams& radio = cfg.scenario.radio;
  radio.num_tx_antennas = get_int_or(rd, "radio", "num_tx_antennas", 16);
  radio.num_rx_antennas = get_int(rd, "radio", "num_rx_antennas");
  radio.tx_array_gain = db_to_linear(get_number_or(rd, "radio", "tx_array_gain_dbi", 0.0));
  radio.rx_element_gain = db_to_linear(get_number_or(rd, "radio", "rx_element_gain_dbi", 0.0));
  const double fc_ghz = get_number(rd, "radio", "carrier_frequency_ghz");
  if (!(fc_ghz > 0.0)) fail("radio.carrier_frequency_ghz", "must be positive");
  radio.carrier_frequency_hz = fc_ghz * 1e9;
  const bool has_eirp = rd.contains("eirp_dbm");
  const bool has_pt = rd.contains("tx_power_dbm");
  if (has_eirp == has_pt)
    fail("radio", "exactly one of 'eirp_dbm' and 'tx_power_dbm' is required");
  if (has_eirp)
    radio.total_tx_power_w = dbm_to_w(get_number(rd, "radio", "eirp_dbm")) / radio.tx_array_gain;
  else
    radio.total_tx_power_w = dbm_to_w(get_number(rd, "radio", "tx_power_dbm"));
  radio.avg_subcarrier_power_w = radio.total_tx_power_w / k;
  radio.noise_psd_w_per_hz = get_number(rd, "radio", "noise_psd_w_per_hz");
  radio.sensing_power_fraction = get_number(rd, "radio", "sensing_power_fraction");

  if (!doc.contains("stations")) fail("config", "missing required key 'stations'");
  const json& stations = doc.at("stations");
  if (!stations.is_array() || stations.empty())
    fail("stations", "must be a non-empty array");
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const std::string path = "stations[" + std::to_string(i) + "]";
    const json& st = stations.at(i);
    check_object(st, path);
    check_keys(st, path, {"x_m", "y_m", "rotation_deg", "fov_limit_deg"});
    BaseStation bs;
    bs.x_m = get_number(st, path, "x_m");
    bs.y_m = get_number(st, path, "y_m");
    bs.rotation_rad = wrap_angle(deg_to_rad(get_number(st, path, "rotation_deg")));
    if (st.contains("fov_limit_deg")) {
      const double fov = get_number(st, path, "fov_limit_deg");
      if (!(fov > 0.0 && fov <= 180.0)) fail(path + ".fov_limit_deg", "must lie in (0, 180]");
      bs.fov_limit_rad = deg_to_rad(fov);
    }
    cfg.scenario.stations.push_back(bs);
  }

  cfg.scenario.rcs_m2 = get_number_or(doc, "config", "rcs_m2", 1.0);
  cfg.scenario.r_min_m = get_number_or(doc, "config", "r_min_m", kNearFieldRadiusM);

  if (doc.contains("grid")) {
    const json& gr = doc.at("grid");
    check_object(gr, "grid");
    check_keys(gr, "grid", {"x_min_m", "x_max_m", "y_min_m", "y_max_m", "nx", "ny"});
    cfg.grid.x_min_m = get_number_or(gr, "grid", "x_min_m", cfg.grid.x_min_m);
    cfg.grid.x_max_m = get_number_or(gr, "grid", "x_max_m", cfg.grid.x_max_m);
    cfg.grid.y_min_m = get_number_or(gr, "grid", "y_min_m", cfg.grid.y_min_m);
    cfg.grid.y_max_m = get_number_or(gr, "grid", "y_max_m", cfg.grid.y_max_m);
    cfg.grid.nx = get_int_or(gr, "grid", "nx", cfg.grid.nx);
    cfg.grid.ny = get_int_or(gr, "grid", "ny", cfg.grid.ny);
  }

  if (doc.contains("target")) {
    const json& tg = doc.at("target");
    check_object(tg, "target");
    check_keys(tg, "target", {"x_m", "y_m"});
    Target t;
    t.x_m = get_number(tg, "target", "x_m");
    t.y_m = get_number(tg, "target", "y_m");
    t.rcs_m2 = cfg.scenario.rcs_m2;
    cfg.target = t;
  }

  if (doc.contains("sweep")) {
    const json& sw = doc.at("sweep");
    check_object(sw, "sweep");
    check_keys(sw, "sweep", {"parameter", "values"});
    SweepSpec spec;
    try {
      spec.parameter = parse_sweep_parameter(get_string(sw, "sweep", "parameter"));
    } catch (const config_error& e) {
      fail("sweep.parameter", e.what());
    }
    if (!sw.contains("values")) fail("sweep", "missing required key 'values'");
    const json& vals = sw.at("values");
    if (!vals.is_array() || vals.empty()) fail("sweep.values", "must be a non-empty array");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (!vals.at(i).is_number())
        fail("sweep.values[" + std::to_string(i) + "]", "must be a number");
      spec.values.push_back(vals.at(i).get<double>());
    }
    cfg.sweep = spec;
  }

  if (doc.contains("coverage_thresholds_m")) {
    const json& th = doc.at("coverage_thresholds_m");
    if (!th.is_array() || th.empty())
      fail("coverage_thresholds_m", "must be a non-empty array");
    cfg.coverage_thresholds_m.clear();
    for (std::size_t i = 0; i < th.size(); ++i) {
      const std::string path = "coverage_thresholds_m[" + std::to_string(i) + "]";
      if (!th.at(i).is_number()) fail(path, "must be a number");
      const double v = th.at(i).get<double>();
      if (!(v > 0.0)) fail(path, "must be positive");
      cfg.coverage_thresholds_m.push_back(v);
    }
  }

  try {
    cfg.scenario.validate();
    cfg.grid.validate();
  } catch (const domain_error& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  return cfg;
}

LoadedConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("cannot read scenario file: " + path);

  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw config_error(path + ": " + e.what());
  }
  return parse_scenario(doc);
}

nlohmann::json serialize_scenario(const LoadedConfig& config) { return config.echo; }

}  // namespace peb
