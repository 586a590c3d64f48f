#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "peb/analysis.hpp"
#include "peb/config.hpp"
#include "peb/network.hpp"
#include "peb/oracle.hpp"
#include "peb/output.hpp"

namespace {

using nlohmann::json;

json jnum(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

double rad_to_deg(double rad) { return rad * (180.0 / peb::kPi); }

double parse_double_token(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0')
    throw peb::config_error("sweep values: '" + token + "' is not a number");
  return v;
}

// Comma-separated values; each token is either a number or start:stop:count.
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.empty()) throw peb::config_error("sweep values: empty token");
    const std::size_t c1 = token.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_double_token(token));
    } else {
      const std::size_t c2 = token.find(':', c1 + 1);
      if (c2 == std::string::npos)
        throw peb::config_error("sweep values: range token must be start:stop:count");
      const double start = parse_double_token(token.substr(0, c1));
      const double stop = parse_double_token(token.substr(c1 + 1, c2 - c1 - 1));
      const double countd = parse_double_token(token.substr(c2 + 1));
      if (!(countd >= 1.0) || countd != std::floor(countd))
        throw peb::config_error("sweep values: range count must be a positive integer");
      const int count = static_cast<int>(countd);
      if (count == 1) {
        out.push_back(start);
      } else {
        for (int i = 0; i < count; ++i)
          out.push_back(start + (stop - start) * i / (count - 1));
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw peb::config_error("sweep values: no values given");
  return out;
}

void enforce_near_field_guard(const peb::Scenario& scenario, double x, double y) {
  for (std::size_t i = 0; i < scenario.stations.size(); ++i) {
    const peb::BaseStation& bs = scenario.stations[i];
    if (std::hypot(x - bs.x_m, y - bs.y_m) < scenario.r_min_m)
      throw peb::domain_error("near-field guard violated: target within " +
                              peb::format_g9(scenario.r_min_m) + " m of station " +
                              std::to_string(i));
  }
}

json station_reports_json(const peb::PebResult& result) {
  json stations = json::array();
  for (std::size_t i = 0; i < result.stations.size(); ++i) {
    const peb::StationReport& rep = result.stations[i];
    stations.push_back({{"index", i},
                        {"status", peb::to_string(rep.status)},
                        {"range_m", rep.range_m},
                        {"local_doa_deg", rad_to_deg(rep.local_doa_rad)},
                        {"snr_db", jnum(rep.snr_db)}});
  }
  return stations;
}

int cmd_point(const std::string& config_path, const std::optional<double>& x,
              const std::optional<double>& y, bool as_json) {
  const peb::LoadedConfig cfg = peb::load_scenario_file(config_path);
  if (x.has_value() != y.has_value())
    throw peb::config_error("point: pass both --x and --y, or neither");
  double tx = 0.0;
  double ty = 0.0;
  if (x) {
    tx = *x;
    ty = *y;
  } else if (cfg.target) {
    tx = cfg.target->x_m;
    ty = cfg.target->y_m;
  } else {
    throw peb::config_error("point: no target position: pass --x/--y or add a target section");
  }

  enforce_near_field_guard(cfg.scenario, tx, ty);
  const peb::PebResult result = peb::fuse_efim(cfg.scenario, tx, ty);

  if (as_json) {
    json doc;
    doc["target"] = {{"x_m", tx}, {"y_m", ty}};
    doc["peb_m"] = jnum(result.peb_m);
    doc["n_contributing"] = result.n_contributing;
    doc["no_information"] = result.no_information;
    doc["efim_per_m2"] = {{result.efim.m(0, 0), result.efim.m(0, 1)},
                          {result.efim.m(1, 0), result.efim.m(1, 1)}};
    doc["stations"] = station_reports_json(result);
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "target: x_m=" << peb::format_g9(tx) << " y_m=" << peb::format_g9(ty) << "\n";
  std::cout << "stations (" << result.n_contributing << " of " << result.stations.size()
            << " contributing):\n";
  for (std::size_t i = 0; i < result.stations.size(); ++i) {
    const peb::StationReport& rep = result.stations[i];
    std::cout << "  [" << i << "] " << peb::to_string(rep.status)
              << " range_m=" << peb::format_g9(rep.range_m)
              << " local_doa_deg=" << peb::format_g9(rad_to_deg(rep.local_doa_rad))
              << " snr_db=" << peb::format_g9(rep.snr_db) << "\n";
  }
  std::cout << "fused efim_per_m2: [[" << peb::format_g9(result.efim.m(0, 0)) << ", "
            << peb::format_g9(result.efim.m(0, 1)) << "], ["
            << peb::format_g9(result.efim.m(1, 0)) << ", "
            << peb::format_g9(result.efim.m(1, 1)) << "]]\n";
  std::cout << "peb_m: " << peb::format_g9(result.peb_m) << "\n";
  return 0;
}

int cmd_heatmap(const std::string& config_path, const std::string& prefix, int grid_n,
                const std::vector<double>& thresholds, bool pgm, double pgm_lo,
                double pgm_hi) {
  const peb::LoadedConfig cfg = peb::load_scenario_file(config_path);
  peb::GridSpec grid = cfg.grid;
  if (grid_n > 0) {
    grid.nx = grid_n;
    grid.ny = grid_n;
  }
  const peb::HeatmapResult hm = peb::heatmap(cfg.scenario, grid);
  const std::vector<double>& th = thresholds.empty() ? cfg.coverage_thresholds_m : thresholds;

  peb::write_file_atomic(prefix + ".csv", peb::heatmap_csv(hm));
  const json summary = peb::heatmap_summary(cfg, hm, th);
  peb::write_file_atomic(prefix + ".json", summary.dump(2) + "\n");
  std::cout << "wrote " << prefix << ".csv (" << grid.cells() << " cells)\n";
  std::cout << "wrote " << prefix << ".json\n";
  if (pgm) {
    peb::write_file_atomic(prefix + ".pgm", peb::heatmap_pgm(hm, pgm_lo, pgm_hi));
    peb::write_file_atomic(prefix + "_scale.txt", peb::pgm_scale_note(hm, pgm_lo, pgm_hi));
    std::cout << "wrote " << prefix << ".pgm and " << prefix << "_scale.txt\n";
  }
  std::cout << "max_peb_m=" << peb::format_g9(hm.max_finite_peb_m)
            << " mean_peb_m=" << peb::format_g9(hm.mean_finite_peb_m)
            << " n_finite=" << hm.n_finite << " n_infinite=" << hm.n_infinite
            << " n_excluded=" << hm.n_excluded << "\n";
  for (const double t : th)
    std::cout << "coverage threshold_m=" << peb::format_g9(t)
              << " fraction=" << peb::format_g9(peb::coverage_fraction(hm, t)) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param_str,
              const std::string& values_str, const std::string& out_path) {
  const peb::LoadedConfig cfg = peb::load_scenario_file(config_path);

  peb::SweepParameter param;
  if (!param_str.empty())
    param = peb::parse_sweep_parameter(param_str);
  else if (cfg.sweep)
    param = cfg.sweep->parameter;
  else
    throw peb::config_error("sweep: no parameter: pass --param or add a sweep section");

  std::vector<double> values;
  if (!values_str.empty())
    values = parse_values(values_str);
  else if (cfg.sweep)
    values = cfg.sweep->values;
  else
    throw peb::config_error("sweep: no values: pass --values or add a sweep section");

  const double tx = cfg.target ? cfg.target->x_m : 0.5 * (cfg.grid.x_min_m + cfg.grid.x_max_m);
  const double ty = cfg.target ? cfg.target->y_m : 0.5 * (cfg.grid.y_min_m + cfg.grid.y_max_m);

  const std::vector<peb::SweepPoint> points =
      peb::sweep(cfg.scenario, tx, ty, param, values);
  peb::write_file_atomic(out_path, peb::sweep_csv(points));

  std::cout << "sweep " << peb::to_string(param) << " at target x_m=" << peb::format_g9(tx)
            << " y_m=" << peb::format_g9(ty) << "\n";
  for (const peb::SweepPoint& pt : points) {
    if (pt.valid)
      std::cout << "  value=" << peb::format_g9(pt.value)
                << " peb_m=" << peb::format_g9(pt.peb_m) << "\n";
    else
      std::cout << "  value=" << peb::format_g9(pt.value) << " invalid: " << pt.error << "\n";
  }
  std::cout << "wrote " << out_path << " (" << points.size() << " points)\n";
  return 0;
}

int cmd_coverage(const std::string& config_path, int grid_n,
                 const std::vector<double>& thresholds) {
  const peb::LoadedConfig cfg = peb::load_scenario_file(config_path);
  peb::GridSpec grid = cfg.grid;
  if (grid_n > 0) {
    grid.nx = grid_n;
    grid.ny = grid_n;
  }
  const peb::HeatmapResult hm = peb::heatmap(cfg.scenario, grid);
  const std::vector<double>& th = thresholds.empty() ? cfg.coverage_thresholds_m : thresholds;
  std::cout << "cells=" << grid.cells() << " evaluated=" << (grid.cells() - hm.n_excluded)
            << " excluded=" << hm.n_excluded << "\n";
  for (const double t : th)
    std::cout << "threshold_m=" << peb::format_g9(t)
              << " fraction=" << peb::format_g9(peb::coverage_fraction(hm, t)) << "\n";
  return 0;
}

json draw_json(const peb::OracleDraw& draw) {
  return {{"num_subcarriers", draw.waveform.num_subcarriers},
          {"num_symbols", draw.waveform.num_symbols},
          {"subcarrier_spacing_hz", draw.waveform.subcarrier_spacing_hz},
          {"cp_duration_s", draw.waveform.cp_duration_s},
          {"n_rx", draw.n_rx},
          {"amplitude", draw.params.amplitude},
          {"phase_rad", draw.params.phase_rad},
          {"doppler_hz", draw.params.doppler_hz},
          {"delay_s", draw.params.delay_s},
          {"doa_rad", draw.params.doa_rad}};
}

int cmd_validate(const std::string& config_path, int draws, double tolerance,
                 std::uint64_t seed, bool as_json) {
  if (!config_path.empty()) {
    const peb::LoadedConfig cfg = peb::load_scenario_file(config_path);
    (void)cfg;
    if (!as_json) std::cout << "config ok: " << config_path << "\n";
  }
  const peb::OracleRunResult run = peb::run_oracle_draws(draws, seed);
  const bool passed = run.pass(tolerance);
  const peb::OracleRunPoint& worst = run.points[static_cast<std::size_t>(run.worst_index)];

  if (as_json) {
    json doc;
    doc["draws"] = draws;
    doc["tolerance"] = tolerance;
    doc["seed"] = seed;
    doc["passed"] = passed;
    doc["worst"] = {{"draw", run.worst_index},
                    {"rel_error", run.worst_rel},
                    {"row", worst.report.row},
                    {"col", worst.report.col},
                    {"params", draw_json(worst.draw)}};
    std::cout << doc.dump(2) << "\n";
    return passed ? 0 : 5;
  }

  std::cout << "oracle cross-validation: draws=" << draws
            << " tolerance=" << peb::format_g9(tolerance) << " seed=" << seed << "\n";
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    const peb::OracleRunPoint& pt = run.points[i];
    std::cout << "  draw " << i << ": K=" << pt.draw.waveform.num_subcarriers
              << " M=" << pt.draw.waveform.num_symbols << " NR=" << pt.draw.n_rx
              << " df_khz=" << peb::format_g9(pt.draw.waveform.subcarrier_spacing_hz / 1e3)
              << " theta_deg=" << peb::format_g9(rad_to_deg(pt.draw.params.doa_rad))
              << " alpha=" << peb::format_g9(pt.draw.params.amplitude)
              << " rel=" << peb::format_g9(pt.report.max_rel_error) << " entry=("
              << pt.report.row << "," << pt.report.col << ")\n";
  }
  std::cout << "worst: draw " << run.worst_index << " rel=" << peb::format_g9(run.worst_rel)
            << " at entry (" << worst.report.row << "," << worst.report.col << ")\n";
  if (passed) {
    std::cout << "result: PASS (worst " << peb::format_g9(run.worst_rel) << " < tolerance "
              << peb::format_g9(tolerance) << ")\n";
    return 0;
  }
  std::cout << "result: FAIL (worst " << peb::format_g9(run.worst_rel) << " >= tolerance "
            << peb::format_g9(tolerance) << ")\n";
  std::cout << "offending draw: " << draw_json(worst.draw).dump() << "\n";
  return 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position error bounds for cooperative monostatic MIMO-OFDM sensing networks"};
  app.require_subcommand(1);

  std::string point_config;
  double point_x = 0.0;
  double point_y = 0.0;
  bool point_json = false;
  CLI::App* point = app.add_subcommand("point", "Evaluate the bound at one position");
  point->add_option("config", point_config, "scenario file (JSON)")->required();
  CLI::Option* optx = point->add_option("--x", point_x, "target x [m] (default: config target)");
  CLI::Option* opty = point->add_option("--y", point_y, "target y [m] (default: config target)");
  point->add_flag("--json", point_json, "machine-readable output");

  std::string hm_config;
  std::string hm_prefix = "heatmap";
  int hm_grid = 0;
  std::vector<double> hm_thresholds;
  bool hm_pgm = false;
  double hm_pgm_lo = 1e-3;
  double hm_pgm_hi = 1.0;
  CLI::App* hm = app.add_subcommand("heatmap", "Evaluate the bound over a grid");
  hm->add_option("config", hm_config, "scenario file (JSON)")->required();
  hm->add_option("--out", hm_prefix, "output path prefix (default: heatmap)");
  hm->add_option("--grid", hm_grid, "override grid to N x N points")->check(CLI::Range(2, 20000));
  hm->add_option("--threshold", hm_thresholds, "coverage thresholds [m] (default: config)")
      ->check(CLI::PositiveNumber);
  hm->add_flag("--pgm", hm_pgm, "also write a 16-bit grayscale PGM rendering");
  hm->add_option("--pgm-lo", hm_pgm_lo, "PGM scale lower bound [m] (default 0.001)")
      ->check(CLI::PositiveNumber);
  hm->add_option("--pgm-hi", hm_pgm_hi, "PGM scale upper bound [m] (default 1)")
      ->check(CLI::PositiveNumber);

  std::string sw_config;
  std::string sw_param;
  std::string sw_values;
  std::string sw_out = "sweep.csv";
  CLI::App* sw = app.add_subcommand("sweep", "Bound at a fixed target versus one parameter");
  sw->add_option("config", sw_config, "scenario file (JSON)")->required();
  sw->add_option("--param", sw_param, "swept parameter: K, NR, rho, or NBS");
  sw->add_option("--values", sw_values, "comma list and/or start:stop:count ranges");
  sw->add_option("--out", sw_out, "output CSV path (default: sweep.csv)");

  std::string cov_config;
  int cov_grid = 0;
  std::vector<double> cov_thresholds;
  CLI::App* cov = app.add_subcommand("coverage", "Fraction of the grid meeting thresholds");
  cov->add_option("config", cov_config, "scenario file (JSON)")->required();
  cov->add_option("--grid", cov_grid, "override grid to N x N points")->check(CLI::Range(2, 20000));
  cov->add_option("--threshold", cov_thresholds, "coverage thresholds [m] (default: config)")
      ->check(CLI::PositiveNumber);

  std::string val_config;
  int val_draws = 100;
  double val_tolerance = 1e-4;
  std::uint64_t val_seed = 20240901;
  bool val_json = false;
  CLI::App* val = app.add_subcommand("validate",
                                     "Cross-check closed forms against the numeric oracle");
  val->add_option("config", val_config, "scenario file to parse-check (optional)");
  val->add_option("--draws", val_draws, "randomized draws (default 100)")
      ->check(CLI::Range(1, 1000000));
  val->add_option("--tolerance", val_tolerance, "max relative error (default 1e-4)")
      ->check(CLI::PositiveNumber);
  val->add_option("--seed", val_seed, "RNG seed (default 20240901)");
  val->add_flag("--json", val_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (point->parsed()) {
      std::optional<double> ox, oy;
      if (optx->count() > 0) ox = point_x;
      if (opty->count() > 0) oy = point_y;
      return cmd_point(point_config, ox, oy, point_json);
    }
    if (hm->parsed())
      return cmd_heatmap(hm_config, hm_prefix, hm_grid, hm_thresholds, hm_pgm, hm_pgm_lo,
                         hm_pgm_hi);
    if (sw->parsed()) return cmd_sweep(sw_config, sw_param, sw_values, sw_out);
    if (cov->parsed()) return cmd_coverage(cov_config, cov_grid, cov_thresholds);
    if (val->parsed())
      return cmd_validate(val_config, val_draws, val_tolerance, val_seed, val_json);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const peb::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const peb::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const peb::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const peb::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
