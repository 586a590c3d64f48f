#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "peb/analysis.hpp"
#include "peb/config.hpp"
#include "peb/network.hpp"
#include "peb/oracle.hpp"
#include "peb/output.hpp"

namespace py = pybind11;

namespace {

double rad_to_deg(double rad) { return rad * (180.0 / peb::kPi); }

py::dict point_dict(const peb::PebResult& result, double x, double y) {
  py::dict d;
  d["x_m"] = x;
  d["y_m"] = y;
  d["peb_m"] = result.peb_m;
  d["n_contributing"] = result.n_contributing;
  d["no_information"] = result.no_information;
  py::list efim;
  for (int i = 0; i < 2; ++i) {
    py::list row;
    for (int j = 0; j < 2; ++j) row.append(result.efim.m(i, j));
    efim.append(row);
  }
  d["efim_per_m2"] = efim;
  py::list stations;
  for (std::size_t i = 0; i < result.stations.size(); ++i) {
    const peb::StationReport& rep = result.stations[i];
    py::dict s;
    s["index"] = i;
    s["status"] = peb::to_string(rep.status);
    s["range_m"] = rep.range_m;
    s["local_doa_deg"] = rad_to_deg(rep.local_doa_rad);
    s["snr_db"] = rep.snr_db;
    stations.append(s);
  }
  d["stations"] = stations;
  return d;
}

class Config {
 public:
  explicit Config(peb::LoadedConfig cfg) : cfg_(std::move(cfg)) {}

  static Config load(const std::string& path) {
    return Config(peb::load_scenario_file(path));
  }

  static Config loads(const std::string& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw peb::config_error(std::string("loads: ") + e.what());
    }
    return Config(peb::parse_scenario(doc));
  }

  double peb(double x, double y) const { return peb::fuse_efim(cfg_.scenario, x, y).peb_m; }

  py::dict point(double x, double y) const {
    return point_dict(peb::fuse_efim(cfg_.scenario, x, y), x, y);
  }

  py::dict heatmap(std::optional<int> n) const {
    peb::GridSpec grid = cfg_.grid;
    if (n) {
      grid.nx = *n;
      grid.ny = *n;
    }
    const peb::HeatmapResult hm = peb::heatmap(cfg_.scenario, grid);
    py::dict d;
    d["nx"] = hm.grid.nx;
    d["ny"] = hm.grid.ny;
    py::list xs, ys;
    for (int ix = 0; ix < hm.grid.nx; ++ix) xs.append(hm.grid.x_at(ix));
    for (int iy = 0; iy < hm.grid.ny; ++iy) ys.append(hm.grid.y_at(iy));
    d["x_m"] = xs;
    d["y_m"] = ys;
    py::list peb_values;  // row-major, y outer; None marks an excluded cell
    for (std::size_t i = 0; i < hm.peb_m.size(); ++i) {
      if (hm.excluded[i])
        peb_values.append(py::none());
      else
        peb_values.append(hm.peb_m[i]);
    }
    d["peb_m"] = peb_values;
    d["max_peb_m"] = hm.max_finite_peb_m;
    d["mean_peb_m"] = hm.mean_finite_peb_m;
    d["n_finite"] = hm.n_finite;
    d["n_infinite"] = hm.n_infinite;
    d["n_excluded"] = hm.n_excluded;
    return d;
  }

  py::list sweep(const std::string& parameter, const std::vector<double>& values) const {
    const peb::SweepParameter param = peb::parse_sweep_parameter(parameter);
    const double tx =
        cfg_.target ? cfg_.target->x_m : 0.5 * (cfg_.grid.x_min_m + cfg_.grid.x_max_m);
    const double ty =
        cfg_.target ? cfg_.target->y_m : 0.5 * (cfg_.grid.y_min_m + cfg_.grid.y_max_m);
    const std::vector<peb::SweepPoint> points =
        peb::sweep(cfg_.scenario, tx, ty, param, values);
    py::list out;
    for (const peb::SweepPoint& pt : points) {
      py::dict d;
      d["value"] = pt.value;
      d["valid"] = pt.valid;
      if (pt.valid)
        d["peb_m"] = pt.peb_m;
      else
        d["error"] = pt.error;
      out.append(d);
    }
    return out;
  }

  int n_stations() const { return static_cast<int>(cfg_.scenario.stations.size()); }

  std::string to_json() const { return peb::serialize_scenario(cfg_).dump(2); }

 private:
  peb::LoadedConfig cfg_;
};

py::dict validate_oracle(int draws, double tolerance, std::uint64_t seed) {
  const peb::OracleRunResult run = peb::run_oracle_draws(draws, seed);
  const peb::OracleRunPoint& worst = run.points[static_cast<std::size_t>(run.worst_index)];
  py::dict d;
  d["draws"] = draws;
  d["tolerance"] = tolerance;
  d["seed"] = seed;
  d["passed"] = run.pass(tolerance);
  d["worst_rel_error"] = run.worst_rel;
  d["worst_draw"] = run.worst_index;
  d["worst_entry"] = py::make_tuple(worst.report.row, worst.report.col);
  return d;
}

}  // namespace

PYBIND11_MODULE(pebnet, m) {
  m.doc() = "Position error bounds for cooperative monostatic MIMO-OFDM sensing networks";
  m.attr("__version__") = "0.1.0";

  py::register_exception<peb::config_error>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<peb::domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<peb::numeric_error>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<peb::io_error>(m, "IoError", PyExc_OSError);

  py::class_<Config>(m, "Config")
      .def("peb", &Config::peb, py::arg("x_m"), py::arg("y_m"),
           "Position error bound [m] at a global-frame position")
      .def("point", &Config::point, py::arg("x_m"), py::arg("y_m"),
           "Full fusion breakdown at a position")
      .def("heatmap", &Config::heatmap, py::arg("n") = std::nullopt,
           "Evaluate the configured grid (optionally overridden to n x n)")
      .def("sweep", &Config::sweep, py::arg("parameter"), py::arg("values"),
           "Bound at the configured target versus one swept parameter")
      .def_property_readonly("n_stations", &Config::n_stations)
      .def("to_json", &Config::to_json, "Canonical JSON form; loads(to_json()) round-trips");

  m.def("load", &Config::load, py::arg("path"), "Parse a scenario file");
  m.def("loads", &Config::loads, py::arg("text"), "Parse a scenario JSON string");
  m.def(
      "steering_vector",
      [](double theta_rad, int n_elements) { return peb::steering_vector(theta_rad, n_elements); },
      py::arg("theta_rad"), py::arg("n_elements"),
      "Half-wavelength ULA steering vector, array center as phase reference");
  m.def("validate_oracle", &validate_oracle, py::arg("draws") = 100,
        py::arg("tolerance") = 1e-4, py::arg("seed") = 20240901,
        "Cross-check the closed-form FIM against the finite-difference oracle");
}
