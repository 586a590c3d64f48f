#include "peb/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace peb {

namespace {

nlohmann::json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

}  // namespace

std::string format_g9(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::remove(tmp.c_str());
      throw io_error("cannot write: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_error("cannot move output into place: " + path);
  }
}

std::string heatmap_csv(const HeatmapResult& hm) {
  const GridSpec& g = hm.grid;
  std::vector<std::string> xs(static_cast<std::size_t>(g.nx));
  for (int ix = 0; ix < g.nx; ++ix) xs[static_cast<std::size_t>(ix)] = format_g9(g.x_at(ix));

  std::string out = "x_m,y_m,peb_m\n";
  out.reserve(out.size() + static_cast<std::size_t>(g.cells()) * 24);
  for (int iy = 0; iy < g.ny; ++iy) {
    const std::string ys = format_g9(g.y_at(iy));
    for (int ix = 0; ix < g.nx; ++ix) {
      const std::size_t idx = static_cast<std::size_t>(iy) * static_cast<std::size_t>(g.nx) +
                              static_cast<std::size_t>(ix);
      out += xs[static_cast<std::size_t>(ix)];
      out += ',';
      out += ys;
      out += ',';
      out += hm.excluded[idx] ? "excluded" : format_g9(hm.peb_m[idx]);
      out += '\n';
    }
  }
  return out;
}

nlohmann::json heatmap_summary(const LoadedConfig& config, const HeatmapResult& hm,
                               const std::vector<double>& thresholds_m) {
  const GridSpec& g = hm.grid;
  nlohmann::json summary;
  summary["scenario"] = config.echo;
  summary["grid"] = {{"x_min_m", g.x_min_m}, {"x_max_m", g.x_max_m},
                     {"y_min_m", g.y_min_m}, {"y_max_m", g.y_max_m},
                     {"nx", g.nx},           {"ny", g.ny}};
  summary["max_peb_m"] = finite_or_string(hm.max_finite_peb_m);
  summary["mean_peb_m"] = finite_or_string(hm.mean_finite_peb_m);
  summary["n_cells"] = g.cells();
  summary["n_finite"] = hm.n_finite;
  summary["n_infinite"] = hm.n_infinite;
  summary["n_excluded"] = hm.n_excluded;

  nlohmann::json coverage = nlohmann::json::array();
  for (const double t : thresholds_m)
    coverage.push_back({{"threshold_m", t}, {"fraction", coverage_fraction(hm, t)}});
  summary["coverage"] = coverage;

  const double px = config.target ? config.target->x_m : 0.5 * (g.x_min_m + g.x_max_m);
  const double py = config.target ? config.target->y_m : 0.5 * (g.y_min_m + g.y_max_m);
  const PebResult probe = fuse_efim(config.scenario, px, py);
  nlohmann::json stations = nlohmann::json::array();
  for (std::size_t i = 0; i < probe.stations.size(); ++i) {
    const StationReport& rep = probe.stations[i];
    stations.push_back({{"index", i},
                        {"status", to_string(rep.status)},
                        {"range_m", rep.range_m},
                        {"local_doa_deg", rad_to_deg(rep.local_doa_rad)},
                        {"snr_db", finite_or_string(rep.snr_db)}});
  }
  summary["probe"] = {{"x_m", px},
                      {"y_m", py},
                      {"peb_m", finite_or_string(probe.peb_m)},
                      {"n_contributing", probe.n_contributing},
                      {"no_information", probe.no_information},
                      {"stations", stations}};
  return summary;
}

std::string heatmap_pgm(const HeatmapResult& hm, double lo_m, double hi_m) {
  if (!(lo_m > 0.0) || !(hi_m > lo_m))
    throw domain_error("heatmap_pgm: scale bounds must satisfy 0 < lo < hi");
  const GridSpec& g = hm.grid;
  const double llo = std::log10(lo_m);
  const double lhi = std::log10(hi_m);

  std::string out = "P5\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n65535\n";
  out.reserve(out.size() + static_cast<std::size_t>(g.cells()) * 2);
  for (int iy = g.ny - 1; iy >= 0; --iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const std::size_t idx = static_cast<std::size_t>(iy) * static_cast<std::size_t>(g.nx) +
                              static_cast<std::size_t>(ix);
      unsigned pix = 65535;
      if (!hm.excluded[idx] && std::isfinite(hm.peb_m[idx])) {
        double t = (std::log10(hm.peb_m[idx]) - llo) / (lhi - llo);
        if (t < 0.0) t = 0.0;
        if (t > 1.0) t = 1.0;
        pix = static_cast<unsigned>(std::lround(t * 65535.0));
      }
      out.push_back(static_cast<char>((pix >> 8) & 0xff));
      out.push_back(static_cast<char>(pix & 0xff));
    }
  return out;
}

std::string pgm_scale_note(const HeatmapResult& hm, double lo_m, double hi_m) {
  const GridSpec& g = hm.grid;
  std::string note;
  note += "16-bit grayscale PGM of the position error bound.\n";
  note += "gray = round(65535 * clamp((log10(peb_m) - log10(lo_m)) / (log10(hi_m) - log10(lo_m)), 0, 1))\n";
  note += "lo_m=" + format_g9(lo_m) + " maps to black (0); hi_m=" + format_g9(hi_m) +
          " maps to white (65535); darker is better.\n";
  note += "excluded and no-information cells render as white (65535).\n";
  note += "image row 0 corresponds to y_max=" + format_g9(g.y_max_m) +
          "; columns run from x_min=" + format_g9(g.x_min_m) +
          " to x_max=" + format_g9(g.x_max_m) + ".\n";
  return note;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "value,peb_m\n";
  for (const SweepPoint& pt : points) {
    out += format_g9(pt.value);
    out += ',';
    out += pt.valid ? format_g9(pt.peb_m) : "invalid";
    out += '\n';
  }
  return out;
}

}  // namespace peb
