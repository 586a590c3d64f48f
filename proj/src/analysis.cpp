#include "peb/analysis.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

namespace peb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int worker_count(int rows) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PEB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = cap;
  }
  return n < rows ? n : rows;
}

bool is_integral(double v) {
  return std::isfinite(v) && v == std::floor(v) && std::abs(v) < 2147483647.0;
}

}  // namespace

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw domain_error("grid: need at least 2 points per axis");
  if (!std::isfinite(x_min_m) || !std::isfinite(x_max_m) || !std::isfinite(y_min_m) ||
      !std::isfinite(y_max_m))
    throw domain_error("grid: bounds must be finite");
  if (!(x_max_m > x_min_m) || !(y_max_m > y_min_m))
    throw domain_error("grid: max bound must exceed min bound on each axis");
}

HeatmapResult heatmap(const Scenario& scenario, const GridSpec& grid) {
  scenario.validate();
  grid.validate();

  HeatmapResult hm;
  hm.grid = grid;
  const std::size_t n = static_cast<std::size_t>(grid.cells());
  hm.peb_m.assign(n, kNaN);
  hm.excluded.assign(n, 0);

  const auto eval_rows = [&](int iy_begin, int iy_end) {
    for (int iy = iy_begin; iy < iy_end; ++iy) {
      const double y = grid.y_at(iy);
      for (int ix = 0; ix < grid.nx; ++ix) {
        const double x = grid.x_at(ix);
        const std::size_t idx =
            static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid.nx) +
            static_cast<std::size_t>(ix);
        bool near = false;
        for (const BaseStation& bs : scenario.stations)
          if (std::hypot(x - bs.x_m, y - bs.y_m) < scenario.r_min_m) {
            near = true;
            break;
          }
        if (near) {
          hm.excluded[idx] = 1;
        } else {
          hm.peb_m[idx] = fuse_efim(scenario, x, y).peb_m;
        }
      }
    }
  };

  const int workers = worker_count(grid.ny);
  if (workers <= 1) {
    eval_rows(0, grid.ny);
  } else {
    const int chunk = (grid.ny + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = begin + chunk < grid.ny ? begin + chunk : grid.ny;
      pool.emplace_back([&, w, begin, end]() {
        try {
          eval_rows(begin, end);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Statistics in a fixed serial order so the result is identical no matter
  // how many workers filled the grid.
  double sum = 0.0;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const std::size_t idx =
          static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid.nx) +
          static_cast<std::size_t>(ix);
      if (hm.excluded[idx]) {
        ++hm.n_excluded;
      } else if (std::isfinite(hm.peb_m[idx])) {
        ++hm.n_finite;
        sum += hm.peb_m[idx];
        if (hm.peb_m[idx] > hm.max_finite_peb_m) hm.max_finite_peb_m = hm.peb_m[idx];
      } else {
        ++hm.n_infinite;
      }
    }
  hm.mean_finite_peb_m = hm.n_finite > 0 ? sum / static_cast<double>(hm.n_finite) : 0.0;
  return hm;
}

double coverage_fraction(const HeatmapResult& hm, double threshold_m) {
  if (!(threshold_m > 0.0)) throw domain_error("coverage: threshold must be positive");
  const long denom = hm.grid.cells() - hm.n_excluded;
  if (denom <= 0) return 0.0;
  long count = 0;
  for (std::size_t i = 0; i < hm.peb_m.size(); ++i)
    if (!hm.excluded[i] && std::isfinite(hm.peb_m[i]) && hm.peb_m[i] <= threshold_m)
      ++count;
  return static_cast<double>(count) / static_cast<double>(denom);
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "K") return SweepParameter::subcarriers;
  if (name == "NR") return SweepParameter::rx_antennas;
  if (name == "rho") return SweepParameter::power_fraction;
  if (name == "NBS") return SweepParameter::stations;
  throw config_error("unknown sweep parameter '" + name + "' (expected K, NR, rho, or NBS)");
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::subcarriers: return "K";
    case SweepParameter::rx_antennas: return "NR";
    case SweepParameter::power_fraction: return "rho";
    case SweepParameter::stations: return "NBS";
  }
  return "unknown";
}

std::vector<SweepPoint> sweep(const Scenario& scenario, double target_x_m, double target_y_m,
                              SweepParameter parameter, const std::vector<double>& values) {
  scenario.validate();
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (const double v : values) {
    SweepPoint pt;
    pt.value = v;
    Scenario s = scenario;
    switch (parameter) {
      case SweepParameter::subcarriers:
        if (!is_integral(v) || v < 2.0) {
          pt.error = "subcarrier count must be an integer >= 2";
        } else {
          s.waveform.num_subcarriers = static_cast<int>(v);
          // Total transmit power is held fixed, so the per-subcarrier share
          // shrinks with K and the link SNR follows the budget.
          s.radio.avg_subcarrier_power_w = s.radio.total_tx_power_w / v;
        }
        break;
      case SweepParameter::rx_antennas:
        if (!is_integral(v) || v < 2.0) {
          pt.error = "receive antenna count must be an integer >= 2";
        } else {
          s.radio.num_rx_antennas = static_cast<int>(v);
        }
        break;
      case SweepParameter::power_fraction:
        if (!(v >= 0.0 && v <= 1.0)) {
          pt.error = "power fraction must lie in [0, 1]";
        } else {
          s.radio.sensing_power_fraction = v;
        }
        break;
      case SweepParameter::stations:
        if (!is_integral(v) || v < 1.0 ||
            v > static_cast<double>(scenario.stations.size())) {
          pt.error = "station count must be an integer in [1, " +
                     std::to_string(scenario.stations.size()) + "]";
        } else {
          s.stations.resize(static_cast<std::size_t>(v));
        }
        break;
    }
    if (pt.error.empty()) {
      pt.peb_m = fuse_efim(s, target_x_m, target_y_m).peb_m;
      pt.valid = true;
    }
    points.push_back(pt);
  }
  return points;
}

}  // namespace peb
