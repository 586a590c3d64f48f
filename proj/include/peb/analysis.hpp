#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peb/network.hpp"

namespace peb {

/// Uniform evaluation grid; samples sit at cell centers spanning the ranges
/// inclusively. The default 201×201 over [0,100]² puts a sample exactly at
/// the square's center.
struct GridSpec {
  double x_min_m = 0.0;
  double x_max_m = 100.0;
  double y_min_m = 0.0;
  double y_max_m = 100.0;
  int nx = 201;
  int ny = 201;

  double x_at(int ix) const { return x_min_m + (x_max_m - x_min_m) * ix / (nx - 1); }
  double y_at(int iy) const { return y_min_m + (y_max_m - y_min_m) * iy / (ny - 1); }
  long cells() const { return static_cast<long>(nx) * ny; }
  void validate() const;
};

/// PEB over a grid. `peb_m[iy*nx + ix]` pairs with (x_at(ix), y_at(iy)).
/// Excluded cells (within r_min of some station) are flagged separately from
/// +inf (no-information) cells — they mean different things for planning.
struct HeatmapResult {
  GridSpec grid;
  std::vector<double> peb_m;
  std::vector<std::uint8_t> excluded;
  double max_finite_peb_m = 0.0;   ///< 0 when no finite cells exist
  double mean_finite_peb_m = 0.0;  ///< over finite cells
  long n_finite = 0;
  long n_infinite = 0;
  long n_excluded = 0;
};

/// Evaluate fuse_efim at every cell center. Cells within r_min of any station
/// are marked excluded and not evaluated. Parallelized across rows; the
/// PEB_THREADS environment variable caps the worker count.
HeatmapResult heatmap(const Scenario& scenario, const GridSpec& grid);

/// Fraction of non-excluded cells with PEB ≤ threshold.
double coverage_fraction(const HeatmapResult& hm, double threshold_m);

enum class SweepParameter { subcarriers, rx_antennas, power_fraction, stations };

/// Parse "K" | "NR" | "rho" | "NBS"; throws config_error otherwise.
SweepParameter parse_sweep_parameter(const std::string& name);
const char* to_string(SweepParameter p);

struct SweepPoint {
  double value = 0.0;
  double peb_m = 0.0;    ///< meaningful only when valid
  bool valid = false;
  std::string error;     ///< set when the value is outside the parameter's domain
};

/// PEB at a fixed target for each value of one swept parameter, all other
/// parameters held at scenario values. Sweeping K keeps P_T fixed, so the
/// per-subcarrier SNR shrinks as 1/K exactly as the link budget prescribes.
/// Invalid values produce error entries; the sweep continues.
std::vector<SweepPoint> sweep(const Scenario& scenario, double target_x_m, double target_y_m,
                              SweepParameter parameter, const std::vector<double>& values);

}  // namespace peb
