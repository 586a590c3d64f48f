#pragma once

#include <vector>

#include "peb/geometry.hpp"

namespace peb {

/// Immutable description of a cooperative sensing deployment.
struct Scenario {
  std::vector<BaseStation> stations;
  WaveformParams waveform;
  RadioParams radio;
  double rcs_m2 = 1.0;   ///< σ assumed for every probed position
  double r_min_m = kNearFieldRadiusM;

  void validate() const;
};

enum class StationStatus { contributing, near_field, out_of_fov };

const char* to_string(StationStatus s);

/// Per-station diagnostics retained alongside the fused result.
struct StationReport {
  StationStatus status = StationStatus::contributing;
  double range_m = 0.0;
  double local_doa_rad = 0.0;
  double snr = 0.0;          ///< linear; 0 for non-contributing stations
  double snr_db = 0.0;       ///< -inf when snr = 0
  Mat<2> contribution;       ///< global-frame EFIM term (zero if not contributing)
};

struct PebResult {
  double peb_m = 0.0;        ///< +inf when the fused EFIM is singular or empty
  Efim2 efim;                ///< fused global-frame (Cartesian) EFIM
  std::vector<StationReport> stations;
  int n_contributing = 0;
  bool no_information = false;  ///< true when every station was excluded
};

/// Cooperative fusion: EFIM(p) = Σ_n J_nᵀ·EFIM(p⁽ⁿ⁾)·J_n over contributing
/// stations. Stations inside r_min or outside their field of view are
/// excluded and reported; when all are excluded the result carries peb = +inf
/// and no_information = true.
PebResult fuse_efim(const Scenario& scenario, double x_m, double y_m);

/// PEB from a fused EFIM: √(Tr(E⁻¹)); +inf when E is singular
/// (condition > 1e12). Throws domain_error on a non-symmetric input.
double peb_from_efim(const Efim2& efim);

}  // namespace peb
