#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "peb/analysis.hpp"
#include "peb/config.hpp"

namespace peb {

/// Shortest-width decimal with 9 significant digits, locale-independent.
std::string format_g9(double v);

/// Write `content` to `path` atomically (temp file + rename).
/// Throws io_error on failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// Heatmap CSV: header `x_m,y_m,peb_m`, row-major (y outer, ascending), one
/// line per cell, 9 significant digits, `inf` and `excluded` sentinels.
std::string heatmap_csv(const HeatmapResult& hm);

/// JSON summary: scenario echo, grid, stats, coverage fractions, and per-
/// station SNR at the probe point (the configured target, else grid center).
nlohmann::json heatmap_summary(const LoadedConfig& config, const HeatmapResult& hm,
                               const std::vector<double>& thresholds_m);

/// 16-bit binary PGM, log₁₀(PEB) mapped linearly to gray between lo and hi
/// (darker = lower PEB); excluded/infinite cells render white. Top image row
/// is y_max. Returns the raster; the scale sidecar text documents the map.
std::string heatmap_pgm(const HeatmapResult& hm, double lo_m, double hi_m);
std::string pgm_scale_note(const HeatmapResult& hm, double lo_m, double hi_m);

/// Sweep CSV: header `value,peb_m`; `inf` for singular points, `invalid` for
/// values outside the parameter's domain.
std::string sweep_csv(const std::vector<SweepPoint>& points);

}  // namespace peb
