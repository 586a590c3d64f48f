#pragma once

#include <cmath>
#include <vector>

#include "peb/config.hpp"
#include "peb/geometry.hpp"
#include "peb/network.hpp"

namespace testutil {

// 100 m square deployment used across the suite: 744 subcarriers at 120 kHz,
// 112 symbols, 0.586 µs CP, 16-element arrays, 28 GHz, 1 W EIRP, N0 = 4e-20,
// a tenth of the power on the sensing beam.

inline peb::WaveformParams waveform() {
  return peb::WaveformParams::make(744, 112, 120e3, 0.586e-6);
}

inline peb::RadioParams radio() {
  peb::RadioParams r;
  r.num_tx_antennas = 16;
  r.num_rx_antennas = 16;
  r.tx_array_gain = 1.0;
  r.rx_element_gain = 1.0;
  r.carrier_frequency_hz = 28e9;
  r.total_tx_power_w = 1.0;
  r.avg_subcarrier_power_w = 1.0 / 744;
  r.noise_psd_w_per_hz = 4e-20;
  r.sensing_power_fraction = 0.1;
  return r;
}

// Square corners counterclockwise from the origin, each boresight aimed at
// the square's interior (diagonal inward).
inline std::vector<peb::BaseStation> corners() {
  const double q = peb::kPi / 4.0;
  return {
      {0.0, 0.0, q, peb::kPi / 2.0},
      {100.0, 0.0, 3.0 * peb::kPi / 4.0, peb::kPi / 2.0},
      {100.0, 100.0, peb::wrap_angle(5.0 * peb::kPi / 4.0), peb::kPi / 2.0},
      {0.0, 100.0, -q, peb::kPi / 2.0},
  };
}

/// First n corner stations (n = 2 gives the adjacent pair; see diagonal()).
inline peb::Scenario square(int n_stations) {
  peb::Scenario s;
  const std::vector<peb::BaseStation> all = corners();
  s.stations.assign(all.begin(), all.begin() + n_stations);
  s.waveform = waveform();
  s.radio = radio();
  s.rcs_m2 = 1.0;
  s.r_min_m = 1.0;
  return s;
}

/// Stations at (0,0) and (100,100) — opposite ends of the diagonal.
inline peb::Scenario diagonal() {
  peb::Scenario s = square(1);
  s.stations.push_back(corners()[2]);
  return s;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testutil
