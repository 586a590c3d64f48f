#pragma once

#include <complex>
#include <vector>

#include "peb/constants.hpp"
#include "peb/errors.hpp"

namespace peb {

struct BaseStation;  // defined in geometry.hpp

/// OFDM numerology. All durations in seconds, spacing in Hz.
struct WaveformParams {
  int num_subcarriers = 0;        ///< K
  int num_symbols = 0;            ///< M
  double subcarrier_spacing_hz = 0.0;  ///< Δf
  double symbol_duration_s = 0.0;      ///< T_s = 1/Δf + T_CP
  double cp_duration_s = 0.0;          ///< T_CP

  /// Build with the T_s = 1/Δf + T_CP invariant satisfied by construction.
  static WaveformParams make(int k, int m, double delta_f_hz, double t_cp_s) {
    return {k, m, delta_f_hz, 1.0 / delta_f_hz + t_cp_s, t_cp_s};
  }

  void validate() const;
};

/// Radio front-end and power budget. Gains are linear, powers in watts.
struct RadioParams {
  int num_tx_antennas = 16;        ///< N_T (never enters the bounds; config completeness)
  int num_rx_antennas = 0;         ///< N_R
  double tx_array_gain = 1.0;      ///< G_T^a
  double rx_element_gain = 1.0;    ///< G_R
  double carrier_frequency_hz = 0.0;  ///< f_c
  double total_tx_power_w = 0.0;      ///< P_T
  double avg_subcarrier_power_w = 0.0;  ///< P_avg = P_T / K
  double noise_psd_w_per_hz = 0.0;      ///< N_0
  double sensing_power_fraction = 0.0;  ///< ρ ∈ [0, 1]

  double eirp_w() const { return total_tx_power_w * tx_array_gain; }
  void validate() const;
};

struct Target {
  double x_m = 0.0;
  double y_m = 0.0;
  double rcs_m2 = 1.0;  ///< σ

  void validate() const;
};

/// Per-(station, target) derived quantities.
struct SensingLink {
  double range_m = 0.0;       ///< r
  double local_doa_rad = 0.0; ///< θ_R in the station frame
  double path_gain_sq = 0.0;  ///< α²
  double snr = 0.0;           ///< per subcarrier, per Rx element
};

/// Half-wavelength ULA steering vector, array center as phase reference:
/// element p (0-indexed) = exp(+i·(p − (n−1)/2)·π·sin θ).
std::vector<std::complex<double>> steering_vector(double theta_rad, int n_elements);

/// Dual-beam transmit vector √ρ·w_s + √(1−ρ)·w_c with
/// w_x = (√(P_avg·G_T^a)/N_T)·a(θ_x).
std::vector<std::complex<double>> dual_beamformer(double theta_c_rad, double theta_s_rad,
                                                  const RadioParams& radio);

/// Radar-equation two-way amplitude gain: α² = G_R·c²·σ/((4π)³·f_c²·r⁴).
/// Throws domain_error when r ≤ 0.
double path_gain_sq(double range_m, double rcs_m2, const RadioParams& radio);

/// Full link derivation: range and local DoA via the station frame, α² from
/// the radar equation, SNR = ρ·P_T·G_T^a·α²/(N_0·K·Δf).
/// Throws domain_error when the range violates the near-field guard.
SensingLink link_snr(const Target& target, const BaseStation& bs,
                     const WaveformParams& waveform, const RadioParams& radio,
                     double r_min_m = kNearFieldRadiusM);

}  // namespace peb
