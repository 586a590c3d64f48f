#include "peb/model.hpp"

#include <cmath>

#include "peb/geometry.hpp"

namespace peb {

void WaveformParams::validate() const {
  if (num_subcarriers < 2) throw domain_error("waveform: num_subcarriers must be >= 2");
  if (num_symbols < 2) throw domain_error("waveform: num_symbols must be >= 2");
  if (!(subcarrier_spacing_hz > 0.0)) throw domain_error("waveform: subcarrier spacing must be positive");
  if (!(cp_duration_s >= 0.0)) throw domain_error("waveform: CP duration must be non-negative");
  if (symbol_duration_s != 1.0 / subcarrier_spacing_hz + cp_duration_s)
    throw domain_error("waveform: symbol duration must equal 1/spacing + CP duration exactly");
}

void RadioParams::validate() const {
  if (num_tx_antennas < 1) throw domain_error("radio: num_tx_antennas must be >= 1");
  if (num_rx_antennas < 2) throw domain_error("radio: num_rx_antennas must be >= 2");
  if (!(tx_array_gain > 0.0)) throw domain_error("radio: tx array gain must be positive");
  if (!(rx_element_gain > 0.0)) throw domain_error("radio: rx element gain must be positive");
  if (!(carrier_frequency_hz > 0.0)) throw domain_error("radio: carrier frequency must be positive");
  if (!(total_tx_power_w > 0.0)) throw domain_error("radio: total tx power must be positive");
  if (!(avg_subcarrier_power_w > 0.0)) throw domain_error("radio: per-subcarrier power must be positive");
  if (!(noise_psd_w_per_hz > 0.0)) throw domain_error("radio: noise PSD must be positive");
  if (!(sensing_power_fraction >= 0.0 && sensing_power_fraction <= 1.0))
    throw domain_error("radio: sensing power fraction must lie in [0, 1]");
}

void Target::validate() const {
  if (!(rcs_m2 > 0.0)) throw domain_error("target: radar cross-section must be positive");
}

std::vector<std::complex<double>> steering_vector(double theta_rad, int n_elements) {
  if (n_elements < 1) throw domain_error("steering_vector: need at least one element");
  std::vector<std::complex<double>> a(static_cast<std::size_t>(n_elements));
  const double s = std::sin(theta_rad);
  const double center = (n_elements - 1) / 2.0;
  for (int p = 0; p < n_elements; ++p)
    a[static_cast<std::size_t>(p)] = std::polar(1.0, (p - center) * kPi * s);
  return a;
}

std::vector<std::complex<double>> dual_beamformer(double theta_c_rad, double theta_s_rad,
                                                  const RadioParams& radio) {
  radio.validate();
  const double rho = radio.sensing_power_fraction;
  const double scale = std::sqrt(radio.avg_subcarrier_power_w * radio.tx_array_gain) /
                       radio.num_tx_antennas;
  const auto ac = steering_vector(theta_c_rad, radio.num_tx_antennas);
  const auto as = steering_vector(theta_s_rad, radio.num_tx_antennas);
  std::vector<std::complex<double>> w(ac.size());
  const double cs = std::sqrt(rho) * scale;
  const double cc = std::sqrt(1.0 - rho) * scale;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = cs * as[i] + cc * ac[i];
  return w;
}

double path_gain_sq(double range_m, double rcs_m2, const RadioParams& radio) {
  if (!(range_m > 0.0)) throw domain_error("path_gain_sq: target coincides with base station");
  const double four_pi_cubed = 64.0 * kPi * kPi * kPi;
  const double r2 = range_m * range_m;
  return radio.rx_element_gain * kSpeedOfLight * kSpeedOfLight * rcs_m2 /
         (four_pi_cubed * radio.carrier_frequency_hz * radio.carrier_frequency_hz * r2 * r2);
}

SensingLink link_snr(const Target& target, const BaseStation& bs,
                     const WaveformParams& waveform, const RadioParams& radio,
                     double r_min_m) {
  const LocalCoords local = global_to_local(target.x_m, target.y_m, bs);
  if (local.range_m < r_min_m) throw domain_error("link_snr: near-field guard violated");
  SensingLink link;
  link.range_m = local.range_m;
  link.local_doa_rad = local.doa_rad;
  link.path_gain_sq = path_gain_sq(local.range_m, target.rcs_m2, radio);
  link.snr = radio.sensing_power_fraction * radio.total_tx_power_w * radio.tx_array_gain *
             link.path_gain_sq /
             (radio.noise_psd_w_per_hz * waveform.num_subcarriers * waveform.subcarrier_spacing_hz);
  return link;
}

}  // namespace peb
