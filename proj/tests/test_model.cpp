#include <doctest.h>

#include <cmath>
#include <complex>

#include "peb/geometry.hpp"
#include "peb/model.hpp"
#include "test_helpers.hpp"

using peb::domain_error;

TEST_CASE("WaveformParams::make satisfies the symbol-duration invariant") {
  const peb::WaveformParams wf = peb::WaveformParams::make(744, 112, 120e3, 0.586e-6);
  CHECK(wf.symbol_duration_s == 1.0 / wf.subcarrier_spacing_hz + wf.cp_duration_s);
  CHECK(wf.symbol_duration_s == doctest::Approx(8.919333333333335e-06).epsilon(1e-15));
  CHECK_NOTHROW(wf.validate());
}

TEST_CASE("WaveformParams::validate rejects bad numerologies") {
  CHECK_THROWS_WITH_AS(peb::WaveformParams::make(1, 112, 120e3, 0.0).validate(),
                       "waveform: num_subcarriers must be >= 2", domain_error);
  CHECK_THROWS_WITH_AS(peb::WaveformParams::make(744, 1, 120e3, 0.0).validate(),
                       "waveform: num_symbols must be >= 2", domain_error);
  peb::WaveformParams wf = peb::WaveformParams::make(744, 112, 120e3, 0.586e-6);
  wf.subcarrier_spacing_hz = 0.0;
  CHECK_THROWS_WITH_AS(wf.validate(), "waveform: subcarrier spacing must be positive",
                       domain_error);
  wf = peb::WaveformParams::make(744, 112, 120e3, -1e-9);
  CHECK_THROWS_WITH_AS(wf.validate(), "waveform: CP duration must be non-negative",
                       domain_error);
  wf = peb::WaveformParams::make(744, 112, 120e3, 0.586e-6);
  wf.symbol_duration_s += 1e-12;
  CHECK_THROWS_WITH_AS(wf.validate(),
                       "waveform: symbol duration must equal 1/spacing + CP duration exactly",
                       domain_error);
}

TEST_CASE("RadioParams::validate rejects each bad field") {
  peb::RadioParams r = testutil::radio();
  CHECK_NOTHROW(r.validate());

  r = testutil::radio();
  r.num_tx_antennas = 0;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: num_tx_antennas must be >= 1", domain_error);

  r = testutil::radio();
  r.num_rx_antennas = 1;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: num_rx_antennas must be >= 2", domain_error);

  r = testutil::radio();
  r.carrier_frequency_hz = 0.0;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: carrier frequency must be positive", domain_error);

  r = testutil::radio();
  r.noise_psd_w_per_hz = 0.0;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: noise PSD must be positive", domain_error);

  r = testutil::radio();
  r.sensing_power_fraction = 1.5;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: sensing power fraction must lie in [0, 1]",
                       domain_error);

  r = testutil::radio();
  r.total_tx_power_w = 0.0;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: total tx power must be positive", domain_error);

  r = testutil::radio();
  r.avg_subcarrier_power_w = -1.0;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: per-subcarrier power must be positive",
                       domain_error);

  r = testutil::radio();
  r.tx_array_gain = 0.0;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: tx array gain must be positive", domain_error);

  r = testutil::radio();
  r.rx_element_gain = 0.0;
  CHECK_THROWS_WITH_AS(r.validate(), "radio: rx element gain must be positive", domain_error);
}

TEST_CASE("Target::validate rejects non-positive cross-sections") {
  peb::Target t{0.0, 0.0, 0.0};
  CHECK_THROWS_WITH_AS(t.validate(), "target: radar cross-section must be positive",
                       domain_error);
}

TEST_CASE("steering_vector: unit modulus, center reference, known phases") {
  const auto v0 = peb::steering_vector(0.0, 5);
  REQUIRE(v0.size() == 5);
  for (const auto& e : v0) {
    CHECK(e.real() == 1.0);  // sin(0) = 0 makes every phase exactly zero
    CHECK(e.imag() == 0.0);
  }

  // theta with sin(theta) = 0.5: element p has phase (p - 1)*pi/2 for n = 3.
  const double theta = std::asin(0.5);
  const auto v = peb::steering_vector(theta, 3);
  REQUIRE(v.size() == 3);
  for (const auto& e : v) CHECK(std::abs(e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v[0].real() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(v[0].imag() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(v[1].real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v[2].imag() == doctest::Approx(1.0).epsilon(1e-15));

  // Odd-length arrays keep the center element at exactly 1.
  const auto vc = peb::steering_vector(0.7, 7);
  CHECK(vc[3].real() == 1.0);
  CHECK(vc[3].imag() == 0.0);

  CHECK_THROWS_WITH_AS(peb::steering_vector(0.0, 0),
                       "steering_vector: need at least one element", domain_error);
}

TEST_CASE("dual_beamformer: power split between the two beams") {
  const peb::RadioParams r = testutil::radio();
  const double scale =
      std::sqrt(r.avg_subcarrier_power_w * r.tx_array_gain) / r.num_tx_antennas;

  // Full sensing power: w = scale * a(theta_s).
  peb::RadioParams full = r;
  full.sensing_power_fraction = 1.0;
  const auto ws = peb::dual_beamformer(0.3, -0.2, full);
  const auto as = peb::steering_vector(-0.2, r.num_tx_antennas);
  REQUIRE(ws.size() == as.size());
  for (std::size_t i = 0; i < ws.size(); ++i)
    CHECK(std::abs(ws[i] - scale * as[i]) < 1e-18);

  // Coincident beams: w = (sqrt(rho) + sqrt(1-rho)) * scale * a(theta).
  const auto w = peb::dual_beamformer(0.4, 0.4, r);
  const auto a = peb::steering_vector(0.4, r.num_tx_antennas);
  const double gain = std::sqrt(r.sensing_power_fraction) +
                      std::sqrt(1.0 - r.sensing_power_fraction);
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(std::abs(w[i] - gain * scale * a[i]) < 1e-17);
}

TEST_CASE("path_gain_sq: radar equation at the square center") {
  const peb::RadioParams r = testutil::radio();
  const double a2 = peb::path_gain_sq(70.71067811865476, 1.0, r);
  CHECK(a2 == doctest::Approx(2.3107647954437844e-15).epsilon(1e-12));

  // Doubling the range divides the two-way gain by 16.
  const double a2far = peb::path_gain_sq(2.0 * 70.71067811865476, 1.0, r);
  CHECK(a2 / a2far == doctest::Approx(16.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(peb::path_gain_sq(0.0, 1.0, r),
                       "path_gain_sq: target coincides with base station", domain_error);
}

TEST_CASE("link_snr: full budget at the square center") {
  const peb::Scenario s = testutil::square(4);
  const peb::Target target{50.0, 50.0, 1.0};
  const peb::SensingLink link = peb::link_snr(target, s.stations[0], s.waveform, s.radio);
  CHECK(link.range_m == doctest::Approx(70.71067811865476).epsilon(1e-14));
  CHECK(std::abs(link.local_doa_rad) < 1e-14);  // boresight aims at the center
  CHECK(link.snr == doctest::Approx(6.470555542797336e-05).epsilon(1e-12));
  CHECK(10.0 * std::log10(link.snr) == doctest::Approx(-41.89058430488376).epsilon(1e-12));

  // Near-field guard.
  const peb::Target close{0.5, 0.0, 1.0};
  CHECK_THROWS_WITH_AS(peb::link_snr(close, s.stations[0], s.waveform, s.radio),
                       "link_snr: near-field guard violated", domain_error);
}

TEST_CASE("link_snr: scales linearly with sensing power fraction and EIRP") {
  const peb::Scenario s = testutil::square(4);
  const peb::Target target{50.0, 50.0, 1.0};
  const peb::SensingLink base = peb::link_snr(target, s.stations[0], s.waveform, s.radio);

  peb::RadioParams r = s.radio;
  r.sensing_power_fraction = 0.4;  // 4x the power on the sensing beam
  const peb::SensingLink boosted = peb::link_snr(target, s.stations[0], s.waveform, r);
  CHECK(boosted.snr == doctest::Approx(4.0 * base.snr).epsilon(1e-14));
}
