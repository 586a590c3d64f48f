#include "peb/fisher.hpp"

#include <cmath>
#include <limits>

namespace peb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric diagonal scaling: invert S_ij = m_ij/(s_i*s_j) with s_i = sqrt(m_ii)
// and unscale. Information matrices carry wildly different units on the
// diagonal (amplitude^-2 vs s^-2 spans ~20 decades), so a raw condition
// estimate would flag perfectly healthy inputs; the scaled matrix is a
// correlation matrix whose conditioning reflects actual information overlap.
template <int N>
InverseResult<N> invert_scaled(const Mat<N>& m) {
  std::array<double, N> s{};
  for (int i = 0; i < N; ++i) {
    if (!(m(i, i) > 0.0)) return InverseResult<N>{};  // singular
    s[static_cast<std::size_t>(i)] = std::sqrt(m(i, i));
  }
  Mat<N> scaled;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      scaled(i, j) = m(i, j) / (s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)]);
  InverseResult<N> r = invert(scaled);
  if (r.singular) return r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      r.inverse(i, j) /= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
  return r;
}

}  // namespace

void ParameterVector::validate() const {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw domain_error("parameters: amplitude must be positive and finite");
  if (!(delay_s >= 0.0)) throw domain_error("parameters: delay must be non-negative");
  if (!std::isfinite(phase_rad) || !std::isfinite(doppler_hz) || !std::isfinite(delay_s) ||
      !std::isfinite(doa_rad))
    throw domain_error("parameters: all entries must be finite");
}

Fim5 fim_closed_form(const ParameterVector& params, const SensingLink& link,
                     const WaveformParams& waveform, const RadioParams& radio) {
  params.validate();
  waveform.validate();
  radio.validate();
  if (!(link.snr >= 0.0) || !std::isfinite(link.snr))
    throw domain_error("fim_closed_form: link SNR must be finite and non-negative");

  const double k = waveform.num_subcarriers;
  const double m = waveform.num_symbols;
  const double nr = radio.num_rx_antennas;
  const double ts = waveform.symbol_duration_s;
  const double df = waveform.subcarrier_spacing_hz;
  const double alpha = params.amplitude;
  const double ct = std::cos(params.doa_rad);

  Fim5 fim;
  fim.gamma = link.snr * nr * k * m;

  Mat<5>& f = fim.m;
  f(0, 0) = 2.0 / (alpha * alpha);
  f(1, 1) = 2.0;
  f(1, 2) = f(2, 1) = 2.0 * kPi * ts * (m - 1.0);
  f(1, 3) = f(3, 1) = -2.0 * kPi * df * (k - 1.0);
  f(2, 2) = 4.0 * (kPi * kPi) * (ts * ts) * (2.0 * m - 1.0) * (m - 1.0) / 3.0;
  f(2, 3) = f(3, 2) = -2.0 * (kPi * kPi) * ts * df * (m - 1.0) * (k - 1.0);
  f(3, 3) = 4.0 * (kPi * kPi) * (df * df) * (2.0 * k - 1.0) * (k - 1.0) / 3.0;
  f(4, 4) = (kPi * kPi) * (nr * nr - 1.0) * (ct * ct) / 6.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) f(i, j) = fim.gamma * f(i, j);
  return fim;
}

Crlbs crlb_closed_form(const SensingLink& link, const WaveformParams& waveform,
                       const RadioParams& radio, const ParameterVector& params) {
  params.validate();
  waveform.validate();
  radio.validate();
  if (!(link.snr > 0.0) || !std::isfinite(link.snr))
    throw domain_error("crlb_closed_form: link SNR must be positive and finite");

  const double k = waveform.num_subcarriers;
  const double m = waveform.num_symbols;
  const double nr = radio.num_rx_antennas;
  const double ts = waveform.symbol_duration_s;
  const double df = waveform.subcarrier_spacing_hz;
  const double snr = link.snr;
  const double alpha = params.amplitude;
  const double ct = std::cos(params.doa_rad);

  Crlbs out;
  out.amplitude = (alpha * alpha) / (2.0 * k * m * nr * snr);
  out.phase = (7.0 * k * m + k + m - 5.0) /
              (2.0 * (k * k + k) * (m * m + m) * nr * snr);
  out.doppler = 3.0 / (2.0 * (kPi * kPi) * (ts * ts) * k * m * (m * m - 1.0) * nr * snr);
  out.delay = 3.0 / (2.0 * (kPi * kPi) * (df * df) * m * k * (k * k - 1.0) * nr * snr);
  out.doa = std::abs(ct) < kEndfireCosLimit
                ? kInf
                : 6.0 / ((kPi * kPi) * k * m * (nr * nr - 1.0) * nr * snr * (ct * ct));
  return out;
}

Efim2 schur_efim(const Fim5& fim) {
  const Mat<5>& f = fim.m;
  Mat<3> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = f(i, j);

  const InverseResult<3> ainv = invert_scaled(a);
  if (ainv.singular) throw numeric_error("schur_efim: nuisance block singular");

  // E = C - B^T A^{-1} B with B the 3x2 block coupling (alpha, phi, f_D) to
  // (tau, theta_R): t(i,k) = sum_l B(l,i) Ainv(l,k), E(i,j) = C(i,j) - sum_k t(i,k) B(k,j).
  double t[2][3];
  for (int i = 0; i < 2; ++i)
    for (int kk = 0; kk < 3; ++kk) {
      double s = 0.0;
      for (int l = 0; l < 3; ++l) s += f(l, 3 + i) * ainv.inverse(l, kk);
      t[i][kk] = s;
    }
  Efim2 e;
  e.basis = EfimBasis::polar;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0.0;
      for (int kk = 0; kk < 3; ++kk) s += t[i][kk] * f(kk, 3 + j);
      e.m(i, j) = f(3 + i, 3 + j) - s;
    }
  return e;
}

Efim2 efim_polar_closed_form(const SensingLink& link, const WaveformParams& waveform,
                             const RadioParams& radio) {
  waveform.validate();
  radio.validate();
  if (!(link.snr >= 0.0) || !std::isfinite(link.snr))
    throw domain_error("efim_polar_closed_form: link SNR must be finite and non-negative");

  const double k = waveform.num_subcarriers;
  const double m = waveform.num_symbols;
  const double nr = radio.num_rx_antennas;
  const double df = waveform.subcarrier_spacing_hz;
  const double gamma = link.snr * nr * k * m;
  const double ct = std::cos(link.local_doa_rad);

  Efim2 e;
  e.basis = EfimBasis::polar;
  e.m(0, 0) = gamma * (2.0 * (kPi * kPi) * (df * df) * (k * k - 1.0) / 3.0);
  e.m(1, 1) = gamma * ((kPi * kPi) * (nr * nr - 1.0) * (ct * ct) / 6.0);
  return e;
}

InverseResult<5> invert_information(const Fim5& fim) { return invert_scaled(fim.m); }

}  // namespace peb
