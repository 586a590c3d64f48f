#include "peb/geometry.hpp"

#include <cmath>
#include <limits>

namespace peb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void BaseStation::validate() const {
  if (!std::isfinite(x_m) || !std::isfinite(y_m))
    throw domain_error("station: position must be finite");
  if (!(rotation_rad > -kPi && rotation_rad <= kPi))
    throw domain_error("station: rotation must lie in (-pi, pi]");
  if (!(fov_limit_rad > 0.0 && fov_limit_rad <= kPi))
    throw domain_error("station: field-of-view limit must lie in (0, pi]");
}

double wrap_angle(double angle_rad) {
  if (!std::isfinite(angle_rad)) throw domain_error("wrap_angle: angle must be finite");
  double w = std::remainder(angle_rad, 2.0 * kPi);  // lands in [-pi, pi]
  if (w <= -kPi) w = kPi;
  return w;
}

LocalCoords global_to_local(double x_m, double y_m, const BaseStation& bs) {
  const double xp = x_m - bs.x_m;
  const double yp = y_m - bs.y_m;
  const double cr = std::cos(bs.rotation_rad);
  const double sr = std::sin(bs.rotation_rad);
  LocalCoords lc;
  lc.x_m = xp * cr + yp * sr;
  lc.y_m = -xp * sr + yp * cr;
  lc.range_m = std::hypot(lc.x_m, lc.y_m);
  lc.doa_rad = std::atan2(lc.y_m, lc.x_m);
  return lc;
}

Mat<2> jacobian_polar(const LocalCoords& local) {
  const double r = local.range_m;
  if (!(r > 0.0)) throw domain_error("jacobian_polar: singular at zero range");
  Mat<2> j;
  j(0, 0) = (2.0 / kSpeedOfLight) * local.x_m / r;
  j(0, 1) = (2.0 / kSpeedOfLight) * local.y_m / r;
  j(1, 0) = -local.y_m / (r * r);
  j(1, 1) = local.x_m / (r * r);
  return j;
}

Mat<2> jacobian_rotation(double rotation_rad) {
  const double c = std::cos(rotation_rad);
  const double s = std::sin(rotation_rad);
  Mat<2> j;
  j(0, 0) = c;
  j(0, 1) = s;
  j(1, 0) = -s;
  j(1, 1) = c;
  return j;
}

Efim2 efim_position_local(const Efim2& efim_polar, const LocalCoords& local,
                          double r_min_m) {
  if (efim_polar.basis != EfimBasis::polar)
    throw domain_error("efim_position_local: expects a polar-basis EFIM");
  if (local.range_m < r_min_m)
    throw domain_error("efim_position_local: near-field guard violated");
  const Mat<2> j = jacobian_polar(local);
  Mat<2> m = j.transposed() * efim_polar.m * j;
  const double off = 0.5 * (m(0, 1) + m(1, 0));
  m(0, 1) = m(1, 0) = off;
  return Efim2{m, EfimBasis::cartesian};
}

Efim2 efim_position_closed_form(const SensingLink& link, const WaveformParams& waveform,
                                const RadioParams& radio, const LocalCoords& local,
                                double r_min_m) {
  if (local.range_m < r_min_m)
    throw domain_error("efim_position_closed_form: near-field guard violated");
  if (!(link.snr >= 0.0) || !std::isfinite(link.snr))
    throw domain_error("efim_position_closed_form: link SNR must be finite and non-negative");

  const double k = waveform.num_subcarriers;
  const double m = waveform.num_symbols;
  const double nr = radio.num_rx_antennas;
  const double df = waveform.subcarrier_spacing_hz;
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double xl = local.x_m;
  const double yl = local.y_m;
  const double rr = local.range_m;
  const double r2 = rr * rr;
  const double ct = std::cos(local.doa_rad);

  const double a = 16.0 * (df * df) * (k * k - 1.0);
  const double b = c2 * (nr * nr - 1.0) * (ct * ct);
  const double xi = (kPi * kPi) * k * m * nr * link.snr / (6.0 * c2 * (r2 * r2));

  Efim2 e;
  e.basis = EfimBasis::cartesian;
  e.m(0, 0) = xi * (a * (xl * xl) * r2 + b * (yl * yl));
  e.m(0, 1) = e.m(1, 0) = xi * (xl * yl * (a * r2 - b));
  e.m(1, 1) = xi * (a * (yl * yl) * r2 + b * (xl * xl));
  return e;
}

double crb_position_single(const SensingLink& link, const WaveformParams& waveform,
                           const RadioParams& radio, const LocalCoords& local) {
  if (!(link.snr > 0.0) || !std::isfinite(link.snr))
    throw domain_error("crb_position_single: link SNR must be positive and finite");
  if (!(local.range_m > 0.0))
    throw domain_error("crb_position_single: target coincides with base station");

  const double k = waveform.num_subcarriers;
  const double m = waveform.num_symbols;
  const double nr = radio.num_rx_antennas;
  const double df = waveform.subcarrier_spacing_hz;
  const double ct = std::cos(local.doa_rad);
  if (std::abs(ct) < kEndfireCosLimit) return kInf;

  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double r = local.range_m;
  return (6.0 / ((kPi * kPi) * k * m * nr * link.snr)) *
         ((c2 / 16.0) / ((df * df) * (k * k - 1.0)) +
          (r * r) / ((nr * nr - 1.0) * (ct * ct)));
}

}  // namespace peb
