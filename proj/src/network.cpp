#include "peb/network.hpp"

#include <cmath>
#include <limits>

namespace peb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void Scenario::validate() const {
  waveform.validate();
  radio.validate();
  if (stations.empty()) throw domain_error("scenario: at least one station required");
  for (const BaseStation& bs : stations) bs.validate();
  for (std::size_t i = 0; i < stations.size(); ++i)
    for (std::size_t j = i + 1; j < stations.size(); ++j)
      if (stations[i].x_m == stations[j].x_m && stations[i].y_m == stations[j].y_m)
        throw domain_error("scenario: stations must have distinct positions");
  if (!(rcs_m2 > 0.0)) throw domain_error("scenario: radar cross-section must be positive");
  if (!(r_min_m > 0.0)) throw domain_error("scenario: near-field radius must be positive");
  if (radio.avg_subcarrier_power_w != radio.total_tx_power_w / waveform.num_subcarriers)
    throw domain_error("scenario: per-subcarrier power must equal total power / num_subcarriers");
}

const char* to_string(StationStatus s) {
  switch (s) {
    case StationStatus::contributing: return "contributing";
    case StationStatus::near_field: return "near_field";
    case StationStatus::out_of_fov: return "out_of_fov";
  }
  return "unknown";
}

PebResult fuse_efim(const Scenario& scenario, double x_m, double y_m) {
  PebResult result;
  result.stations.reserve(scenario.stations.size());
  Mat<2> total;

  const Target target{x_m, y_m, scenario.rcs_m2};
  for (const BaseStation& bs : scenario.stations) {
    const LocalCoords local = global_to_local(x_m, y_m, bs);
    StationReport rep;
    rep.range_m = local.range_m;
    rep.local_doa_rad = local.doa_rad;
    rep.snr = 0.0;
    rep.snr_db = -kInf;
    if (local.range_m < scenario.r_min_m) {
      rep.status = StationStatus::near_field;
    } else if (std::abs(local.doa_rad) > bs.fov_limit_rad) {
      rep.status = StationStatus::out_of_fov;
    } else {
      rep.status = StationStatus::contributing;
      const SensingLink link =
          link_snr(target, bs, scenario.waveform, scenario.radio, scenario.r_min_m);
      const Efim2 elocal = efim_position_closed_form(link, scenario.waveform, scenario.radio,
                                                     local, scenario.r_min_m);
      const Mat<2> j = jacobian_rotation(bs.rotation_rad);
      rep.contribution = j.transposed() * elocal.m * j;
      rep.snr = link.snr;
      rep.snr_db = 10.0 * std::log10(link.snr);
      total = total + rep.contribution;
      ++result.n_contributing;
    }
    result.stations.push_back(rep);
  }

  result.efim = Efim2{total, EfimBasis::cartesian};
  if (result.n_contributing == 0) {
    result.no_information = true;
    result.peb_m = kInf;
  } else {
    result.peb_m = peb_from_efim(result.efim);
  }
  return result;
}

double peb_from_efim(const Efim2& efim) {
  if (efim.basis != EfimBasis::cartesian)
    throw domain_error("peb_from_efim: expects a Cartesian position EFIM");
  const Mat<2>& e = efim.m;
  const double scale = e.max_abs();
  if (std::abs(e(0, 1) - e(1, 0)) > 1e-9 * std::max(scale, 1.0))
    throw domain_error("peb_from_efim: EFIM must be symmetric");

  const double a = e(0, 0);
  const double d = e(1, 1);
  const double b = 0.5 * (e(0, 1) + e(1, 0));
  const double mean = 0.5 * (a + d);
  const double disc = std::hypot(0.5 * (a - d), b);
  const double ev_lo = mean - disc;
  const double ev_hi = mean + disc;
  if (!(ev_lo > 0.0) || !(ev_hi / ev_lo < kConditionLimit)) return kInf;

  const double det = a * d - e(0, 1) * e(1, 0);
  return std::sqrt((a + d) / det);
}

}  // namespace peb
