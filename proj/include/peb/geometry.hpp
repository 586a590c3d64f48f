#pragma once

#include "peb/fisher.hpp"
#include "peb/linalg.hpp"
#include "peb/model.hpp"

namespace peb {

/// A monostatic station: position and counterclockwise array rotation in the
/// global frame. The local +x axis (boresight) points along `rotation_rad`.
struct BaseStation {
  double x_m = 0.0;
  double y_m = 0.0;
  double rotation_rad = 0.0;          ///< normalized to (−π, π]
  double fov_limit_rad = kPi / 2.0;   ///< contributions outside ±limit are dropped

  void validate() const;
};

/// Target coordinates in one station's frame.
struct LocalCoords {
  double x_m = 0.0;
  double y_m = 0.0;
  double range_m = 0.0;   ///< √(x² + y²)
  double doa_rad = 0.0;   ///< atan2(y, x); boresight is the local +x axis
};

/// Normalize an angle to (−π, π].
double wrap_angle(double angle_rad);

/// Rigid transform into the station frame:
/// x_n = x′cos ϑ + y′sin ϑ, y_n = −x′sin ϑ + y′cos ϑ with (x′,y′) = p − O.
LocalCoords global_to_local(double x_m, double y_m, const BaseStation& bs);

/// Jacobian of (τ, θ) = ((2/c)√(x²+y²), atan2(y,x)) at the local position:
/// [[(2/c)x/r, (2/c)y/r], [−y/r², x/r²]]. Throws domain_error at r = 0.
Mat<2> jacobian_polar(const LocalCoords& local);

/// Frame-rotation Jacobian [[cos ϑ, sin ϑ], [−sin ϑ, cos ϑ]].
Mat<2> jacobian_rotation(double rotation_rad);

/// Cartesian position EFIM in the station frame via the Jacobian product
/// J_mᵀ·E_polar·J_m. This is the cross-validation path; production uses the
/// closed form below. Throws domain_error when range < r_min.
Efim2 efim_position_local(const Efim2& efim_polar, const LocalCoords& local,
                          double r_min_m = kNearFieldRadiusM);

/// Closed-form Cartesian position EFIM in the station frame:
/// ξ·[[a·x²r² + b·y², xy(a·r² − b)], [xy(a·r² − b), a·y²r² + b·x²]]
/// with a = 16Δf²(K²−1), b = c²(N_R²−1)cos²θ, ξ = π²KMN_R·SNR/(6c²r⁴).
Efim2 efim_position_closed_form(const SensingLink& link, const WaveformParams& waveform,
                                const RadioParams& radio, const LocalCoords& local,
                                double r_min_m = kNearFieldRadiusM);

/// Single-station position CRLB [m²]:
/// (6/(π²KMN_R·SNR))·[(c²/16)/(Δf²(K²−1)) + r²/((N_R²−1)cos²θ_R)].
/// Returns +inf at endfire (cos θ_R = 0); PEB is the square root.
double crb_position_single(const SensingLink& link, const WaveformParams& waveform,
                           const RadioParams& radio, const LocalCoords& local);

}  // namespace peb
