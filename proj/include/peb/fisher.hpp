#pragma once

#include "peb/linalg.hpp"
#include "peb/model.hpp"

namespace peb {

/// Unknowns of the single-station estimation problem, in the fixed ordering
/// (α, φ, f_D, τ, θ_R) used by every 5×5 matrix in this library.
struct ParameterVector {
  double amplitude = 1.0;   ///< α > 0
  double phase_rad = 0.0;   ///< φ
  double doppler_hz = 0.0;  ///< f_D
  double delay_s = 0.0;     ///< τ ≥ 0
  double doa_rad = 0.0;     ///< θ_R

  void validate() const;
};

/// 5×5 Fisher information over (α, φ, f_D, τ, θ_R). The common scale
/// Γ = SNR·N_R·K·M is kept alongside so callers can renormalize.
struct Fim5 {
  Mat<5> m;
  double gamma = 0.0;
};

enum class EfimBasis { polar, cartesian };

/// 2×2 equivalent FIM, either over (τ, θ_R) or over (x, y).
struct Efim2 {
  Mat<2> m;
  EfimBasis basis = EfimBasis::polar;
};

/// Closed-form per-parameter CRLBs; doa may be +inf at endfire.
struct Crlbs {
  double amplitude = 0.0;
  double phase = 0.0;     ///< rad²
  double doppler = 0.0;   ///< Hz²
  double delay = 0.0;     ///< s²
  double doa = 0.0;       ///< rad²
};

/// Closed-form FIM: Γ times the bracketed matrix, with exact zeros on the
/// α and θ_R off-diagonals. Requires link.snr ≥ 0 (zero SNR yields the
/// all-zero no-information matrix).
Fim5 fim_closed_form(const ParameterVector& params, const SensingLink& link,
                     const WaveformParams& waveform, const RadioParams& radio);

/// The five closed-form CRLBs. CRB(θ_R) is +inf when cos θ_R = 0.
Crlbs crlb_closed_form(const SensingLink& link, const WaveformParams& waveform,
                       const RadioParams& radio, const ParameterVector& params);

/// Schur complement C − BᵀA⁻¹B eliminating the (α, φ, f_D) nuisance block;
/// returns the polar-basis EFIM over (τ, θ_R).
/// Throws numeric_error when the nuisance block is singular.
Efim2 schur_efim(const Fim5& fim);

/// The closed diagonal EFIM over (τ, θ_R):
/// diag(Γ·2π²Δf²(K²−1)/3, Γ·π²(N_R²−1)cos²θ_R/6).
Efim2 efim_polar_closed_form(const SensingLink& link, const WaveformParams& waveform,
                             const RadioParams& radio);

/// Inverse of the 5×5 information matrix with symmetric diagonal scaling.
/// The parameters carry incommensurate units (the raw diagonal spans ~20
/// decades at realistic numerologies), so the inversion is done on the
/// correlation-scaled matrix and unscaled afterwards; the reported condition
/// number is the scaled one, which reflects actual information overlap.
InverseResult<5> invert_information(const Fim5& fim);

}  // namespace peb
