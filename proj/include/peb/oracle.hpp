#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "peb/fisher.hpp"

namespace peb {

/// Inputs of the noiseless mean signal μ[k,m] = β(k,m)·g·b(θ_R) with
/// β = α·e^{iφ}·e^{i2πmT_s·f_D}·e^{−i2πkΔf·τ}. `g` is the effective receive
/// amplitude chosen so α²g²/σ̃² reproduces the link SNR (g ≥ 0; g = 0 models
/// a dead link and yields a zero FIM).
struct MeanSignalSpec {
  ParameterVector params;
  WaveformParams waveform;
  double g = 1.0;
  int n_rx = 0;

  void validate() const;
};

/// μ[k,m] across the receive array. Throws domain_error on an out-of-range
/// subcarrier or symbol index.
std::vector<std::complex<double>> mean_signal(const MeanSignalSpec& spec, int k, int m);

/// Central-difference step sizes, one per parameter.
struct FdSteps {
  double amplitude = 0.0;
  double phase = 0.0;
  double doppler = 0.0;
  double delay = 0.0;
  double doa = 0.0;

  /// Scale-aware defaults: 1e−6 relative for α, 1e−6 rad for φ and θ_R,
  /// 1e−4/(M·T_s) for f_D, 1e−4/(K·Δf) for τ — keeps the induced phase
  /// increments well below a radian.
  static FdSteps defaults(const MeanSignalSpec& spec);

  FdSteps scaled(double factor) const;
  void validate() const;
};

/// Independent Fisher information from the Gaussian-mean identity
/// I_ij = (2/σ̃²)·Re Σ_{k,m} (∂μ/∂θ_i)ᴴ(∂μ/∂θ_j), derivatives by central
/// differences of mean_signal only — no closed-form knowledge. The fixed
/// (k, m, antenna) summation order keeps results bitwise reproducible.
/// Throws numeric_error if a perturbed evaluation is non-finite.
Fim5 fim_numeric(const MeanSignalSpec& spec, double noise_var_w, const FdSteps& steps);

/// Same matrix divided by Γ, validating the bracketed structure independent
/// of the link budget.
Fim5 normalized(const Fim5& fim);

/// Entrywise comparison report. Entry indices are 1-based in the
/// (α, φ, f_D, τ, θ_R) ordering.
struct CompareReport {
  double max_rel_error = 0.0;
  int row = 1;
  int col = 1;

  bool pass(double tolerance) const { return max_rel_error < tolerance; }
};

/// Entrywise relative error with Cauchy–Schwarz-scaled denominators:
/// denom_ij = max(|a_ij|, |b_ij|, λ·s_i·s_j) with s_i = √(max diag_i) and
/// λ = 1e−5. For a PSD information matrix |F_ij| ≤ √(F_ii·F_jj), so λ·s_i·s_j
/// is the natural floor: it keeps every structurally nonzero entry sensitive
/// (all have |correlation| ≥ 0.5) while absorbing the finite-difference
/// rounding noise that structurally zero entries accumulate at that scale.
CompareReport compare_fim(const Fim5& closed, const Fim5& numeric);

/// One randomized single-station estimation problem used for cross-validation.
struct OracleDraw {
  WaveformParams waveform;
  int n_rx = 0;
  ParameterVector params;
};

struct OracleRunPoint {
  OracleDraw draw;
  CompareReport report;
};

struct OracleRunResult {
  std::vector<OracleRunPoint> points;
  int worst_index = -1;
  double worst_rel = 0.0;

  bool pass(double tolerance) const { return worst_rel < tolerance; }
};

/// Deterministic randomized cross-validation: n_draws independent problems
/// with K ∈ [2,64], M ∈ [2,32], N_R ∈ [2,16], θ_R ∈ (−80°,80°), randomized
/// numerology, amplitude, phase, Doppler and delay, each comparing the
/// closed-form FIM against the finite-difference oracle. The sampling order
/// is fixed, so the same seed reproduces the identical report.
OracleRunResult run_oracle_draws(int n_draws, std::uint64_t seed);

}  // namespace peb
