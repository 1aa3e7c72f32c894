#pragma once

#include <cstdint>
#include <vector>

#include "maxiset/report.hpp"
#include "maxiset/spectrum.hpp"

namespace maxiset {

/// Solved minimax test design.
///
/// κ_j² = κ_n² for j ≤ k_n and 2sP0 j^{-2s-1} beyond (direct problem); for
/// the inverse problem κ_j² = a λ_j^{-2} for j ≤ k_n and 2sP0 λ_j² j^{-1-2s}
/// beyond. Index j runs over 1..J.
struct Design {
  double s = 1.0;
  double P0 = 1.0;
  double rho = 0.0;
  std::int64_t n = 1;
  double sigma = 1.0;

  std::int64_t k = 1;
  double k_real = 1.0;         // root of the continuous equation
  double kappa2_plateau = 0.0; // κ_n² (direct) or a_n (inverse)
  std::vector<double> kappa2;  // κ_j², j = 1..J
  std::vector<double> lambda;  // λ_j for the inverse problem, else empty

  double A_n = 0.0;       // σ⁻⁴ n² Σ κ_j⁴
  double C_n = 0.0;       // σ⁻² n ρ
  double null_mean = 0.0; // σ⁻² n Σ κ_j², the exact null mean of the statistic
  double centering = 0.0; // C_n for direct designs, null_mean for inverse ones

  double residual_i2 = 0.0;  // relative residual of the breakpoint equation
  double residual_i3 = 0.0;  // relative residual of the norm equation

  bool inverse() const { return !lambda.empty(); }
  std::size_t J() const { return kappa2.size(); }
};

/// Default truncation max(20k, 1024).
std::size_t default_truncation(std::int64_t k);

/// Solves (1/2s) k^{1+2s} κ² = P0 and k κ² + k^{-2s} P0 = ρ: bisection for the
/// real root of (2s+1) P0 k^{-2s} = ρ, rounding to the nearest integer, and κ²
/// from the first equation. J = 0 selects the default truncation. Throws
/// InfeasibleDesign when the root is outside [1, J].
Design solve_design(double s, double P0, double rho, std::int64_t n, double sigma,
                    std::size_t J = 0, double tol = 1e-12);

/// Inverse problem y_j = λ_j θ_j + σ n^{-1/2} ξ_j. Inner step: a(k) from
/// a λ_k^{-4} = 2sP0 k^{-1-2s}; outer step: integer bisection on k for
/// a(k) Σ_{j≤k} λ_j^{-4} + P0 k^{-2s} = ρ. `lambda` must cover j = 1..J.
Design solve_inverse_design(double s, double P0, double rho, std::int64_t n,
                            double sigma, const std::vector<double>& lambda,
                            std::size_t J = 0, double tol = 1e-12);

/// T = σ⁻⁴ n² Σ κ_j² y_j², whose null mean is σ⁻² n Σ κ_j² and null variance
/// 2A_n.
double minimax_statistic(const SequenceObservation& obs, const Design& design);

/// Rejects when (T − centering)(2A_n)^{-1/2} > x_α.
TestReport minimax_test(const SequenceObservation& obs, const Design& design,
                        double alpha);

/// σ⁻⁴ n² Σ κ_j² |λ_j θ_j|² (2A_n)^{-1/2}.
double minimax_drift(const Spectrum& theta, const Design& design);

/// Φ(x_α − drift(θ) − (C_n − null_mean)(2A_n)^{-1/2}).
double predicted_type2_minimax(const Spectrum& theta, const Design& design,
                               double alpha);

/// Φ(x_α − (A_n/2)^{1/2}).
double predicted_type2_least_favorable(const Design& design, double alpha);

/// θ*_j = κ_j (direct) or κ_j / λ_j (inverse), cosine basis.
Spectrum least_favorable(const Design& design);

/// Multiplies θ by λ componentwise.
Spectrum apply_operator(const Spectrum& theta, const std::vector<double>& lambda);

struct PriorDraw {
  Spectrum eta;
  double norm2 = 0.0;
  double seminorm = 0.0;
  bool norm_ok = false;
  bool ball_ok = false;
  bool member() const { return norm_ok && ball_ok; }
};

/// The δ-perturbed design: P0 → P0(1 − δ), ρ → ρ(1 + δ), same n, σ, J.
Design perturbed_design(const Design& design, double delta);

/// η_j ~ N(0, κ_j²(δ)) for j ≤ k(δ)/δ and η_j = 0 beyond; membership in
/// V_n = {‖η‖² ≥ ρ, seminorm ≤ P0}.
PriorDraw sample_bayes_prior(const Design& design, double delta, std::uint64_t seed);

}  // namespace maxiset
