#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxiset/report.hpp"
#include "maxiset/spectrum.hpp"

namespace maxiset {

/// Weights κ²_j (j = 1..J) of the quadratic statistic Σ κ²_j y_j², together
/// with the model parameters they were built for.
class QuadraticCoefficients {
 public:
  /// Validates κ² ≥ 0, finite, not all zero. When `effective_bandwidth` is
  /// given it overrides the half-mass definition of k_n (used for sequences
  /// that are exactly zero beyond some l_n, where k_n = l_n).
  QuadraticCoefficients(std::vector<double> kappa2, std::int64_t n, double sigma,
                        std::optional<std::int64_t> effective_bandwidth = {});

  const std::vector<double>& kappa2() const { return kappa2_; }
  std::int64_t n() const { return n_; }
  double sigma() const { return sigma_; }
  std::size_t size() const { return kappa2_.size(); }

  /// σ⁻⁴ n² Σ κ⁴.
  double A_n() const { return A_n_; }
  /// sup{k : Σ_{j<k} κ² ≤ ½ Σ κ²}.
  std::int64_t k_n() const { return k_n_; }
  double sum_kappa2() const { return sum_k2_; }
  double sum_kappa4() const { return sum_k4_; }

 private:
  std::vector<double> kappa2_;
  std::int64_t n_;
  double sigma_;
  double A_n_ = 0.0;
  double sum_k2_ = 0.0;
  double sum_k4_ = 0.0;
  std::int64_t k_n_ = 1;
};

/// κ²_j = n^{-1/(2γ)} · n⁻¹ j^{-γ} / (j^{-γ} + n⁻¹), j = 1..J.
QuadraticCoefficients example_coefficients(std::int64_t n, double gamma,
                                           std::size_t J, double sigma = 1.0);

/// κ²_j = value for j ≤ l and 0 beyond, with k_n = l.
QuadraticCoefficients truncated_coefficients(std::int64_t n, std::int64_t l,
                                             double value, std::size_t J,
                                             double sigma = 1.0);

struct RegularityTolerances {
  double a3_max_deviation = 0.05;
  double a4_upper = 0.999;  // ratio must also be > 0
  double a5_min_fraction = 0.9;
};

/// Finite-n surrogates of the asymptotic regularity assumptions.
struct RegularityReport {
  bool a1_monotone = false;
  double A_n = 0.0;
  std::int64_t k_n = 0;
  std::int64_t window_lo = 0;  // exclusive bounds of δk_n < j < k_n/δ
  std::int64_t window_hi = 0;
  double a3_max_deviation = 0.0;
  double a4_ratio = 0.0;  // κ²_{(1+δ)k_n} / κ²_{(1−δ₁)k_n}
  double a5_kappa2_fraction = 0.0;
  double a5_kappa4_fraction = 0.0;
  bool a3_ok = false;
  bool a4_ok = false;
  bool a5_ok = false;
};

RegularityReport check_regularity(const QuadraticCoefficients& coeffs,
                                  double delta, double delta1 = 0.0,
                                  const RegularityTolerances& tol = {});

/// T_n = Σ κ²_j y_j² − σ² n⁻¹ Σ κ²_j. Requires y (real basis) to have the
/// same length as the coefficients.
double quadratic_statistic(const SequenceObservation& obs,
                           const QuadraticCoefficients& coeffs);

/// Exact null standard deviation of T_n: √(2Σκ⁴)·σ²/n.
double quadratic_null_sd(const QuadraticCoefficients& coeffs);

/// Rejects when T_n / sd₀ > x_α.
TestReport quadratic_test(const SequenceObservation& obs,
                          const QuadraticCoefficients& coeffs, double alpha);

/// A_n(θ) = n² σ⁻⁴ Σ κ²_j θ_j² over the indices both sequences cover.
double quadratic_noncentrality(const Spectrum& theta,
                               const QuadraticCoefficients& coeffs);

/// A_n(θ) (2A_n)^{-1/2}, the standardized mean shift.
double quadratic_drift(const Spectrum& theta, const QuadraticCoefficients& coeffs);

/// β = Φ(x_α − A_n(θ)(2A_n)^{-1/2}).
double predicted_type2(const Spectrum& theta, const QuadraticCoefficients& coeffs,
                       double alpha);

}  // namespace maxiset
