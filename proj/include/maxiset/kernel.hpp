#pragma once

#include <functional>
#include <string>
#include <vector>

#include "maxiset/report.hpp"
#include "maxiset/spectrum.hpp"

namespace maxiset {

/// Symmetric kernel supported on [−1, 1] and integrating to one.
class Kernel {
 public:
  /// Wraps an evaluation function. Throws InvalidInput when ∫K differs from 1
  /// by more than 1e-8 or K is not symmetric on the quadrature grid.
  Kernel(std::string name, std::function<double(double)> fn);

  static Kernel box();           // ½ on [−1, 1]
  static Kernel triangle();      // 1 − |t|
  static Kernel epanechnikov();  // ¾ (1 − t²)
  static Kernel by_name(const std::string& name);
  /// Linear interpolation through (t, K(t)) pairs covering [0, 1]; the
  /// kernel is mirrored to [−1, 0].
  static Kernel from_table(std::vector<double> t, std::vector<double> k);

  double operator()(double t) const;
  const std::string& name() const { return name_; }

  /// K̂(ω) = ∫ K(t) cos(2π ω t) dt by composite Simpson quadrature with at least
  /// `points` intervals, refined with |ω| so each period gets ≥ 32 intervals.
  double transform(double omega, int points = 2048) const;

 private:
  std::string name_;
  std::function<double(double)> fn_;
};

struct KernelConstants {
  double norm2 = 0.0;   // ‖K‖² = ∫K²
  double kappa2 = 0.0;  // 2 ∫ (K∗K)²
};

/// Both constants by nested composite Simpson quadrature with `points`
/// intervals per axis.
KernelConstants kernel_constants(const Kernel& K, int points = 2048);

/// |K̂(jh)|² for j = 0..J together with the kernel constants; built once and
/// read-only afterwards.
class KernelTransformTable {
 public:
  KernelTransformTable(const Kernel& K, double h, std::size_t J,
                       int points = 2048);

  double h() const { return h_; }
  std::size_t max_frequency() const { return weights_.size() - 1; }
  /// |K̂(jh)|².
  double weight(std::size_t j) const { return weights_[j]; }
  const KernelConstants& constants() const { return constants_; }
  const std::string& kernel_name() const { return kernel_name_; }

 private:
  std::string kernel_name_;
  double h_;
  std::vector<double> weights_;
  KernelConstants constants_;
};

/// Σ_j |K̂(jh)|² |v_j|² over all j ∈ Z covered by the spectrum.
double smoothed_energy(const Spectrum& v, const KernelTransformTable& table);

/// T_n = n h^{1/2} σ⁻² κ⁻¹ (‖f̂_h‖² − σ² (nh)⁻¹ ‖K‖²).
double kernel_statistic(const SequenceObservation& obs,
                        const KernelTransformTable& table);
double kernel_statistic(const SequenceObservation& obs, const Kernel& K, double h);

/// T₁ₙ(θ) = Σ_j |K̂(jh) θ_j|².
double bias_functional_T1n(const Spectrum& theta, const KernelTransformTable& table);
double bias_functional_T1n(const Spectrum& theta, const Kernel& K, double h);

/// κ⁻¹ σ⁻² n h^{1/2} T₁ₙ(θ).
double kernel_drift(const Spectrum& theta, const KernelTransformTable& table,
                    std::int64_t n, double sigma);

/// Rejects when T_n > x_α.
TestReport kernel_test(const SequenceObservation& obs,
                       const KernelTransformTable& table, double alpha);

double predicted_type2_kernel(const Spectrum& theta,
                              const KernelTransformTable& table, std::int64_t n,
                              double sigma, double alpha);

/// Largest b ≤ `limit` such that K̂ has no zero on [0, b), located on a grid
/// of spacing `step`. Diagnostic only.
double transform_nonzero_radius(const Kernel& K, double limit = 50.0,
                                double step = 1e-3);

}  // namespace maxiset
