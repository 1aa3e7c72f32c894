#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "maxiset/spectrum.hpp"

namespace maxiset {

/// y_j = θ_j + (σ/√n) ξ_j. Complex-exponential noise is circular with unit
/// total variance (real and imaginary parts each have variance ½); ξ_0 is real.
SequenceObservation sample_sequence_model(const Spectrum& theta, std::int64_t n,
                                          double sigma, std::uint64_t seed);

/// f(x) = Σ_j θ_j φ_j(x) in the spectrum's basis.
double evaluate(const Spectrum& theta, double x);

struct DensityTable {
  std::vector<double> x;      // uniform grid on [0, 1], endpoints included
  std::vector<double> value;  // 1 + f(x)
  double min_value = 1.0;
  bool negative = false;  // true when the table cannot be used for sampling
};

/// Tabulates 1 + f on `grid_size` equally spaced points. Requires
/// grid_size ≥ 64.
DensityTable density_from_spectrum(const Spectrum& theta,
                                   std::size_t grid_size = 4096);

/// Inverse-CDF sampler over the piecewise-linear CDF obtained by integrating
/// the tabulated density with the trapezoid rule.
class DensitySampler {
 public:
  explicit DensitySampler(const Spectrum& theta, std::size_t grid_size = 4096);

  /// Maps a uniform u ∈ [0, 1) to a draw in [0, 1).
  double invert(double u) const;
  Sample sample(std::int64_t n, std::uint64_t seed) const;

  const DensityTable& table() const { return table_; }
  bool is_uniform() const { return uniform_; }

 private:
  DensityTable table_;
  std::vector<double> cdf_;
  bool uniform_ = false;
};

Sample sample_iid_from_density(const Spectrum& theta, std::int64_t n,
                               std::uint64_t seed,
                               std::size_t grid_size = 4096);

/// n i.i.d. uniforms on [0, 1), the null model.
Sample sample_uniform(std::int64_t n, std::uint64_t seed);

}  // namespace maxiset
