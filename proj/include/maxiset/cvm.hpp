#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "maxiset/report.hpp"
#include "maxiset/spectrum.hpp"

namespace maxiset {

/// T² = ∫ (F̂_n − F₀)² dF₀ for F₀ uniform, from order statistics:
/// (1/n)·[Σ_i (U_(i) − (2i−1)/(2n))² + 1/(12n)].
double cvm_statistic(const Sample& sample);

/// Σ_j θ_j² / (π² j²) for a cosine-basis spectrum. This is ∫ (F − F₀)² dx.
double cvm_population(const Spectrum& theta);

/// ∫∫ (min{s,t} − st) f(s) f(t) ds dt by tensor Simpson quadrature.
double cvm_population_kernel_form(const Spectrum& theta, int points = 512);

/// Null distribution of n·T² at a fixed n, stored as quantiles on the
/// probability grid p = 0.001, 0.002, …, 0.999.
struct CvmCalibration {
  std::int64_t n = 0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> probabilities;
  std::vector<double> quantiles;

  /// Linear interpolation in p; p must lie within the grid.
  double quantile(double p) const;
};

/// Monte Carlo calibration with replication i seeded by derive_seed(seed, i).
/// The result does not depend on `threads`.
CvmCalibration calibrate_cvm(std::int64_t n, std::int64_t reps, std::uint64_t seed,
                             int threads = 1);

/// JSON file of calibrations keyed by (n, reps, seed).
class CvmCalibrationCache {
 public:
  explicit CvmCalibrationCache(std::filesystem::path path);

  std::optional<CvmCalibration> find(std::int64_t n, std::int64_t reps,
                                     std::uint64_t seed) const;
  /// Returns the cached entry or computes, stores and returns a new one.
  CvmCalibration get_or_compute(std::int64_t n, std::int64_t reps,
                                std::uint64_t seed, int threads = 1);

 private:
  std::filesystem::path path_;
};

/// Rejects when n·T² exceeds the (1 − α) calibration quantile. Throws
/// InvalidInput when the calibration was built for another n.
TestReport cvm_test(const Sample& sample, double alpha,
                    const CvmCalibration& calibration);

struct ConsistencyMargin {
  double margin = 0.0;       // n·T²(F − F₀)
  double min_density = 1.0;  // min over the grid of 1 + f
  bool b1_ok = true;         // min_density > δ
};

ConsistencyMargin consistency_margin(const Spectrum& theta, std::int64_t n,
                                     double delta = 0.5,
                                     std::size_t grid_size = 4096);

}  // namespace maxiset
