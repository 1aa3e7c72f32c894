#pragma once

#include <cstdint>
#include <vector>

#include "maxiset/report.hpp"
#include "maxiset/spectrum.hpp"

namespace maxiset {

/// Counts per half-open cell [i/k, (i+1)/k).
std::vector<std::int64_t> cell_counts(const Sample& sample, int k);

/// T_n = k n Σ_i (p̂_i − 1/k)².
double chisq_statistic(const Sample& sample, int k);

/// Rejects when 2^{-1/2} k^{-1/2} (T_n − k + 1) > x_α.
TestReport chisq_test(const Sample& sample, int k, double alpha);

/// Σ_l (∫_{l/k}^{(l+1)/k} f)², from closed-form cell integrals of each basis
/// function (cosine or complex-exponential basis).
double cell_energy_direct(const Spectrum& theta, int k);

/// The aliasing sum
///   k Σ_m Σ_{j≠mk} θ_j conj(θ_{j−mk}) (2 − 2cos(2πj/k)) / (4π² j (j−mk))
/// over the stored support. Complex-exponential basis only.
double cell_energy_J1(const Spectrum& theta, int k);

/// The cross-frequency sum over pairs (j, j₁) with j − j₁ not a multiple of k,
/// with the sum over cells evaluated explicitly. Vanishes identically; kept as
/// a numerical check.
double cell_energy_J2(const Spectrum& theta, int k);

/// Population statistic T_n(F) = n k Σ_l (∫_cell f)².
double population_chisq_functional(const Spectrum& theta, int k, std::int64_t n);

/// T_n through empirical Haar coefficients of levels 0..l−1:
/// n Σ_i Σ_m β̂²_{i,m}, which equals chisq_statistic(sample, 2^l).
double haar_statistic(const Sample& sample, int l);

struct ChisqPrediction {
  double beta = 0.0;
  double drift = 0.0;           // 2^{-1/2} k^{-1/2} T_n(F)
  bool outside_window = false;  // T_n(F) ∉ [0.1 k^{1/2}, 10 k^{1/2}]
};

ChisqPrediction predicted_type2_chisq(const Spectrum& theta, int k,
                                      std::int64_t n, double alpha);

}  // namespace maxiset
