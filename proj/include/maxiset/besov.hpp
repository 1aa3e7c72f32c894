#pragma once

#include <cstdint>

#include "maxiset/spectrum.hpp"

namespace maxiset {

/// Ball of the Besov body: sup_λ λ^{2s} Σ_{|j|>λ} θ_j² ≤ P0.
struct BesovBall {
  double s = 1.0;
  double P0 = 1.0;
  Basis basis = Basis::cosine;

  /// Throws InvalidInput unless s > 0 and P0 > 0.
  void validate() const;
};

struct SeminormResult {
  double value = 0.0;       // squared seminorm
  std::int64_t argmax = 1;  // achieving k
};

/// max_{1≤k≤J} k^{2s}·tail(k) with tail(k) = Σ_{|j|≥k} |θ_j|².
///
/// The supremum over real λ is attained as λ increases to an integer k, so the
/// maximum over integers is exact.
SeminormResult besov_seminorm(const Spectrum& theta, double s);

/// Membership with a relative slack: seminorm ≤ P0·(1 + rel_tol).
bool in_ball(const Spectrum& theta, const BesovBall& ball, double rel_tol = 0.0);

struct ProjectionResult {
  Spectrum eta;
  int sweeps = 0;
  double last_change = 0.0;
  /// First k whose tail constraint θ violates (0 when θ is already inside).
  std::int64_t first_violated = 0;
};

/// Metric projection onto the ball by cyclic Dykstra iterations over the nested
/// tail constraints Σ_{|j|≥k} |η_j|² ≤ P0·k^{-2s}.
///
/// Each single-constraint projection is a rescaling of the tail, so every
/// iterate is a componentwise nonnegative multiple of θ and the algorithm runs
/// on those multipliers. Stops when successive sweeps differ by less than `tol`
/// in ℓ2; throws NumericFailure after `max_sweeps`.
ProjectionResult project_besov_detailed(const Spectrum& theta,
                                        const BesovBall& ball,
                                        double tol = 1e-13,
                                        int max_sweeps = 2'000'000);

Spectrum project_besov(const Spectrum& theta, const BesovBall& ball,
                       double tol = 1e-13, int max_sweeps = 2'000'000);

}  // namespace maxiset
