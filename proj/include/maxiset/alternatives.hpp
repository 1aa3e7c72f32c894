#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "maxiset/spectrum.hpp"

namespace maxiset {

enum class Family { quadratic, kernel, chisq, cvm, minimax };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// Signal concentrated on the block j = m..2m with equal real entries, scaled
/// so that m^{2s}·‖θ‖² = C. The result has length max(J, 2m) in `basis`.
Spectrum make_tail_alternative(std::int64_t m, double C, double s,
                               Basis basis = Basis::cosine, std::size_t J = 0);

struct CalibrationRates {
  double r = 0.0;
  /// Exponent e of the tuning scale n^e (cell count or inverse bandwidth for
  /// χ² and kernel tests, effective bandwidth k_n for quadratic statistics).
  double tuning_exponent = 0.0;
  bool has_tuning = true;
};

/// Detection rate and tuning exponent for a test family at smoothness s.
CalibrationRates calibration_rates(double s, Family family);

}  // namespace maxiset
