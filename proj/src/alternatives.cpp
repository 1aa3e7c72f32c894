#include "maxiset/alternatives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxiset/error.hpp"

namespace maxiset {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::quadratic:
      return "quadratic";
    case Family::kernel:
      return "kernel";
    case Family::chisq:
      return "chisq";
    case Family::cvm:
      return "cvm";
    case Family::minimax:
      return "minimax";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "quadratic") return Family::quadratic;
  if (name == "kernel") return Family::kernel;
  if (name == "chisq" || name == "chi2") return Family::chisq;
  if (name == "cvm") return Family::cvm;
  if (name == "minimax") return Family::minimax;
  throw InvalidInput("unknown test family '" + std::string(name) + "'");
}

Spectrum make_tail_alternative(std::int64_t m, double C, double s, Basis basis,
                               std::size_t J) {
  if (m < 1) throw InvalidInput("make_tail_alternative: m must be >= 1");
  if (!(C > 0.0)) throw InvalidInput("make_tail_alternative: C must be > 0");
  if (!(s > 0.0)) throw InvalidInput("make_tail_alternative: s must be > 0");

  const auto top = static_cast<std::size_t>(2 * m);
  Spectrum theta = Spectrum::zeros(basis, std::max(J, top));
  // Each stored entry counts twice in the complex-exponential energy.
  const double count = static_cast<double>(m + 1) *
                       (basis == Basis::complex_exponential ? 2.0 : 1.0);
  const double value =
      std::sqrt(C / (std::pow(static_cast<double>(m), 2.0 * s) * count));
  for (std::int64_t j = m; j <= 2 * m; ++j) {
    theta[static_cast<std::size_t>(j - theta.first_frequency())] = value;
  }
  return theta;
}

CalibrationRates calibration_rates(double s, Family family) {
  if (!(s > 0.0)) throw InvalidInput("calibration_rates: s must be > 0");
  if (family == Family::cvm) {
    return {s / (2.0 + 2.0 * s), 0.0, false};
  }
  const double r = 2.0 * s / (1.0 + 4.0 * s);
  return {r, 2.0 - 4.0 * r, true};
}

}  // namespace maxiset
