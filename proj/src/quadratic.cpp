#include "maxiset/quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "maxiset/error.hpp"
#include "maxiset/normal.hpp"

namespace maxiset {

QuadraticCoefficients::QuadraticCoefficients(
    std::vector<double> kappa2, std::int64_t n, double sigma,
    std::optional<std::int64_t> effective_bandwidth)
    : kappa2_(std::move(kappa2)), n_(n), sigma_(sigma) {
  if (kappa2_.empty()) throw InvalidInput("quadratic coefficients: empty");
  if (n_ < 1) throw InvalidInput("quadratic coefficients: n must be >= 1");
  if (!(sigma_ > 0.0)) throw InvalidInput("quadratic coefficients: sigma must be > 0");
  for (double k : kappa2_) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
      throw InvalidInput("quadratic coefficients must be finite and >= 0");
    }
    sum_k2_ += k;
    sum_k4_ += k * k;
  }
  if (!(sum_k4_ > 0.0)) throw InvalidInput("quadratic coefficients all zero");

  const double nn = static_cast<double>(n_);
  A_n_ = nn * nn * sum_k4_ / std::pow(sigma_, 4);

  if (effective_bandwidth) {
    k_n_ = *effective_bandwidth;
  } else {
    const double half = 0.5 * sum_k2_;
    double prefix = 0.0;  // Σ_{j<k}
    k_n_ = 1;
    for (std::size_t k = 1; k <= kappa2_.size(); ++k) {
      if (prefix <= half) k_n_ = static_cast<std::int64_t>(k);
      prefix += kappa2_[k - 1];
    }
  }
}

QuadraticCoefficients example_coefficients(std::int64_t n, double gamma,
                                           std::size_t J, double sigma) {
  if (!(gamma > 0.0)) throw InvalidInput("example coefficients: gamma must be > 0");
  if (n < 2) throw InvalidInput("example coefficients: n must be >= 2");
  if (J < 1) throw InvalidInput("example coefficients: J must be >= 1");
  const double inv_n = 1.0 / static_cast<double>(n);
  const double front = std::pow(static_cast<double>(n), -1.0 / (2.0 * gamma));
  std::vector<double> k2(J);
  for (std::size_t j = 1; j <= J; ++j) {
    const double p = std::pow(static_cast<double>(j), -gamma);
    k2[j - 1] = front * inv_n * p / (p + inv_n);
  }
  return QuadraticCoefficients(std::move(k2), n, sigma);
}

QuadraticCoefficients truncated_coefficients(std::int64_t n, std::int64_t l,
                                             double value, std::size_t J,
                                             double sigma) {
  if (l < 1 || static_cast<std::size_t>(l) > J) {
    throw InvalidInput("truncated coefficients: need 1 <= l <= J");
  }
  if (!(value > 0.0)) throw InvalidInput("truncated coefficients: value must be > 0");
  std::vector<double> k2(J, 0.0);
  std::fill(k2.begin(), k2.begin() + l, value);
  return QuadraticCoefficients(std::move(k2), n, sigma, l);
}

RegularityReport check_regularity(const QuadraticCoefficients& coeffs,
                                  double delta, double delta1,
                                  const RegularityTolerances& tol) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInput("check_regularity: delta must lie in (0, 1)");
  }
  const auto& k2 = coeffs.kappa2();
  const auto J = static_cast<std::int64_t>(k2.size());
  const auto at = [&](std::int64_t j) {
    return k2[static_cast<std::size_t>(std::clamp<std::int64_t>(j, 1, J) - 1)];
  };

  RegularityReport r;
  r.A_n = coeffs.A_n();
  r.k_n = coeffs.k_n();
  r.a1_monotone = true;
  for (std::size_t j = 1; j < k2.size(); ++j) {
    if (k2[j] > k2[j - 1]) r.a1_monotone = false;
  }

  // Sequences that vanish beyond l_n use the window δk_n < j < (1−δ)k_n.
  const bool truncated = k2.back() == 0.0;
  const double kn = static_cast<double>(r.k_n);
  r.window_lo = static_cast<std::int64_t>(std::floor(delta * kn));
  r.window_hi = truncated ? static_cast<std::int64_t>(std::ceil((1.0 - delta) * kn))
                          : static_cast<std::int64_t>(std::ceil(kn / delta));

  double dev = 0.0;
  double mass2 = 0.0, mass4 = 0.0;
  for (std::int64_t j = r.window_lo + 1; j < r.window_hi && j <= J; ++j) {
    const double v = at(j);
    mass2 += v;
    mass4 += v * v;
    if (j + 1 <= J && j + 1 < r.window_hi) {
      dev = std::max(dev, v > 0.0 ? std::abs(at(j + 1) / v - 1.0) : 1.0);
    }
  }
  r.a3_max_deviation = dev;
  r.a5_kappa2_fraction = mass2 / coeffs.sum_kappa2();
  r.a5_kappa4_fraction = mass4 / coeffs.sum_kappa4();

  if (truncated) {
    const double den = at(std::max<std::int64_t>(1, r.k_n / 2));
    r.a4_ratio = at(static_cast<std::int64_t>(std::llround((1.0 - delta) * kn))) / den;
    r.a4_ok = r.a4_ratio > 0.0;
  } else {
    const double num = at(static_cast<std::int64_t>(std::llround((1.0 + delta) * kn)));
    const double den = at(std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::llround((1.0 - delta1) * kn))));
    r.a4_ratio = den > 0.0 ? num / den : 0.0;
    r.a4_ok = r.a4_ratio > 0.0 && r.a4_ratio < tol.a4_upper;
  }
  r.a3_ok = r.a3_max_deviation <= tol.a3_max_deviation;
  r.a5_ok = r.a5_kappa2_fraction >= tol.a5_min_fraction &&
            r.a5_kappa4_fraction >= tol.a5_min_fraction;
  return r;
}

namespace {

void check_observation(const SequenceObservation& obs,
                       const QuadraticCoefficients& coeffs) {
  if (obs.y.basis() == Basis::complex_exponential) {
    throw InvalidInput("quadratic statistic expects a real basis");
  }
  if (obs.y.size() != coeffs.size()) {
    throw InvalidInput("quadratic statistic: observation length " +
                       std::to_string(obs.y.size()) + " != coefficient length " +
                       std::to_string(coeffs.size()));
  }
}

}  // namespace

double quadratic_statistic(const SequenceObservation& obs,
                           const QuadraticCoefficients& coeffs) {
  check_observation(obs, coeffs);
  const auto& k2 = coeffs.kappa2();
  double acc = 0.0;
  for (std::size_t p = 0; p < k2.size(); ++p) {
    const double y = obs.y[p].real();
    acc += k2[p] * y * y;
  }
  const double s2 = coeffs.sigma() * coeffs.sigma();
  return acc - s2 / static_cast<double>(coeffs.n()) * coeffs.sum_kappa2();
}

double quadratic_null_sd(const QuadraticCoefficients& coeffs) {
  const double s2 = coeffs.sigma() * coeffs.sigma();
  return std::sqrt(2.0 * coeffs.sum_kappa4()) * s2 /
         static_cast<double>(coeffs.n());
}

TestReport quadratic_test(const SequenceObservation& obs,
                          const QuadraticCoefficients& coeffs, double alpha) {
  TestReport r;
  r.family = "quadratic";
  r.alpha = alpha;
  r.threshold = critical_value(alpha);
  r.statistic = quadratic_statistic(obs, coeffs);
  r.centering = 0.0;
  r.scale = quadratic_null_sd(coeffs);
  r.standardized = r.statistic / r.scale;
  r.reject = r.standardized > r.threshold;
  return r;
}

double quadratic_noncentrality(const Spectrum& theta,
                               const QuadraticCoefficients& coeffs) {
  if (theta.basis() == Basis::complex_exponential) {
    throw InvalidInput("quadratic noncentrality expects a real basis");
  }
  const auto& k2 = coeffs.kappa2();
  const std::size_t m = std::min(theta.size(), k2.size());
  double acc = 0.0;
  for (std::size_t p = 0; p < m; ++p) acc += k2[p] * std::norm(theta[p]);
  const double nn = static_cast<double>(coeffs.n());
  return nn * nn * acc / std::pow(coeffs.sigma(), 4);
}

double quadratic_drift(const Spectrum& theta, const QuadraticCoefficients& coeffs) {
  return quadratic_noncentrality(theta, coeffs) / std::sqrt(2.0 * coeffs.A_n());
}

double predicted_type2(const Spectrum& theta, const QuadraticCoefficients& coeffs,
                       double alpha) {
  return norm_cdf(critical_value(alpha) - quadratic_drift(theta, coeffs));
}

}  // namespace maxiset
