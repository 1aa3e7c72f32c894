#include "maxiset/chisq.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "maxiset/error.hpp"
#include "maxiset/normal.hpp"

namespace maxiset {

namespace {

constexpr double kPi = std::numbers::pi;

void check_cells(int k) {
  if (k < 2) throw InvalidInput("chi-squared test needs k >= 2 cells");
}

}  // namespace

std::vector<std::int64_t> cell_counts(const Sample& sample, int k) {
  check_cells(k);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  for (double x : sample.observations()) {
    auto cell = static_cast<std::size_t>(x * k);
    if (cell >= counts.size()) cell = counts.size() - 1;
    ++counts[cell];
  }
  return counts;
}

double chisq_statistic(const Sample& sample, int k) {
  if (sample.size() == 0) throw InvalidInput("chi-squared statistic: empty sample");
  const auto counts = cell_counts(sample, k);
  const double n = static_cast<double>(sample.size());
  double acc = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) / n - 1.0 / k;
    acc += d * d;
  }
  return k * n * acc;
}

TestReport chisq_test(const Sample& sample, int k, double alpha) {
  TestReport r;
  r.family = "chisq";
  r.alpha = alpha;
  r.threshold = critical_value(alpha);
  r.statistic = chisq_statistic(sample, k);
  r.centering = k - 1.0;
  r.scale = std::sqrt(2.0 * k);
  r.standardized = (r.statistic - r.centering) / r.scale;
  r.reject = r.standardized > r.threshold;
  return r;
}

double cell_energy_direct(const Spectrum& theta, int k) {
  check_cells(k);
  double acc = 0.0;
  for (int l = 0; l < k; ++l) {
    const double a = static_cast<double>(l) / k;
    const double b = static_cast<double>(l + 1) / k;
    double cell = 0.0;
    switch (theta.basis()) {
      case Basis::cosine:
        for (std::size_t p = 0; p < theta.size(); ++p) {
          const double w = kPi * static_cast<double>(p + 1);
          cell += theta[p].real() * std::numbers::sqrt2 *
                  (std::sin(w * b) - std::sin(w * a)) / w;
        }
        break;
      case Basis::complex_exponential:
        cell = theta.size() ? theta[0].real() / k : 0.0;
        for (std::size_t p = 1; p < theta.size(); ++p) {
          const double w = 2.0 * kPi * static_cast<double>(p);
          const std::complex<double> seg =
              (std::polar(1.0, w * b) - std::polar(1.0, w * a)) /
              std::complex<double>(0.0, w);
          cell += 2.0 * (theta[p] * seg).real();
        }
        break;
      case Basis::haar:
        throw InvalidInput("cell integrals are not implemented for the Haar basis");
    }
    acc += cell * cell;
  }
  return acc;
}

double cell_energy_J1(const Spectrum& theta, int k) {
  check_cells(k);
  if (theta.basis() != Basis::complex_exponential) {
    throw InvalidInput("J1 sum expects the complex-exponential basis");
  }
  const auto J = static_cast<std::int64_t>(theta.max_frequency());
  const std::int64_t M = J / k + 1;
  std::complex<double> acc = 0.0;
  for (std::int64_t j = -J; j <= J; ++j) {
    if (j == 0) continue;
    const auto tj = theta.at_frequency(j);
    if (tj == 0.0) continue;
    const double weight = 2.0 - 2.0 * std::cos(2.0 * kPi * j / k);
    for (std::int64_t m = -2 * M; m <= 2 * M; ++m) {
      const std::int64_t j1 = j - m * k;
      if (j1 == 0 || j1 < -J || j1 > J) continue;
      acc += tj * std::conj(theta.at_frequency(j1)) * weight /
             (4.0 * kPi * kPi * static_cast<double>(j) * static_cast<double>(j1));
    }
  }
  // θ_0 adds the constant θ_0/k to every cell.
  const double t0 = theta.size() ? theta[0].real() : 0.0;
  return k * acc.real() + t0 * t0 / k;
}

double cell_energy_J2(const Spectrum& theta, int k) {
  check_cells(k);
  if (theta.basis() != Basis::complex_exponential) {
    throw InvalidInput("J2 sum expects the complex-exponential basis");
  }
  const auto J = static_cast<std::int64_t>(theta.max_frequency());
  std::complex<double> acc = 0.0;
  for (std::int64_t j = -J; j <= J; ++j) {
    if (j == 0) continue;
    const auto tj = theta.at_frequency(j);
    const auto ej = std::polar(1.0, 2.0 * kPi * j / k) - 1.0;
    for (std::int64_t j1 = -J; j1 <= J; ++j1) {
      if (j1 == 0 || (j - j1) % k == 0) continue;
      std::complex<double> cells = 0.0;
      for (int l = 0; l < k; ++l) {
        cells += std::polar(1.0, 2.0 * kPi * static_cast<double>(j - j1) * l / k);
      }
      const auto ej1 = std::polar(1.0, -2.0 * kPi * j1 / k) - 1.0;
      acc += tj * std::conj(theta.at_frequency(j1)) /
             (4.0 * kPi * kPi * static_cast<double>(j) * static_cast<double>(j1)) *
             cells * ej * ej1;
    }
  }
  return std::abs(acc);
}

double population_chisq_functional(const Spectrum& theta, int k, std::int64_t n) {
  return static_cast<double>(n) * k * cell_energy_direct(theta, k);
}

double haar_statistic(const Sample& sample, int l) {
  if (l < 1 || l > 30) throw InvalidInput("haar statistic: level count must be in [1, 30]");
  if (sample.size() == 0) throw InvalidInput("haar statistic: empty sample");
  const double n = static_cast<double>(sample.size());
  double acc = 0.0;
  for (int i = 0; i < l; ++i) {
    const std::int64_t width = std::int64_t{1} << i;
    const double amp = std::sqrt(static_cast<double>(width));
    std::vector<double> beta(static_cast<std::size_t>(width), 0.0);
    for (double x : sample.observations()) {
      const double u = x * static_cast<double>(width);
      auto m = static_cast<std::int64_t>(u);
      if (m >= width) m = width - 1;
      const double frac = u - static_cast<double>(m);
      beta[static_cast<std::size_t>(m)] += frac < 0.5 ? amp : -amp;
    }
    for (double b : beta) acc += (b / n) * (b / n);
  }
  return n * acc;
}

ChisqPrediction predicted_type2_chisq(const Spectrum& theta, int k,
                                      std::int64_t n, double alpha) {
  ChisqPrediction p;
  const double T = population_chisq_functional(theta, k, n);
  const double rk = std::sqrt(static_cast<double>(k));
  p.drift = T / (std::numbers::sqrt2 * rk);
  p.beta = norm_cdf(critical_value(alpha) - p.drift);
  p.outside_window = T < 0.1 * rk || T > 10.0 * rk;
  return p;
}

}  // namespace maxiset
