#include "maxiset/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "maxiset/error.hpp"
#include "maxiset/rng.hpp"

namespace maxiset {

namespace {

void check_model_params(std::int64_t n, double sigma) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidInput("sigma must be > 0");
  }
}

double haar_value(std::int64_t j, double x) {
  int level = 0;
  while ((std::int64_t{2} << level) <= j) ++level;
  const std::int64_t m = j - (std::int64_t{1} << level);
  const double scale = std::ldexp(1.0, level);
  const double u = scale * x - static_cast<double>(m);
  if (u < 0.0 || u >= 1.0) return 0.0;
  const double amp = std::sqrt(scale);
  return u < 0.5 ? amp : -amp;
}

// f on a whole grid; rotations avoid one trig call per (x, j) pair.
std::vector<double> evaluate_grid(const Spectrum& theta,
                                  const std::vector<double>& xs) {
  std::vector<double> out(xs.size(), 0.0);
  const std::size_t len = theta.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    double acc = 0.0;
    switch (theta.basis()) {
      case Basis::cosine: {
        const std::complex<double> step = std::polar(1.0, std::numbers::pi * x);
        std::complex<double> z = step;
        for (std::size_t p = 0; p < len; ++p) {
          acc += theta[p].real() * z.real();
          z *= step;
          if ((p & 63) == 63) z = std::polar(1.0, std::numbers::pi * x * (p + 2));
        }
        acc *= std::numbers::sqrt2;
        break;
      }
      case Basis::complex_exponential: {
        const std::complex<double> step =
            std::polar(1.0, 2.0 * std::numbers::pi * x);
        std::complex<double> z = step;
        acc = len > 0 ? theta[0].real() : 0.0;
        for (std::size_t p = 1; p < len; ++p) {
          acc += 2.0 * (theta[p] * z).real();
          z *= step;
          if ((p & 63) == 63) {
            z = std::polar(1.0, 2.0 * std::numbers::pi * x * (p + 1));
          }
        }
        break;
      }
      case Basis::haar:
        for (std::size_t p = 0; p < len; ++p) {
          if (theta[p].real() != 0.0) {
            acc += theta[p].real() *
                   haar_value(static_cast<std::int64_t>(p) + 1, x);
          }
        }
        break;
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

SequenceObservation sample_sequence_model(const Spectrum& theta, std::int64_t n,
                                          double sigma, std::uint64_t seed) {
  check_model_params(n, sigma);
  NormalSource normal(seed);
  const double noise = sigma / std::sqrt(static_cast<double>(n));
  std::vector<Spectrum::value_type> y(theta.values().begin(),
                                      theta.values().end());
  if (theta.basis() == Basis::complex_exponential) {
    const double half = noise * std::numbers::sqrt2 / 2.0;
    for (std::size_t p = 0; p < y.size(); ++p) {
      if (p == 0) {
        y[p] += noise * normal();
      } else {
        const double re = normal();
        const double im = normal();
        y[p] += std::complex<double>(half * re, half * im);
      }
    }
  } else {
    for (auto& v : y) v += noise * normal();
  }
  return {Spectrum(theta.basis(), std::move(y)), n, sigma};
}

double evaluate(const Spectrum& theta, double x) {
  return evaluate_grid(theta, {x})[0];
}

DensityTable density_from_spectrum(const Spectrum& theta, std::size_t grid_size) {
  if (grid_size < 64) throw InvalidInput("density grid must have >= 64 points");
  DensityTable t;
  t.x.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    t.x[i] = static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  t.value = evaluate_grid(theta, t.x);
  for (auto& v : t.value) v += 1.0;
  t.min_value = *std::min_element(t.value.begin(), t.value.end());
  t.negative = t.min_value < 0.0;
  return t;
}

DensitySampler::DensitySampler(const Spectrum& theta, std::size_t grid_size) {
  uniform_ = std::all_of(theta.values().begin(), theta.values().end(),
                         [](const auto& v) { return v == Spectrum::value_type{}; });
  table_ = density_from_spectrum(theta, grid_size);
  if (table_.negative) {
    throw InvalidInput("density 1+f is negative on the grid (min " +
                       std::to_string(table_.min_value) + ")");
  }
  if (uniform_) return;
  const std::size_t g = table_.x.size();
  cdf_.assign(g, 0.0);
  for (std::size_t i = 1; i < g; ++i) {
    const double dx = table_.x[i] - table_.x[i - 1];
    cdf_[i] = cdf_[i - 1] + 0.5 * dx * (table_.value[i] + table_.value[i - 1]);
  }
  const double total = cdf_.back();
  if (!(total > 0.0)) throw InvalidInput("density integrates to zero");
  for (auto& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

double DensitySampler::invert(double u) const {
  if (uniform_) return u;
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return std::nextafter(1.0, 0.0);
  const std::size_t i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  const double frac = (u - cdf_[i]) / (cdf_[i + 1] - cdf_[i]);
  const double x = table_.x[i] + frac * (table_.x[i + 1] - table_.x[i]);
  return std::min(x, std::nextafter(1.0, 0.0));
}

Sample DensitySampler::sample(std::int64_t n, std::uint64_t seed) const {
  if (n < 1) throw InvalidInput("n must be >= 1");
  Xoshiro256 engine(seed);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& v : xs) v = invert(engine.uniform());
  return Sample(std::move(xs));
}

Sample sample_iid_from_density(const Spectrum& theta, std::int64_t n,
                               std::uint64_t seed, std::size_t grid_size) {
  return DensitySampler(theta, grid_size).sample(n, seed);
}

Sample sample_uniform(std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  Xoshiro256 engine(seed);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& v : xs) v = engine.uniform();
  return Sample(std::move(xs));
}

}  // namespace maxiset
