#include "maxiset/cvm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "maxiset/error.hpp"
#include "maxiset/quadrature.hpp"
#include "maxiset/rng.hpp"
#include "maxiset/sampling.hpp"

namespace maxiset {

namespace {

constexpr int kGridSteps = 999;  // p = 0.001 .. 0.999

void require_cosine(const Spectrum& theta) {
  if (theta.basis() != Basis::cosine) {
    throw InvalidInput("Cramer-von Mises functionals expect the cosine basis");
  }
}

}  // namespace

double cvm_statistic(const Sample& sample) {
  const std::size_t n = sample.size();
  if (n == 0) throw InvalidInput("cvm_statistic: empty sample");
  std::vector<double> u(sample.observations().begin(), sample.observations().end());
  std::sort(u.begin(), u.end());
  const double nn = static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = u[i] - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * nn);
    acc += d * d;
  }
  return (acc + 1.0 / (12.0 * nn)) / nn;
}

double cvm_population(const Spectrum& theta) {
  require_cosine(theta);
  double acc = 0.0;
  for (std::size_t p = 0; p < theta.size(); ++p) {
    const double j = static_cast<double>(p + 1);
    acc += std::norm(theta[p]) / (std::numbers::pi * std::numbers::pi * j * j);
  }
  return acc;
}

double cvm_population_kernel_form(const Spectrum& theta, int points) {
  require_cosine(theta);
  const GaussRule outer = gauss_legendre(points, 0.0, 1.0);
  const GaussRule unit = gauss_legendre(points, 0.0, 1.0);
  double acc = 0.0;
  for (std::size_t a = 0; a < outer.nodes.size(); ++a) {
    const double t = outer.nodes[a];
    // The kernel has a kink on the diagonal; split the inner integral there.
    double inner = 0.0;
    for (std::size_t b = 0; b < unit.nodes.size(); ++b) {
      const double s_lo = t * unit.nodes[b];
      const double s_hi = t + (1.0 - t) * unit.nodes[b];
      inner += t * unit.weights[b] * (s_lo - s_lo * t) * evaluate(theta, s_lo);
      inner += (1.0 - t) * unit.weights[b] * (t - s_hi * t) * evaluate(theta, s_hi);
    }
    acc += outer.weights[a] * inner * evaluate(theta, t);
  }
  return acc;
}

double CvmCalibration::quantile(double p) const {
  if (probabilities.empty()) throw InvalidInput("empty CvM calibration");
  if (p < probabilities.front() || p > probabilities.back()) {
    throw InvalidInput("CvM calibration does not cover p = " + std::to_string(p));
  }
  const auto it = std::lower_bound(probabilities.begin(), probabilities.end(), p);
  const std::size_t i = static_cast<std::size_t>(it - probabilities.begin());
  if (i == 0 || probabilities[i] == p) return quantiles[i];
  const double f = (p - probabilities[i - 1]) / (probabilities[i] - probabilities[i - 1]);
  return quantiles[i - 1] + f * (quantiles[i] - quantiles[i - 1]);
}

CvmCalibration calibrate_cvm(std::int64_t n, std::int64_t reps, std::uint64_t seed,
                             int threads) {
  if (n < 1) throw InvalidInput("calibrate_cvm: n must be >= 1");
  if (reps < 1000) throw InvalidInput("calibrate_cvm: need at least 1000 replications");
  threads = std::max(1, threads);
  std::vector<double> values(static_cast<std::size_t>(reps));
  const auto work = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      const Sample s = sample_uniform(n, derive_seed(seed, static_cast<std::uint64_t>(i)));
      values[static_cast<std::size_t>(i)] = static_cast<double>(n) * cvm_statistic(s);
    }
  };
  if (threads == 1) {
    work(0, reps);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(work, reps * t / threads, reps * (t + 1) / threads);
    }
    for (auto& th : pool) th.join();
  }
  std::sort(values.begin(), values.end());

  CvmCalibration cal{n, reps, seed, {}, {}};
  cal.probabilities.resize(kGridSteps);
  cal.quantiles.resize(kGridSteps);
  for (int i = 0; i < kGridSteps; ++i) {
    const double p = (i + 1) / 1000.0;
    // Type-7 empirical quantile (linear interpolation of order statistics).
    const double h = (static_cast<double>(reps) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    cal.probabilities[i] = p;
    cal.quantiles[i] = values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
  }
  return cal;
}

namespace {

std::string cache_key(std::int64_t n, std::int64_t reps, std::uint64_t seed) {
  return std::to_string(n) + ":" + std::to_string(reps) + ":" + std::to_string(seed);
}

nlohmann::json read_cache(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read CvM calibration cache " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure("corrupt CvM calibration cache " + path.string() + ": " + e.what());
  }
}

}  // namespace

CvmCalibrationCache::CvmCalibrationCache(std::filesystem::path path)
    : path_(std::move(path)) {}

std::optional<CvmCalibration> CvmCalibrationCache::find(std::int64_t n,
                                                        std::int64_t reps,
                                                        std::uint64_t seed) const {
  const auto doc = read_cache(path_);
  const auto key = cache_key(n, reps, seed);
  if (!doc.contains(key)) return std::nullopt;
  const auto& e = doc.at(key);
  CvmCalibration cal{n, reps, seed,
                     e.at("probabilities").get<std::vector<double>>(),
                     e.at("quantiles").get<std::vector<double>>()};
  return cal;
}

CvmCalibration CvmCalibrationCache::get_or_compute(std::int64_t n, std::int64_t reps,
                                                   std::uint64_t seed, int threads) {
  if (auto hit = find(n, reps, seed)) return *hit;
  CvmCalibration cal = calibrate_cvm(n, reps, seed, threads);
  auto doc = read_cache(path_);
  doc[cache_key(n, reps, seed)] = {{"n", n},
                                   {"reps", reps},
                                   {"seed", seed},
                                   {"probabilities", cal.probabilities},
                                   {"quantiles", cal.quantiles}};
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoFailure("cannot write CvM calibration cache " + tmp);
    out << doc.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path_);
  return cal;
}

TestReport cvm_test(const Sample& sample, double alpha,
                    const CvmCalibration& calibration) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  if (calibration.n != static_cast<std::int64_t>(sample.size())) {
    throw InvalidInput("CvM calibration built for n = " + std::to_string(calibration.n) +
                       ", sample has n = " + std::to_string(sample.size()));
  }
  TestReport r;
  r.family = "cvm";
  r.alpha = alpha;
  r.statistic = static_cast<double>(sample.size()) * cvm_statistic(sample);
  r.threshold = calibration.quantile(1.0 - alpha);
  r.standardized = r.statistic;
  r.reject = r.statistic > r.threshold;
  return r;
}

ConsistencyMargin consistency_margin(const Spectrum& theta, std::int64_t n,
                                     double delta, std::size_t grid_size) {
  ConsistencyMargin m;
  m.margin = static_cast<double>(n) * cvm_population(theta);
  m.min_density = density_from_spectrum(theta, grid_size).min_value;
  m.b1_ok = m.min_density > delta;
  return m;
}

}  // namespace maxiset
