#include "maxiset/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxiset/error.hpp"
#include "maxiset/normal.hpp"

namespace maxiset {

namespace {

// Composite Simpson on [a, b] with an even number of intervals.
template <class F>
double simpson(F&& f, double a, double b, int intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  }
  return acc * h / 3.0;
}

}  // namespace

Kernel::Kernel(std::string name, std::function<double(double)> fn)
    : name_(std::move(name)), fn_(std::move(fn)) {
  if (!fn_) throw InvalidInput("kernel: empty evaluation function");
  const double mass = simpson([this](double t) { return (*this)(t); }, -1.0, 1.0, 2048);
  if (std::abs(mass - 1.0) > 1e-8) {
    throw InvalidInput("kernel '" + name_ + "' integrates to " +
                       std::to_string(mass) + ", not 1");
  }
  for (int i = 0; i <= 256; ++i) {
    const double t = i / 256.0;
    const double a = (*this)(t), b = (*this)(-t);
    if (!std::isfinite(a) || std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) {
      throw InvalidInput("kernel '" + name_ + "' is not symmetric and finite");
    }
  }
}

Kernel Kernel::box() {
  return Kernel("box", [](double t) { return std::abs(t) <= 1.0 ? 0.5 : 0.0; });
}

Kernel Kernel::triangle() {
  return Kernel("triangle", [](double t) {
    const double a = std::abs(t);
    return a <= 1.0 ? 1.0 - a : 0.0;
  });
}

Kernel Kernel::epanechnikov() {
  return Kernel("epanechnikov", [](double t) {
    return std::abs(t) <= 1.0 ? 0.75 * (1.0 - t * t) : 0.0;
  });
}

Kernel Kernel::by_name(const std::string& name) {
  if (name == "box") return box();
  if (name == "triangle") return triangle();
  if (name == "epanechnikov") return epanechnikov();
  throw InvalidInput("unknown kernel '" + name + "'");
}

Kernel Kernel::from_table(std::vector<double> t, std::vector<double> k) {
  if (t.size() != k.size() || t.size() < 2) {
    throw InvalidInput("kernel table needs matching columns with >= 2 rows");
  }
  if (!std::is_sorted(t.begin(), t.end()) || t.front() != 0.0 || t.back() != 1.0) {
    throw InvalidInput("kernel table abscissae must increase from 0 to 1");
  }
  return Kernel("table", [t = std::move(t), k = std::move(k)](double x) {
    const double a = std::abs(x);
    if (a > 1.0) return 0.0;
    const auto it = std::upper_bound(t.begin(), t.end(), a);
    if (it == t.end()) return k.back();
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double f = (a - t[i - 1]) / (t[i] - t[i - 1]);
    return k[i - 1] + f * (k[i] - k[i - 1]);
  });
}

double Kernel::operator()(double t) const {
  return std::abs(t) > 1.0 ? 0.0 : fn_(t);
}

double Kernel::transform(double omega, int points) const {
  // K is even, so K̂(ω) = 2 ∫_0^1 K(t) cos(2πωt) dt.
  const int intervals =
      std::max(points / 2, static_cast<int>(std::ceil(256.0 * std::abs(omega))));
  const double w = 2.0 * std::numbers::pi * omega;
  return 2.0 * simpson([&](double t) { return (*this)(t) * std::cos(w * t); },
                       0.0, 1.0, intervals);
}

KernelConstants kernel_constants(const Kernel& K, int points) {
  KernelConstants c;
  c.norm2 = simpson([&](double t) { return K(t) * K(t); }, -1.0, 0.0, points / 2) +
            simpson([&](double t) { return K(t) * K(t); }, 0.0, 1.0, points / 2);
  // (K∗K)(t) integrated over the overlap of the two supports, split where
  // either factor may have a kink (s = 0 and s = t) so every panel is smooth.
  const auto conv = [&](double t) {
    const double lo = std::max(-1.0, t - 1.0);
    const double hi = std::min(1.0, t + 1.0);
    if (hi <= lo) return 0.0;
    const double cuts[4] = {lo, std::clamp(std::min(0.0, t), lo, hi),
                            std::clamp(std::max(0.0, t), lo, hi), hi};
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (cuts[i + 1] > cuts[i]) {
        acc += simpson([&](double s) { return K(t - s) * K(s); }, cuts[i],
                       cuts[i + 1], points / 2);
      }
    }
    return acc;
  };
  const auto conv2 = [&](double t) {
    const double v = conv(t);
    return v * v;
  };
  c.kappa2 = 0.0;
  for (double a : {-2.0, -1.0, 0.0, 1.0}) {
    c.kappa2 += 2.0 * simpson(conv2, a, a + 1.0, points / 4);
  }
  if (!(c.norm2 > 0.0) || !(c.kappa2 > 0.0) || !std::isfinite(c.kappa2)) {
    throw NumericFailure("kernel constants: quadrature produced a non-positive value");
  }
  return c;
}

KernelTransformTable::KernelTransformTable(const Kernel& K, double h,
                                           std::size_t J, int points)
    : kernel_name_(K.name()), h_(h) {
  if (!(h > 0.0 && h < 1.0)) throw InvalidInput("bandwidth h must lie in (0, 1)");
  constants_ = kernel_constants(K, points);
  weights_.resize(J + 1);
  for (std::size_t j = 0; j <= J; ++j) {
    const double v = K.transform(static_cast<double>(j) * h, points);
    weights_[j] = v * v;
  }
}

double smoothed_energy(const Spectrum& v, const KernelTransformTable& table) {
  if (v.basis() != Basis::complex_exponential) {
    throw InvalidInput("kernel statistic expects the complex-exponential basis");
  }
  if (v.max_frequency() > table.max_frequency()) {
    throw InvalidInput("kernel transform table shorter than the spectrum");
  }
  double acc = 0.0;
  for (std::size_t p = 0; p < v.size(); ++p) {
    acc += v.multiplicity(p) * table.weight(p) * std::norm(v[p]);
  }
  return acc;
}

double kernel_statistic(const SequenceObservation& obs,
                        const KernelTransformTable& table) {
  const double energy = smoothed_energy(obs.y, table);
  const double n = static_cast<double>(obs.n);
  const double h = table.h();
  const double s2 = obs.sigma * obs.sigma;
  const auto& c = table.constants();
  return n * std::sqrt(h) / (s2 * std::sqrt(c.kappa2)) *
         (energy - s2 / (n * h) * c.norm2);
}

double kernel_statistic(const SequenceObservation& obs, const Kernel& K, double h) {
  return kernel_statistic(obs, KernelTransformTable(K, h, obs.y.max_frequency()));
}

double bias_functional_T1n(const Spectrum& theta, const KernelTransformTable& table) {
  return smoothed_energy(theta, table);
}

double bias_functional_T1n(const Spectrum& theta, const Kernel& K, double h) {
  return smoothed_energy(theta, KernelTransformTable(K, h, theta.max_frequency()));
}

double kernel_drift(const Spectrum& theta, const KernelTransformTable& table,
                    std::int64_t n, double sigma) {
  const double nn = static_cast<double>(n);
  return nn * std::sqrt(table.h()) /
         (sigma * sigma * std::sqrt(table.constants().kappa2)) *
         bias_functional_T1n(theta, table);
}

TestReport kernel_test(const SequenceObservation& obs,
                       const KernelTransformTable& table, double alpha) {
  TestReport r;
  r.family = "kernel";
  r.alpha = alpha;
  r.threshold = critical_value(alpha);
  r.statistic = kernel_statistic(obs, table);
  r.standardized = r.statistic;
  r.reject = r.statistic > r.threshold;
  return r;
}

double predicted_type2_kernel(const Spectrum& theta,
                              const KernelTransformTable& table, std::int64_t n,
                              double sigma, double alpha) {
  return norm_cdf(critical_value(alpha) - kernel_drift(theta, table, n, sigma));
}

double transform_nonzero_radius(const Kernel& K, double limit, double step) {
  double prev = K.transform(0.0);
  for (double w = step; w <= limit; w += step) {
    const double v = K.transform(w);
    if (v == 0.0 || (v > 0.0) != (prev > 0.0)) return w - step;
    prev = v;
  }
  return limit;
}

}  // namespace maxiset
