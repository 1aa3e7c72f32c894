#include "maxiset/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxiset/besov.hpp"
#include "maxiset/error.hpp"
#include "maxiset/normal.hpp"
#include "maxiset/rng.hpp"

namespace maxiset {

namespace {

void check_design_inputs(double s, double P0, double rho, std::int64_t n,
                         double sigma) {
  if (!(s > 0.0)) throw InvalidInput("design: s must be > 0");
  if (!(P0 > 0.0)) throw InvalidInput("design: P0 must be > 0");
  if (!(rho > 0.0)) throw InvalidInput("design: rho must be > 0");
  if (n < 1) throw InvalidInput("design: n must be >= 1");
  if (!(sigma > 0.0)) throw InvalidInput("design: sigma must be > 0");
}

void finish(Design& d) {
  const double nn = static_cast<double>(d.n);
  const double s2 = d.sigma * d.sigma;
  double sum2 = 0.0, sum4 = 0.0;
  for (double v : d.kappa2) {
    sum2 += v;
    sum4 += v * v;
  }
  d.A_n = nn * nn * sum4 / (s2 * s2);
  d.C_n = nn * d.rho / s2;
  d.null_mean = nn * sum2 / s2;
  d.centering = d.inverse() ? d.null_mean : d.C_n;
}

double powd(std::int64_t k, double e) { return std::pow(static_cast<double>(k), e); }

}  // namespace

std::size_t default_truncation(std::int64_t k) {
  return static_cast<std::size_t>(std::max<std::int64_t>(20 * k, 1024));
}

Design solve_design(double s, double P0, double rho, std::int64_t n, double sigma,
                    std::size_t J, double tol) {
  check_design_inputs(s, P0, rho, n, sigma);
  if (!(tol > 0.0)) throw InvalidInput("design: tol must be > 0");

  // g(k) = (2s+1) P0 k^{-2s} − ρ is strictly decreasing in k.
  const auto g = [&](double k) { return (2.0 * s + 1.0) * P0 * std::pow(k, -2.0 * s) - rho; };
  const double upper = J ? static_cast<double>(J) : 1e12;
  if (g(1.0) < 0.0) {
    throw InfeasibleDesign("design: rho too large, the breakpoint k would be below 1");
  }
  if (g(upper) > 0.0) {
    throw InfeasibleDesign("design: rho too small, the breakpoint k exceeds J = " +
                           std::to_string(upper));
  }
  double lo = 1.0, hi = upper;
  for (int it = 0; it < 400 && (hi - lo) > tol * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }

  Design d;
  d.s = s;
  d.P0 = P0;
  d.rho = rho;
  d.n = n;
  d.sigma = sigma;
  d.k_real = 0.5 * (lo + hi);
  d.k = std::max<std::int64_t>(1, std::llround(d.k_real));
  const std::size_t trunc = J ? J : default_truncation(d.k);
  if (static_cast<std::size_t>(d.k) > trunc) {
    throw InfeasibleDesign("design: rounded breakpoint exceeds J");
  }
  d.kappa2_plateau = 2.0 * s * P0 * powd(d.k, -1.0 - 2.0 * s);
  d.kappa2.resize(trunc);
  for (std::size_t j = 1; j <= trunc; ++j) {
    const auto jj = static_cast<std::int64_t>(j);
    d.kappa2[j - 1] = jj <= d.k ? d.kappa2_plateau
                                : 2.0 * s * P0 * powd(jj, -2.0 * s - 1.0);
  }
  d.residual_i2 =
      std::abs(powd(d.k, 1.0 + 2.0 * s) * d.kappa2_plateau / (2.0 * s) - P0) / P0;
  d.residual_i3 =
      std::abs(d.k * d.kappa2_plateau + powd(d.k, -2.0 * s) * P0 - rho) / rho;
  finish(d);
  return d;
}

Design solve_inverse_design(double s, double P0, double rho, std::int64_t n,
                            double sigma, const std::vector<double>& lambda,
                            std::size_t J, double tol) {
  check_design_inputs(s, P0, rho, n, sigma);
  if (!(tol > 0.0)) throw InvalidInput("design: tol must be > 0");
  if (lambda.empty()) throw InvalidInput("inverse design: empty eigenvalue sequence");
  if (J == 0) J = lambda.size();
  if (J > lambda.size()) {
    throw InvalidInput("inverse design: eigenvalues cover only " +
                       std::to_string(lambda.size()) + " of J = " + std::to_string(J));
  }
  for (std::size_t j = 0; j < J; ++j) {
    if (lambda[j] == 0.0 || !std::isfinite(lambda[j])) {
      throw InvalidInput("inverse design: eigenvalues must be finite and nonzero");
    }
  }

  std::vector<double> cum_inv4(J + 1, 0.0);  // Σ_{j≤k} λ_j^{-4}
  for (std::size_t j = 1; j <= J; ++j) {
    cum_inv4[j] = cum_inv4[j - 1] + std::pow(lambda[j - 1], -4.0);
  }
  const auto a_of = [&](std::int64_t k) {
    return 2.0 * s * P0 * powd(k, -1.0 - 2.0 * s) *
           std::pow(lambda[static_cast<std::size_t>(k - 1)], 4.0);
  };
  const auto g = [&](std::int64_t k) {
    return a_of(k) * cum_inv4[static_cast<std::size_t>(k)] + P0 * powd(k, -2.0 * s) - rho;
  };

  const auto Jk = static_cast<std::int64_t>(J);
  if (g(1) < 0.0) throw InfeasibleDesign("inverse design: rho too large (k < 1)");
  if (g(Jk) > 0.0) throw InfeasibleDesign("inverse design: breakpoint exceeds J");
  std::int64_t lo = 1, hi = Jk;  // g(lo) ≥ 0 ≥ g(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (g(mid) >= 0.0 ? lo : hi) = mid;
  }

  Design d;
  d.s = s;
  d.P0 = P0;
  d.rho = rho;
  d.n = n;
  d.sigma = sigma;
  d.k = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
  // Linear interpolation of g between the bracketing integers.
  const double glo = g(lo), ghi = g(hi);
  d.k_real = ghi == glo ? static_cast<double>(lo)
                        : static_cast<double>(lo) + glo / (glo - ghi);
  d.kappa2_plateau = a_of(d.k);
  d.lambda.assign(lambda.begin(), lambda.begin() + static_cast<std::ptrdiff_t>(J));
  d.kappa2.resize(J);
  for (std::size_t j = 1; j <= J; ++j) {
    const double l2 = lambda[j - 1] * lambda[j - 1];
    const auto jj = static_cast<std::int64_t>(j);
    d.kappa2[j - 1] = jj <= d.k ? d.kappa2_plateau / l2
                                : 2.0 * s * P0 * l2 * powd(jj, -1.0 - 2.0 * s);
  }
  const double lk4 = std::pow(lambda[static_cast<std::size_t>(d.k - 1)], -4.0);
  const double target2 = 2.0 * s * P0 * powd(d.k, -1.0 - 2.0 * s);
  d.residual_i2 = std::abs(d.kappa2_plateau * lk4 - target2) / target2;
  d.residual_i3 = std::abs(g(d.k)) / rho;
  (void)tol;
  finish(d);
  return d;
}

double minimax_statistic(const SequenceObservation& obs, const Design& design) {
  if (obs.y.basis() == Basis::complex_exponential) {
    throw InvalidInput("minimax statistic expects a real basis");
  }
  if (obs.y.size() != design.J()) {
    throw InvalidInput("minimax statistic: observation length " +
                       std::to_string(obs.y.size()) + " != J = " +
                       std::to_string(design.J()));
  }
  double acc = 0.0;
  for (std::size_t p = 0; p < design.J(); ++p) {
    acc += design.kappa2[p] * std::norm(obs.y[p]);
  }
  const double nn = static_cast<double>(obs.n);
  return nn * nn * acc / std::pow(obs.sigma, 4);
}

TestReport minimax_test(const SequenceObservation& obs, const Design& design,
                        double alpha) {
  TestReport r;
  r.family = "minimax";
  r.alpha = alpha;
  r.threshold = critical_value(alpha);
  r.statistic = minimax_statistic(obs, design);
  r.centering = design.centering;
  r.scale = std::sqrt(2.0 * design.A_n);
  r.standardized = (r.statistic - r.centering) / r.scale;
  r.reject = r.standardized > r.threshold;
  r.predicted_type2 = predicted_type2_least_favorable(design, alpha);
  return r;
}

double minimax_drift(const Spectrum& theta, const Design& design) {
  if (theta.basis() == Basis::complex_exponential) {
    throw InvalidInput("minimax drift expects a real basis");
  }
  const std::size_t m = std::min(theta.size(), design.J());
  double acc = 0.0;
  for (std::size_t p = 0; p < m; ++p) {
    const double l = design.inverse() ? design.lambda[p] : 1.0;
    acc += design.kappa2[p] * l * l * std::norm(theta[p]);
  }
  const double nn = static_cast<double>(design.n);
  return nn * nn * acc / std::pow(design.sigma, 4) / std::sqrt(2.0 * design.A_n);
}

double predicted_type2_minimax(const Spectrum& theta, const Design& design,
                               double alpha) {
  const double offset = (design.centering - design.null_mean) / std::sqrt(2.0 * design.A_n);
  return norm_cdf(critical_value(alpha) - minimax_drift(theta, design) + offset);
}

double predicted_type2_least_favorable(const Design& design, double alpha) {
  return norm_cdf(critical_value(alpha) - std::sqrt(design.A_n / 2.0));
}

Spectrum least_favorable(const Design& design) {
  std::vector<double> theta(design.J());
  for (std::size_t p = 0; p < design.J(); ++p) {
    theta[p] = std::sqrt(design.kappa2[p]);
    if (design.inverse()) theta[p] /= std::abs(design.lambda[p]);
  }
  return Spectrum::from_real(Basis::cosine, std::move(theta));
}

Spectrum apply_operator(const Spectrum& theta, const std::vector<double>& lambda) {
  if (lambda.size() < theta.size()) {
    throw InvalidInput("apply_operator: eigenvalue sequence shorter than the spectrum");
  }
  Spectrum out = theta;
  for (std::size_t p = 0; p < out.size(); ++p) out[p] *= lambda[p];
  return out;
}

Design perturbed_design(const Design& design, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidInput("prior perturbation delta must lie in [0, 1)");
  }
  const double P0 = design.P0 * (1.0 - delta);
  const double rho = design.rho * (1.0 + delta);
  if (design.inverse()) {
    return solve_inverse_design(design.s, P0, rho, design.n, design.sigma,
                                design.lambda, design.J());
  }
  return solve_design(design.s, P0, rho, design.n, design.sigma, design.J());
}

PriorDraw sample_bayes_prior(const Design& design, double delta, std::uint64_t seed) {
  const Design pert = perturbed_design(design, delta);
  const Spectrum scale = least_favorable(pert);
  // δ = 0 is the unperturbed, untruncated limit.
  const std::size_t cutoff =
      delta > 0.0 ? static_cast<std::size_t>(std::floor(static_cast<double>(pert.k) / delta))
                  : pert.J();
  NormalSource normal(seed);
  std::vector<double> eta(pert.J(), 0.0);
  for (std::size_t p = 0; p < pert.J(); ++p) {
    const double z = normal();
    if (p < cutoff) eta[p] = scale[p].real() * z;
  }
  PriorDraw draw;
  draw.eta = Spectrum::from_real(Basis::cosine, std::move(eta));
  draw.norm2 = draw.eta.energy();
  draw.seminorm = besov_seminorm(draw.eta, design.s).value;
  draw.norm_ok = draw.norm2 >= design.rho;
  draw.ball_ok = draw.seminorm <= design.P0;
  return draw;
}

}  // namespace maxiset
