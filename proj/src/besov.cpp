#include "maxiset/besov.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "maxiset/error.hpp"

namespace maxiset {

void BesovBall::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("Besov ball: s must be > 0");
  if (!(P0 > 0.0) || !std::isfinite(P0)) throw InvalidInput("Besov ball: P0 must be > 0");
}

namespace {

// Storage position of the first coefficient in tail(k).
std::size_t tail_start(const Spectrum& theta, std::int64_t k) {
  return static_cast<std::size_t>(k - theta.first_frequency());
}

}  // namespace

SeminormResult besov_seminorm(const Spectrum& theta, double s) {
  if (theta.empty() || theta.max_frequency() == 0) {
    throw InvalidInput("besov_seminorm: empty spectrum");
  }
  if (!(s > 0.0)) throw InvalidInput("besov_seminorm: s must be > 0");

  const auto K = static_cast<std::int64_t>(theta.max_frequency());
  SeminormResult best{0.0, 1};
  double tail = 0.0;
  for (std::int64_t k = K; k >= 1; --k) {
    const std::size_t p = tail_start(theta, k);
    tail += theta.multiplicity(p) * std::norm(theta[p]);
    const double v = std::pow(static_cast<double>(k), 2.0 * s) * tail;
    if (v >= best.value) best = {v, k};
  }
  return best;
}

bool in_ball(const Spectrum& theta, const BesovBall& ball, double rel_tol) {
  return besov_seminorm(theta, ball.s).value <= ball.P0 * (1.0 + rel_tol);
}

ProjectionResult project_besov_detailed(const Spectrum& theta,
                                        const BesovBall& ball, double tol,
                                        int max_sweeps) {
  ball.validate();
  if (!(tol > 0.0)) throw InvalidInput("project_besov: tol must be > 0");
  if (theta.basis() != ball.basis) {
    throw InvalidInput("project_besov: spectrum and ball bases differ");
  }
  if (theta.empty() || theta.max_frequency() == 0) {
    throw InvalidInput("project_besov: empty spectrum");
  }

  const std::size_t len = theta.size();
  const auto K = static_cast<std::int64_t>(theta.max_frequency());

  std::vector<double> w(len);
  for (std::size_t p = 0; p < len; ++p) {
    w[p] = theta.multiplicity(p) * std::norm(theta[p]);
  }
  std::vector<double> radius(K + 1);
  for (std::int64_t k = 1; k <= K; ++k) {
    radius[k] = ball.P0 * std::pow(static_cast<double>(k), -2.0 * ball.s);
  }

  ProjectionResult result;
  {
    double tail = 0.0;
    for (std::int64_t k = K; k >= 1; --k) {
      tail += w[tail_start(theta, k)];
      if (tail > radius[k]) result.first_violated = k;
    }
  }

  // Multipliers: η_j = x_j θ_j. Dykstra corrections are stored only for
  // constraints that have been active at least once.
  std::vector<double> x(len, 1.0);
  std::vector<std::vector<double>> corr(K + 1);
  std::vector<double> prev;

  if (result.first_violated != 0) {
    bool converged = false;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
      prev = x;
      double tail = 0.0;  // Σ_{tail} w x² for the current iterate
      for (std::int64_t k = K; k >= 1; --k) {
        const std::size_t start = tail_start(theta, k);
        tail += w[start] * x[start] * x[start];
        auto& c = corr[k];
        if (c.empty()) {
          if (tail <= radius[k]) continue;
          const double scale = std::sqrt(radius[k] / tail);
          c.assign(len - start, 0.0);
          for (std::size_t p = start; p < len; ++p) {
            c[p - start] = (1.0 - scale) * x[p];
            x[p] *= scale;
          }
          tail = radius[k];
          continue;
        }
        double ty = 0.0;
        for (std::size_t p = start; p < len; ++p) {
          const double y = x[p] + c[p - start];
          ty += w[p] * y * y;
        }
        const double scale = ty > radius[k] ? std::sqrt(radius[k] / ty) : 1.0;
        bool any = false;
        tail = 0.0;
        for (std::size_t p = start; p < len; ++p) {
          const double y = x[p] + c[p - start];
          const double nx = scale * y;
          c[p - start] = y - nx;
          any = any || c[p - start] != 0.0;
          x[p] = nx;
          tail += w[p] * nx * nx;
        }
        if (!any) c.clear();
      }
      double change = 0.0;
      for (std::size_t p = 0; p < len; ++p) {
        const double d = x[p] - prev[p];
        change += w[p] * d * d;
      }
      change = std::sqrt(change);
      result.sweeps = sweep;
      result.last_change = change;
      if (change < tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream msg;
      msg << "project_besov: no convergence after " << max_sweeps
          << " sweeps (last change " << result.last_change
          << ", first violated k = " << result.first_violated << ")";
      throw NumericFailure(msg.str());
    }
  }

  std::vector<Spectrum::value_type> eta(len);
  for (std::size_t p = 0; p < len; ++p) eta[p] = x[p] * theta[p];
  result.eta = Spectrum(theta.basis(), std::move(eta));
  return result;
}

Spectrum project_besov(const Spectrum& theta, const BesovBall& ball, double tol,
                       int max_sweeps) {
  return project_besov_detailed(theta, ball, tol, max_sweeps).eta;
}

}  // namespace maxiset
