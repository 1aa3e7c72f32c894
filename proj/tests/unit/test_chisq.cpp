#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "maxiset/chisq.hpp"
#include "maxiset/error.hpp"
#include "maxiset/montecarlo.hpp"
#include "maxiset/rng.hpp"
#include "maxiset/sampling.hpp"
#include "oracles.hpp"

using namespace maxiset;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> random_spectrum(std::mt19937_64& gen, int J, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  std::vector<cplx> v(J + 1);
  v[0] = nd(gen);
  for (int j = 1; j <= J; ++j) v[j] = cplx(nd(gen), nd(gen));
  return v;
}

std::vector<double> uniform_draws(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(gen);
  return x;
}

}  // namespace

TEST(ChisqStatistic, PerfectlyBalancedCountsGiveZero) {
  const int k = 16;
  std::vector<double> x;
  for (int i = 0; i < k; ++i) x.push_back((i + 0.5) / k);
  EXPECT_NEAR(chisq_statistic(Sample(x), k), 0.0, 1e-12);
}

TEST(ChisqStatistic, AllMassInFirstCell) {
  for (int k : {2, 5, 50}) {
    const int n = 37;
    const Sample smp(std::vector<double>(n, 0.1 / k));
    EXPECT_NEAR(chisq_statistic(smp, k), double(n) * (k - 1), 1e-9);
  }
}

TEST(ChisqStatistic, PermutationInvariant) {
  std::mt19937_64 gen(1);
  auto x = uniform_draws(gen, 301);
  const double a = chisq_statistic(Sample(x), 13);
  std::shuffle(x.begin(), x.end(), gen);
  EXPECT_DOUBLE_EQ(chisq_statistic(Sample(x), 13), a);
}

TEST(ChisqStatistic, InvalidInputs) {
  EXPECT_THROW(chisq_statistic(Sample({0.5}), 1), InvalidInput);
  EXPECT_THROW(chisq_statistic(Sample(std::vector<double>{}), 4), InvalidInput);
  EXPECT_THROW(Sample({1.2}), InvalidInput);
}

TEST(ChisqStatistic, NullMeanIsKMinusOne) {
  const int n = 5000, k = 50, reps = 10000;
  double sum = 0.0;
  for (int i = 0; i < reps; ++i) sum += chisq_statistic(sample_uniform(n, derive_seed(3, i)), k);
  EXPECT_NEAR(sum / reps, k - 1.0, 0.02 * (k - 1.0));
}

TEST(ChisqTest, SizeAtN5000) {
  const Trial trial = [](std::uint64_t s) {
    return chisq_test(sample_uniform(5000, s), 50, 0.05).reject;
  };
  EXPECT_NEAR(run_replications(trial, 10000, 44, 4).rate, 0.05, 0.015);
}

TEST(ChisqTest, CenteredStatisticAccepts) {
  // One observation and two cells: T = 2·(1/4 + 1/4) = 1 = k − 1.
  const Sample smp({0.3});
  for (double alpha : {0.01, 0.05, 0.2, 0.49}) {
    const auto r = chisq_test(smp, 2, alpha);
    EXPECT_DOUBLE_EQ(r.statistic, 1.0);
    EXPECT_DOUBLE_EQ(r.standardized, 0.0);
    EXPECT_FALSE(r.reject);
  }
}

TEST(PopulationFunctional, ZeroSpectrum) {
  EXPECT_EQ(population_chisq_functional(Spectrum::zeros(Basis::complex_exponential, 10), 4, 100),
            0.0);
}

TEST(PopulationFunctional, FirstHarmonicThreePaths) {
  std::vector<cplx> v(2, 0.0);
  v[1] = cplx(0.2, -0.1);
  const Spectrum theta(Basis::complex_exponential, v);
  const double quad =
      oracle::cell_energy_quadrature([&](double x) { return oracle::fourier_eval(v, x); }, 4);
  EXPECT_NEAR(cell_energy_direct(theta, 4), quad, 1e-12);
  EXPECT_NEAR(cell_energy_J1(theta, 4), quad, 1e-8);
  EXPECT_NEAR(population_chisq_functional(theta, 4, 1000), 4000.0 * quad, 1e-8);
}

TEST(PopulationFunctional, DirectMatchesQuadratureInBothBases) {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 10; ++t) {
    auto v = random_spectrum(gen, 40, 0.05);
    const Spectrum theta(Basis::complex_exponential, v);
    const int k = 3 + static_cast<int>(gen() % 20);
    const double quad =
        oracle::cell_energy_quadrature([&](double x) { return oracle::fourier_eval(v, x); }, k);
    EXPECT_NEAR(cell_energy_direct(theta, k), quad, 1e-10);

    std::vector<double> c(40);
    for (int j = 0; j < 40; ++j) c[j] = v[j + 1].real();
    const auto cos_f = [&](double x) {
      double s = 0.0;
      for (int j = 1; j <= 40; ++j) s += c[j - 1] * std::numbers::sqrt2 * std::cos(std::numbers::pi * j * x);
      return s;
    };
    EXPECT_NEAR(cell_energy_direct(Spectrum::from_real(Basis::cosine, c), k),
                oracle::cell_energy_quadrature(cos_f, k), 1e-10);
  }
}

TEST(PopulationFunctional, AliasingSumMatchesDirect) {
  std::mt19937_64 gen(9);
  for (int t = 0; t < 50; ++t) {
    const int J = 5 + static_cast<int>(gen() % 120);
    const int k = 2 + static_cast<int>(gen() % 30);
    const Spectrum theta(Basis::complex_exponential, random_spectrum(gen, J, 0.1));
    EXPECT_NEAR(cell_energy_J1(theta, k), cell_energy_direct(theta, k), 1e-8)
        << "J=" << J << " k=" << k;
  }
}

TEST(PopulationFunctional, CrossFrequencyTermVanishes) {
  std::mt19937_64 gen(10);
  for (int t = 0; t < 30; ++t) {
    const int J = 5 + static_cast<int>(gen() % 60);
    const int k = 2 + static_cast<int>(gen() % 20);
    const Spectrum theta(Basis::complex_exponential, random_spectrum(gen, J, 1.0));
    EXPECT_LT(cell_energy_J2(theta, k), 1e-10);
  }
}

TEST(PopulationFunctional, MultiplesOfKAreInvisible) {
  std::mt19937_64 gen(11);
  const int k = 6;
  auto v = random_spectrum(gen, 40, 0.1);
  const double base = cell_energy_direct(Spectrum(Basis::complex_exponential, v), k);
  for (int j = k; j <= 40; j += k) v[j] += cplx(0.3, 0.7);
  EXPECT_NEAR(cell_energy_direct(Spectrum(Basis::complex_exponential, v), k), base, 1e-12);
}

TEST(PopulationFunctional, HighFrequencySupportDecays) {
  // Support on |j| > i: the functional is bounded by C k^{-1} i^{-1} Σ|θ_j|²
  // and shrinks as the block moves out.
  const int k = 8;
  double prev = 1e300;
  for (int i : {16, 64, 256, 1024}) {
    std::vector<cplx> v(2 * i + 2, 0.0);
    for (int j = i + 1; j <= 2 * i + 1; ++j) v[j] = (j % k == 0) ? 0.0 : cplx(1.0, 0.5);
    const Spectrum theta(Basis::complex_exponential, v);
    const double val = cell_energy_direct(theta, k);
    const double bound_shape = theta.energy() / (double(k) * i);
    EXPECT_LT(val, bound_shape);
    EXPECT_LT(val / theta.energy(), prev);
    prev = val / theta.energy();
  }
}

TEST(HaarIdentity, EqualsChisqOnRandomSamples) {
  std::mt19937_64 gen(12);
  for (int l : {2, 3, 4}) {
    for (int t = 0; t < 50; ++t) {
      const Sample smp(uniform_draws(gen, 1000));
      EXPECT_NEAR(haar_statistic(smp, l), chisq_statistic(smp, 1 << l), 1e-9);
    }
  }
}

TEST(HaarIdentity, SingleObservation) {
  const Sample smp({0.1});
  EXPECT_NEAR(haar_statistic(smp, 1), chisq_statistic(smp, 2), 1e-15);
  EXPECT_DOUBLE_EQ(chisq_statistic(smp, 2), 1.0);
  EXPECT_THROW(haar_statistic(smp, 0), InvalidInput);
}

TEST(HaarIdentity, NullMeanIsKMinusOne) {
  const int l = 4, reps = 5000;
  double sum = 0.0;
  for (int i = 0; i < reps; ++i) sum += haar_statistic(sample_uniform(500, derive_seed(13, i)), l);
  EXPECT_NEAR(sum / reps, 15.0, 0.03 * 15.0);
}

TEST(ChisqPrediction, Landmarks) {
  const auto zero = Spectrum::zeros(Basis::complex_exponential, 100);
  EXPECT_NEAR(predicted_type2_chisq(zero, 50, 5000, 0.05).beta, 0.95, 1e-12);
  EXPECT_TRUE(predicted_type2_chisq(zero, 50, 5000, 0.05).outside_window);

  std::vector<cplx> v(101, 0.0);
  v[3] = 1.0;
  Spectrum theta(Basis::complex_exponential, v);
  theta *= std::sqrt(1.0 / predicted_type2_chisq(theta, 50, 5000, 0.05).drift);
  const auto p = predicted_type2_chisq(theta, 50, 5000, 0.05);
  EXPECT_NEAR(p.drift, 1.0, 1e-12);
  EXPECT_NEAR(p.beta, oracle::Phi(1.6448536269514722 - 1.0), 1e-9);
  EXPECT_FALSE(p.outside_window);
}
