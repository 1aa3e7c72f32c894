#include "maxiset/experiments.hpp"

#include <cmath>
#include <filesystem>

#include "maxiset/besov.hpp"
#include "maxiset/chisq.hpp"
#include "maxiset/cvm.hpp"
#include "maxiset/error.hpp"
#include "maxiset/kernel.hpp"
#include "maxiset/minimax.hpp"
#include "maxiset/normal.hpp"
#include "maxiset/quadratic.hpp"
#include "maxiset/rng.hpp"
#include "maxiset/sampling.hpp"

namespace maxiset {

using nlohmann::json;

namespace {

// Copies `truth` into a spectrum of exactly J frequencies in its basis.
Spectrum fit_to(const Spectrum& truth, std::size_t J) {
  Spectrum out = Spectrum::zeros(truth.basis(), J);
  if (truth.max_frequency() > J) {
    for (std::size_t p = out.size(); p < truth.size(); ++p) {
      if (truth[p] != Spectrum::value_type{}) {
        throw InvalidInput("alternative uses frequency " +
                           std::to_string(truth.frequency(p)) +
                           " beyond the procedure's J = " + std::to_string(J));
      }
    }
  }
  for (std::size_t p = 0; p < std::min(out.size(), truth.size()); ++p) out[p] = truth[p];
  return out;
}

void check_basis(const Spectrum& truth, Basis expected) {
  if (truth.basis() != expected) {
    throw InvalidInput("alternative basis " + std::string(to_string(truth.basis())) +
                       " does not match the test family's " +
                       std::string(to_string(expected)));
  }
}

class QuadraticProcedure final : public Procedure {
 public:
  explicit QuadraticProcedure(const ExperimentConfig& c)
      : Procedure(c.alpha), coeffs_(build(c)) {}

  Family family() const override { return Family::quadratic; }
  Basis basis() const override { return Basis::cosine; }
  std::size_t dimension() const override { return coeffs_->size(); }

  Trial bind(const Spectrum& truth) const override {
    check_basis(truth, basis());
    auto theta = std::make_shared<const Spectrum>(fit_to(truth, dimension()));
    auto coeffs = coeffs_;
    const double alpha = this->alpha();
    return [theta, coeffs, alpha](std::uint64_t seed) {
      const auto obs = sample_sequence_model(*theta, coeffs->n(), coeffs->sigma(), seed);
      return quadratic_test(obs, *coeffs, alpha).reject;
    };
  }
  double drift(const Spectrum& truth) const override {
    return quadratic_drift(truth, *coeffs_);
  }
  std::optional<double> predicted_type2(const Spectrum& truth) const override {
    return maxiset::predicted_type2(truth, *coeffs_, alpha());
  }

 private:
  static std::shared_ptr<const QuadraticCoefficients> build(const ExperimentConfig& c) {
    const json& sec = c.section("quadratic");
    if (sec.contains("kappa2")) {
      return std::make_shared<const QuadraticCoefficients>(
          sec["kappa2"].get<std::vector<double>>(), c.n, c.sigma);
    }
    return std::make_shared<const QuadraticCoefficients>(example_coefficients(
        c.n, sec["gamma"].get<double>(), sec["J"].get<std::size_t>(), c.sigma));
  }
  std::shared_ptr<const QuadraticCoefficients> coeffs_;
};

class KernelProcedure final : public Procedure {
 public:
  explicit KernelProcedure(const ExperimentConfig& c)
      : Procedure(c.alpha), n_(c.n), sigma_(c.sigma) {
    const json& sec = c.section("kernel");
    table_ = std::make_shared<const KernelTransformTable>(
        Kernel::by_name(sec["kernel"].get<std::string>()), sec["h"].get<double>(),
        sec["J"].get<std::size_t>());
  }

  Family family() const override { return Family::kernel; }
  Basis basis() const override { return Basis::complex_exponential; }
  std::size_t dimension() const override { return table_->max_frequency(); }

  Trial bind(const Spectrum& truth) const override {
    check_basis(truth, basis());
    auto theta = std::make_shared<const Spectrum>(fit_to(truth, dimension()));
    auto table = table_;
    const auto n = n_;
    const double sigma = sigma_, alpha = this->alpha();
    return [theta, table, n, sigma, alpha](std::uint64_t seed) {
      const auto obs = sample_sequence_model(*theta, n, sigma, seed);
      return kernel_test(obs, *table, alpha).reject;
    };
  }
  double drift(const Spectrum& truth) const override {
    return kernel_drift(fit_to(truth, dimension()), *table_, n_, sigma_);
  }
  std::optional<double> predicted_type2(const Spectrum& truth) const override {
    return predicted_type2_kernel(fit_to(truth, dimension()), *table_, n_, sigma_, alpha());
  }

 private:
  std::int64_t n_;
  double sigma_;
  std::shared_ptr<const KernelTransformTable> table_;
};

class ChisqProcedure final : public Procedure {
 public:
  explicit ChisqProcedure(const ExperimentConfig& c) : Procedure(c.alpha), n_(c.n) {
    const json& sec = c.section("chisq");
    k_ = static_cast<int>(sec["k"].get<std::int64_t>());
    grid_ = sec["grid"].get<std::size_t>();
  }

  Family family() const override { return Family::chisq; }
  Basis basis() const override { return Basis::complex_exponential; }
  std::size_t dimension() const override { return grid_ / 4; }

  Trial bind(const Spectrum& truth) const override {
    check_basis(truth, basis());
    auto sampler = std::make_shared<const DensitySampler>(truth, grid_);
    const auto n = n_;
    const int k = k_;
    const double alpha = this->alpha();
    return [sampler, n, k, alpha](std::uint64_t seed) {
      return chisq_test(sampler->sample(n, seed), k, alpha).reject;
    };
  }
  double drift(const Spectrum& truth) const override {
    return predicted_type2_chisq(truth, k_, n_, alpha()).drift;
  }
  std::optional<double> predicted_type2(const Spectrum& truth) const override {
    return predicted_type2_chisq(truth, k_, n_, alpha()).beta;
  }

 private:
  std::int64_t n_;
  int k_;
  std::size_t grid_;
};

class CvmProcedure final : public Procedure {
 public:
  CvmProcedure(const ExperimentConfig& c) : Procedure(c.alpha), n_(c.n) {
    const json& sec = c.section("cvm");
    grid_ = sec["grid"].get<std::size_t>();
    J_ = sec["J"].get<std::size_t>();
    const auto reps = sec["calibration_reps"].get<std::int64_t>();
    const auto seed = sec["calibration_seed"].get<std::uint64_t>();
    const auto cache = sec["cache"].get<std::string>();
    calibration_ = std::make_shared<const CvmCalibration>(
        cache.empty() ? calibrate_cvm(c.n, reps, seed, c.threads)
                      : CvmCalibrationCache(cache).get_or_compute(c.n, reps, seed, c.threads));
  }

  Family family() const override { return Family::cvm; }
  Basis basis() const override { return Basis::cosine; }
  std::size_t dimension() const override { return J_; }

  Trial bind(const Spectrum& truth) const override {
    check_basis(truth, basis());
    auto sampler = std::make_shared<const DensitySampler>(truth, grid_);
    auto cal = calibration_;
    const auto n = n_;
    const double alpha = this->alpha();
    return [sampler, cal, n, alpha](std::uint64_t seed) {
      return cvm_test(sampler->sample(n, seed), alpha, *cal).reject;
    };
  }
  double drift(const Spectrum& truth) const override {
    return static_cast<double>(n_) * cvm_population(truth);
  }
  std::optional<double> predicted_type2(const Spectrum&) const override {
    return std::nullopt;
  }

 private:
  std::int64_t n_;
  std::size_t grid_;
  std::size_t J_;
  std::shared_ptr<const CvmCalibration> calibration_;
};

class MinimaxProcedure final : public Procedure {
 public:
  explicit MinimaxProcedure(const ExperimentConfig& c) : Procedure(c.alpha) {
    const json& sec = c.section("minimax");
    const double P0 = sec["P0"].get<double>();
    const double rho = sec["rho"].get<double>();
    const auto J = sec["J"].get<std::size_t>();
    const double gamma = sec["inverse_gamma"].get<double>();
    if (gamma > 0.0) {
      // The breakpoint is unknown before solving; size λ generously.
      const std::size_t len = J ? J : std::size_t{1} << 16;
      std::vector<double> lambda(len);
      for (std::size_t j = 1; j <= len; ++j) {
        lambda[j - 1] = std::pow(static_cast<double>(j), -gamma);
      }
      Design probe = solve_inverse_design(c.s, P0, rho, c.n, c.sigma, lambda, len);
      const std::size_t trunc = J ? J : std::min(len, default_truncation(probe.k));
      design_ = std::make_shared<const Design>(
          solve_inverse_design(c.s, P0, rho, c.n, c.sigma, lambda, trunc));
    } else {
      design_ = std::make_shared<const Design>(solve_design(c.s, P0, rho, c.n, c.sigma, J));
    }
  }

  Family family() const override { return Family::minimax; }
  Basis basis() const override { return Basis::cosine; }
  std::size_t dimension() const override { return design_->J(); }
  const Design& design() const { return *design_; }

  Trial bind(const Spectrum& truth) const override {
    check_basis(truth, basis());
    Spectrum fitted = fit_to(truth, dimension());
    if (design_->inverse()) fitted = apply_operator(fitted, design_->lambda);
    auto signal = std::make_shared<const Spectrum>(std::move(fitted));
    auto design = design_;
    const double alpha = this->alpha();
    return [signal, design, alpha](std::uint64_t seed) {
      const auto obs = sample_sequence_model(*signal, design->n, design->sigma, seed);
      return minimax_test(obs, *design, alpha).reject;
    };
  }
  double drift(const Spectrum& truth) const override {
    return minimax_drift(truth, *design_);
  }
  std::optional<double> predicted_type2(const Spectrum& truth) const override {
    return predicted_type2_minimax(truth, *design_, alpha());
  }

 private:
  std::shared_ptr<const Design> design_;
};

std::int64_t frequency_arg(const json& alt, const char* key, std::int64_t fallback) {
  const auto it = alt.find(key);
  if (it == alt.end()) return fallback;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
    throw InvalidInput(std::string("alternative: '") + key + "' must be a positive integer");
  }
  return it->get<std::int64_t>();
}

double number_arg(const json& alt, const char* key, double fallback) {
  const auto it = alt.find(key);
  if (it == alt.end()) return fallback;
  if (!it->is_number()) throw InvalidInput(std::string("alternative: '") + key + "' must be a number");
  return it->get<double>();
}

void set_frequency(Spectrum& theta, std::int64_t j, double value) {
  theta[static_cast<std::size_t>(j - theta.first_frequency())] = value;
}

}  // namespace

std::unique_ptr<Procedure> make_procedure(const ExperimentConfig& config) {
  switch (config.family) {
    case Family::quadratic:
      return std::make_unique<QuadraticProcedure>(config);
    case Family::kernel:
      return std::make_unique<KernelProcedure>(config);
    case Family::chisq:
      return std::make_unique<ChisqProcedure>(config);
    case Family::cvm:
      return std::make_unique<CvmProcedure>(config);
    case Family::minimax:
      return std::make_unique<MinimaxProcedure>(config);
  }
  throw InvalidInput("unknown family");
}

Spectrum build_alternative(const json& alt, const Procedure& procedure,
                           const ExperimentConfig& config) {
  if (!alt.is_object()) throw InvalidInput("alternative must be an object");
  const std::string type = alt.value("type", "zero");
  const Basis basis = procedure.basis();
  const auto J = static_cast<std::int64_t>(procedure.dimension());

  Spectrum theta;
  if (type == "zero") {
    theta = Spectrum::zeros(basis, static_cast<std::size_t>(J));
  } else if (type == "coeffs") {
    json doc = alt;
    if (!doc.contains("basis")) doc["basis"] = std::string(to_string(basis));
    theta = spectrum_from_json(doc);
  } else if (type == "single") {
    const auto j = frequency_arg(alt, "j", 1);
    theta = Spectrum::zeros(basis, static_cast<std::size_t>(std::max(j, J)));
    set_frequency(theta, j, number_arg(alt, "value", 1.0));
  } else if (type == "block") {
    const auto from = frequency_arg(alt, "from", 1);
    const auto to = frequency_arg(alt, "to", from);
    if (to < from) throw InvalidInput("alternative block: 'to' < 'from'");
    theta = Spectrum::zeros(basis, static_cast<std::size_t>(std::max(to, J)));
    for (auto j = from; j <= to; ++j) set_frequency(theta, j, number_arg(alt, "value", 1.0));
  } else if (type == "power_law") {
    const auto from = frequency_arg(alt, "from", 1);
    const auto to = frequency_arg(alt, "to", std::min<std::int64_t>(J, 64));
    const double e = number_arg(alt, "exponent", 1.5);
    theta = Spectrum::zeros(basis, static_cast<std::size_t>(std::max(to, J)));
    for (auto j = from; j <= to; ++j) {
      set_frequency(theta, j, std::pow(static_cast<double>(j), -e));
    }
  } else if (type == "tail") {
    const auto m = frequency_arg(alt, "m", 1);
    theta = make_tail_alternative(m, number_arg(alt, "C", 1.0),
                                  number_arg(alt, "s", config.s), basis,
                                  static_cast<std::size_t>(J));
  } else if (type == "least_favorable") {
    const auto* mp = dynamic_cast<const MinimaxProcedure*>(&procedure);
    if (!mp) throw InvalidInput("least_favorable alternative needs the minimax family");
    theta = least_favorable(mp->design());
  } else {
    throw InvalidInput("unknown alternative type '" + type + "'");
  }

  int normalizations = 0;
  for (const char* key : {"drift", "energy", "scale"}) normalizations += alt.contains(key);
  if (normalizations > 1) {
    throw InvalidInput("alternative: use at most one of drift, energy, scale");
  }
  if (alt.contains("scale")) {
    theta *= number_arg(alt, "scale", 1.0);
  } else if (alt.contains("energy")) {
    const double target = number_arg(alt, "energy", 0.0);
    const double e = theta.energy();
    if (target < 0.0 || (e == 0.0 && target > 0.0)) {
      throw InvalidInput("alternative: cannot reach the requested energy");
    }
    if (e > 0.0) theta *= std::sqrt(target / e);
  } else if (alt.contains("drift")) {
    const double target = number_arg(alt, "drift", 0.0);
    const double d = procedure.drift(theta);
    if (target < 0.0 || (d == 0.0 && target > 0.0)) {
      throw InvalidInput("alternative: cannot reach the requested drift");
    }
    if (d > 0.0) theta *= std::sqrt(target / d);
  }
  return theta;
}

Spectrum build_alternative(const Procedure& procedure, const ExperimentConfig& config) {
  return build_alternative(config.section("alternative"), procedure, config);
}

namespace {

Cell optional_cell(const std::optional<double>& v) {
  return v ? Cell{*v} : Cell{std::string()};
}

std::string experiment_id(const std::string& kind, const ExperimentConfig& c) {
  return kind + "/" + std::string(to_string(c.family));
}

}  // namespace

SimulationResult run_monte_carlo(const ExperimentConfig& config) {
  const auto proc = make_procedure(config);
  const Spectrum truth = build_alternative(*proc, config);
  SimulationResult r;
  r.summary = run_replications(proc->bind(truth), config.reps, config.seed, config.threads,
                               experiment_id("simulate", config));
  r.drift = proc->drift(truth);
  r.predicted_type2 = proc->predicted_type2(truth);
  return r;
}

Table simulation_table(const ExperimentConfig& config, const SimulationResult& result) {
  Table t;
  t.columns = {"experiment", "family",  "n",     "reps",         "rejections",
               "rate",       "std_err", "drift", "predicted_type2", "predicted_power",
               "seed",       "config_hash"};
  const auto& s = result.summary;
  std::optional<double> power;
  if (result.predicted_type2) power = 1.0 - *result.predicted_type2;
  t.add_row({s.experiment, std::string(to_string(config.family)), config.n, s.reps,
             s.rejections, s.rate, s.std_err, result.drift,
             optional_cell(result.predicted_type2), optional_cell(power), s.seed,
             config.hash_hex()});
  return t;
}

Table power_curve(const ExperimentConfig& config) {
  const json& sec = config.section("power_curve");
  const auto points = sec.empty() ? std::vector<double>{0, 0.5, 1, 1.5, 2, 2.5}
                                  : sec["points"].get<std::vector<double>>();
  const std::string mode = sec.empty() ? "drift" : sec["mode"].get<std::string>();
  const auto proc = make_procedure(config);

  json shape = config.section("alternative");
  shape.erase("drift");
  shape.erase("energy");
  shape.erase("scale");
  const Spectrum base = build_alternative(shape, *proc, config);
  const double base_drift = proc->drift(base);

  Table t;
  t.columns = {"point", "mode", "drift", "empirical_power", "std_err",
               "predicted_power", "predicted_type2", "abs_gap", "reps", "seed",
               "config_hash"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double p = points[i];
    double factor = p;
    if (mode == "drift") {
      if (p < 0.0) throw InvalidInput("power_curve: drift points must be >= 0");
      if (p > 0.0 && !(base_drift > 0.0)) {
        throw InvalidInput("power_curve: the base alternative has zero drift");
      }
      factor = p > 0.0 ? std::sqrt(p / base_drift) : 0.0;
    }
    const Spectrum theta = factor * base;
    const std::uint64_t seed = derive_seed(config.seed, i);
    const auto s = run_replications(proc->bind(theta), config.reps, seed, config.threads,
                                    experiment_id("power-curve", config));
    const auto beta = proc->predicted_type2(theta);
    std::optional<double> power, gap;
    if (beta) {
      power = 1.0 - *beta;
      gap = std::abs(s.rate - *power);
    }
    t.add_row({p, mode, proc->drift(theta), s.rate, s.std_err, optional_cell(power),
               optional_cell(beta), optional_cell(gap), s.reps, seed, config.hash_hex()});
  }
  return t;
}

Table consistency_experiment(const ExperimentConfig& config) {
  const json& sec = config.section("consistency");
  if (sec.empty()) throw InvalidInput("config: 'consistency' section is required");
  const auto C = sec["C"].get<std::vector<double>>();
  const double norm_scale = sec["norm_scale"].get<double>();
  const auto proc = make_procedure(config);
  const double r = calibration_rates(config.s, config.family).r;
  const double norm2 = norm_scale * std::pow(static_cast<double>(config.n), -2.0 * r);

  Table t;
  t.columns = {"C", "m", "C_effective", "n", "norm2", "empirical_power", "std_err",
               "drift", "predicted_power", "reps", "seed", "config_hash"};
  for (std::size_t i = 0; i < C.size(); ++i) {
    const auto m = std::max<std::int64_t>(
        1, std::llround(std::pow(C[i] / norm2, 1.0 / (2.0 * config.s))));
    if (static_cast<std::size_t>(2 * m) > proc->dimension()) {
      throw InvalidInput("consistency schedule infeasible: block end 2m = " +
                         std::to_string(2 * m) + " exceeds J = " +
                         std::to_string(proc->dimension()));
    }
    const double c_eff = norm2 * std::pow(static_cast<double>(m), 2.0 * config.s);
    const Spectrum theta = make_tail_alternative(m, c_eff, config.s, proc->basis());
    const std::uint64_t seed = derive_seed(config.seed, i);
    const auto s = run_replications(proc->bind(theta), config.reps, seed, config.threads,
                                    experiment_id("consistency", config));
    const auto beta = proc->predicted_type2(theta);
    std::optional<double> power;
    if (beta) power = 1.0 - *beta;
    t.add_row({C[i], m, c_eff, config.n, norm2, s.rate, s.std_err, proc->drift(theta),
               optional_cell(power), s.reps, seed, config.hash_hex()});
  }
  return t;
}

Table decomposition_experiment(const ExperimentConfig& config) {
  const json& sec = config.section("decomposition");
  if (sec.empty()) throw InvalidInput("config: 'decomposition' section is required");
  const auto gammas = sec["gammas"].get<std::vector<double>>();
  const double P0 = sec["P0"].get<double>();
  const double tol = sec["tol"].get<double>();
  const auto proc = make_procedure(config);
  const Spectrum f = build_alternative(*proc, config);
  const double seminorm = besov_seminorm(f, config.s).value;

  // Common random numbers: every estimate uses the same replication seeds.
  const std::uint64_t seed = config.seed;
  const auto id = experiment_id("decomposition", config);
  const auto pf = run_replications(proc->bind(f), config.reps, seed, config.threads, id);

  Table t;
  t.columns = {"gamma", "budget", "seminorm_f", "f_in_ball", "residual_energy",
               "power_f", "power_f_gamma", "power_residual", "gap_uuu",
               "std_err_gap", "std_err_residual", "reps", "seed", "config_hash"};
  for (const double g : gammas) {
    const BesovBall ball{config.s, P0 * g * g, proc->basis()};
    const Spectrum fg = project_besov(f, ball, tol);
    const Spectrum residual = f - fg;
    const auto pg = run_replications(proc->bind(fg), config.reps, seed, config.threads, id);
    const auto pr =
        run_replications(proc->bind(residual), config.reps, seed, config.threads, id);
    const double se_gap = std::sqrt(pf.std_err * pf.std_err + pg.std_err * pg.std_err);
    t.add_row({g, ball.P0, seminorm, seminorm <= ball.P0, residual.energy(), pf.rate,
               pg.rate, pr.rate, std::abs(pf.rate - pg.rate), se_gap, pr.std_err,
               config.reps, seed, config.hash_hex()});
  }
  return t;
}

Table bayes_membership_experiment(const ExperimentConfig& config) {
  if (config.family != Family::minimax) {
    throw InvalidInput("bayes experiment needs the minimax family");
  }
  const json& sec = config.section("bayes");
  const double delta = sec.empty() ? 0.2 : sec["delta"].get<double>();
  const auto draws = sec.empty() ? std::int64_t{1000} : sec["draws"].get<std::int64_t>();
  const auto proc = make_procedure(config);
  const Design& design = dynamic_cast<const MinimaxProcedure&>(*proc).design();

  std::int64_t member = 0, norm_ok = 0, ball_ok = 0;
  double norm_ratio = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const auto d = sample_bayes_prior(design, delta, derive_seed(config.seed, i));
    member += d.member();
    norm_ok += d.norm_ok;
    ball_ok += d.ball_ok;
    norm_ratio += d.norm2 / design.rho;
  }
  const auto s = make_summary("bayes/minimax", draws, member, config.seed);
  Table t;
  t.columns = {"n", "delta", "draws", "member_rate", "std_err", "norm_rate",
               "ball_rate", "mean_norm2_over_rho", "k", "seed", "config_hash"};
  const double dd = static_cast<double>(draws);
  t.add_row({config.n, delta, draws, s.rate, s.std_err, norm_ok / dd, ball_ok / dd,
             norm_ratio / dd, design.k, config.seed, config.hash_hex()});
  return t;
}

}  // namespace maxiset
