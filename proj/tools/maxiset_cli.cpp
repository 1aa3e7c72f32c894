// Command-line front end: Monte Carlo simulations, power curves, maxiset
// experiments, minimax designs, Besov projections and CvM calibration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxiset/besov.hpp"
#include "maxiset/cvm.hpp"
#include "maxiset/error.hpp"
#include "maxiset/experiments.hpp"
#include "maxiset/io.hpp"
#include "maxiset/minimax.hpp"

namespace {

using maxiset::Table;
using nlohmann::json;

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> reps;
  std::optional<int> threads;
  std::string out = "csv";
};

maxiset::ExperimentConfig load_config(const GlobalOptions& g) {
  if (g.config.empty()) throw maxiset::InvalidInput("--config is required for this command");
  json raw = maxiset::read_json_file(g.config);
  if (!raw.is_object()) throw maxiset::InvalidInput("config root must be a JSON object");
  if (g.seed) raw["seed"] = *g.seed;
  if (g.reps) raw["reps"] = *g.reps;
  if (g.threads) raw["threads"] = *g.threads;
  return maxiset::resolve_config(raw);
}

// Writes to the config's output path when one is set, else stdout.
void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path);
  if (!file) throw maxiset::IoFailure("cannot open output file " + path);
  write(file);
  if (!file) throw maxiset::IoFailure("failed writing " + path);
}

void emit_table(const GlobalOptions& g, const std::string& path, const Table& t) {
  emit(path, [&](std::ostream& os) { maxiset::write_table(os, t, g.out); });
}

struct DesignOptions {
  double s = 1.0, P0 = 1.0, rho = 0.0, sigma = 1.0, alpha = 0.05, inverse_gamma = 0.0;
  std::int64_t n = 10000;
  std::size_t J = 0;
  bool with_kappa = false;
};

int run_minimax_design(const GlobalOptions& g, DesignOptions d) {
  if (!g.config.empty()) {
    const auto c = load_config(g);
    if (c.family != maxiset::Family::minimax) {
      throw maxiset::InvalidInput("minimax-design needs a config with family 'minimax'");
    }
    const auto& sec = c.section("minimax");
    d.s = c.s;
    d.n = c.n;
    d.sigma = c.sigma;
    d.alpha = c.alpha;
    d.P0 = sec["P0"].get<double>();
    d.rho = sec["rho"].get<double>();
    d.J = sec["J"].get<std::size_t>();
    d.inverse_gamma = sec["inverse_gamma"].get<double>();
  }
  if (d.rho <= 0.0) {
    d.rho = std::pow(static_cast<double>(d.n),
                     -4.0 * d.s / (1.0 + 4.0 * d.s + 4.0 * d.inverse_gamma));
  }
  maxiset::Design design;
  if (d.inverse_gamma > 0.0) {
    const std::size_t len = d.J ? d.J : std::size_t{1} << 16;
    std::vector<double> lambda(len);
    for (std::size_t j = 1; j <= len; ++j) lambda[j - 1] = std::pow(double(j), -d.inverse_gamma);
    const auto probe = maxiset::solve_inverse_design(d.s, d.P0, d.rho, d.n, d.sigma, lambda, len);
    const std::size_t trunc = d.J ? d.J : std::min(len, maxiset::default_truncation(probe.k));
    design = maxiset::solve_inverse_design(d.s, d.P0, d.rho, d.n, d.sigma, lambda, trunc);
  } else {
    design = maxiset::solve_design(d.s, d.P0, d.rho, d.n, d.sigma, d.J);
  }
  const double beta = maxiset::predicted_type2_least_favorable(design, d.alpha);

  if (g.out == "json") {
    json doc = maxiset::design_to_json(design);
    if (!d.with_kappa) {
      doc.erase("kappa2");
      doc.erase("lambda");
    }
    doc["alpha"] = d.alpha;
    doc["predicted_type2"] = beta;
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  Table t;
  t.columns = {"s", "P0", "rho", "n", "sigma", "k", "k_real", "kappa2_plateau", "J",
               "A_n", "C_n", "null_mean", "residual_i2", "residual_i3", "inverse",
               "alpha", "predicted_type2"};
  t.add_row({d.s, d.P0, d.rho, d.n, d.sigma, design.k, design.k_real, design.kappa2_plateau,
             static_cast<std::int64_t>(design.J()), design.A_n, design.C_n, design.null_mean,
             design.residual_i2, design.residual_i3, design.inverse(), d.alpha, beta});
  maxiset::write_csv(std::cout, t);
  if (d.with_kappa) {
    Table k;
    k.columns = {"j", "kappa2"};
    for (std::size_t j = 0; j < design.J(); ++j) {
      k.add_row({static_cast<std::int64_t>(j + 1), design.kappa2[j]});
    }
    maxiset::write_csv(std::cout, k);
  }
  return 0;
}

int run_project(const GlobalOptions& g, const std::string& input, double s, double P0,
                double tol) {
  if (input.empty()) throw maxiset::InvalidInput("project-besov needs --input <spectrum.json>");
  const auto theta = maxiset::spectrum_from_json(maxiset::read_json_file(input));
  const maxiset::BesovBall ball{s, P0, theta.basis()};
  const auto res = maxiset::project_besov_detailed(theta, ball, tol);
  const double before = maxiset::besov_seminorm(theta, s).value;
  const double after = maxiset::besov_seminorm(res.eta, s).value;
  if (g.out == "json") {
    json doc = {{"s", s},
                {"P0", P0},
                {"tol", tol},
                {"seminorm_before", before},
                {"seminorm_after", after},
                {"first_violated", res.first_violated},
                {"sweeps", res.sweeps},
                {"distance", std::sqrt((theta - res.eta).energy())},
                {"eta", maxiset::spectrum_to_json(res.eta)}};
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  Table t;
  t.columns = {"j", "theta_re", "theta_im", "eta_re", "eta_im"};
  for (std::size_t p = 0; p < theta.size(); ++p) {
    t.add_row({theta.frequency(p), theta[p].real(), theta[p].imag(), res.eta[p].real(),
               res.eta[p].imag()});
  }
  maxiset::write_csv(std::cout, t);
  return 0;
}

int run_calibrate(const GlobalOptions& g, std::int64_t n, const std::string& cache) {
  std::int64_t reps = g.reps.value_or(20000);
  std::uint64_t seed = g.seed.value_or(20240601);
  int threads = g.threads.value_or(1);
  if (!g.config.empty()) {
    const auto c = load_config(g);
    if (c.family != maxiset::Family::cvm) {
      throw maxiset::InvalidInput("calibrate cvm needs a config with family 'cvm'");
    }
    const auto& sec = c.section("cvm");
    n = c.n;
    if (!g.reps) reps = sec["calibration_reps"].get<std::int64_t>();
    if (!g.seed) seed = sec["calibration_seed"].get<std::uint64_t>();
    threads = c.threads;
  }
  const auto cal = cache.empty()
                       ? maxiset::calibrate_cvm(n, reps, seed, threads)
                       : maxiset::CvmCalibrationCache(cache).get_or_compute(n, reps, seed, threads);
  Table t;
  t.columns = {"n", "reps", "p", "quantile", "seed"};
  for (std::size_t i = 0; i < cal.probabilities.size(); ++i) {
    t.add_row({cal.n, cal.reps, cal.probabilities[i], cal.quantiles[i], cal.seed});
  }
  maxiset::write_table(std::cout, t, g.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxiset: nonparametric signal-detection tests, Besov-ball geometry and "
               "minimax test designs"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config, "Experiment configuration (JSON)");
  app.add_option("--seed", g.seed, "Override the configured seed");
  app.add_option("--reps", g.reps, "Override the configured replication count")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo size/power of one configuration");
  auto* curve = app.add_subcommand("power-curve", "Empirical vs predicted power along a schedule");
  auto* experiment = app.add_subcommand("experiment", "Maxiset experiments");
  experiment->require_subcommand(1);
  auto* consistency = experiment->add_subcommand("consistency", "Tail-alternative boundary");
  auto* decomposition = experiment->add_subcommand("decomposition", "Projection decomposition");
  auto* bayes = experiment->add_subcommand("bayes", "Prior membership around the least-favorable signal");

  auto* design_cmd = app.add_subcommand("minimax-design", "Solve a minimax test design");
  DesignOptions d;
  design_cmd->add_option("--s", d.s, "Smoothness");
  design_cmd->add_option("--P0", d.P0, "Ball budget");
  design_cmd->add_option("--rho", d.rho, "Alternative radius squared (default n^{-4s/(1+4s)})");
  design_cmd->add_option("--n", d.n, "Sample size");
  design_cmd->add_option("--sigma", d.sigma, "Noise level");
  design_cmd->add_option("--alpha", d.alpha, "Level");
  design_cmd->add_option("--J", d.J, "Truncation (0 = max(20k, 1024))");
  design_cmd->add_option("--inverse-gamma", d.inverse_gamma, "λ_j = j^{-γ} inverse problem");
  design_cmd->add_flag("--kappa", d.with_kappa, "Also print the κ_j² sequence");

  auto* project = app.add_subcommand("project-besov", "Project a spectrum onto a Besov ball");
  std::string input;
  double ps = 1.0, pP0 = 1.0, ptol = 1e-13;
  project->add_option("--input", input, "Spectrum JSON {basis, coeffs}");
  project->add_option("--s", ps, "Smoothness");
  project->add_option("--P0", pP0, "Ball budget");
  project->add_option("--tol", ptol, "Stopping tolerance");

  auto* calibrate = app.add_subcommand("calibrate", "Critical value calibration");
  calibrate->require_subcommand(1);
  auto* cal_cvm = calibrate->add_subcommand("cvm", "Monte Carlo null quantiles of n·T²");
  std::int64_t cal_n = 1000;
  std::string cal_cache;
  cal_cvm->add_option("--n", cal_n, "Sample size")->check(CLI::PositiveNumber);
  cal_cvm->add_option("--cache", cal_cache, "JSON cache file");

  for (auto* sub : {simulate, curve, experiment, consistency, decomposition, bayes, design_cmd,
                    project, calibrate, cal_cvm}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (simulate->parsed()) {
      const auto c = load_config(g);
      const auto result = maxiset::run_monte_carlo(c);
      emit_table(g, c.output, maxiset::simulation_table(c, result));
    } else if (curve->parsed()) {
      const auto c = load_config(g);
      emit_table(g, c.output, maxiset::power_curve(c));
    } else if (consistency->parsed()) {
      const auto c = load_config(g);
      emit_table(g, c.output, maxiset::consistency_experiment(c));
    } else if (decomposition->parsed()) {
      const auto c = load_config(g);
      emit_table(g, c.output, maxiset::decomposition_experiment(c));
    } else if (bayes->parsed()) {
      const auto c = load_config(g);
      emit_table(g, c.output, maxiset::bayes_membership_experiment(c));
    } else if (design_cmd->parsed()) {
      rc = run_minimax_design(g, d);
    } else if (project->parsed()) {
      rc = run_project(g, input, ps, pP0, ptol);
    } else if (cal_cvm->parsed()) {
      rc = run_calibrate(g, cal_n, cal_cache);
    }
  } catch (const maxiset::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return maxiset::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wall_seconds=" << wall << '\n';
  return rc;
}
