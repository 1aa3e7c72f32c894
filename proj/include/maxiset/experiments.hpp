#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxiset/alternatives.hpp"
#include "maxiset/io.hpp"
#include "maxiset/montecarlo.hpp"
#include "maxiset/spectrum.hpp"

namespace maxiset {

/// Validated experiment configuration. `resolved` holds the input with every
/// default filled in; its canonical dump (minus `threads` and `output`) is what
/// `hash` identifies.
struct ExperimentConfig {
  Family family = Family::quadratic;
  std::int64_t n = 2000;
  double sigma = 1.0;
  double alpha = 0.05;
  double s = 1.0;
  std::int64_t reps = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;
  nlohmann::json resolved;
  std::uint64_t hash = 0;

  /// Resolved sub-object for a section ("quadratic", "alternative", ...).
  const nlohmann::json& section(const std::string& name) const;
  std::string hash_hex() const;
};

/// Applies defaults and validates. Unknown keys and out-of-range values raise
/// InvalidInput.
ExperimentConfig resolve_config(const nlohmann::json& raw);

/// A test family bound to its tuning (coefficients, bandwidth, cells, design,
/// calibration), able to simulate-and-test under any truth.
class Procedure {
 public:
  virtual ~Procedure() = default;

  virtual Family family() const = 0;
  /// Basis in which truths for this family are expressed.
  virtual Basis basis() const = 0;
  /// Largest frequency a truth may use.
  virtual std::size_t dimension() const = 0;
  /// Replication function under `truth`; heavy per-truth setup is done here,
  /// once.
  virtual Trial bind(const Spectrum& truth) const = 0;
  /// Standardized drift of the test statistic (for CvM: n·T²(F − F₀)).
  virtual double drift(const Spectrum& truth) const = 0;
  /// Asymptotic type II error, where the theory provides one.
  virtual std::optional<double> predicted_type2(const Spectrum& truth) const = 0;

  double alpha() const { return alpha_; }

 protected:
  explicit Procedure(double alpha) : alpha_(alpha) {}

 private:
  double alpha_;
};

std::unique_ptr<Procedure> make_procedure(const ExperimentConfig& config);

/// Builds the configured alternative in the procedure's basis, then applies the
/// optional "drift", "energy" or "scale" normalization.
Spectrum build_alternative(const nlohmann::json& alt, const Procedure& procedure,
                           const ExperimentConfig& config);

/// Same, for the config's own "alternative" section.
Spectrum build_alternative(const Procedure& procedure, const ExperimentConfig& config);

struct SimulationResult {
  MonteCarloSummary summary;
  double drift = 0.0;
  std::optional<double> predicted_type2;
};

SimulationResult run_monte_carlo(const ExperimentConfig& config);
Table simulation_table(const ExperimentConfig& config, const SimulationResult& result);

/// Empirical and predicted power along a schedule of drifts or scale factors.
Table power_curve(const ExperimentConfig& config);

/// Tail alternatives with ‖θ‖² pinned to norm_scale·n^{-2r} and block start
/// m = round((C/‖θ‖²)^{1/(2s)}) for each C in the schedule.
Table consistency_experiment(const ExperimentConfig& config);

/// For each γ: f_γ = projection of f onto the ball with budget P0·γ², and power
/// under f, f_γ and f − f_γ with common random numbers.
Table decomposition_experiment(const ExperimentConfig& config);

/// Prior draws around the least-favorable signal and their membership in the
/// alternative set.
Table bayes_membership_experiment(const ExperimentConfig& config);

}  // namespace maxiset
