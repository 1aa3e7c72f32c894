#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace maxiset {

/// One replication: simulate from the given seed, run a test, report whether
/// it rejected. Must be safe to call concurrently.
using Trial = std::function<bool(std::uint64_t seed)>;

struct MonteCarloSummary {
  std::string experiment;
  std::int64_t reps = 0;
  std::int64_t rejections = 0;
  double rate = 0.0;
  double std_err = 0.0;  // √(rate (1 − rate) / reps)
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

/// Summary with rate and binomial standard error filled in from the counts.
MonteCarloSummary make_summary(std::string experiment, std::int64_t reps,
                               std::int64_t rejections, std::uint64_t seed);

/// Runs `reps` replications; replication i uses derive_seed(seed, i).
/// Replications are split into contiguous blocks across `threads` workers and
/// the counts summed, so the result is independent of `threads`. If any
/// replication throws, the first exception (in replication order among those
/// observed) is rethrown after all workers stop.
MonteCarloSummary run_replications(const Trial& trial, std::int64_t reps,
                                   std::uint64_t seed, int threads = 1,
                                   std::string experiment = {});

}  // namespace maxiset
