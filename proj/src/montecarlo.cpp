#include "maxiset/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "maxiset/error.hpp"
#include "maxiset/rng.hpp"

namespace maxiset {

MonteCarloSummary make_summary(std::string experiment, std::int64_t reps,
                               std::int64_t rejections, std::uint64_t seed) {
  MonteCarloSummary s;
  s.experiment = std::move(experiment);
  s.reps = reps;
  s.rejections = rejections;
  s.seed = seed;
  s.rate = reps > 0 ? static_cast<double>(rejections) / static_cast<double>(reps) : 0.0;
  s.std_err = reps > 0 ? std::sqrt(s.rate * (1.0 - s.rate) / static_cast<double>(reps)) : 0.0;
  return s;
}

MonteCarloSummary run_replications(const Trial& trial, std::int64_t reps,
                                   std::uint64_t seed, int threads,
                                   std::string experiment) {
  if (reps < 1) throw InvalidInput("Monte Carlo needs reps >= 1");
  if (!trial) throw InvalidInput("Monte Carlo: empty trial");
  const auto start = std::chrono::steady_clock::now();
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, reps));

  std::vector<std::int64_t> counts(static_cast<std::size_t>(workers), 0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::atomic<bool> abort{false};

  const auto work = [&](int w) {
    const std::int64_t lo = reps * w / workers;
    const std::int64_t hi = reps * (w + 1) / workers;
    std::int64_t local = 0;
    try {
      for (std::int64_t i = lo; i < hi && !abort.load(std::memory_order_relaxed); ++i) {
        if (trial(derive_seed(seed, static_cast<std::uint64_t>(i)))) ++local;
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
      abort = true;
    }
    counts[static_cast<std::size_t>(w)] = local;
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::int64_t total = 0;
  for (auto c : counts) total += c;
  MonteCarloSummary s = make_summary(std::move(experiment), reps, total, seed);
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace maxiset
