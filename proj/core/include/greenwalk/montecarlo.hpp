#pragma once

#include <greenwalk/graph.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace greenwalk {

struct SimStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  /// Sample standard deviation / sqrt(trials); 0 for a single trial.
  double standard_error = 0.0;
  std::uint64_t seed = 0;
};

struct SimOptions {
  /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 0;
  std::uint64_t step_cap = 1'000'000'000;
};

/// Draws successors from the positive entries of each row of P.
class WalkSampler {
 public:
  explicit WalkSampler(const TransitionMatrix& p);
  Index size() const noexcept { return static_cast<Index>(rows_.size()); }
  Index step(Index from, std::mt19937_64& rng) const;

 private:
  struct Row {
    std::vector<Index> targets;
    std::vector<double> cumulative;
  };
  std::vector<Row> rows_;
};

/// Generator for trial `trial` of a run seeded with `seed`; independent of
/// scheduling.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

/// Steps until the walk from `start` first reaches `stop` (0 when equal).
/// Throws RunawayError past `step_cap` steps.
std::uint64_t simulate_walk(const WalkSampler& sampler, Index start, Index stop, std::mt19937_64& rng,
                            std::uint64_t step_cap = SimOptions{}.step_cap);
std::uint64_t simulate_walk(const TransitionMatrix& p, Index start, Index stop, std::uint64_t seed);

SimStats empirical_hitting(const TransitionMatrix& p, Index start, Index stop, std::uint64_t trials,
                           std::uint64_t seed, SimOptions options = {});

/// Each trial draws its target from pi, then walks from `start` until it hits it.
SimStats empirical_random_target(const TransitionMatrix& p, const Distribution& pi, Index start,
                                 std::uint64_t trials, std::uint64_t seed, SimOptions options = {});

}  // namespace greenwalk
