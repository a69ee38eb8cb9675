#include <greenwalk/montecarlo.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

namespace greenwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pairwise summation over a fixed order, so the result is thread-count independent.
double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += data[k];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

void check_vertex(Index v, Index n, const char* what) {
  if (v < 0 || v >= n) throw ValidationError(std::string(what) + " vertex out of range");
}

SimStats run_trials(std::uint64_t trials, std::uint64_t seed, unsigned threads,
                    const std::function<double(std::uint64_t)>& trial) {
  if (trials == 0) throw ValidationError("trials must be >= 1");
  std::vector<double> samples(trials);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned id) {
    try {
      for (std::uint64_t t = id; t < trials; t += workers) samples[t] = trial(t);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const double count = static_cast<double>(trials);
  const double mean = pairwise_sum(samples.data(), samples.size()) / count;
  for (double& s : samples) s = (s - mean) * (s - mean);
  double se = 0.0;
  if (trials > 1) se = std::sqrt(pairwise_sum(samples.data(), samples.size()) / (count - 1.0) / count);
  return SimStats{trials, mean, se, seed};
}

}  // namespace

WalkSampler::WalkSampler(const TransitionMatrix& p) : rows_(static_cast<std::size_t>(p.size())) {
  for (Index i = 0; i < p.size(); ++i) {
    Row& row = rows_[static_cast<std::size_t>(i)];
    double total = 0.0;
    for (Index j = 0; j < p.size(); ++j) {
      if (p(i, j) > 0.0) {
        total += p(i, j);
        row.targets.push_back(j);
        row.cumulative.push_back(total);
      }
    }
    for (double& c : row.cumulative) c /= total;
    row.cumulative.back() = 1.0;
  }
}

Index WalkSampler::step(Index from, std::mt19937_64& rng) const {
  const Row& row = rows_[static_cast<std::size_t>(from)];
  if (row.targets.size() == 1) return row.targets.front();
  const double u = std::generate_canonical<double, 64>(rng);
  const auto it = std::upper_bound(row.cumulative.begin(), row.cumulative.end(), u);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - row.cumulative.begin()), row.targets.size() - 1);
  return row.targets[k];
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

std::uint64_t simulate_walk(const WalkSampler& sampler, Index start, Index stop, std::mt19937_64& rng,
                            std::uint64_t step_cap) {
  check_vertex(start, sampler.size(), "start");
  check_vertex(stop, sampler.size(), "stop");
  std::uint64_t steps = 0;
  for (Index v = start; v != stop; v = sampler.step(v, rng)) {
    if (++steps > step_cap) {
      throw RunawayError("walk exceeded " + std::to_string(step_cap) + " steps");
    }
  }
  return steps;
}

std::uint64_t simulate_walk(const TransitionMatrix& p, Index start, Index stop, std::uint64_t seed) {
  const WalkSampler sampler(p);
  auto rng = trial_engine(seed, 0);
  return simulate_walk(sampler, start, stop, rng);
}

SimStats empirical_hitting(const TransitionMatrix& p, Index start, Index stop, std::uint64_t trials,
                           std::uint64_t seed, SimOptions options) {
  const WalkSampler sampler(p);
  check_vertex(start, sampler.size(), "start");
  check_vertex(stop, sampler.size(), "stop");
  return run_trials(trials, seed, options.threads, [&](std::uint64_t t) {
    auto rng = trial_engine(seed, t);
    return static_cast<double>(simulate_walk(sampler, start, stop, rng, options.step_cap));
  });
}

SimStats empirical_random_target(const TransitionMatrix& p, const Distribution& pi, Index start,
                                 std::uint64_t trials, std::uint64_t seed, SimOptions options) {
  if (pi.size() != p.size()) throw ValidationError("empirical_random_target: size mismatch");
  const WalkSampler sampler(p);
  check_vertex(start, sampler.size(), "start");
  std::vector<double> cumulative(static_cast<std::size_t>(pi.size()));
  double total = 0.0;
  for (Index k = 0; k < pi.size(); ++k) cumulative[static_cast<std::size_t>(k)] = total += pi(k);
  cumulative.back() = total;
  return run_trials(trials, seed, options.threads, [&](std::uint64_t t) {
    auto rng = trial_engine(seed, t);
    const double u = std::generate_canonical<double, 64>(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const Index target = std::min<Index>(static_cast<Index>(it - cumulative.begin()), pi.size() - 1);
    return static_cast<double>(simulate_walk(sampler, start, target, rng, options.step_cap));
  });
}

}  // namespace greenwalk
