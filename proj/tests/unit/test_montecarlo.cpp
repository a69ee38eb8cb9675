#include <greenwalk/analysis.hpp>
#include <greenwalk/families.hpp>
#include <greenwalk/montecarlo.hpp>

#include <gtest/gtest.h>

using namespace greenwalk;

TEST(SimulateWalk, DeterministicCases) {
  const TransitionMatrix k2 = transition_matrix(complete_graph(2));
  EXPECT_EQ(simulate_walk(k2, 1, 1, 7), 0u);
  const TransitionMatrix tri = transition_matrix(WeightedDigraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}));
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(simulate_walk(tri, 0, 2, seed), 2u);
  const TransitionMatrix c4 = transition_matrix(cycle_graph(4));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto steps = simulate_walk(c4, 0, 2, seed);
    EXPECT_GT(steps, 0u);
    EXPECT_EQ(steps % 2, 0u);
  }
}

TEST(SimulateWalk, RunawayAndRangeErrors) {
  const TransitionMatrix c = transition_matrix(cycle_graph(30));
  const WalkSampler sampler(c);
  auto rng = trial_engine(1, 0);
  EXPECT_THROW(simulate_walk(sampler, 0, 15, rng, 3), RunawayError);
  EXPECT_THROW(simulate_walk(c, 0, 30, 1), ValidationError);
  EXPECT_THROW(empirical_hitting(c, 0, 1, 0, 1), ValidationError);
}

TEST(EmpiricalHitting, AgreesWithAnalyticValues) {
  struct Case {
    WeightedDigraph g;
    Index i, j;
    double expected;
  };
  const Case cases[] = {{complete_graph(5), 0, 1, 4.0}, {path_graph(3), 0, 2, 4.0}, {cycle_graph(5), 0, 2, 6.0}};
  for (const auto& c : cases) {
    const SimStats s = empirical_hitting(transition_matrix(c.g), c.i, c.j, 100'000, 42);
    EXPECT_EQ(s.trials, 100'000u);
    EXPECT_EQ(s.seed, 42u);
    EXPECT_LE(std::abs(s.mean - c.expected), 4.0 * s.standard_error) << s.mean;
  }
}

TEST(EmpiricalRandomTarget, IndependentOfStart) {
  const WeightedDigraph c4 = cycle_graph(4);
  const TransitionMatrix p = transition_matrix(c4);
  const Distribution pi = stationary_distribution(c4);
  for (Index i = 0; i < 4; ++i) {
    const SimStats s = empirical_random_target(p, pi, i, 50'000, 3);
    EXPECT_LE(std::abs(s.mean - 2.5), 4.0 * s.standard_error);
  }
  const WeightedDigraph k3 = complete_graph(3);
  const SimStats s = empirical_random_target(transition_matrix(k3), stationary_distribution(k3), 0, 50'000, 4);
  EXPECT_LE(std::abs(s.mean - 4.0 / 3.0), 4.0 * s.standard_error);
}

TEST(EmpiricalHitting, DeterministicAcrossThreadCounts) {
  const TransitionMatrix p = transition_matrix(cycle_graph(7), 0.25);
  const SimStats one = empirical_hitting(p, 0, 3, 20'000, 99, {.threads = 1});
  for (unsigned threads : {2u, 3u, 8u}) {
    const SimStats many = empirical_hitting(p, 0, 3, 20'000, 99, {.threads = threads});
    EXPECT_EQ(one.mean, many.mean);
    EXPECT_EQ(one.standard_error, many.standard_error);
  }
  const SimStats other = empirical_hitting(p, 0, 3, 20'000, 100, {.threads = 1});
  EXPECT_NE(one.mean, other.mean);
}

TEST(EmpiricalHitting, StandardErrorDefinition) {
  const TransitionMatrix tri = transition_matrix(WeightedDigraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}));
  const SimStats s = empirical_hitting(tri, 0, 2, 1000, 5);
  EXPECT_EQ(s.mean, 2.0);
  EXPECT_EQ(s.standard_error, 0.0);
  EXPECT_EQ(empirical_hitting(tri, 0, 1, 1, 5).standard_error, 0.0);
}

TEST(EmpiricalHitting, LazyChainScalesByOneOverOneMinusBeta) {
  const TransitionMatrix lazy = transition_matrix(cycle_graph(5), 0.5);
  const SimStats s = empirical_hitting(lazy, 0, 2, 50'000, 11);
  EXPECT_LE(std::abs(s.mean - 12.0), 4.0 * s.standard_error);
}
