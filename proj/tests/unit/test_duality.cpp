#include <greenwalk/analysis.hpp>
#include <greenwalk/duality.hpp>
#include <greenwalk/families.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace greenwalk;
namespace oracle = greenwalk::testing;

namespace {

struct Chain {
  TransitionMatrix p;
  Distribution pi;
};

Chain chain_of(const WeightedDigraph& g, double beta = 0.0) {
  TransitionMatrix p = transition_matrix(g, beta);
  Distribution pi = g.undirected() ? stationary_distribution(g) : stationary_distribution(p);
  return {std::move(p), std::move(pi)};
}

WeightedDigraph directed_triangle() { return WeightedDigraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}); }

}  // namespace

TEST(ReverseChain, Examples) {
  const Chain c4 = chain_of(cycle_graph(4));
  EXPECT_LE(max_abs(Matrix(reverse_chain(c4.p, c4.pi).matrix() - c4.p.matrix())), 1e-15);
  const Chain tri = chain_of(directed_triangle());
  const TransitionMatrix rev = reverse_chain(tri.p, tri.pi);
  EXPECT_NEAR(rev(0, 2), 1.0, 1e-12);
  EXPECT_NEAR(rev(2, 1), 1.0, 1e-12);
  EXPECT_NEAR(rev(1, 0), 1.0, 1e-12);
  std::mt19937_64 rng(14);
  for (int k = 0; k < 10; ++k) {
    const Chain c = chain_of(oracle::random_strong_digraph(3 + k, 0.3, rng));
    const TransitionMatrix r = reverse_chain(c.p, c.pi);
    EXPECT_LE(stationary_residual(r, c.pi), 1e-10);
    EXPECT_LE(max_abs(Matrix(reverse_chain(r, c.pi).matrix() - c.p.matrix())), 1e-12);
  }
}

TEST(ForgetDistribution, Examples) {
  const Chain p3 = chain_of(path_graph(3));
  const Distribution mu = forget_distribution(p3.p, p3.pi);
  EXPECT_NEAR(mu(0), 0.0, 1e-12);
  EXPECT_NEAR(mu(1), 1.0, 1e-12);
  EXPECT_NEAR(mu(2), 0.0, 1e-12);
  const Chain c4 = chain_of(cycle_graph(4));
  EXPECT_TRUE(forget_distribution(c4.p, c4.pi).values().isApproxToConstant(0.25, 1e-12));
  const Chain tri = chain_of(directed_triangle());
  EXPECT_LE(max_abs(Vector(forget_distribution(tri.p, tri.pi).values() - Vector::Constant(3, 1.0 / 3))), 1e-12);
}

TEST(ForgetTime, Examples) {
  const Chain p3 = chain_of(path_graph(3));
  EXPECT_NEAR(forget_time(p3.p, p3.pi), 1.0, 1e-12);
  const Chain c4 = chain_of(cycle_graph(4));
  EXPECT_NEAR(forget_time(c4.p, c4.pi), 1.5, 1e-12);
  std::mt19937_64 rng(15);
  const Chain c = chain_of(oracle::random_strong_digraph(8, 0.3, rng));
  const TransitionMatrix rev = reverse_chain(c.p, c.pi);
  const ChainAnalysis back = analyze(WeightedDigraph(8, [&] {
    std::vector<Arc> arcs;
    for (Index i = 0; i < 8; ++i)
      for (Index j = 0; j < 8; ++j)
        if (rev(i, j) > 0) arcs.push_back({i, j, rev(i, j)});
    return arcs;
  }()));
  EXPECT_NEAR(forget_time(c.p, c.pi), back.mixing.t_reset, 1e-8 * std::max(1.0, back.mixing.t_reset));
}

TEST(ForgetTime, NoSingletonTargetDoesBetter) {
  std::mt19937_64 rng(16);
  for (int k = 0; k < 10; ++k) {
    const Chain c = chain_of(oracle::random_strong_digraph(4 + k, 0.25, rng));
    const HittingTimeMatrix h = hitting_times(c.p, c.pi);
    const double t = forget_time(c.p, c.pi);
    EXPECT_LE(t, h.matrix().colwise().maxCoeff().minCoeff() + 1e-9);
    // Random targets never beat mu either.
    for (int s = 0; s < 5; ++s) {
      const Distribution tau(oracle::random_distribution(c.p.size(), rng));
      EXPECT_LE(t, access_times_to(h, tau).maxCoeff() + 1e-9);
    }
  }
}

TEST(PiCore, PathAndCycle) {
  const Chain p3 = chain_of(path_graph(3));
  const HittingTimeMatrix h3 = hitting_times(p3.p, p3.pi);
  const PiCore core = pi_core(p3.p, p3.pi, exit_frequency_matrix(h3, p3.pi, p3.pi));
  EXPECT_LE(max_abs(Vector(core.offsets - Vector{{0.0, 0.5, 0.0}})), 1e-12);
  EXPECT_LE(max_abs(Vector(core.core.values() - Vector::Unit(3, 1))), 1e-12);
  const Chain c4 = chain_of(cycle_graph(4));
  const HittingTimeMatrix h4 = hitting_times(c4.p, c4.pi);
  const PiCore core4 = pi_core(c4.p, c4.pi, exit_frequency_matrix(h4, c4.pi, c4.pi));
  EXPECT_LE(max_abs(Vector(core4.core.values() - c4.pi.values())), 1e-12);
}

TEST(PiCore, RoutesAgreeOnRandomDigraphs) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const Chain c = chain_of(oracle::random_strong_digraph(6, 0.3, rng));
    const HittingTimeMatrix h = hitting_times(c.p, c.pi);
    EXPECT_NO_THROW(pi_core(c.p, c.pi, exit_frequency_matrix(h, c.pi, c.pi)));
  }
}

TEST(DualityChecks, PathHandValues) {
  const Chain p3 = chain_of(path_graph(3));
  const DualityReport d = duality_checks(p3.p, p3.pi);
  const HittingTimeMatrix h = hitting_times(p3.p, p3.pi);
  EXPECT_NEAR(access_times_to(h, p3.pi)(0), 1.5, 1e-12);
  EXPECT_NEAR(access_times_to(h, d.core)(0), 1.0, 1e-12);
  EXPECT_NEAR(access_time(h, d.core, p3.pi), 0.5, 1e-12);
  EXPECT_LE(d.worst_residual(), 1e-12);
}

TEST(DualityChecks, CycleReducesToSymmetry) {
  const Chain c4 = chain_of(cycle_graph(4));
  const DualityReport d = duality_checks(c4.p, c4.pi);
  EXPECT_LE(d.worst_residual(), 1e-12);
  EXPECT_LE(max_abs(Vector(d.reverse_forget.values() - c4.pi.values())), 1e-12);
}

TEST(DualityChecks, RandomDigraphs) {
  std::mt19937_64 rng(18);
  for (int k = 0; k < 20; ++k) {
    const Chain c = chain_of(oracle::random_strong_digraph(2 + k, 0.2, rng), k % 3 == 0 ? 0.3 : 0.0);
    const DualityReport d = duality_checks(c.p, c.pi);
    for (const auto& r : d.residuals) EXPECT_LE(r.value, 1e-8) << r.name;
    EXPECT_NEAR(d.t_reset, d.reverse_t_forget, 1e-8 * std::max(1.0, d.t_reset));
    EXPECT_NEAR(d.t_forget, d.reverse_t_reset, 1e-8 * std::max(1.0, d.t_forget));
    EXPECT_GE(d.forget.values().minCoeff(), 0.0);
    EXPECT_GE(d.core.values().minCoeff(), 0.0);
  }
}

TEST(DualityChecks, InvolutionOnReversibleChains) {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 5; ++k) {
    const Chain c = chain_of(oracle::random_connected_graph(5 + k, 0.3, true, rng));
    const DualityReport d = duality_checks(c.p, c.pi);
    // Reversible: P-hat = P, so mu = mu-hat and the reverse report repeats the forward one.
    EXPECT_LE(max_abs(Matrix(d.reverse.matrix() - c.p.matrix())), 1e-12);
    EXPECT_LE(max_abs(Vector(d.forget.values() - d.reverse_forget.values())), 1e-8);
    const DualityReport twice = duality_checks(d.reverse, c.pi);
    EXPECT_LE(max_abs(Vector(twice.core.values() - d.core.values())), 1e-8);
  }
}
