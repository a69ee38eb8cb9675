#include <greenwalk/analysis.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace greenwalk;
namespace oracle = greenwalk::testing;

namespace {

WeightedDigraph edges(const char* text, bool undirected = true) {
  return parse_graph(text, GraphFormat::EdgeList, {undirected});
}

}  // namespace

TEST(FundamentalMatrix, DefiningProperty) {
  const TransitionMatrix p = transition_matrix(edges("0 1\n"), 0.5);
  const Distribution pi = stationary_distribution(p);
  const FundamentalMatrix z = fundamental_matrix(p, pi);
  const Matrix a = Matrix::Identity(2, 2) - p.matrix() + Vector::Ones(2) * pi.values().transpose();
  EXPECT_LE(max_abs(Matrix(z.matrix() * a - Matrix::Identity(2, 2))), 1e-12);
  EXPECT_LE(max_abs(Vector(z.matrix().rowwise().sum() - Vector::Ones(2))), 1e-12);
}

TEST(HittingTimes, HandValues) {
  // P3: H(0,1)=1, H(1,0)=3, H(0,2)=4.
  const ChainAnalysis p3 = analyze(edges("0 1\n1 2\n"));
  EXPECT_NEAR(p3.hitting(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(p3.hitting(1, 0), 3.0, 1e-12);
  EXPECT_NEAR(p3.hitting(0, 2), 4.0, 1e-12);
  EXPECT_EQ(p3.hitting(1, 1), 0.0);
  // Directed 3-cycle: H(i,i+k) = k.
  const ChainAnalysis cyc = analyze(edges("0 1\n1 2\n2 0\n", false));
  EXPECT_NEAR(cyc.hitting(0, 2), 2.0, 1e-12);
  EXPECT_NEAR(cyc.hitting(1, 0), 2.0, 1e-12);
  EXPECT_NEAR(cyc.hitting(2, 0), 1.0, 1e-12);
}

TEST(HittingTimes, MatchesFirstStepOracle) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 40; ++k) {
    const WeightedDigraph g = k % 2 ? oracle::random_strong_digraph(2 + k, 0.15, rng)
                                    : oracle::random_connected_graph(2 + k, 0.15, true, rng);
    const ChainAnalysis a = analyze(g);
    const Matrix oracle = oracle::first_step_hitting(a.transition.matrix());
    EXPECT_LE(max_abs(Matrix(a.hitting.matrix() - oracle)) / std::max(1.0, max_abs(oracle)), 1e-10) << k;
    EXPECT_LE(first_step_residual(a.hitting, a.transition), 1e-8 * std::max(1.0, max_abs(oracle)));
    EXPECT_GE(a.hitting.matrix().minCoeff(), 0.0);
  }
}

TEST(HittingTimes, AccessAndReturnTimes) {
  const ChainAnalysis p3 = analyze(edges("0 1\n1 2\n"));
  // H(pi, .) = (2.5, 0.5, 2.5).
  const Vector from_pi = access_to_vertices(p3.hitting, p3.stationary);
  EXPECT_NEAR(from_pi(0), 2.5, 1e-12);
  EXPECT_NEAR(from_pi(1), 0.5, 1e-12);
  EXPECT_NEAR(access_to_vertex(p3.hitting, Distribution::point_mass(3, 0), 2), 4.0, 1e-12);
  const Vector ret = return_times(p3.stationary);
  EXPECT_DOUBLE_EQ(ret(0), 4.0);
  EXPECT_DOUBLE_EQ(ret(1), 2.0);
}

TEST(HitTime, CompleteGraphAndRandomTargetIdentity) {
  const ChainAnalysis k3 = analyze(edges("0 1\n1 2\n0 2\n"));
  const HitTime t = hit_time(k3.hitting, k3.stationary);
  EXPECT_NEAR(t.value, 4.0 / 3.0, 1e-12);
  EXPECT_LE(t.residual, 1e-10);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const ChainAnalysis a = analyze(oracle::random_strong_digraph(3 + k, 0.2, rng));
    const HitTime h = hit_time(a.hitting, a.stationary);
    EXPECT_LE(h.residual, 1e-8 * std::max(1.0, h.value));
  }
}

TEST(CycleIdentities, HandExamples) {
  const ChainAnalysis p3 = analyze(edges("0 1\n1 2\n"));
  const CycleResiduals r = check_cycle_identities(p3.hitting, p3.stationary);
  EXPECT_LE(r.triple, 1e-12);
  EXPECT_LE(r.pair, 1e-12);
  const ChainAnalysis cyc = analyze(edges("0 1\n1 2\n2 0\n", false));
  EXPECT_NEAR(check_cycle_identities(cyc.hitting, cyc.stationary).triple, 3.0, 1e-12);
}

TEST(CycleIdentities, HoldForUndirectedGraphs) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    const ChainAnalysis a = analyze(oracle::random_connected_graph(5 + 7 * k, 0.2, true, rng));
    const CycleResiduals r = check_cycle_identities(a.hitting, a.stationary);
    const double scale = std::max(1.0, a.mixing.t_hit);
    EXPECT_LE(r.triple, 1e-8 * scale);
    EXPECT_LE(r.pair, 1e-8 * scale);
  }
}

TEST(HittingTimeMatrix, RejectsNonFinite) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(HittingTimeMatrix{m}, Error);
  EXPECT_THROW(HittingTimeMatrix{Matrix::Zero(2, 3)}, Error);
}
