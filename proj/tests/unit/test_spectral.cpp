#include <greenwalk/analysis.hpp>
#include <greenwalk/families.hpp>
#include <greenwalk/spectral.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace greenwalk;
namespace oracle = greenwalk::testing;

namespace {

WeightedDigraph edges(const char* text, bool undirected = true) {
  return parse_graph(text, GraphFormat::EdgeList, {undirected});
}

}  // namespace

TEST(NormalizedLaplacian, Examples) {
  const Matrix k2 = normalized_laplacian(edges("0 1\n"));
  EXPECT_TRUE(k2.isApprox((Matrix(2, 2) << 1, -1, -1, 1).finished()));
  const Matrix c4 = normalized_laplacian(cycle_graph(4));
  EXPECT_DOUBLE_EQ(c4(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(c4(0, 1), -0.5);
  EXPECT_DOUBLE_EQ(c4(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(c4(0, 3), -0.5);
  const Matrix p3 = normalized_laplacian(path_graph(3));
  EXPECT_TRUE(p3.diagonal().isOnes());
  EXPECT_NEAR(p3(0, 1), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p3(1, 2), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LE(max_abs(Matrix(p3 - p3.transpose())), 1e-12);
}

TEST(NormalizedLaplacian, RejectsDigraphs) {
  EXPECT_THROW(normalized_laplacian(edges("0 1\n1 2\n2 0\n", false)), UnsupportedError);
  EXPECT_THROW(spectral_decomposition(edges("0 1\n1 0\n", false)), UnsupportedError);
}

TEST(Eigensystem, Spectra) {
  const Vector c4 = spectral_decomposition(cycle_graph(4)).eigenvalues();
  const double c4_expected[] = {0, 1, 1, 2};
  for (Index k = 0; k < 4; ++k) EXPECT_NEAR(c4(k), c4_expected[k], 1e-12);
  const Vector k3 = spectral_decomposition(complete_graph(3)).eigenvalues();
  EXPECT_NEAR(k3(0), 0.0, 1e-12);
  EXPECT_NEAR(k3(1), 1.5, 1e-12);
  EXPECT_NEAR(k3(2), 1.5, 1e-12);
  const Vector k2 = spectral_decomposition(complete_graph(2)).eigenvalues();
  EXPECT_NEAR(k2(0), 0.0, 1e-12);
  EXPECT_NEAR(k2(1), 2.0, 1e-12);
}

TEST(Eigensystem, TypeInvariants) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 10; ++k) {
    const WeightedDigraph g = oracle::random_connected_graph(3 + 5 * k, 0.2, true, rng);
    const Matrix l = normalized_laplacian(g);
    const SpectralDecomposition dec = spectral_decomposition(g);
    const Matrix& phi = dec.eigenvectors();
    const Index n = g.size();
    EXPECT_LE(max_abs(Matrix(phi.transpose() * phi - Matrix::Identity(n, n))), 1e-10);
    EXPECT_LE(max_abs(Matrix(l - phi * dec.eigenvalues().asDiagonal() * phi.transpose())), 1e-9);
    EXPECT_NEAR(dec.eigenvalues()(0), 0.0, 1e-10);
    EXPECT_GT(dec.eigenvalues()(1), 1e-10);
    EXPECT_TRUE(std::is_sorted(dec.eigenvalues().begin(), dec.eigenvalues().end()));
    // Zero mode is proportional to sqrt(deg).
    const Vector root = g.degrees().cwiseSqrt().normalized();
    EXPECT_NEAR(std::abs(root.dot(phi.col(0))), 1.0, 1e-10);
    EXPECT_LE(max_abs(Vector(dec.stationary().values() - stationary_distribution(g).values())), 1e-12);
  }
}

TEST(Eigensystem, Disconnected) {
  const WeightedDigraph g(4, {{0, 1, 1.0}, {2, 3, 1.0}}, true);
  EXPECT_THROW(spectral_decomposition(g), ValidationError);
}

TEST(Eigensystem, RejectsAsymmetricInput) {
  Matrix m(2, 2);
  m << 1, -1, 0, 1;
  EXPECT_THROW(eigensystem(m, Vector::Ones(2)), Error);
}

TEST(SpectralHitting, Examples) {
  EXPECT_NEAR(spectral_hitting(spectral_decomposition(cycle_graph(5)))(0, 2), 6.0, 1e-12);
  const HittingTimeMatrix k5 = spectral_hitting(spectral_decomposition(complete_graph(5)));
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) EXPECT_NEAR(k5(i, j), i == j ? 0.0 : 4.0, 1e-12);
  EXPECT_NEAR(spectral_hitting(spectral_decomposition(path_graph(3)))(0, 2), 4.0, 1e-12);
}

TEST(SpectralGreens, Examples) {
  EXPECT_NEAR(spectral_greens(spectral_decomposition(complete_graph(3)))(1, 1), 4.0 / 9.0, 1e-12);
  EXPECT_NEAR(spectral_greens(spectral_decomposition(cycle_graph(4)))(0, 2), -0.375, 1e-12);
  EXPECT_NEAR(spectral_greens(spectral_decomposition(path_graph(3)))(0, 0), 0.625, 1e-12);
}

TEST(SpectralMixing, Examples) {
  const ChainAnalysis c4 = analyze(cycle_graph(4));
  const SpectralMixing m = spectral_mixing(spectral_decomposition(c4.graph), c4.mixing.pessimal);
  EXPECT_NEAR(m.t_hit, 2.5, 1e-12);
  EXPECT_NEAR(m.t_mix, 1.5, 1e-12);
  const ChainAnalysis k3 = analyze(complete_graph(3));
  EXPECT_NEAR(spectral_mixing(spectral_decomposition(k3.graph), k3.mixing.pessimal).t_hit, 4.0 / 3.0, 1e-12);
}

TEST(Spectral, RouteEquivalenceAndDiagonalIdentity) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 25; ++k) {
    const WeightedDigraph g = oracle::random_connected_graph(2 + 2 * k, 0.25, k % 2 == 0, rng);
    const ChainAnalysis a = analyze(g);
    const SpectralDecomposition dec = spectral_decomposition(g);
    const double scale = std::max(1.0, max_abs(a.hitting.matrix()));
    EXPECT_LE(max_abs(Matrix(spectral_hitting(dec).matrix() - a.hitting.matrix())) / scale, 1e-8);
    EXPECT_LE(max_abs(Matrix(spectral_greens(dec).matrix() - a.greens.matrix())), 1e-8);
    const Vector lemma = spectral_access_from_stationary(dec);
    const Vector direct = access_to_vertices(a.hitting, a.stationary);
    EXPECT_LE(max_abs(Vector(lemma - direct)) / scale, 1e-8);
    const SpectralMixing m = spectral_mixing(dec, a.mixing.pessimal);
    EXPECT_NEAR(m.t_hit, a.greens.matrix().trace(), 1e-8 * std::max(1.0, m.t_hit));
    EXPECT_NEAR(m.t_reset, a.mixing.t_reset, 1e-8 * std::max(1.0, m.t_reset));
  }
}
