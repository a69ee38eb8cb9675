#pragma once

#include <greenwalk/hitting.hpp>

#include <vector>

namespace greenwalk {

/// Green's function for a target distribution: G Delta = I - 1 target^T and
/// G 1 = 0. The classical function has target pi.
class GreensMatrix {
 public:
  GreensMatrix(Matrix g, Distribution target);
  Index size() const noexcept { return g_.rows(); }
  double operator()(Index i, Index j) const { return g_(i, j); }
  const Matrix& matrix() const noexcept { return g_; }
  const Distribution& target() const noexcept { return target_; }

 private:
  Matrix g_;
  Distribution target_;
};

/// Row i holds the exit frequencies x_j(i, target) of an optimal stopping rule
/// from i to the target; row sums are the access times H(i, target).
class ExitFrequencyMatrix {
 public:
  ExitFrequencyMatrix(Matrix x, Distribution target);
  Index size() const noexcept { return x_.rows(); }
  double operator()(Index i, Index j) const { return x_(i, j); }
  const Matrix& matrix() const noexcept { return x_; }
  const Distribution& target() const noexcept { return target_; }
  /// Row sums, H(i, target).
  Vector access_times() const { return x_.rowwise().sum(); }
  /// Vertices j with x_j(i, target) <= tolerance.
  std::vector<Index> halting_states(Index row, double tolerance = tol::kExitClamp) const;

 private:
  Matrix x_;
  Distribution target_;
};

/// Access time between distributions, H(sigma,tau) = max_j (H(sigma,j) - H(tau,j)).
double access_time(const HittingTimeMatrix& h, const Distribution& sigma, const Distribution& tau);
/// H(i, tau) for every singleton start i.
Vector access_times_to(const HittingTimeMatrix& h, const Distribution& tau);

/// G(i,j) = pi_j (H(pi,j) - H(i,j)). Throws IntegrityError if G 1 != 0.
GreensMatrix greens_function(const HittingTimeMatrix& h, const Distribution& pi);

/// G_tau(i,j) = pi_j (H(tau,j) - H(i,j)).
GreensMatrix greens_general(const HittingTimeMatrix& h, const Distribution& pi,
                            const Distribution& tau);

/// x_j(i,tau) = pi_j (H(i,tau) + H(tau,j) - H(i,j)) with H(i,tau) from the max
/// formula. Noise down to -1e-10 is clamped; anything lower throws.
ExitFrequencyMatrix exit_frequency_matrix(const HittingTimeMatrix& h, const Distribution& pi,
                                          const Distribution& tau);

/// X_tau - h pi^T with h_i = H(i,tau): the exit-frequency route to G_tau.
GreensMatrix greens_from_exit_frequencies(const ExitFrequencyMatrix& x, const Distribution& pi);

struct GreenResiduals {
  /// max |M (I - P) - (I - 1 target^T)|
  double constraint = 0.0;
  /// max |M 1|
  double row_sum = 0.0;
};
GreenResiduals verify_green_constraints(const GreensMatrix& m, const TransitionMatrix& p);

/// Conservation residual max |X (I - P) - (I - 1 target^T)|.
double conservation_residual(const ExitFrequencyMatrix& x, const TransitionMatrix& p);

/// H(i,j) = (G(j,j) - G(i,j)) / pi_j.
HittingTimeMatrix hitting_from_greens(const GreensMatrix& m, const Distribution& pi);

struct MixingReport {
  /// H(i, pi) = max_j -G(i,j) / pi_j.
  Vector mixing_times;
  double t_mix = 0.0;
  double t_reset = 0.0;
  /// Tr(G).
  double t_hit = 0.0;
  /// pessimal[i] = i', the lowest-index vertex maximizing H(., i).
  std::vector<Index> pessimal;
  /// Zeros of each row of X_pi.
  std::vector<std::vector<Index>> halting_states;
  /// Vertices z with H(z, pi) = T_mix.
  std::vector<Index> mixing_pessimal;
  /// Largest deviation seen in the undirected cross-checks (0 when not run).
  double crosscheck_residual = 0.0;
};

/// When `reversible` is set, H(i,pi) is cross-checked against both
/// H(i',i) - H(pi,i) and H(i,i') - H(pi,i'); a failure throws IntegrityError
/// naming the vertex.
MixingReport mixing_report(const HittingTimeMatrix& h, const GreensMatrix& m,
                           const Distribution& pi, bool reversible = false);

/// Lowest-index argmax of column `target` of H, with ties within `tolerance`.
Index pessimal_vertex(const HittingTimeMatrix& h, Index target, double tolerance);

}  // namespace greenwalk
