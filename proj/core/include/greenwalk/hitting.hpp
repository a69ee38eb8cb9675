#pragma once

#include <greenwalk/graph.hpp>

#include <cstdint>

namespace greenwalk {

/// Z = (I - P + 1 pi^T)^{-1}.
class FundamentalMatrix {
 public:
  explicit FundamentalMatrix(Matrix z) : z_(std::move(z)) {}
  Index size() const noexcept { return z_.rows(); }
  double operator()(Index i, Index j) const { return z_(i, j); }
  const Matrix& matrix() const noexcept { return z_; }

 private:
  Matrix z_;
};

/// Expected hitting times H(i,j), with H(i,i) = 0.
class HittingTimeMatrix {
 public:
  /// Requires a square, finite matrix; the diagonal is forced to zero.
  explicit HittingTimeMatrix(Matrix h);
  Index size() const noexcept { return h_.rows(); }
  double operator()(Index i, Index j) const { return h_(i, j); }
  const Matrix& matrix() const noexcept { return h_; }

 private:
  Matrix h_;
};

/// Throws NumericalError when Z (I - P + 1 pi^T) misses I by more than 1e-9 n.
FundamentalMatrix fundamental_matrix(const TransitionMatrix& p, const Distribution& pi);

/// H(i,j) = (Z(j,j) - Z(i,j)) / pi_j from a single factorization.
HittingTimeMatrix hitting_times(const TransitionMatrix& p, const Distribution& pi);
HittingTimeMatrix hitting_times(const FundamentalMatrix& z, const Distribution& pi);

/// H(sigma, j) = sum_i sigma_i H(i,j).
double access_to_vertex(const HittingTimeMatrix& h, const Distribution& sigma, Index j);
/// The row vector sigma^T H, i.e. H(sigma, j) for every j.
Vector access_to_vertices(const HittingTimeMatrix& h, const Distribution& sigma);

/// Ret(j) = 1 / pi_j.
Vector return_times(const Distribution& pi);

struct HitTime {
  double value = 0.0;
  /// max_i |sum_k pi_k H(i,k) - T_hit|; the random target identity makes it zero.
  double residual = 0.0;
};
HitTime hit_time(const HittingTimeMatrix& h, const Distribution& pi);

/// max over i != j of |H(i,j) - 1 - sum_k P(i,k) H(k,j)|.
double first_step_residual(const HittingTimeMatrix& h, const TransitionMatrix& p);

struct CycleResiduals {
  /// max |H(i,j)+H(j,k)+H(k,i) - H(j,i)-H(i,k)-H(k,j)| over (sampled) triples.
  double triple = 0.0;
  /// max |H(pi,i)+H(i,j) - H(pi,j)-H(j,i)| over all pairs.
  double pair = 0.0;
};

struct CycleCheckOptions {
  /// Exhaustive up to this many vertices, sampled above.
  Index exhaustive_limit = 50;
  std::size_t samples = 10'000;
  std::uint64_t seed = 0x5eed;
};

/// Residuals of the cycle reversing identities. They vanish for reversible
/// chains; for other chains they are reported, not enforced.
CycleResiduals check_cycle_identities(const HittingTimeMatrix& h, const Distribution& pi,
                                      CycleCheckOptions options = {});

}  // namespace greenwalk
