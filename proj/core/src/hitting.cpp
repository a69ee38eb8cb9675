#include <greenwalk/hitting.hpp>

#include <cmath>
#include <random>

namespace greenwalk {

HittingTimeMatrix::HittingTimeMatrix(Matrix h) : h_(std::move(h)) {
  if (h_.rows() != h_.cols()) throw ValidationError("hitting time matrix must be square");
  if (!h_.allFinite()) throw NumericalError("hitting time matrix has non-finite entries", 0.0);
  h_.diagonal().setZero();
}

FundamentalMatrix fundamental_matrix(const TransitionMatrix& p, const Distribution& pi) {
  const Index n = p.size();
  if (pi.size() != n) throw ValidationError("distribution size does not match chain");
  Matrix a = Matrix::Identity(n, n) - p.matrix() + Vector::Ones(n) * pi.values().transpose();
  Matrix z = a.partialPivLu().inverse();
  const double residual = max_abs(Matrix(z * a - Matrix::Identity(n, n)));
  if (!std::isfinite(residual) || residual > tol::matrix(n)) {
    throw NumericalError("fundamental matrix solve failed", residual);
  }
  return FundamentalMatrix(std::move(z));
}

HittingTimeMatrix hitting_times(const FundamentalMatrix& z, const Distribution& pi) {
  const Index n = z.size();
  const Matrix& zm = z.matrix();
  Matrix h(n, n);
  for (Index j = 0; j < n; ++j) {
    const double zjj = zm(j, j);
    const double inv_pi = 1.0 / pi(j);
    for (Index i = 0; i < n; ++i) h(i, j) = (zjj - zm(i, j)) * inv_pi;
  }
  return HittingTimeMatrix(std::move(h));
}

HittingTimeMatrix hitting_times(const TransitionMatrix& p, const Distribution& pi) {
  return hitting_times(fundamental_matrix(p, pi), pi);
}

double access_to_vertex(const HittingTimeMatrix& h, const Distribution& sigma, Index j) {
  return sigma.values().dot(h.matrix().col(j));
}

Vector access_to_vertices(const HittingTimeMatrix& h, const Distribution& sigma) {
  return h.matrix().transpose() * sigma.values();
}

Vector return_times(const Distribution& pi) { return pi.values().cwiseInverse(); }

HitTime hit_time(const HittingTimeMatrix& h, const Distribution& pi) {
  const Vector per_start = h.matrix() * pi.values();
  HitTime out;
  out.value = pi.values().dot(per_start);
  out.residual = (per_start.array() - out.value).abs().maxCoeff();
  return out;
}

double first_step_residual(const HittingTimeMatrix& h, const TransitionMatrix& p) {
  const Index n = h.size();
  const Matrix expected = Matrix::Ones(n, n) + p.matrix() * h.matrix();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j) worst = std::max(worst, std::abs(h(i, j) - expected(i, j)));
    }
  }
  return worst;
}

CycleResiduals check_cycle_identities(const HittingTimeMatrix& h, const Distribution& pi,
                                      CycleCheckOptions options) {
  const Index n = h.size();
  const Matrix& m = h.matrix();
  auto triple = [&](Index i, Index j, Index k) {
    return std::abs(m(i, j) + m(j, k) + m(k, i) - m(j, i) - m(i, k) - m(k, j));
  };
  CycleResiduals out;
  if (n <= options.exhaustive_limit) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) out.triple = std::max(out.triple, triple(i, j, k));
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (std::size_t s = 0; s < options.samples; ++s) {
      const Index i = pick(rng), j = pick(rng), k = pick(rng);
      out.triple = std::max(out.triple, triple(i, j, k));
    }
  }
  const Vector from_pi = access_to_vertices(h, pi);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out.pair = std::max(out.pair, std::abs(from_pi(i) + m(i, j) - from_pi(j) - m(j, i)));
    }
  }
  return out;
}

}  // namespace greenwalk
