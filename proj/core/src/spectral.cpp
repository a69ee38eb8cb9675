#include <greenwalk/spectral.hpp>

#include <cmath>
#include <limits>

namespace greenwalk {

SpectralDecomposition::SpectralDecomposition(Vector eigenvalues, Matrix eigenvectors, Vector degrees)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      degrees_(std::move(degrees)),
      volume_(degrees_.sum()) {
  const Index n = eigenvalues_.size();
  if (eigenvectors_.rows() != n || eigenvectors_.cols() != n || degrees_.size() != n) {
    throw ValidationError("spectral decomposition: size mismatch");
  }
  Index zero_modes = 0;
  for (Index k = 0; k < n; ++k) {
    if (eigenvalues_(k) < tol::kZeroEigenvalue) ++zero_modes;
  }
  if (zero_modes > 1) throw ValidationError("graph disconnected");
  if (zero_modes == 0) throw NumericalError("Laplacian has no zero eigenvalue", eigenvalues_(0));
  const auto tail = eigenvectors_.rightCols(n - 1);
  reduced_inverse_ = tail * eigenvalues_.tail(n - 1).cwiseInverse().asDiagonal() * tail.transpose();
}

Distribution SpectralDecomposition::stationary() const {
  return Distribution::from_computed(degrees_ / volume_, tol::kDistributionSum, "stationary distribution");
}

Matrix normalized_laplacian(const WeightedDigraph& g) {
  if (!g.undirected()) throw UnsupportedError("normalized Laplacian requires an undirected graph");
  const Vector inv_sqrt = g.degrees().cwiseSqrt().cwiseInverse();
  Matrix l = -(inv_sqrt.asDiagonal() * g.weights() * inv_sqrt.asDiagonal());
  l.diagonal().array() += 1.0;
  // Symmetrize away rounding so the eigensolver sees an exactly symmetric input.
  l = 0.5 * (l + l.transpose()).eval();
  return l;
}

SpectralDecomposition eigensystem(const Matrix& symmetric, const Vector& degrees) {
  if (symmetric.rows() != symmetric.cols()) throw ValidationError("eigensystem: matrix must be square");
  const double asym = max_abs(Matrix(symmetric - symmetric.transpose()));
  if (asym > 1e-12 * std::max(1.0, max_abs(symmetric))) {
    throw ValidationError("eigensystem: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge", 0.0);
  return SpectralDecomposition(solver.eigenvalues(), solver.eigenvectors(), degrees);
}

SpectralDecomposition spectral_decomposition(const WeightedDigraph& g) {
  return eigensystem(normalized_laplacian(g), g.degrees());
}

HittingTimeMatrix spectral_hitting(const SpectralDecomposition& dec) {
  const Index n = dec.size();
  const Matrix& k = dec.reduced_inverse();
  const Vector sqrt_deg = dec.degrees().cwiseSqrt();
  Matrix h(n, n);
  for (Index j = 0; j < n; ++j) {
    const double dj = dec.degrees()(j);
    for (Index i = 0; i < n; ++i) {
      h(i, j) = dec.volume() * (k(j, j) / dj - k(i, j) / (sqrt_deg(i) * sqrt_deg(j)));
    }
  }
  return HittingTimeMatrix(std::move(h));
}

GreensMatrix spectral_greens(const SpectralDecomposition& dec) {
  const Vector sqrt_deg = dec.degrees().cwiseSqrt();
  Matrix g = sqrt_deg.cwiseInverse().asDiagonal() * dec.reduced_inverse() * sqrt_deg.asDiagonal();
  return GreensMatrix(std::move(g), dec.stationary());
}

Vector spectral_access_from_stationary(const SpectralDecomposition& dec) {
  return dec.volume() * dec.reduced_inverse().diagonal().cwiseQuotient(dec.degrees());
}

SpectralMixing spectral_mixing(const SpectralDecomposition& dec, std::span<const Index> pessimal) {
  const Index n = dec.size();
  if (static_cast<Index>(pessimal.size()) != n) throw ValidationError("spectral_mixing: pessimal map size");
  const Matrix& k = dec.reduced_inverse();
  const Vector& deg = dec.degrees();
  SpectralMixing out;
  out.t_mix = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    const Index ip = pessimal[static_cast<std::size_t>(i)];
    const double cross = k(i, ip);
    out.t_mix = std::max(out.t_mix, -dec.volume() / std::sqrt(deg(i) * deg(ip)) * cross);
    out.t_reset -= std::sqrt(deg(i) / deg(ip)) * cross;
  }
  out.t_hit = dec.eigenvalues().tail(n - 1).cwiseInverse().sum();
  return out;
}

}  // namespace greenwalk
