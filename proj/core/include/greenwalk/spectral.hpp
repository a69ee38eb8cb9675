#pragma once

#include <greenwalk/greens.hpp>

#include <span>

namespace greenwalk {

/// Eigensystem of the symmetric normalized Laplacian I - D^{-1/2} W D^{-1/2},
/// eigenvalues ascending, eigenvectors as orthonormal columns. Degrees and
/// volume of the underlying graph travel with it.
class SpectralDecomposition {
 public:
  SpectralDecomposition(Vector eigenvalues, Matrix eigenvectors, Vector degrees);

  Index size() const noexcept { return eigenvalues_.size(); }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  const Vector& degrees() const noexcept { return degrees_; }
  double volume() const noexcept { return volume_; }
  Distribution stationary() const;

  /// K(i,j) = sum_{k>=1} phi_k(i) phi_k(j) / lambda_k, the zero mode dropped.
  const Matrix& reduced_inverse() const noexcept { return reduced_inverse_; }

 private:
  Vector eigenvalues_;
  Matrix eigenvectors_;
  Vector degrees_;
  double volume_;
  Matrix reduced_inverse_;
};

/// I - D^{-1/2} W D^{-1/2}. Throws UnsupportedError for directed graphs.
Matrix normalized_laplacian(const WeightedDigraph& g);

/// Decomposes a symmetric Laplacian-like matrix. Exactly one eigenvalue may
/// fall below 1e-10; more means the graph is disconnected.
SpectralDecomposition eigensystem(const Matrix& symmetric, const Vector& degrees);
SpectralDecomposition spectral_decomposition(const WeightedDigraph& g);

/// H(i,j) = vol * sum_{k>=1} (phi_kj^2 / deg j - phi_ki phi_kj / sqrt(deg i deg j)) / lambda_k.
HittingTimeMatrix spectral_hitting(const SpectralDecomposition& dec);
/// G(i,j) = sqrt(deg j / deg i) * sum_{k>=1} phi_ki phi_kj / lambda_k.
GreensMatrix spectral_greens(const SpectralDecomposition& dec);
/// H(pi,j) = (vol / deg j) * sum_{k>=1} phi_kj^2 / lambda_k.
Vector spectral_access_from_stationary(const SpectralDecomposition& dec);

struct SpectralMixing {
  double t_mix = 0.0;
  double t_reset = 0.0;
  double t_hit = 0.0;
};

/// `pessimal[i]` must be an i-pessimal vertex (see mixing_report).
SpectralMixing spectral_mixing(const SpectralDecomposition& dec, std::span<const Index> pessimal);

}  // namespace greenwalk
