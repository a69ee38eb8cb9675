#pragma once

#include <greenwalk/types.hpp>

#include <iosfwd>
#include <string_view>
#include <vector>

namespace greenwalk {

struct Arc {
  Index source = 0;
  Index target = 0;
  double weight = 1.0;
};

/// Weighted digraph on vertices 0..n-1. Immutable once constructed.
///
/// Undirected graphs are stored symmetrized: each input edge {i,j} contributes
/// its weight to both (i,j) and (j,i); a self-loop contributes once. Parallel
/// arcs accumulate.
class WeightedDigraph {
 public:
  /// Throws ValidationError on out-of-range indices, negative or non-finite
  /// weights, or a vertex with zero total out-weight.
  WeightedDigraph(Index n, std::vector<Arc> arcs, bool undirected = false);

  Index size() const noexcept { return n_; }
  bool undirected() const noexcept { return undirected_; }
  /// Stored arcs, after symmetrization.
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  /// Dense weight matrix W(i,j).
  const Matrix& weights() const noexcept { return weights_; }
  double weight(Index i, Index j) const { return weights_(i, j); }
  double degree(Index i) const { return degrees_(i); }
  const Vector& degrees() const noexcept { return degrees_; }
  /// Sum of all out-degrees.
  double volume() const noexcept { return volume_; }

 private:
  Index n_;
  bool undirected_;
  std::vector<Arc> arcs_;
  Matrix weights_;
  Vector degrees_;
  double volume_;
};

/// Probability vector on 0..n-1.
class Distribution {
 public:
  /// Strict: entries >= 0 and |sum - 1| <= 1e-12, else ValidationError.
  explicit Distribution(Vector p);

  /// For vectors produced by a computation: entries in [-tolerance, 0) are
  /// clamped to zero and the vector renormalized. Larger violations throw
  /// IntegrityError.
  static Distribution from_computed(Vector p, double tolerance, std::string_view what);
  static Distribution point_mass(Index n, Index vertex);
  static Distribution uniform(Index n);

  Index size() const noexcept { return p_.size(); }
  double operator()(Index i) const { return p_(i); }
  const Vector& values() const noexcept { return p_; }

 private:
  Vector p_;
};

/// Row-stochastic transition matrix P = beta*I + (1-beta)*P0.
class TransitionMatrix {
 public:
  /// Validates nonnegativity and row sums (1e-12); laziness in [0,1).
  explicit TransitionMatrix(Matrix p, double laziness = 0.0);

  Index size() const noexcept { return p_.rows(); }
  double operator()(Index i, Index j) const { return p_(i, j); }
  const Matrix& matrix() const noexcept { return p_; }
  double laziness() const noexcept { return laziness_; }
  /// The Laplace operator I - P.
  Matrix laplace_operator() const;

 private:
  Matrix p_;
  double laziness_;
};

TransitionMatrix transition_matrix(const WeightedDigraph& g, double laziness = 0.0);

/// One strongly connected component spans every vertex.
bool strongly_connected(const WeightedDigraph& g);
/// Same test on the support {(i,j) : P(i,j) > 0}.
bool irreducible(const TransitionMatrix& p);

/// Solves pi^T (P - I) = 0, sum(pi) = 1 by dense LU with the last equation
/// replaced by the normalization. Throws ValidationError("not strongly
/// connected") for reducible chains.
Distribution stationary_distribution(const TransitionMatrix& p);

/// deg/vol for undirected graphs, otherwise the LU solve on the walk's P.
Distribution stationary_distribution(const WeightedDigraph& g);

/// max_j |(pi^T P - pi^T)_j|.
double stationary_residual(const TransitionMatrix& p, const Distribution& pi);

enum class GraphFormat { EdgeList, Json };

struct ParseOptions {
  /// Symmetrize even without a "# undirected" header.
  bool undirected = false;
};

/// Edge list: one "src dst [weight]" per line, '#' starts a comment, a
/// "# undirected" line toggles symmetrization. JSON:
/// {"n": int, "undirected": bool, "arcs": [[src, dst, weight], ...]}.
/// Throws ParseError for malformed input and ValidationError for graphs that
/// parse but violate WeightedDigraph invariants.
WeightedDigraph parse_graph(std::string_view text, GraphFormat format, ParseOptions options = {});
WeightedDigraph read_graph(std::istream& in, GraphFormat format, ParseOptions options = {});

}  // namespace greenwalk
