#include <greenwalk/graph.hpp>

#include <cmath>
#include <string>

namespace greenwalk {

namespace {

// Vertices reachable from 0 following arcs forward, and following them backward.
bool spans_one_component(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& support) {
  const Index n = support.rows();
  if (n == 0) return false;
  auto reaches_all = [&](bool transpose) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    Index count = 1;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v = 0; v < n; ++v) {
        const bool arc = transpose ? support(v, u) : support(u, v);
        if (arc && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reaches_all(false) && reaches_all(true);
}

}  // namespace

WeightedDigraph::WeightedDigraph(Index n, std::vector<Arc> arcs, bool undirected)
    : n_(n), undirected_(undirected) {
  if (n <= 0) throw ValidationError("graph must have at least one vertex");
  weights_ = Matrix::Zero(n, n);
  arcs_.reserve(undirected ? 2 * arcs.size() : arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n) {
      throw ValidationError("arc " + std::to_string(k) + ": vertex index out of range [0, " +
                            std::to_string(n) + ")");
    }
    if (!std::isfinite(a.weight) || a.weight < 0.0) {
      throw ValidationError("arc " + std::to_string(k) + ": negative weight");
    }
    weights_(a.source, a.target) += a.weight;
    arcs_.push_back(a);
    if (undirected && a.source != a.target) {
      weights_(a.target, a.source) += a.weight;
      arcs_.push_back(Arc{a.target, a.source, a.weight});
    }
  }
  degrees_ = weights_.rowwise().sum();
  for (Index i = 0; i < n; ++i) {
    if (!(degrees_(i) > 0.0)) {
      throw ValidationError("vertex " + std::to_string(i) + " has zero out-weight");
    }
  }
  volume_ = degrees_.sum();
}

Distribution::Distribution(Vector p) : p_(std::move(p)) {
  if (p_.size() == 0) throw ValidationError("empty distribution");
  for (Index i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_(i)) || p_(i) < 0.0) {
      throw ValidationError("distribution entry " + std::to_string(i) + " is negative");
    }
  }
  if (std::abs(p_.sum() - 1.0) > tol::kDistributionSum) {
    throw ValidationError("distribution does not sum to 1");
  }
}

Distribution Distribution::from_computed(Vector p, double tolerance, std::string_view what) {
  for (Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || p(i) < -tolerance) {
      throw IntegrityError(std::string(what) + ": entry " + std::to_string(i) + " is negative",
                           -p(i));
    }
    if (p(i) < 0.0) p(i) = 0.0;
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > std::max(tolerance, tol::kDistributionSum)) {
    throw IntegrityError(std::string(what) + ": does not sum to 1", std::abs(total - 1.0));
  }
  p /= total;
  return Distribution(std::move(p));
}

Distribution Distribution::point_mass(Index n, Index vertex) {
  if (vertex < 0 || vertex >= n) throw ValidationError("point mass vertex out of range");
  Vector p = Vector::Zero(n);
  p(vertex) = 1.0;
  return Distribution(std::move(p));
}

Distribution Distribution::uniform(Index n) {
  return Distribution(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

TransitionMatrix::TransitionMatrix(Matrix p, double laziness) : p_(std::move(p)), laziness_(laziness) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) throw ValidationError("transition matrix must be square");
  if (!(laziness >= 0.0 && laziness < 1.0)) throw ValidationError("laziness must lie in [0, 1)");
  for (Index i = 0; i < p_.rows(); ++i) {
    for (Index j = 0; j < p_.cols(); ++j) {
      if (!std::isfinite(p_(i, j)) || p_(i, j) < 0.0) {
        throw ValidationError("transition matrix has a negative entry");
      }
    }
    if (std::abs(p_.row(i).sum() - 1.0) > tol::kRowStochastic) {
      throw ValidationError("transition matrix row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

Matrix TransitionMatrix::laplace_operator() const {
  return Matrix::Identity(size(), size()) - p_;
}

TransitionMatrix transition_matrix(const WeightedDigraph& g, double laziness) {
  if (!(laziness >= 0.0 && laziness < 1.0)) throw ValidationError("laziness must lie in [0, 1)");
  const Index n = g.size();
  Matrix p = g.degrees().asDiagonal().inverse() * g.weights();
  if (laziness > 0.0) {
    p *= (1.0 - laziness);
    p.diagonal().array() += laziness;
  }
  // Renormalize rows so the stochasticity check is exact up to one rounding.
  for (Index i = 0; i < n; ++i) p.row(i) /= p.row(i).sum();
  return TransitionMatrix(std::move(p), laziness);
}

bool strongly_connected(const WeightedDigraph& g) {
  return spans_one_component((g.weights().array() > 0.0).matrix());
}

bool irreducible(const TransitionMatrix& p) {
  return spans_one_component((p.matrix().array() > 0.0).matrix());
}

Distribution stationary_distribution(const TransitionMatrix& p) {
  if (!irreducible(p)) throw ValidationError("not strongly connected");
  const Index n = p.size();
  Matrix system = p.matrix().transpose() - Matrix::Identity(n, n);
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector pi = system.partialPivLu().solve(rhs);
  auto result = Distribution::from_computed(std::move(pi), 1e-10, "stationary distribution");
  const double residual = stationary_residual(p, result);
  if (residual > tol::kStationaryResidual) {
    throw NumericalError("stationary solve inaccurate", residual);
  }
  return result;
}

Distribution stationary_distribution(const WeightedDigraph& g) {
  if (g.undirected()) {
    if (!strongly_connected(g)) throw ValidationError("not strongly connected");
    return Distribution::from_computed(g.degrees() / g.volume(), tol::kDistributionSum,
                                       "stationary distribution");
  }
  return stationary_distribution(transition_matrix(g));
}

double stationary_residual(const TransitionMatrix& p, const Distribution& pi) {
  const Vector r = p.matrix().transpose() * pi.values() - pi.values();
  return max_abs(r);
}

}  // namespace greenwalk
