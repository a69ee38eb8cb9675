#include <greenwalk/greens.hpp>

#include <cmath>
#include <string>

namespace greenwalk {

namespace {

void require_size(Index n, Index m, const char* what) {
  if (n != m) throw ValidationError(std::string(what) + ": size mismatch");
}

// d(i,j) = H(i,j) - H(tau,j); H(i,tau) is its row maximum.
Matrix access_differences(const HittingTimeMatrix& h, const Distribution& tau) {
  const Vector from_tau = access_to_vertices(h, tau);
  return h.matrix().rowwise() - from_tau.transpose();
}

}  // namespace

GreensMatrix::GreensMatrix(Matrix g, Distribution target) : g_(std::move(g)), target_(std::move(target)) {
  if (g_.rows() != g_.cols()) throw ValidationError("Green's matrix must be square");
  require_size(g_.rows(), target_.size(), "Green's matrix target");
}

ExitFrequencyMatrix::ExitFrequencyMatrix(Matrix x, Distribution target)
    : x_(std::move(x)), target_(std::move(target)) {
  if (x_.rows() != x_.cols()) throw ValidationError("exit frequency matrix must be square");
  require_size(x_.rows(), target_.size(), "exit frequency target");
}

std::vector<Index> ExitFrequencyMatrix::halting_states(Index row, double tolerance) const {
  std::vector<Index> out;
  for (Index j = 0; j < size(); ++j) {
    if (x_(row, j) <= tolerance) out.push_back(j);
  }
  return out;
}

double access_time(const HittingTimeMatrix& h, const Distribution& sigma, const Distribution& tau) {
  return (access_to_vertices(h, sigma) - access_to_vertices(h, tau)).maxCoeff();
}

Vector access_times_to(const HittingTimeMatrix& h, const Distribution& tau) {
  return access_differences(h, tau).rowwise().maxCoeff();
}

GreensMatrix greens_function(const HittingTimeMatrix& h, const Distribution& pi) {
  require_size(h.size(), pi.size(), "greens_function");
  GreensMatrix g = greens_general(h, pi, pi);
  const double row_sum = max_abs(Vector(g.matrix().rowwise().sum()));
  const double scale = std::max(1.0, max_abs(g.matrix()));
  if (row_sum > tol::matrix(h.size()) * scale) {
    throw IntegrityError("Green's function rows do not sum to zero", row_sum);
  }
  return g;
}

GreensMatrix greens_general(const HittingTimeMatrix& h, const Distribution& pi,
                            const Distribution& tau) {
  require_size(h.size(), pi.size(), "greens_general");
  require_size(h.size(), tau.size(), "greens_general");
  const Vector from_tau = access_to_vertices(h, tau);
  Matrix g = (-h.matrix()).rowwise() + from_tau.transpose();
  g = g * pi.values().asDiagonal();
  return GreensMatrix(std::move(g), tau);
}

ExitFrequencyMatrix exit_frequency_matrix(const HittingTimeMatrix& h, const Distribution& pi,
                                          const Distribution& tau) {
  require_size(h.size(), pi.size(), "exit_frequency_matrix");
  require_size(h.size(), tau.size(), "exit_frequency_matrix");
  const Index n = h.size();
  const Matrix d = access_differences(h, tau);
  const Vector access = d.rowwise().maxCoeff();
  Matrix x(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) x(i, j) = pi(j) * (access(i) - d(i, j));
  }
  const double scale = std::max(1.0, max_abs(x));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (x(i, j) < -tol::kExitClamp * scale) {
        throw IntegrityError("negative exit frequency at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")",
                             -x(i, j));
      }
      if (x(i, j) < 0.0) x(i, j) = 0.0;
    }
  }
  return ExitFrequencyMatrix(std::move(x), tau);
}

GreensMatrix greens_from_exit_frequencies(const ExitFrequencyMatrix& x, const Distribution& pi) {
  const Vector access = x.access_times();
  Matrix g = x.matrix() - access * pi.values().transpose();
  return GreensMatrix(std::move(g), x.target());
}

GreenResiduals verify_green_constraints(const GreensMatrix& m, const TransitionMatrix& p) {
  require_size(m.size(), p.size(), "verify_green_constraints");
  const Index n = m.size();
  const Matrix expected =
      Matrix::Identity(n, n) - Vector::Ones(n) * m.target().values().transpose();
  GreenResiduals out;
  out.constraint = max_abs(Matrix(m.matrix() * p.laplace_operator() - expected));
  out.row_sum = max_abs(Vector(m.matrix().rowwise().sum()));
  return out;
}

double conservation_residual(const ExitFrequencyMatrix& x, const TransitionMatrix& p) {
  require_size(x.size(), p.size(), "conservation_residual");
  const Index n = x.size();
  const Matrix expected =
      Matrix::Identity(n, n) - Vector::Ones(n) * x.target().values().transpose();
  return max_abs(Matrix(x.matrix() * p.laplace_operator() - expected));
}

HittingTimeMatrix hitting_from_greens(const GreensMatrix& m, const Distribution& pi) {
  require_size(m.size(), pi.size(), "hitting_from_greens");
  const Index n = m.size();
  Matrix h(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) h(i, j) = (m(j, j) - m(i, j)) / pi(j);
  }
  return HittingTimeMatrix(std::move(h));
}

Index pessimal_vertex(const HittingTimeMatrix& h, Index target, double tolerance) {
  const auto column = h.matrix().col(target);
  const double best = column.maxCoeff();
  for (Index j = 0; j < h.size(); ++j) {
    if (column(j) >= best - tolerance) return j;
  }
  return 0;
}

MixingReport mixing_report(const HittingTimeMatrix& h, const GreensMatrix& m, const Distribution& pi,
                           bool reversible) {
  require_size(h.size(), m.size(), "mixing_report");
  require_size(h.size(), pi.size(), "mixing_report");
  const Index n = h.size();
  MixingReport r;

  // -G Pi^{-1}; its row maxima are the mixing times.
  const Matrix scaled = -(m.matrix() * pi.values().cwiseInverse().asDiagonal());
  r.mixing_times = scaled.rowwise().maxCoeff();
  r.t_mix = r.mixing_times.maxCoeff();
  r.t_reset = pi.values().dot(r.mixing_times);
  r.t_hit = m.matrix().trace();

  const double time_tol = tol::time(std::max(r.t_hit, max_abs(h.matrix())));
  r.pessimal.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) r.pessimal[static_cast<std::size_t>(i)] = pessimal_vertex(h, i, time_tol);

  r.halting_states.resize(static_cast<std::size_t>(n));
  const double exit_tol = tol::kExitClamp * std::max(1.0, r.t_mix);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double x = m(i, j) + pi(j) * r.mixing_times(i);
      if (x <= exit_tol) r.halting_states[static_cast<std::size_t>(i)].push_back(j);
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (r.mixing_times(i) >= r.t_mix - time_tol) r.mixing_pessimal.push_back(i);
  }

  if (reversible) {
    const Vector from_pi = access_to_vertices(h, pi);
    const double check_tol = tol::time(r.t_hit);
    for (Index i = 0; i < n; ++i) {
      const Index ip = r.pessimal[static_cast<std::size_t>(i)];
      const double via_target = h(ip, i) - from_pi(i);
      const double via_pessimal = h(i, ip) - from_pi(ip);
      const double dev = std::max(std::abs(r.mixing_times(i) - via_target),
                                  std::abs(r.mixing_times(i) - via_pessimal));
      r.crosscheck_residual = std::max(r.crosscheck_residual, dev);
      if (dev > check_tol) {
        throw IntegrityError("mixing time cross-check failed at vertex " + std::to_string(i), dev);
      }
    }
  }
  return r;
}

}  // namespace greenwalk
