#include <greenwalk/duality.hpp>

#include <algorithm>
#include <cmath>
#include <tuple>

namespace greenwalk {

namespace {

struct Pipeline {
  HittingTimeMatrix hitting;
  GreensMatrix greens;
  Vector mixing_times;
};

Pipeline run_pipeline(const TransitionMatrix& p, const Distribution& pi) {
  HittingTimeMatrix h = hitting_times(p, pi);
  GreensMatrix g = greens_function(h, pi);
  Vector mixing = access_times_to(h, pi);
  return Pipeline{std::move(h), std::move(g), std::move(mixing)};
}

// pi_i (1 + sum_j q_ij a_j - a_i): the forget-distribution formula applied to
// chain q with access times a.
Distribution mirrored_target(const Matrix& q, const Vector& access, const Distribution& pi,
                             const char* what) {
  Vector v = (Vector::Ones(pi.size()) + q * access - access).cwiseProduct(pi.values());
  return Distribution::from_computed(std::move(v), tol::kExitClamp, what);
}

// Pi^{-1} M^T Pi.
Matrix conjugate_transpose(const Matrix& m, const Distribution& pi) {
  return pi.values().cwiseInverse().asDiagonal() * m.transpose() * pi.values().asDiagonal();
}

double relative(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TransitionMatrix reverse_chain(const TransitionMatrix& p, const Distribution& pi) {
  if (p.size() != pi.size()) throw ValidationError("reverse_chain: size mismatch");
  Matrix r = conjugate_transpose(p.matrix(), pi);
  // Row sums equal 1 up to the stationary residual; renormalize that noise away.
  const Vector sums = r.rowwise().sum();
  r = sums.cwiseInverse().asDiagonal() * r;
  return TransitionMatrix(std::move(r), p.laziness());
}

Distribution forget_distribution(const TransitionMatrix& p, const Distribution& pi) {
  const TransitionMatrix rev = reverse_chain(p, pi);
  const HittingTimeMatrix h = hitting_times(rev, pi);
  return mirrored_target(rev.matrix(), access_times_to(h, pi), pi, "forget distribution");
}

double forget_time(const TransitionMatrix& p, const Distribution& pi) {
  const TransitionMatrix rev = reverse_chain(p, pi);
  const HittingTimeMatrix rh = hitting_times(rev, pi);
  const Vector rmix = access_times_to(rh, pi);
  const Distribution mu = mirrored_target(rev.matrix(), rmix, pi, "forget distribution");
  const HittingTimeMatrix h = hitting_times(p, pi);
  const double t_forget = access_times_to(h, mu).maxCoeff();
  const double reverse_reset = pi.values().dot(rmix);
  const double gap = std::abs(t_forget - reverse_reset);
  if (gap > tol::time(t_forget)) {
    throw IntegrityError("forget time differs from the reverse chain's reset time", gap);
  }
  return t_forget;
}

PiCore pi_core(const TransitionMatrix& p, const Distribution& pi, const ExitFrequencyMatrix& x_pi) {
  const Index n = p.size();
  if (x_pi.size() != n || pi.size() != n) throw ValidationError("pi_core: size mismatch");
  const Vector b = x_pi.matrix().colwise().minCoeff().transpose();
  Vector core = pi.values() + p.laplace_operator().transpose() * b;
  Distribution core_dist = Distribution::from_computed(std::move(core), tol::kExitClamp, "pi-core");

  // Cross-check through the reverse chain's forget distribution.
  const Pipeline fwd = run_pipeline(p, pi);
  const Distribution muhat = mirrored_target(p.matrix(), fwd.mixing_times, pi, "reverse forget distribution");
  const TransitionMatrix rev = reverse_chain(p, pi);
  const HittingTimeMatrix rh = hitting_times(rev, pi);
  const Distribution alt = mirrored_target(rev.matrix(), access_times_to(rh, muhat), pi, "pi-core");
  const double gap = max_abs(Vector(core_dist.values() - alt.values()));
  if (gap > 1e-8) throw IntegrityError("pi-core routes disagree", gap);

  Matrix shifted = x_pi.matrix() - Vector::Ones(n) * b.transpose();
  shifted = shifted.cwiseMax(0.0);
  return PiCore{b, core_dist, ExitFrequencyMatrix(std::move(shifted), core_dist)};
}

double DualityReport::worst_residual() const {
  double worst = 0.0;
  for (const auto& r : residuals) worst = std::max(worst, r.value);
  return worst;
}

DualityReport duality_checks(const TransitionMatrix& p, const Distribution& pi) {
  const Index n = p.size();
  const Vector& w = pi.values();
  const Vector ones = Vector::Ones(n);

  const Pipeline fwd = run_pipeline(p, pi);
  const TransitionMatrix rev = reverse_chain(p, pi);
  const Pipeline bwd = run_pipeline(rev, pi);

  const Distribution mu = mirrored_target(rev.matrix(), bwd.mixing_times, pi, "forget distribution");
  const Distribution muhat = mirrored_target(p.matrix(), fwd.mixing_times, pi, "reverse forget distribution");

  const ExitFrequencyMatrix x_pi = exit_frequency_matrix(fwd.hitting, pi, pi);
  PiCore core = pi_core(p, pi, x_pi);

  DualityReport r{rev,
                  bwd.hitting,
                  mu,
                  muhat,
                  core.offsets,
                  core.core,
                  core.exit_frequencies,
                  fwd.mixing_times.maxCoeff(),
                  w.dot(fwd.mixing_times),
                  access_times_to(fwd.hitting, mu).maxCoeff(),
                  bwd.mixing_times.maxCoeff(),
                  w.dot(bwd.mixing_times),
                  access_times_to(bwd.hitting, muhat).maxCoeff(),
                  {}};
  auto add = [&](std::string name, double value) { r.residuals.push_back({std::move(name), value}); };

  add("reverse chain stationary", stationary_residual(rev, pi));
  add("T_reset = reverse T_forget", relative(r.t_reset, r.reverse_t_forget));
  add("T_forget = reverse T_reset", relative(r.t_forget, r.reverse_t_reset));
  add("T_mix = reverse T_mix", relative(r.t_mix, r.reverse_t_mix));

  // mu attains the minimum over targets: no singleton does better.
  double singleton_best = fwd.hitting.matrix().colwise().maxCoeff().minCoeff();
  add("T_forget <= min_j max_i H(i,j)", std::max(0.0, r.t_forget - singleton_best) / std::max(1.0, r.t_forget));

  // X_pi** computed directly from H against the shifted X_pi.
  const ExitFrequencyMatrix x_core = exit_frequency_matrix(fwd.hitting, pi, r.core);
  add("X_pi** = X_pi - 1 b^T", max_abs(Matrix(x_core.matrix() - r.core_exit_frequencies.matrix())));
  add("X_pi** conservation", conservation_residual(r.core_exit_frequencies, p));

  // Dual image of the shifted matrix is the reverse chain's optimal rule to muhat.
  const Matrix dual_image = conjugate_transpose(r.core_exit_frequencies.matrix(), pi);
  const ExitFrequencyMatrix x_muhat = exit_frequency_matrix(bwd.hitting, pi, muhat);
  add("dual image row minima", std::max(0.0, dual_image.rowwise().minCoeff().maxCoeff()));
  add("dual image = reverse X_muhat", max_abs(Matrix(dual_image - x_muhat.matrix())));
  add("dual image conservation",
      conservation_residual(ExitFrequencyMatrix(dual_image.cwiseMax(0.0), muhat), rev));
  add("reverse X_muhat dual = X_pi**", max_abs(Matrix(conjugate_transpose(x_muhat.matrix(), pi) - x_core.matrix())));

  // Green's function relations.
  const GreensMatrix g_muhat = greens_general(bwd.hitting, pi, muhat);
  const Matrix conj_g = conjugate_transpose(fwd.greens.matrix(), pi);
  const Matrix via_pi = conj_g + ones * (fwd.mixing_times - Vector::Constant(n, r.t_reset)).cwiseProduct(w).transpose();
  add("reverse G_muhat from G and H(.,pi)", max_abs(Matrix(g_muhat.matrix() - via_pi)));

  const Vector to_core = access_times_to(fwd.hitting, r.core);
  const Matrix via_core = conj_g + ones * (to_core - Vector::Constant(n, w.dot(to_core))).cwiseProduct(w).transpose();
  add("reverse G_muhat from G and H(.,pi**)", max_abs(Matrix(g_muhat.matrix() - via_core)));

  const GreensMatrix g_core = greens_general(fwd.hitting, pi, r.core);
  const Vector rev_to_muhat = access_times_to(bwd.hitting, muhat);
  const Matrix mirrored = conjugate_transpose(bwd.greens.matrix(), pi) +
                          ones * (rev_to_muhat - Vector::Constant(n, w.dot(rev_to_muhat))).cwiseProduct(w).transpose();
  add("G_pi** from reverse G and reverse H(.,muhat)", max_abs(Matrix(g_core.matrix() - mirrored)));

  const double core_to_pi = access_time(fwd.hitting, r.core, pi);
  add("H(i,pi) = H(i,pi**) + H(pi**,pi)",
      max_abs(Vector(fwd.mixing_times - to_core - Vector::Constant(n, core_to_pi))) /
          std::max(1.0, r.t_mix));

  for (const auto& [name, m, target] :
       {std::tuple{"G_muhat constraints (reverse)", &g_muhat, &rev}, std::tuple{"G_pi** constraints", &g_core, &p}}) {
    const GreenResiduals gr = verify_green_constraints(*m, *target);
    add(name, std::max(gr.constraint, gr.row_sum));
  }
  return r;
}

}  // namespace greenwalk
