#pragma once

#include <greenwalk/greens.hpp>

#include <string>
#include <utility>
#include <vector>

namespace greenwalk {

/// P-hat(i,j) = pi_j P(j,i) / pi_i, the time reversal of P.
TransitionMatrix reverse_chain(const TransitionMatrix& p, const Distribution& pi);

/// Forget distribution of the chain P: the target attaining
/// min_tau max_i H(i,tau). Evaluated as pi_i (1 + sum_j phat_ij Hhat(j,pi) - Hhat(i,pi))
/// on the reverse chain. Negative entries beyond -1e-10 throw IntegrityError.
Distribution forget_distribution(const TransitionMatrix& p, const Distribution& pi);

/// max_i H(i, mu). Throws IntegrityError if it differs from T_reset of the
/// reverse chain by more than 1e-8 * max(1, T_forget).
double forget_time(const TransitionMatrix& p, const Distribution& pi);

struct PiCore {
  /// b_i = min_j X_pi(j,i).
  Vector offsets;
  Distribution core;
  /// X_pi - 1 b^T.
  ExitFrequencyMatrix exit_frequencies;
};

/// pi**^T = pi^T + b^T (I - P), cross-checked against
/// pi_i (1 + sum_j phat_ij Hhat(j,muhat) - Hhat(i,muhat)); a gap above 1e-8 throws
/// IntegrityError.
PiCore pi_core(const TransitionMatrix& p, const Distribution& pi, const ExitFrequencyMatrix& x_pi);

struct Residual {
  std::string name;
  double value = 0.0;
};

struct DualityReport {
  TransitionMatrix reverse;
  HittingTimeMatrix reverse_hitting;
  /// Forget distribution of P.
  Distribution forget;
  /// Forget distribution of P-hat, computed from forward quantities.
  Distribution reverse_forget;
  Vector offsets;
  Distribution core;
  ExitFrequencyMatrix core_exit_frequencies;
  double t_mix = 0.0;
  double t_reset = 0.0;
  double t_forget = 0.0;
  double reverse_t_mix = 0.0;
  double reverse_t_reset = 0.0;
  double reverse_t_forget = 0.0;
  std::vector<Residual> residuals;

  double worst_residual() const;
};

/// Runs the forward and reverse pipelines and records the residual of every
/// duality identity. Time-valued residuals are relative to max(1, scale);
/// matrix residuals are absolute.
DualityReport duality_checks(const TransitionMatrix& p, const Distribution& pi);

}  // namespace greenwalk
