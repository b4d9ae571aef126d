#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ginijel/dataset.hpp"

namespace ginijel {

/// How leave-one-out kernel counts are obtained. Both produce identical
/// integer counts; `downdate` is O(n log n + nK) overall, `rerun` repeats the
/// rank-counting pass on each subsample (O(n^2 log n)).
enum class JackknifeMethod { downdate, rerun };

/// Category weights used inside each leave-one-out estimate. `full_sample`
/// keeps 1 / p_hat_k of the whole sample, which makes mean(nu) equal the full
/// estimate exactly; `subsample` recomputes p_hat on the n - 1 records.
enum class JackknifeWeights { full_sample, subsample };

struct JackknifeOptions {
  JackknifeMethod method = JackknifeMethod::downdate;
  JackknifeWeights weights = JackknifeWeights::full_sample;
};

/// Jackknife pseudo-values nu_i = n * delta_hat - (n - 1) * delta_hat_(i).
struct PseudoValues {
  std::vector<double> nu;
  double delta_hat = 0.0;
  std::size_t n = 0;
};

/// Requires n >= 4 (Errc::sample_too_small otherwise).
PseudoValues pseudo_values(const Dataset& d, JackknifeOptions options = {});

/// Lagrange multiplier: root of g(l) = mean(nu_i / (1 + l nu_i)) on the
/// interval where every 1 + l nu_i > 0. g is strictly decreasing there, so
/// the solver keeps a bracket and falls back to bisection whenever a Newton
/// step leaves it.
///
/// Throws Errc::all_zero when every nu_i is 0, Errc::hull_violation when the
/// nonzero pseudo-values all share one sign, Errc::no_convergence when
/// tol.max_root_iters is exhausted.
double solve_lambda(const PseudoValues& pv, const Tolerances& tol = {});

/// g(lambda); exposed for root certificates.
double lambda_equation(std::span<const double> nu, double lambda) noexcept;

/// -2 log R(0) = 2 sum log(1 + lambda nu_i), clamped at 0.
/// Throws Errc::domain_error if some 1 + lambda nu_i <= 0.
double jel_statistic(const PseudoValues& pv, double lambda);

struct JelResult {
  double delta_hat = 0.0;
  double lambda = 0.0;
  /// +infinity when zero lies outside the pseudo-value hull.
  double statistic = 0.0;
  double p_value = 1.0;
  double critical_value = 0.0;
  double alpha = 0.05;
  bool reject = false;
  /// Set when the likelihood program is infeasible (hull violation) or all
  /// pseudo-values vanish; statistic and p-value then follow the conventions
  /// documented on jel_test.
  bool degenerate = false;
  std::size_t n = 0;
};

/// Jackknife empirical likelihood ratio test of independence.
///
/// Degenerate data: if zero lies outside the pseudo-value hull the
/// constrained likelihood is 0, so statistic = +inf, p = 0 and the test
/// rejects; if every pseudo-value is 0, statistic = 0, p = 1, no rejection.
/// Throws Errc::invalid_alpha unless 0 < alpha < 1.
JelResult jel_test(const Dataset& d, double alpha = 0.05,
                   const Tolerances& tol = {}, JackknifeOptions options = {});

}  // namespace ginijel
