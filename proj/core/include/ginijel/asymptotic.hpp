#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ginijel/dataset.hpp"

namespace ginijel {

/// Which null-variance expression is in use.
///
/// Two closed forms for sigma_0^2 = a' Sigma a (a_k = 1 / p_k) circulate:
///   main_text: sigma_kk = p_k^3 / 2 - (31/45) p_k^4, sigma_kl = -(31/45) p_k^2 p_l^2
///   appendix:  sigma_kk = p_k^3 / 2 - (7/15) p_k^4,  sigma_kl = -(7/15) p_k^2 p_l^2
/// They disagree, and after the a' Sigma a contraction neither depends on p:
/// main_text gives 1/2 - 31/45 = -17/90 and appendix gives 1/30. `empirical`
/// marks a Monte Carlo value of n Var(delta_hat).
enum class VarianceFormula { main_text, appendix, empirical };

std::string to_string(VarianceFormula v);

struct NullVariance {
  /// Not clamped: main_text is negative for every valid p.
  double value = 0.0;
  VarianceFormula variant = VarianceFormula::appendix;
  std::vector<double> p;
};

/// Closed-form sigma_0^2. Throws Errc::invalid_probability_vector unless p is
/// strictly positive and sums to 1, and Errc::invalid_argument for
/// VarianceFormula::empirical.
NullVariance null_variance(std::span<const double> p, VarianceFormula variant);

struct EmpiricalVariance {
  /// n * sample variance of delta_hat over the replications.
  double value = 0.0;
  /// Delta-method standard error of `value`.
  double std_error = 0.0;
  double mean_delta = 0.0;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
};

/// Simulates X ~ N(0, 1) independent of Y ~ Categorical(p) and returns
/// n Var(delta_hat). Requires reps >= 1000 and n >= 50. Deterministic given
/// the seed: replication r draws from stream r.
EmpiricalVariance empirical_null_variance(std::span<const double> p,
                                          std::size_t n, std::size_t reps,
                                          std::uint64_t seed,
                                          unsigned threads = 0);

struct VarianceAdjudication {
  EmpiricalVariance empirical;
  double main_text = 0.0;
  double appendix = 0.0;
  bool main_text_within_3se = false;
  bool appendix_within_3se = false;
  std::string verdict;
};

/// Compares both closed forms with the Monte Carlo value and states which of
/// them (if any) lies within three standard errors.
VarianceAdjudication adjudicate_null_variance(std::span<const double> p,
                                              std::size_t n, std::size_t reps,
                                              std::uint64_t seed,
                                              unsigned threads = 0);

enum class VarianceSource { main_text, appendix, jackknife };

struct NormalTestResult {
  double delta_hat = 0.0;
  double sigma0_sq = 0.0;
  double statistic = 0.0;
  double p_value = 0.5;
  double critical_value = 0.0;
  double alpha = 0.05;
  bool reject = false;
  VarianceSource source = VarianceSource::jackknife;
};

/// One-sided test rejecting for sqrt(n) delta_hat / sigma0_hat > z_alpha.
///
/// sigma0_hat^2 comes from the chosen closed form at p_hat, or from the
/// jackknife as S / 4 with S = mean(nu_i^2). A zero delta_hat gives
/// statistic 0 whatever the variance. Throws Errc::sample_too_small (n < 4),
/// Errc::invalid_alpha, and Errc::zero_variance when sigma0_hat^2 <= 0 and
/// delta_hat != 0.
NormalTestResult normal_test(const Dataset& d, double alpha = 0.05,
                             VarianceSource source = VarianceSource::jackknife);

}  // namespace ginijel
