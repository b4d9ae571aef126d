#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ginijel/dataset.hpp"
#include "ginijel/dist.hpp"

namespace ginijel {

enum class ScenarioKind { type1_lognormal, mix_balanced, mix_light, mix_heavy };

/// Data-generating design for a Monte Carlo study.
///
/// type1_lognormal draws X ~ Lognormal(mu, sigma) independently of a uniform
/// Y on K categories. The three mixtures draw the component label Y with
/// weights p and X from N(0,1), Exp(1) or Lognormal(0,1) for labels 1, 2, 3:
///   mix_balanced p = (1/3, 1/3, 1/3)
///   mix_light    p = (5/12, 4/12, 3/12)
///   mix_heavy    p = (6/10, 3/10, 1/10)
struct Scenario {
  ScenarioKind kind = ScenarioKind::type1_lognormal;
  double mu = 0.0;
  double sigma = 1.0;
  std::size_t k = 6;

  static Scenario type1_lognormal(double mu = 0.0, double sigma = 1.0,
                                  std::size_t k = 6);
  static Scenario mix_balanced();
  static Scenario mix_light();
  static Scenario mix_heavy();

  /// Category weights (uniform 1/K for the type-I design).
  std::vector<double> weights() const;
  /// Stable identifier, e.g. "type1-lognormal(mu=0,sigma=1,K=6)".
  std::string name() const;
  /// Throws Errc::invalid_scenario for sigma <= 0 or K < 1.
  void validate() const;
};

/// Parses "type1-lognormal", "mix-balanced", "mix-light" or "mix-heavy"
/// (underscores accepted). Throws Errc::invalid_scenario otherwise.
Scenario parse_scenario(std::string_view name, double mu = 0.0,
                        double sigma = 1.0, std::size_t k = 6);

/// Draws one dataset of size n >= 4. Category labels are "1".."K".
Dataset scenario_sampler(const Scenario& s, std::size_t n, SeededRng& rng);

enum class TestMethod { jel, normal };

std::string to_string(TestMethod m);

struct SimReport {
  std::string scenario;
  std::size_t n = 0;
  std::size_t reps = 0;
  double alpha = 0.05;
  TestMethod method = TestMethod::jel;
  std::size_t rejections = 0;
  /// Replications on which the test was degenerate (hull violation or all
  /// pseudo-values zero for JEL, non-positive variance for the normal test).
  /// They count toward `rejections` exactly as the test itself decides.
  std::size_t degenerate = 0;
  double rejection_rate = 0.0;
  /// sqrt(r (1 - r) / reps).
  double mc_stderr = 0.0;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
};

/// Rejection rate of `method` at level alpha over `reps` >= 100 replications.
/// Replication r samples from SeededRng(seed, r), so the report depends only
/// on (scenario, n, reps, alpha, method, seed) and never on `threads`.
SimReport run_study(const Scenario& s, std::size_t n, std::size_t reps,
                    double alpha, TestMethod method, std::uint64_t seed,
                    unsigned threads = 0);

/// Permutation p-value (1 + #{delta_perm >= delta_obs}) / (reps + 1), with Y
/// shuffled against X. Requires n >= 4 and reps >= 99.
double permutation_baseline(const Dataset& d, std::size_t reps, SeededRng& rng);

}  // namespace ginijel
