#include "ginijel/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "ginijel/asymptotic.hpp"
#include "ginijel/error.hpp"
#include "ginijel/estimator.hpp"
#include "ginijel/jel.hpp"
#include "parallel.hpp"

namespace ginijel {

Scenario Scenario::type1_lognormal(double mu, double sigma, std::size_t k) {
  return Scenario{ScenarioKind::type1_lognormal, mu, sigma, k};
}
Scenario Scenario::mix_balanced() { return Scenario{ScenarioKind::mix_balanced, 0.0, 1.0, 3}; }
Scenario Scenario::mix_light() { return Scenario{ScenarioKind::mix_light, 0.0, 1.0, 3}; }
Scenario Scenario::mix_heavy() { return Scenario{ScenarioKind::mix_heavy, 0.0, 1.0, 3}; }

std::vector<double> Scenario::weights() const {
  switch (kind) {
    case ScenarioKind::type1_lognormal:
      return std::vector<double>(k, 1.0 / static_cast<double>(k));
    case ScenarioKind::mix_balanced: return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    case ScenarioKind::mix_light: return {5.0 / 12.0, 4.0 / 12.0, 3.0 / 12.0};
    case ScenarioKind::mix_heavy: return {6.0 / 10.0, 3.0 / 10.0, 1.0 / 10.0};
  }
  return {};
}

std::string Scenario::name() const {
  switch (kind) {
    case ScenarioKind::type1_lognormal: {
      std::ostringstream s;
      s << "type1-lognormal(mu=" << mu << ",sigma=" << sigma << ",K=" << k << ")";
      return s.str();
    }
    case ScenarioKind::mix_balanced: return "mix-balanced";
    case ScenarioKind::mix_light: return "mix-light";
    case ScenarioKind::mix_heavy: return "mix-heavy";
  }
  return "unknown";
}

void Scenario::validate() const {
  if (kind == ScenarioKind::type1_lognormal) {
    if (!(sigma > 0.0) || !std::isfinite(mu) || k < 1) {
      throw Error(Errc::invalid_scenario,
                  "type1-lognormal needs sigma > 0, finite mu and K >= 1");
    }
  }
}

Scenario parse_scenario(std::string_view name, double mu, double sigma,
                        std::size_t k) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  Scenario s;
  if (key == "type1-lognormal") {
    s = Scenario::type1_lognormal(mu, sigma, k);
  } else if (key == "mix-balanced") {
    s = Scenario::mix_balanced();
  } else if (key == "mix-light") {
    s = Scenario::mix_light();
  } else if (key == "mix-heavy") {
    s = Scenario::mix_heavy();
  } else {
    throw Error(Errc::invalid_scenario, "unknown scenario '" + std::string(name) + "'");
  }
  s.validate();
  return s;
}

Dataset scenario_sampler(const Scenario& s, std::size_t n, SeededRng& rng) {
  s.validate();
  if (n < 4) {
    throw Error(Errc::sample_too_small, "scenario sampling needs n >= 4");
  }
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= s.k; ++k) names.push_back(std::to_string(k));

  if (s.kind == ScenarioKind::type1_lognormal) {
    const Draws y = sample(Categorical{s.weights()}, n, rng);
    Draws x = sample(Lognormal{s.mu, s.sigma}, n, rng);
    return Dataset::from_codes(std::move(x.values), y.labels, names);
  }
  const Mixture mixture{{Normal{0.0, 1.0}, Exponential{1.0}, Lognormal{0.0, 1.0}},
                        s.weights()};
  Draws draws = sample(mixture, n, rng);
  return Dataset::from_codes(std::move(draws.values), draws.labels, names);
}

std::string to_string(TestMethod m) {
  return m == TestMethod::jel ? "jel" : "normal";
}

SimReport run_study(const Scenario& s, std::size_t n, std::size_t reps,
                    double alpha, TestMethod method, std::uint64_t seed,
                    unsigned threads) {
  s.validate();
  if (reps < 100) {
    throw Error(Errc::invalid_argument, "a study needs reps >= 100");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_alpha, "alpha must lie in (0, 1)");
  }

  // 0 = accept, 1 = reject, plus 2 when degenerate.
  std::vector<unsigned char> outcome(reps, 0);
  const auto start = std::chrono::steady_clock::now();
  detail::parallel_for(reps, threads, [&](std::size_t r) {
    SeededRng rng(seed, r);
    const Dataset d = scenario_sampler(s, n, rng);
    unsigned char o = 0;
    if (method == TestMethod::jel) {
      const JelResult res = jel_test(d, alpha);
      o = static_cast<unsigned char>((res.reject ? 1 : 0) | (res.degenerate ? 2 : 0));
    } else {
      try {
        o = normal_test(d, alpha).reject ? 1 : 0;
      } catch (const Error& e) {
        if (e.code() != Errc::zero_variance) throw;
        o = 2;
      }
    }
    outcome[r] = o;
  });
  const auto stop = std::chrono::steady_clock::now();

  SimReport rep;
  rep.scenario = s.name();
  rep.n = n;
  rep.reps = reps;
  rep.alpha = alpha;
  rep.method = method;
  rep.seed = seed;
  for (unsigned char o : outcome) {
    rep.rejections += (o & 1);
    rep.degenerate += (o >> 1) & 1;
  }
  rep.rejection_rate = static_cast<double>(rep.rejections) / static_cast<double>(reps);
  rep.mc_stderr = std::sqrt(rep.rejection_rate * (1.0 - rep.rejection_rate) /
                            static_cast<double>(reps));
  rep.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
  return rep;
}

double permutation_baseline(const Dataset& d, std::size_t reps, SeededRng& rng) {
  if (d.size() < 4) {
    throw Error(Errc::sample_too_small, "permutation test needs n >= 4");
  }
  if (reps < 99) {
    throw Error(Errc::invalid_argument, "permutation test needs reps >= 99");
  }
  const std::size_t n = d.size();
  const std::size_t k_count = d.category_count();
  const RankIndex ranks(d.x());
  std::vector<Category> y(d.y().begin(), d.y().end());
  const double observed =
      delta_hat_from_counts(pair_rank_counts(ranks, y, k_count), d.counts(), n);
  // Exact ties between permuted and observed statistics must count.
  const double threshold = observed - 1e-12 * std::max(1.0, std::abs(observed));

  std::size_t at_least = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(y[i], y[rng.below(i + 1)]);
    }
    const double permuted =
        delta_hat_from_counts(pair_rank_counts(ranks, y, k_count), d.counts(), n);
    if (permuted >= threshold) ++at_least;
  }
  return static_cast<double>(1 + at_least) / static_cast<double>(reps + 1);
}

}  // namespace ginijel
