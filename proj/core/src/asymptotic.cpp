#include "ginijel/asymptotic.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ginijel/dist.hpp"
#include "ginijel/error.hpp"
#include "ginijel/estimator.hpp"
#include "ginijel/jel.hpp"
#include "parallel.hpp"

namespace ginijel {
namespace {

void check_probability_vector(std::span<const double> p) {
  if (p.empty()) {
    throw Error(Errc::invalid_probability_vector, "probability vector is empty");
  }
  double total = 0.0;
  for (double v : p) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(Errc::invalid_probability_vector,
                  "probabilities must be strictly positive");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::invalid_probability_vector, "probabilities must sum to 1");
  }
}

double quartic_coefficient(VarianceFormula v) {
  switch (v) {
    case VarianceFormula::main_text: return 31.0 / 45.0;
    case VarianceFormula::appendix: return 7.0 / 15.0;
    case VarianceFormula::empirical: break;
  }
  throw Error(Errc::invalid_argument, "no closed form for the empirical variant");
}

}  // namespace

std::string to_string(VarianceFormula v) {
  switch (v) {
    case VarianceFormula::main_text: return "main_text";
    case VarianceFormula::appendix: return "appendix";
    case VarianceFormula::empirical: return "empirical";
  }
  return "unknown";
}

NullVariance null_variance(std::span<const double> p, VarianceFormula variant) {
  check_probability_vector(p);
  const double c = quartic_coefficient(variant);
  const std::size_t k_count = p.size();
  double value = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    const double pk = p[k];
    const double a_k = 1.0 / pk;
    for (std::size_t l = 0; l < k_count; ++l) {
      const double pl = p[l];
      const double a_l = 1.0 / pl;
      const double sigma = k == l ? 0.5 * pk * pk * pk - c * pk * pk * pk * pk
                                  : -c * pk * pk * pl * pl;
      value += a_k * sigma * a_l;
    }
  }
  return NullVariance{value, variant, std::vector<double>(p.begin(), p.end())};
}

EmpiricalVariance empirical_null_variance(std::span<const double> p,
                                          std::size_t n, std::size_t reps,
                                          std::uint64_t seed, unsigned threads) {
  check_probability_vector(p);
  if (reps < 1000 || n < 50) {
    throw Error(Errc::invalid_argument,
                "empirical null variance needs reps >= 1000 and n >= 50");
  }
  const Categorical labels{std::vector<double>(p.begin(), p.end())};
  std::vector<double> deltas(reps);
  detail::parallel_for(reps, threads, [&](std::size_t r) {
    SeededRng rng(seed, r);
    const Draws y = sample(labels, n, rng);
    Draws x = sample(Normal{}, n, rng);
    const Dataset d = Dataset::from_codes(std::move(x.values), y.labels);
    deltas[r] = estimate_delta(d).delta_hat;
  });

  const double reps_d = static_cast<double>(reps);
  const double mean = std::accumulate(deltas.begin(), deltas.end(), 0.0) / reps_d;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : deltas) {
    const double dev2 = (v - mean) * (v - mean);
    m2 += dev2;
    m4 += dev2 * dev2;
  }
  const double sample_var = m2 / (reps_d - 1.0);
  m2 /= reps_d;
  m4 /= reps_d;

  EmpiricalVariance out;
  out.n = n;
  out.reps = reps;
  out.seed = seed;
  out.mean_delta = mean;
  out.value = static_cast<double>(n) * sample_var;
  out.std_error = static_cast<double>(n) * std::sqrt(std::max(0.0, m4 - m2 * m2) / reps_d);
  return out;
}

VarianceAdjudication adjudicate_null_variance(std::span<const double> p,
                                              std::size_t n, std::size_t reps,
                                              std::uint64_t seed,
                                              unsigned threads) {
  VarianceAdjudication a;
  a.empirical = empirical_null_variance(p, n, reps, seed, threads);
  a.main_text = null_variance(p, VarianceFormula::main_text).value;
  a.appendix = null_variance(p, VarianceFormula::appendix).value;
  const double band = 3.0 * a.empirical.std_error;
  a.main_text_within_3se = std::abs(a.main_text - a.empirical.value) <= band;
  a.appendix_within_3se = std::abs(a.appendix - a.empirical.value) <= band;

  std::ostringstream v;
  v.precision(6);
  v << "n*Var(delta_hat) = " << a.empirical.value << " +/- "
    << a.empirical.std_error << " (1 s.e.); main_text (31/45) = "
    << a.main_text << ", appendix (7/15) = " << a.appendix << ". ";
  if (a.main_text_within_3se && a.appendix_within_3se) {
    v << "Both closed forms lie within 3 s.e. (overlapping).";
  } else if (a.appendix_within_3se) {
    v << "Only the appendix form (7/15) lies within 3 s.e.";
  } else if (a.main_text_within_3se) {
    v << "Only the main-text form (31/45) lies within 3 s.e.";
  } else {
    v << "Neither closed form lies within 3 s.e. (non-overlapping).";
  }
  a.verdict = v.str();
  return a;
}

NormalTestResult normal_test(const Dataset& d, double alpha,
                             VarianceSource source) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_alpha, "alpha must lie in (0, 1)");
  }
  if (d.size() < 4) {
    throw Error(Errc::sample_too_small,
                "normal test needs n >= 4, got n = " + std::to_string(d.size()));
  }
  NormalTestResult r;
  r.alpha = alpha;
  r.source = source;
  r.critical_value = std_normal_quantile(1.0 - alpha);

  if (source == VarianceSource::jackknife) {
    const PseudoValues pv = pseudo_values(d);
    r.delta_hat = pv.delta_hat;
    double s = 0.0;
    for (double v : pv.nu) s += v * v;
    s /= static_cast<double>(pv.n);
    r.sigma0_sq = s / 4.0;
  } else {
    r.delta_hat = estimate_delta(d).delta_hat;
    const auto p_hat = category_counts(d).p_hat;
    r.sigma0_sq = null_variance(p_hat, source == VarianceSource::main_text
                                           ? VarianceFormula::main_text
                                           : VarianceFormula::appendix)
                      .value;
  }

  if (r.delta_hat == 0.0) {
    r.statistic = 0.0;
  } else {
    if (!(r.sigma0_sq > 0.0)) {
      throw Error(Errc::zero_variance, "null variance estimate is not positive");
    }
    r.statistic = std::sqrt(static_cast<double>(d.size())) * r.delta_hat /
                  std::sqrt(r.sigma0_sq);
  }
  r.p_value = std_normal_cdf(-r.statistic);
  r.reject = r.statistic > r.critical_value;
  return r;
}

}  // namespace ginijel
