#include "ginijel/jel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ginijel/dist.hpp"
#include "ginijel/error.hpp"
#include "ginijel/estimator.hpp"

namespace ginijel {
namespace {

__extension__ using Int128 = __int128;

// Leave-one-out kernel counts, row-major [i * K + k].
//
// Removing observation i drops every (pair, third) assignment it takes part
// in. As the third member it loses, for each category k, the C(G, 2) pairs of
// k-members strictly above x_i. As a pair member of its own category c it
// loses, for every partner b, the below-count of min(x_i, x_b).
std::vector<std::uint64_t> loo_counts_downdate(
    const Dataset& d, const RankIndex& ranks,
    std::span<const std::uint64_t> full) {
  const std::size_t n = d.size();
  const std::size_t k_count = d.category_count();
  const auto x = d.x();
  const auto y = d.y();
  const auto below = ranks.below();
  const auto order = ranks.order();
  const auto sizes = d.counts();

  // Position of each observation within its category (ascending x), and the
  // running sum of below-counts over each category's members.
  std::vector<std::vector<std::uint64_t>> prefix(k_count);
  for (Category k = 0; k < k_count; ++k) {
    prefix[k].reserve(sizes[k] + 1);
    prefix[k].push_back(0);
  }
  std::vector<std::uint64_t> strictly_lower_in_cat(n);
  std::vector<std::uint64_t> at_most(k_count, 0);

  std::vector<std::uint64_t> out(n * k_count);
  std::size_t pos = 0;
  while (pos < n) {
    std::size_t end = pos + 1;
    while (end < n && x[order[end]] == x[order[pos]]) ++end;

    for (std::size_t q = pos; q < end; ++q) {
      const std::size_t i = order[q];
      strictly_lower_in_cat[i] = at_most[y[i]];
    }
    for (std::size_t q = pos; q < end; ++q) {
      const std::size_t i = order[q];
      auto& pre = prefix[y[i]];
      pre.push_back(pre.back() + below[i]);
      ++at_most[y[i]];
    }

    for (std::size_t q = pos; q < end; ++q) {
      const std::size_t i = order[q];
      const Category c = y[i];
      std::uint64_t* row = out.data() + i * k_count;
      for (Category k = 0; k < k_count; ++k) {
        const std::uint64_t above = sizes[k] - at_most[k];
        row[k] = full[k] - (above > 1 ? above * (above - 1) / 2 : 0);
      }
      const std::uint64_t lower = strictly_lower_in_cat[i];
      const std::uint64_t pair_loss =
          prefix[c][lower] + (sizes[c] - 1 - lower) * below[i];
      row[c] -= pair_loss;
    }
    pos = end;
  }
  return out;
}

std::vector<std::uint64_t> loo_counts_rerun(const Dataset& d) {
  const std::size_t n = d.size();
  const std::size_t k_count = d.category_count();
  std::vector<std::uint64_t> out(n * k_count);
  std::vector<double> xs(n - 1);
  std::vector<Category> ys(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      xs[w] = d.x()[j];
      ys[w] = d.y()[j];
      ++w;
    }
    const RankIndex ranks(xs);
    const auto counts = pair_rank_counts(ranks, ys, k_count);
    std::copy(counts.begin(), counts.end(), out.begin() + i * k_count);
  }
  return out;
}

}  // namespace

PseudoValues pseudo_values(const Dataset& d, JackknifeOptions options) {
  const std::size_t n = d.size();
  if (n < 4) {
    throw Error(Errc::sample_too_small,
                "pseudo-values need n >= 4, got n = " + std::to_string(n));
  }
  const std::size_t k_count = d.category_count();
  const auto sizes = d.counts();
  const RankIndex ranks(d.x());
  const auto full = pair_rank_counts(ranks, d.y(), k_count);
  const auto loo = options.method == JackknifeMethod::downdate
                       ? loo_counts_downdate(d, ranks, full)
                       : loo_counts_rerun(d);

  PseudoValues pv;
  pv.n = n;
  const double nd = static_cast<double>(n);
  double total = 0.0;
  for (Category k = 0; k < k_count; ++k) {
    total += delta_from_count(full[k], n) /
             (static_cast<double>(sizes[k]) / nd);
  }
  pv.delta_hat = total - 1.0 / 3.0;
  pv.nu.resize(n);

  if (options.weights == JackknifeWeights::full_sample) {
    // delta_hat - delta_hat_(i) = sum_k w_k * 2 [T_k (n-3) - T_k^(i) n]
    //                             / (n (n-1) (n-2) (n-3)),
    // with an exact integer bracket; the -1/3 offsets cancel.
    const long double denom = static_cast<long double>(n) * (n - 1) *
                              (n - 2) * (n - 3);
    std::vector<long double> weight(k_count);
    for (Category k = 0; k < k_count; ++k) {
      weight[k] = static_cast<long double>(n) / sizes[k];
    }
    for (std::size_t i = 0; i < n; ++i) {
      long double diff = 0.0L;
      for (Category k = 0; k < k_count; ++k) {
        const Int128 bracket =
            static_cast<Int128>(full[k]) * static_cast<Int128>(n - 3) -
            static_cast<Int128>(loo[i * k_count + k]) * static_cast<Int128>(n);
        diff += weight[k] * 2.0L * static_cast<long double>(bracket) / denom;
      }
      pv.nu[i] = static_cast<double>(
          static_cast<long double>(pv.delta_hat) + (nd - 1.0L) * diff);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double loo_total = 0.0;
      for (Category k = 0; k < k_count; ++k) {
        const std::size_t remaining = sizes[k] - (d.y()[i] == k ? 1 : 0);
        if (remaining == 0) continue;
        loo_total += delta_from_count(loo[i * k_count + k], n - 1) /
                     (static_cast<double>(remaining) / (nd - 1.0));
      }
      const double loo_delta = loo_total - 1.0 / 3.0;
      pv.nu[i] = nd * pv.delta_hat - (nd - 1.0) * loo_delta;
    }
  }
  return pv;
}

double lambda_equation(std::span<const double> nu, double lambda) noexcept {
  double sum = 0.0;
  for (double v : nu) sum += v / (1.0 + lambda * v);
  return sum / static_cast<double>(nu.size());
}

double solve_lambda(const PseudoValues& pv, const Tolerances& tol) {
  tol.validate();
  double lo_nu = std::numeric_limits<double>::infinity();
  double hi_nu = -lo_nu;
  bool any_nonzero = false;
  for (double v : pv.nu) {
    if (v == 0.0) continue;
    any_nonzero = true;
    lo_nu = std::min(lo_nu, v);
    hi_nu = std::max(hi_nu, v);
  }
  if (!any_nonzero) {
    throw Error(Errc::all_zero, "every pseudo-value is zero");
  }
  if (lo_nu > 0.0 || hi_nu < 0.0) {
    throw Error(Errc::hull_violation,
                "zero lies outside the pseudo-value hull");
  }

  // Feasible set is the open interval (-1/max nu, -1/min nu); its endpoints
  // are never evaluated.
  double a = -1.0 / hi_nu;
  double b = -1.0 / lo_nu;
  const double scale = std::max(-lo_nu, hi_nu);
  const double target = tol.root_tol * std::min(1.0, scale);
  const std::span<const double> nu = pv.nu;

  double lambda = 0.0;
  double prev_abs_g = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < tol.max_root_iters; ++iter) {
    double g = 0.0;
    double dg = 0.0;
    for (double v : nu) {
      const double t = v / (1.0 + lambda * v);
      g += t;
      dg -= t * t;
    }
    g /= static_cast<double>(nu.size());
    dg /= static_cast<double>(nu.size());

    if (std::abs(g) <= target) return lambda;
    if (g > 0.0) {
      a = lambda;
    } else {
      b = lambda;
    }

    double next = dg < 0.0 ? lambda - g / dg : 0.5 * (a + b);
    const bool stalled = std::abs(g) > 0.5 * prev_abs_g;
    if (!(next > a && next < b) || stalled) next = 0.5 * (a + b);
    prev_abs_g = std::abs(g);
    if (next == lambda) {
      if (std::abs(g) <= tol.root_tol) return lambda;
      break;
    }
    lambda = next;
  }
  throw Error(Errc::no_convergence,
              "lambda iteration did not converge in " +
                  std::to_string(tol.max_root_iters) + " steps");
}

double jel_statistic(const PseudoValues& pv, double lambda) {
  double sum = 0.0;
  for (double v : pv.nu) {
    const double t = lambda * v;
    if (!(1.0 + t > 0.0)) {
      throw Error(Errc::domain_error, "1 + lambda * nu_i must be positive");
    }
    sum += std::log1p(t);
  }
  return std::max(0.0, 2.0 * sum);
}

JelResult jel_test(const Dataset& d, double alpha, const Tolerances& tol,
                   JackknifeOptions options) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_alpha, "alpha must lie in (0, 1)");
  }
  tol.validate();
  const PseudoValues pv = pseudo_values(d, options);

  JelResult r;
  r.alpha = alpha;
  r.n = pv.n;
  r.delta_hat = pv.delta_hat;
  r.critical_value = chi2_1_critical(alpha);
  try {
    r.lambda = solve_lambda(pv, tol);
  } catch (const Error& e) {
    if (e.code() == Errc::hull_violation) {
      r.degenerate = true;
      r.statistic = std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
      r.reject = true;
      return r;
    }
    if (e.code() == Errc::all_zero) {
      r.degenerate = true;
      r.statistic = 0.0;
      r.p_value = 1.0;
      r.reject = false;
      return r;
    }
    throw;
  }
  r.statistic = jel_statistic(pv, r.lambda);
  r.p_value = chi2_1_sf(r.statistic);
  r.reject = r.statistic > r.critical_value;
  return r;
}

}  // namespace ginijel
