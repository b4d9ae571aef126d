#pragma once

// Test-side reference implementations. Nothing here calls into the library's
// estimator or jackknife code; they enumerate triples directly so the
// library's rank-counting and downdate routes can be checked against them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

struct Sample {
  std::vector<double> x;
  std::vector<std::uint32_t> y;  // dense codes 0..K-1, first-appearance order
};

inline std::size_t category_count(const Sample& s) {
  std::uint32_t k = 0;
  for (auto c : s.y) k = std::max(k, c + 1);
  return k;
}

// Number of hits of the three (pair, third) assignments for the triple.
inline int hits(const Sample& s, std::size_t i, std::size_t j, std::size_t l,
                std::uint32_t k) {
  auto one = [&](std::size_t a, std::size_t b, std::size_t c) {
    return s.y[a] == k && s.y[b] == k && std::min(s.x[a], s.x[b]) > s.x[c];
  };
  return int(one(i, j, l)) + int(one(j, l, i)) + int(one(i, l, j));
}

// Raw hit totals per category over all unordered triples, skipping index
// `skip` (pass n to keep everything).
inline std::vector<std::uint64_t> triple_hits(const Sample& s, std::size_t skip) {
  const std::size_t n = s.x.size();
  std::vector<std::uint64_t> h(category_count(s), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == skip) continue;
      for (std::size_t l = j + 1; l < n; ++l) {
        if (l == skip) continue;
        for (std::uint32_t k = 0; k < h.size(); ++k) h[k] += hits(s, i, j, l, k);
      }
    }
  }
  return h;
}

inline double u_stat(std::uint64_t hit_total, std::size_t m) {
  const double triples = double(m) * double(m - 1) * double(m - 2) / 6.0;
  return double(hit_total) / 3.0 / triples;
}

inline std::vector<double> delta_k(const Sample& s) {
  const auto h = triple_hits(s, s.x.size());
  std::vector<double> out;
  for (auto v : h) out.push_back(u_stat(v, s.x.size()));
  return out;
}

inline std::vector<double> weights(const Sample& s) {
  std::vector<double> w(category_count(s), 0.0);
  for (auto c : s.y) w[c] += 1.0;
  for (auto& v : w) v = double(s.x.size()) / v;
  return w;
}

inline double delta_hat(const Sample& s) {
  const auto dk = delta_k(s);
  const auto w = weights(s);
  double total = 0.0;
  for (std::size_t k = 0; k < dk.size(); ++k) total += w[k] * dk[k];
  return total - 1.0 / 3.0;
}

// Literal leave-one-out pseudo-values with full-sample weights.
inline std::vector<double> pseudo_values(const Sample& s) {
  const std::size_t n = s.x.size();
  const auto w = weights(s);
  const double full = delta_hat(s);
  std::vector<double> nu;
  for (std::size_t i = 0; i < n; ++i) {
    const auto h = triple_hits(s, i);
    double loo = -1.0 / 3.0;
    for (std::size_t k = 0; k < h.size(); ++k) loo += w[k] * u_stat(h[k], n - 1);
    nu.push_back(double(n) * full - double(n - 1) * loo);
  }
  return nu;
}

inline long double g(const std::vector<double>& nu, long double lambda) {
  long double acc = 0.0L;
  for (double v : nu) acc += v / (1.0L + lambda * v);
  return acc / nu.size();
}

// Root of g by a dense grid scan of the feasible interval followed by
// long-double bisection on the bracketing cell.
inline long double lambda_scan(const std::vector<double>& nu) {
  const double lo = -1.0 / *std::max_element(nu.begin(), nu.end());
  const double hi = -1.0 / *std::min_element(nu.begin(), nu.end());
  const int cells = 20000;
  long double a = lo, b = hi;
  long double prev = lo + (hi - lo) * 1e-9;
  for (int c = 1; c < cells; ++c) {
    const long double t = lo + (hi - lo) * (long double)c / cells;
    if (g(nu, t) < 0.0L) {
      a = prev;
      b = t;
      break;
    }
    prev = t;
  }
  for (int it = 0; it < 200; ++it) {
    const long double m = 0.5L * (a + b);
    (g(nu, m) > 0.0L ? a : b) = m;
  }
  return 0.5L * (a + b);
}

// Kolmogorov-Smirnov distance of `u` from Uniform(0,1) and its asymptotic
// p-value.
inline double ks_uniform_pvalue(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = double(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, std::max((i + 1) / n - u[i], u[i] - i / n));
  }
  const double t = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  for (int j = 1; j <= 100; ++j) {
    p += 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * t * t);
  }
  return std::clamp(p, 0.0, 1.0);
}

// Random dataset with n in [n_min, n_max], K in [1, k_max]. With `ties`,
// x is drawn from a small integer grid so duplicates are common.
inline Sample random_sample(std::mt19937_64& gen, std::size_t n_min,
                            std::size_t n_max, std::uint32_t k_max, bool ties) {
  std::uniform_int_distribution<std::size_t> nd(n_min, n_max);
  std::uniform_int_distribution<std::uint32_t> kd(1, k_max);
  const std::size_t n = nd(gen);
  const std::uint32_t k = kd(gen);
  std::uniform_int_distribution<std::uint32_t> yd(0, k - 1);
  std::uniform_int_distribution<int> grid(0, 6);
  std::normal_distribution<double> xd(0.0, 1.0);
  Sample s;
  std::map<std::uint32_t, std::uint32_t> recode;
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(ties ? double(grid(gen)) : xd(gen));
    const auto raw = yd(gen);
    auto it = recode.try_emplace(raw, std::uint32_t(recode.size())).first;
    s.y.push_back(it->second);
  }
  return s;
}

}  // namespace oracle
