#include "ginijel/estimator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ginijel/error.hpp"

namespace ginijel {
namespace {

void require_triples(const Dataset& d) {
  if (d.size() < 3) {
    throw Error(Errc::sample_too_small,
                "estimator needs n >= 3, got n = " + std::to_string(d.size()));
  }
}

void require_category(const Dataset& d, Category k) {
  if (k >= d.category_count()) {
    throw Error(Errc::invalid_argument,
                "category code " + std::to_string(k) + " out of range");
  }
}

// I(min(p, q) > r, y_p = y_q = k)
int pair_beats(const Observation& p, const Observation& q,
               const Observation& r, Category k) noexcept {
  return (p.y == k && q.y == k && std::min(p.x, q.x) > r.x) ? 1 : 0;
}

}  // namespace

int kernel_hits(const Observation& a, const Observation& b,
                const Observation& c, Category k) noexcept {
  return pair_beats(a, b, c, k) + pair_beats(b, c, a, k) +
         pair_beats(a, c, b, k);
}

double kernel_sym(const Observation& a, const Observation& b,
                  const Observation& c, Category k) noexcept {
  return kernel_hits(a, b, c, k) / 3.0;
}

double delta_from_count(std::uint64_t count, std::size_t n) noexcept {
  const double nd = static_cast<double>(n);
  return 2.0 * static_cast<double>(count) / (nd * (nd - 1.0) * (nd - 2.0));
}

double delta_k_bruteforce(const Dataset& d, Category k) {
  require_triples(d);
  require_category(d, k);
  const auto x = d.x();
  const auto y = d.y();
  const std::size_t n = d.size();
  // Sum of 3 * h_k over triples, kept as an integer.
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const Observation a{x[i], y[i]};
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      const Observation b{x[j], y[j]};
      for (std::size_t l = j + 1; l < n; ++l) {
        hits += static_cast<std::uint64_t>(
            kernel_hits(a, b, Observation{x[l], y[l]}, k));
      }
    }
  }
  return delta_from_count(hits, n);
}

double delta_k_fast(const Dataset& d, Category k) {
  require_triples(d);
  require_category(d, k);
  std::vector<double> sorted(d.x().begin(), d.x().end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> members;
  members.reserve(d.counts()[k]);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.y()[i] == k) members.push_back(d.x()[i]);
  }
  std::sort(members.begin(), members.end());

  const std::uint64_t m = members.size();
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i + 1 < m; ++i) {
    const auto below = static_cast<std::uint64_t>(
        std::lower_bound(sorted.begin(), sorted.end(), members[i]) -
        sorted.begin());
    count += (m - 1 - i) * below;
  }
  return delta_from_count(count, d.size());
}

RankIndex::RankIndex(std::span<const double> x)
    : order_(x.size()), below_(x.size()) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::size_t group_start = 0;
  for (std::size_t pos = 0; pos < order_.size(); ++pos) {
    if (pos > 0 && x[order_[pos]] != x[order_[pos - 1]]) group_start = pos;
    below_[order_[pos]] = group_start;
  }
}

std::vector<std::uint64_t> pair_rank_counts(const RankIndex& ranks,
                                            std::span<const Category> y,
                                            std::size_t k_count) {
  std::vector<std::uint64_t> size(k_count, 0);
  for (Category c : y) ++size[c];

  // Within category k in ascending order, the member at position i is the
  // pair minimum for the (m - 1 - i) members after it.
  std::vector<std::uint64_t> seen(k_count, 0);
  std::vector<std::uint64_t> counts(k_count, 0);
  const auto below = ranks.below();
  for (std::size_t idx : ranks.order()) {
    const Category k = y[idx];
    const std::uint64_t after = size[k] - 1 - seen[k];
    counts[k] += after * below[idx];
    ++seen[k];
  }
  return counts;
}

double delta_hat_from_counts(std::span<const std::uint64_t> kernel_counts,
                             std::span<const std::size_t> category_sizes,
                             std::size_t n) {
  const double nd = static_cast<double>(n);
  double total = 0.0;
  for (std::size_t k = 0; k < kernel_counts.size(); ++k) {
    if (category_sizes[k] == 0) continue;
    const double weight = nd / static_cast<double>(category_sizes[k]);
    total += weight * delta_from_count(kernel_counts[k], n);
  }
  return total - 1.0 / 3.0;
}

GiniEstimate estimate_delta(const Dataset& d, EstimatorPath path) {
  require_triples(d);
  const std::size_t k_count = d.category_count();
  GiniEstimate est;
  est.n = d.size();
  est.p_hat = category_counts(d).p_hat;
  est.delta_k.resize(k_count);

  if (path == EstimatorPath::brute) {
    for (Category k = 0; k < k_count; ++k) {
      est.delta_k[k] = delta_k_bruteforce(d, k);
    }
  } else {
    const RankIndex ranks(d.x());
    const auto counts = pair_rank_counts(ranks, d.y(), k_count);
    for (Category k = 0; k < k_count; ++k) {
      est.delta_k[k] = delta_from_count(counts[k], est.n);
    }
  }

  double total = 0.0;
  for (Category k = 0; k < k_count; ++k) {
    total += est.delta_k[k] / est.p_hat[k];
  }
  est.delta_hat = total - 1.0 / 3.0;
  return est;
}

}  // namespace ginijel
