#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ginijel/dataset.hpp"

namespace ginijel {

struct Observation {
  double x;
  Category y;
};

/// Number of the three (pair, third) assignments of a triple for which both
/// pair members belong to category k and strictly exceed the third value.
int kernel_hits(const Observation& a, const Observation& b,
                const Observation& c, Category k) noexcept;

/// Symmetric degree-3 kernel h_k; one of {0, 1/3, 2/3, 1}.
double kernel_sym(const Observation& a, const Observation& b,
                  const Observation& c, Category k) noexcept;

/// O(n^3) enumeration of every unordered triple. Requires n >= 3.
double delta_k_bruteforce(const Dataset& d, Category k);

/// O(n log n) rank-counting evaluation of the same U-statistic. Requires n >= 3.
double delta_k_fast(const Dataset& d, Category k);

/// Global order data shared by all categories. below(i) is the number of
/// observations whose x is strictly less than x_i.
class RankIndex {
 public:
  explicit RankIndex(std::span<const double> x);

  std::size_t size() const noexcept { return below_.size(); }
  /// Observation indices in ascending x order.
  std::span<const std::size_t> order() const noexcept { return order_; }
  std::span<const std::uint64_t> below() const noexcept { return below_; }

 private:
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> below_;
};

/// Per-category kernel counts T_k: the number of (within-category pair,
/// third observation) assignments with min(pair) > third. The U-statistic is
/// delta_k = 2 T_k / (n (n-1) (n-2)). One sweep over the global order.
std::vector<std::uint64_t> pair_rank_counts(const RankIndex& ranks,
                                            std::span<const Category> y,
                                            std::size_t k_count);

/// Converts a kernel count into the normalised U-statistic for sample size n.
double delta_from_count(std::uint64_t count, std::size_t n) noexcept;

enum class EstimatorPath { brute, fast };

struct GiniEstimate {
  double delta_hat = 0.0;
  std::vector<double> delta_k;
  std::vector<double> p_hat;
  std::size_t n = 0;
};

/// Modified categorical Gini covariance estimate
/// sum_k delta_k / p_hat_k - 1/3. Throws Errc::sample_too_small for n < 3.
GiniEstimate estimate_delta(const Dataset& d,
                            EstimatorPath path = EstimatorPath::fast);

/// Assembles the estimate from kernel counts over categories with the given
/// member counts; used by the permutation and jackknife routes.
double delta_hat_from_counts(std::span<const std::uint64_t> kernel_counts,
                             std::span<const std::size_t> category_sizes,
                             std::size_t n);

}  // namespace ginijel
