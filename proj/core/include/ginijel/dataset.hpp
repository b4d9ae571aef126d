#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ginijel {

/// Category code. Codes are dense: a dataset with K categories uses 0..K-1.
using Category = std::uint32_t;

struct Record {
  double x;
  std::string label;
};

/// Paired sample (x_i, y_i) of a continuous measurement and a category.
///
/// Categories are coded in order of first appearance, and K counts only the
/// labels that were actually observed, so every code has at least one member.
/// A Dataset is immutable once built.
class Dataset {
 public:
  /// Throws Errc::empty for no records and Errc::non_finite_value (with the
  /// record index) for NaN or infinite x.
  static Dataset from_pairs(std::span<const Record> records);

  /// Builds a dataset from arbitrary integer codes. Codes are re-assigned in
  /// first-appearance order; `raw_labels[c]`, when given, names raw code c,
  /// otherwise the decimal text of c is used.
  static Dataset from_codes(std::vector<double> x,
                            std::span<const std::uint32_t> raw_codes,
                            std::span<const std::string> raw_labels = {});

  std::size_t size() const noexcept { return x_.size(); }
  std::size_t category_count() const noexcept { return labels_.size(); }

  std::span<const double> x() const noexcept { return x_; }
  std::span<const Category> y() const noexcept { return y_; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  const std::string& label(Category k) const { return labels_.at(k); }

  /// Observation count per category; sums to size().
  std::span<const std::size_t> counts() const noexcept { return counts_; }

 private:
  Dataset() = default;

  std::vector<double> x_;
  std::vector<Category> y_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> counts_;
};

struct CategoryCounts {
  std::vector<std::size_t> counts;
  std::vector<double> p_hat;
};

/// Empirical category frequencies p_hat[k] = counts[k] / n.
CategoryCounts category_counts(const Dataset& d);

struct Tolerances {
  double root_tol = 1e-10;
  double float_eq_tol = 1e-12;
  int max_root_iters = 200;

  /// Throws Errc::invalid_tolerances unless every field is strictly positive.
  void validate() const;
};

}  // namespace ginijel
