#include "ginijel/dataset.hpp"

#include <cmath>
#include <unordered_map>

#include "ginijel/error.hpp"

namespace ginijel {

Dataset Dataset::from_pairs(std::span<const Record> records) {
  if (records.empty()) {
    throw Error(Errc::empty, "dataset needs at least one record");
  }
  Dataset d;
  d.x_.reserve(records.size());
  d.y_.reserve(records.size());
  std::unordered_map<std::string, Category> codes;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!std::isfinite(r.x)) {
      throw Error(Errc::non_finite_value,
                  "x is not finite at record " + std::to_string(i), i);
    }
    auto [it, inserted] =
        codes.try_emplace(r.label, static_cast<Category>(d.labels_.size()));
    if (inserted) {
      d.labels_.push_back(r.label);
      d.counts_.push_back(0);
    }
    d.x_.push_back(r.x);
    d.y_.push_back(it->second);
    ++d.counts_[it->second];
  }
  return d;
}

Dataset Dataset::from_codes(std::vector<double> x,
                            std::span<const std::uint32_t> raw_codes,
                            std::span<const std::string> raw_labels) {
  if (x.empty()) {
    throw Error(Errc::empty, "dataset needs at least one record");
  }
  if (x.size() != raw_codes.size()) {
    throw Error(Errc::invalid_argument, "x and category codes differ in length");
  }
  Dataset d;
  d.y_.reserve(x.size());
  std::unordered_map<std::uint32_t, Category> codes;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw Error(Errc::non_finite_value,
                  "x is not finite at record " + std::to_string(i), i);
    }
    const std::uint32_t raw = raw_codes[i];
    auto [it, inserted] =
        codes.try_emplace(raw, static_cast<Category>(d.labels_.size()));
    if (inserted) {
      if (raw < raw_labels.size()) {
        d.labels_.push_back(raw_labels[raw]);
      } else {
        d.labels_.push_back(std::to_string(raw));
      }
      d.counts_.push_back(0);
    }
    d.y_.push_back(it->second);
    ++d.counts_[it->second];
  }
  d.x_ = std::move(x);
  return d;
}

CategoryCounts category_counts(const Dataset& d) {
  CategoryCounts out;
  out.counts.assign(d.counts().begin(), d.counts().end());
  out.p_hat.reserve(out.counts.size());
  const double n = static_cast<double>(d.size());
  for (std::size_t c : out.counts) {
    out.p_hat.push_back(static_cast<double>(c) / n);
  }
  return out;
}

void Tolerances::validate() const {
  if (!(root_tol > 0.0) || !(float_eq_tol > 0.0) || max_root_iters < 1) {
    throw Error(Errc::invalid_tolerances,
                "tolerances must be strictly positive and max_root_iters >= 1");
  }
}

}  // namespace ginijel
