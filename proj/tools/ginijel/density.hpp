#pragma once

#include <ginijel/dataset.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace ginijel::cli {

/// Bandwidth undefined for a category (fewer than two points or zero spread).
class DegenerateBandwidth : public std::runtime_error {
 public:
  explicit DegenerateBandwidth(const std::string& category);
  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

struct DensitySeries {
  std::string label;
  std::size_t count = 0;
  double bandwidth = 0.0;
  std::vector<double> grid;
  std::vector<double> density;
};

/// Silverman's rule: 0.9 * min(sd, IQR / 1.34) * m^(-1/5), falling back to sd
/// when the IQR is zero.
double silverman_bandwidth(std::vector<double> values);

/// Gaussian-kernel density per category on `points` equally spaced grid
/// values covering [min - 3h, max + 3h] of that category.
std::vector<DensitySeries> category_densities(const Dataset& d, std::size_t points = 256);

}  // namespace ginijel::cli
