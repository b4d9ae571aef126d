#include "density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ginijel::cli {
namespace {

// Type-7 sample quantile on sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * double(sorted.size() - 1);
  const auto lo = std::size_t(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - double(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

DegenerateBandwidth::DegenerateBandwidth(const std::string& category)
    : std::runtime_error("DegenerateBandwidth: bandwidth undefined for category '" + category +
                         "' (needs at least two distinct values)"),
      category_(category) {}

double silverman_bandwidth(std::vector<double> values) {
  const std::size_t m = values.size();
  if (m < 2) return 0.0;
  std::sort(values.begin(), values.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(m);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / double(m - 1));
  const double iqr = quantile(values, 0.75) - quantile(values, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;
  return 0.9 * spread * std::pow(double(m), -0.2);
}

std::vector<DensitySeries> category_densities(const Dataset& d, std::size_t points) {
  std::vector<std::vector<double>> by_cat(d.category_count());
  for (std::size_t i = 0; i < d.size(); ++i) by_cat[d.y()[i]].push_back(d.x()[i]);

  std::vector<DensitySeries> out;
  for (Category k = 0; k < by_cat.size(); ++k) {
    const auto& v = by_cat[k];
    const double h = silverman_bandwidth(v);
    if (!(h > 0.0)) throw DegenerateBandwidth(d.label(k));

    DensitySeries s;
    s.label = d.label(k);
    s.count = v.size();
    s.bandwidth = h;
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double lo = *mn - 3.0 * h;
    const double hi = *mx + 3.0 * h;
    const double norm = 1.0 / (double(v.size()) * h * std::sqrt(2.0 * std::numbers::pi));
    s.grid.resize(points);
    s.density.resize(points);
    for (std::size_t g = 0; g < points; ++g) {
      const double t = lo + (hi - lo) * double(g) / double(points - 1);
      double acc = 0.0;
      for (double x : v) {
        const double z = (t - x) / h;
        acc += std::exp(-0.5 * z * z);
      }
      s.grid[g] = t;
      s.density[g] = acc * norm;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ginijel::cli
