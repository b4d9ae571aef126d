#include "ginijel/dist.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "ginijel/error.hpp"

namespace ginijel {

double std_normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(Errc::domain_error, "normal quantile needs p in (0, 1)");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double chi2_1_sf(double x) {
  if (!(x >= 0.0)) {
    throw Error(Errc::domain_error, "chi-square(1) tail needs x >= 0");
  }
  return std::erfc(std::sqrt(0.5 * x));
}

double chi2_1_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_alpha, "alpha must lie in (0, 1)");
  }
  const double z = std::numbers::sqrt2 * boost::math::erfc_inv(alpha);
  return z * z;
}

// ---------------------------------------------------------------------------
// Philox4x64-10 (Salmon et al., Random123).

namespace {

__extension__ using Uint128 = unsigned __int128;

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) noexcept {
  const Uint128 product = static_cast<Uint128>(a) * b;
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

}  // namespace

SeededRng::Block SeededRng::philox(Block ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : key_{seed, stream_id} {}

SeededRng::result_type SeededRng::operator()() noexcept {
  if (next_ == 4) {
    buffer_ = philox(counter_, key_);
    // 256-bit increment.
    for (auto& word : counter_) {
      if (++word != 0) break;
    }
    next_ = 0;
  }
  return buffer_[next_++];
}

double SeededRng::uniform() noexcept {
  constexpr double kScale = 0x1.0p-53;
  return (static_cast<double>((*this)() >> 11) + 0.5) * kScale;
}

std::uint64_t SeededRng::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection.
  Uint128 m = static_cast<Uint128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<Uint128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// ---------------------------------------------------------------------------

namespace {

void check_weights(const std::vector<double>& w, const char* what) {
  if (w.empty()) {
    throw Error(Errc::invalid_spec, std::string(what) + " has no weights");
  }
  double total = 0.0;
  for (double v : w) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(Errc::invalid_spec,
                  std::string(what) + " weights must be strictly positive");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::invalid_spec, std::string(what) + " weights must sum to 1");
  }
}

void check_scale(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(Errc::invalid_spec, std::string(what) + " must be positive");
  }
}

void check_continuous(const Continuous& c) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          check_scale(d.rate, "exponential rate");
        } else {
          if (!std::isfinite(d.mu)) {
            throw Error(Errc::invalid_spec, "location must be finite");
          }
          check_scale(d.sigma, "sigma");
        }
      },
      c);
}

double draw(const Continuous& c, SeededRng& rng) {
  const double u = rng.uniform();
  return std::visit(
      [u](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Normal>) {
          return d.mu + d.sigma * std_normal_quantile(u);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return -std::log(u) / d.rate;
        } else {
          return std::exp(d.mu + d.sigma * std_normal_quantile(u));
        }
      },
      c);
}

std::uint32_t draw_index(const std::vector<double>& cumulative, SeededRng& rng) {
  const double u = rng.uniform();
  for (std::size_t k = 0; k + 1 < cumulative.size(); ++k) {
    if (u < cumulative[k]) return static_cast<std::uint32_t>(k);
  }
  return static_cast<std::uint32_t>(cumulative.size() - 1);
}

std::vector<double> cumulative_of(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    acc += w[k];
    c[k] = acc;
  }
  return c;
}

}  // namespace

void validate(const DistSpec& spec) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Categorical>) {
          check_weights(d.p, "categorical");
        } else if constexpr (std::is_same_v<T, Mixture>) {
          check_weights(d.weights, "mixture");
          if (d.components.size() != d.weights.size()) {
            throw Error(Errc::invalid_spec,
                        "mixture needs one weight per component");
          }
          for (const auto& c : d.components) check_continuous(c);
        } else {
          check_continuous(Continuous{d});
        }
      },
      spec);
}

Draws sample(const DistSpec& spec, std::size_t n, SeededRng& rng) {
  if (n == 0) throw Error(Errc::invalid_spec, "sample size must be >= 1");
  validate(spec);
  Draws out;
  out.values.reserve(n);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Categorical>) {
          const auto cum = cumulative_of(d.p);
          out.labels.reserve(n);
          for (std::size_t i = 0; i < n; ++i) {
            const auto k = draw_index(cum, rng);
            out.labels.push_back(k);
            out.values.push_back(static_cast<double>(k));
          }
        } else if constexpr (std::is_same_v<T, Mixture>) {
          const auto cum = cumulative_of(d.weights);
          out.labels.reserve(n);
          for (std::size_t i = 0; i < n; ++i) {
            const auto k = draw_index(cum, rng);
            out.labels.push_back(k);
            out.values.push_back(draw(d.components[k], rng));
          }
        } else {
          const Continuous c{d};
          for (std::size_t i = 0; i < n; ++i) out.values.push_back(draw(c, rng));
        }
      },
      spec);
  return out;
}

}  // namespace ginijel
