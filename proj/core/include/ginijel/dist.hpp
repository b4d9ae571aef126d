#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace ginijel {

double std_normal_cdf(double x) noexcept;

/// Inverse of std_normal_cdf on (0, 1); throws Errc::domain_error otherwise.
double std_normal_quantile(double p);

/// Upper tail of the chi-square distribution with one degree of freedom,
/// erfc(sqrt(x / 2)). Throws Errc::domain_error for x < 0 or NaN.
double chi2_1_sf(double x);

/// Upper-alpha critical point of chi-square(1).
double chi2_1_critical(double alpha);

/// Counter-based generator: Philox4x64-10 keyed by (seed, stream_id), with a
/// 256-bit block counter. Equal (seed, stream_id) pairs yield identical
/// streams on every platform; distinct stream ids are independent streams.
/// Satisfies UniformRandomBitGenerator.
class SeededRng {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t seed() const noexcept { return key_[0]; }
  std::uint64_t stream_id() const noexcept { return key_[1]; }

  /// One Philox4x64-10 block; exposed for known-answer tests.
  static Block philox(Block counter, Key key) noexcept;

 private:
  Key key_;
  Block counter_{};
  Block buffer_{};
  std::size_t next_ = 4;
};

struct Normal {
  double mu = 0.0;
  double sigma = 1.0;
};
struct Exponential {
  double rate = 1.0;
};
struct Lognormal {
  double mu = 0.0;
  double sigma = 1.0;
};
using Continuous = std::variant<Normal, Exponential, Lognormal>;

struct Categorical {
  std::vector<double> p;
};

/// Finite mixture; a draw picks component j with probability weights[j] and
/// reports j as its label.
struct Mixture {
  std::vector<Continuous> components;
  std::vector<double> weights;
};

using DistSpec = std::variant<Normal, Exponential, Lognormal, Categorical, Mixture>;

/// Throws Errc::invalid_spec when a scale or rate is not positive, or when
/// weights are not strictly positive and summing to one.
void validate(const DistSpec& spec);

struct Draws {
  std::vector<double> values;
  /// Component or category index per draw; empty for plain continuous specs.
  std::vector<std::uint32_t> labels;
};

/// Draws n variates. Each continuous draw consumes exactly one uniform
/// (inverse CDF); a categorical draw consumes one; a mixture draw consumes two
/// (label, then value). For categorical specs `values` holds the label too.
Draws sample(const DistSpec& spec, std::size_t n, SeededRng& rng);

}  // namespace ginijel
