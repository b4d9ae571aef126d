#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ginijel {

enum class Errc {
  empty,
  non_finite_value,
  sample_too_small,
  invalid_tolerances,
  hull_violation,
  all_zero,
  no_convergence,
  domain_error,
  invalid_alpha,
  invalid_probability_vector,
  zero_variance,
  invalid_spec,
  invalid_scenario,
  invalid_argument,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above. `index`
// is set when the failure points at a specific record.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace ginijel
