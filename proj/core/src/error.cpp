#include "ginijel/error.hpp"

namespace ginijel {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::empty: return "Empty";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::sample_too_small: return "SampleTooSmall";
    case Errc::invalid_tolerances: return "InvalidTolerances";
    case Errc::hull_violation: return "HullViolation";
    case Errc::all_zero: return "AllZero";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::domain_error: return "DomainError";
    case Errc::invalid_alpha: return "InvalidAlpha";
    case Errc::invalid_probability_vector: return "InvalidProbabilityVector";
    case Errc::zero_variance: return "ZeroVariance";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::invalid_scenario: return "InvalidScenario";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace ginijel
