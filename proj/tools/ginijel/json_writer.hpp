#pragma once

#include <string>

#include "json.hpp"

namespace ginijel::cli {

/// Serialises with every floating-point number at 17 significant digits.
/// NaN and infinities become null. indent < 0 gives the compact form.
std::string dump17(const nlohmann::json& value, int indent = 2);

}  // namespace ginijel::cli
