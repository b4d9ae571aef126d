#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ginijel::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kDegenerate = 3 };

/// Seed used when neither --seed nor GINIJEL_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 12345;
inline constexpr const char* kSeedEnv = "GINIJEL_SEED";

/// Entry point shared by the executable and the tests. Results go to `out`
/// in one write; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ginijel::cli
