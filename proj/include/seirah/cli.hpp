#pragma once

#include <string>
#include <vector>

namespace seirah {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

/// Entry point of the `seirah` tool; args exclude the program name.
/// Subcommands: generate | simulate | infer | sweep | export-fixtures.
int run_cli(const std::vector<std::string>& args);

}  // namespace seirah
