#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dyad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Environment variable naming a directory that relative --out paths resolve against.
inline constexpr const char* kOutputDirEnv = "DYAD_OUTPUT_DIR";

// Entry point behind the `dyad` executable. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dyad::cli
