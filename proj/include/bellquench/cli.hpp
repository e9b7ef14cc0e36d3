#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bellquench/config.hpp"
#include "bellquench/error.hpp"

namespace bellquench::cli {

inline constexpr const char* kToolName = "bellquench";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitResourceCap = 4,
};

int exit_code(ErrorKind kind);

// Subcommands: evolve, sweep, threshold-curve, fit, oracle.
std::vector<std::string> commands();
std::vector<KeySpec> schema_for(const std::string& command);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Runs an already finalized configuration; throws bellquench::Error.
void dispatch(const RunConfig& config, std::ostream& out);

}  // namespace bellquench::cli
