#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gsip/config.hpp"

namespace gsip {

/// Process exit codes shared by every command.
enum ExitCode : int {
  kExitPass = 0,
  kExitVerificationFailure = 1,
  kExitConfigError = 2,
  kExitNumericalError = 3,
};

/// Samples the closed forms on the configured grid into case-<id>.csv
/// (x, m, U, Y, W, V1, V2, psi0_analytic) and writes E_0..E_k to
/// case-<id>.spectrum.json.
int cmd_generate(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Prints n, E_n and E_n - E_{n-1} for n = 0..k.
int cmd_tabulate(const RunConfig& config, std::ostream& out);

/// Runs one verification case and writes report.json plus case-<id>.csv.
int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Runs the canonical cases and/or a one-parameter scan.
int cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

int dispatch(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);

/// Maps an exception thrown by the library onto the exit-code contract.
int exit_code_for(const std::exception& error);

}  // namespace gsip
