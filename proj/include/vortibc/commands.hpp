#pragma once

#include <ostream>
#include <string>

#include "vortibc/config.hpp"

namespace vortibc {

// Process exit codes.
enum ExitCode {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitNoContraction = 3,
  kExitSolver = 4,
  kExitPartialSweep = 5,
};
int exit_code_for(ErrorCode code);

// Each command writes its files under cfg.directory and a report to out.
//   verify: verify.csv (check, n, residual, order) over n1 * 2^k, k < verify_levels
//   stokes: stokes_diagnostics.csv, stokes_energy.csv, w_*.vbf
//   ns:     ns_trace.csv, ns_diagnostics.csv, u_*.vbf
//   euler:  euler_diagnostics.csv, u_*.vbf
//   sweep:  sweep.csv, sweep_summary.txt
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_stokes(const RunConfig& cfg, std::ostream& out);
int cmd_ns(const RunConfig& cfg, std::ostream& out);
int cmd_euler(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, int threads, std::ostream& out);

// Validates cfg, runs the named command and maps errors to exit codes,
// printing them to err.
int run_command(const std::string& name, const RunConfig& cfg, int threads, std::ostream& out, std::ostream& err);

}  // namespace vortibc
