#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatetrim/metrics.hpp"
#include "gatetrim/passes.hpp"

namespace gatetrim::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kOk = 0,
  kBelowTolerance = 1,
  kUsage = 2,
  kParse = 3,
  kUnsupportedGate = 4,
  kOptimizerAbort = 5,
  kIo = 6,
  kNotVerifiable = 7,
  kInternal = 8,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit status. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// JSON form of a report. Timing fields are the only non-deterministic ones.
nlohmann::ordered_json report_to_json(const OptimizationReport& report);

/// Fixed-width text summary of a report.
std::string report_to_table(const OptimizationReport& report);

}  // namespace gatetrim::cli
