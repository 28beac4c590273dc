#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wmrp/diagnostics.hpp"
#include "wmrp/sim.hpp"
#include "wmrp_cli/config.hpp"

namespace wmrp::cli {

/// Energy-law residuals of the corrected and alternate desired-acceleration form on the
/// same pure swing-up scenario.
struct PrintedFormComparison {
  double corrected_max = 0.0;
  double printed_max = 0.0;
  double ratio() const { return printed_max / corrected_max; }
};

struct RunResult {
  Trajectory trajectory;
  std::vector<Event> events;
  std::optional<ResidualReport> report;
  std::optional<PrintedFormComparison> comparison;
  /// Initial state is downward rest, outside the swing-up feasibility set.
  bool excluded_initial_condition = false;
  /// Excluded initial condition and theta never moved.
  bool no_swing_up = false;
  bool cart_loop_damped = true;
};

/// Runs the scenario, events and diagnostics. Does not touch the filesystem.
RunResult Execute(const RunConfig& config);

/// Locale-independent shortest form with 17 significant digits.
std::string FormatDouble(double value);

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& tr,
                        const std::vector<std::string>& columns);

void WriteSummary(std::ostream& out, const RunConfig& config, const RunResult& result);

/// Execute plus trajectory.csv and summary.txt under config.out_dir.
RunResult Run(const RunConfig& config);

}  // namespace wmrp::cli
