#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wmrp/errors.hpp"
#include "wmrp/sim.hpp"

namespace wmrp::cli {

/// Syntax error in a configuration file, located by line and (when known) key.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, std::string key = {});
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Column names of trajectory.csv, in file order.
const std::vector<std::string>& TrajectoryColumns();

struct RunConfig {
  Scenario scenario;
  EventOptions events;
  std::filesystem::path out_dir = "out";
  std::vector<std::string> columns = TrajectoryColumns();
  bool diagnostics = true;

  void Validate() const;
};

/// Parses the sectioned key = value format:
///
///   # comment
///   [params]
///   M = 1
///   [initial]
///   theta = pi/4
///
/// Sections: params, gains, initial, sim, events, output. Unknown sections or keys,
/// duplicates and malformed numbers are ParseErrors; values violating a physical
/// invariant are ValidationErrors. Numbers may be written as `pi`, `-pi/2`, `3*pi/4`.
RunConfig ParseConfig(std::string_view text);

RunConfig LoadConfig(const std::filesystem::path& path);

/// Parses a number or a multiple of pi. Returns false on malformed input.
bool ParseScalar(std::string_view token, double& value);

ControlMode ParseControlMode(std::string_view token);

}  // namespace wmrp::cli
