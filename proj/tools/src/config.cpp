#include "wmrp_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace wmrp::cli {

ParseError::ParseError(const std::string& message, int line, std::string key)
    : Error("line " + std::to_string(line) + (key.empty() ? "" : " (" + key + ")") + ": " +
            message),
      line_(line),
      key_(std::move(key)) {}

const std::vector<std::string>& TrajectoryColumns() {
  static const std::vector<std::string> columns = {
      "t",     "x",     "y",     "psi",     "theta", "v",     "psi_dot",
      "theta_dot", "F", "tau",   "E",       "E_total", "V_E", "V_psi",
      "psi_d", "e_psi", "e_v",   "e_p",     "lambda"};
  return columns;
}

void RunConfig::Validate() const {
  scenario.Validate();
  if (!(events.tol_E > 0.0) || !(events.tol_up > 0.0) || !(events.tol_origin > 0.0)) {
    throw ValidationError("event tolerances must be > 0");
  }
  if (columns.empty()) {
    throw ValidationError("at least one output column is required");
  }
  const auto& schema = TrajectoryColumns();
  for (const auto& column : columns) {
    if (std::find(schema.begin(), schema.end(), column) == schema.end()) {
      throw ValidationError("unknown output column '" + column + "'");
    }
  }
}

namespace {

std::string_view Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool ParseNumber(std::string_view token, double& value) {
  if (token.empty()) {
    return false;
  }
  if (token.front() == '+') {
    token.remove_prefix(1);
  }
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  return result.ec == std::errc() && result.ptr == token.data() + token.size() &&
         std::isfinite(value);
}

bool ParseBool(std::string_view token, bool& value) {
  if (token == "true" || token == "1" || token == "yes") {
    value = true;
    return true;
  }
  if (token == "false" || token == "0" || token == "no") {
    value = false;
    return true;
  }
  return false;
}

std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.emplace_back(Trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return out;
}

using Setter = std::function<bool(RunConfig&, std::string_view)>;

template <typename Fn>
Setter Number(Fn&& field) {
  return [field](RunConfig& c, std::string_view v) {
    double value = 0.0;
    if (!ParseScalar(v, value)) {
      return false;
    }
    field(c) = value;
    return true;
  };
}

const std::map<std::string, std::map<std::string, Setter>>& Schema() {
  static const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"params",
       {
           {"M", Number([](RunConfig& c) -> double& { return c.scenario.params.M; })},
           {"m", Number([](RunConfig& c) -> double& { return c.scenario.params.m; })},
           {"J", Number([](RunConfig& c) -> double& { return c.scenario.params.J; })},
           {"l", Number([](RunConfig& c) -> double& { return c.scenario.params.l; })},
           {"g", Number([](RunConfig& c) -> double& { return c.scenario.params.g; })},
           {"d", Number([](RunConfig& c) -> double& { return c.scenario.params.d; })},
           {"R", Number([](RunConfig& c) -> double& { return c.scenario.params.R; })},
       }},
      {"gains",
       {
           {"k_E", Number([](RunConfig& c) -> double& { return c.scenario.gains.k_E; })},
           {"k_p", Number([](RunConfig& c) -> double& { return c.scenario.gains.k_p; })},
           {"k_v", Number([](RunConfig& c) -> double& { return c.scenario.gains.k_v; })},
           {"k_psi", Number([](RunConfig& c) -> double& { return c.scenario.gains.k_psi; })},
           {"k_psi_dot",
            Number([](RunConfig& c) -> double& { return c.scenario.gains.k_psi_dot; })},
           {"eps_origin",
            Number([](RunConfig& c) -> double& { return c.scenario.gains.eps_origin; })},
       }},
      {"initial",
       {
           {"x", Number([](RunConfig& c) -> double& { return c.scenario.initial.x; })},
           {"y", Number([](RunConfig& c) -> double& { return c.scenario.initial.y; })},
           {"psi", Number([](RunConfig& c) -> double& { return c.scenario.initial.psi; })},
           {"theta", Number([](RunConfig& c) -> double& { return c.scenario.initial.theta; })},
           {"x_dot", Number([](RunConfig& c) -> double& { return c.scenario.initial.x_dot; })},
           {"y_dot", Number([](RunConfig& c) -> double& { return c.scenario.initial.y_dot; })},
           {"psi_dot",
            Number([](RunConfig& c) -> double& { return c.scenario.initial.psi_dot; })},
           {"theta_dot",
            Number([](RunConfig& c) -> double& { return c.scenario.initial.theta_dot; })},
       }},
      {"sim",
       {
           {"dt", Number([](RunConfig& c) -> double& { return c.scenario.dt; })},
           {"t_final", Number([](RunConfig& c) -> double& { return c.scenario.t_final; })},
           {"sample_period",
            Number([](RunConfig& c) -> double& { return c.scenario.sample_period; })},
           {"constraint_tol",
            Number([](RunConfig& c) -> double& { return c.scenario.constraint_tolerance; })},
           {"mode",
            [](RunConfig& c, std::string_view v) {
              c.scenario.mode = ParseControlMode(v);
              return true;
            }},
           {"printed_eq24",
            [](RunConfig& c, std::string_view v) {
              return ParseBool(v, c.scenario.control.alternate_accel_form);
            }},
       }},
      {"events",
       {
           {"tol_E", Number([](RunConfig& c) -> double& { return c.events.tol_E; })},
           {"tol_up", Number([](RunConfig& c) -> double& { return c.events.tol_up; })},
           {"tol_origin", Number([](RunConfig& c) -> double& { return c.events.tol_origin; })},
       }},
      {"output",
       {
           {"dir",
            [](RunConfig& c, std::string_view v) {
              if (v.empty()) {
                return false;
              }
              c.out_dir = std::string(v);
              return true;
            }},
           {"columns",
            [](RunConfig& c, std::string_view v) {
              c.columns = SplitList(v);
              return true;
            }},
           {"diagnostics",
            [](RunConfig& c, std::string_view v) { return ParseBool(v, c.diagnostics); }},
       }},
  };
  return schema;
}

}  // namespace

bool ParseScalar(std::string_view token, double& value) {
  token = Trim(token);
  double sign = 1.0;
  if (!token.empty() && (token.front() == '-' || token.front() == '+')) {
    sign = token.front() == '-' ? -1.0 : 1.0;
    token.remove_prefix(1);
  }
  const auto pi_pos = token.find("pi");
  if (pi_pos == std::string_view::npos) {
    if (!ParseNumber(token, value)) {
      return false;
    }
    value *= sign;
    return true;
  }

  double coefficient = 1.0;
  std::string_view head = token.substr(0, pi_pos);
  if (!head.empty()) {
    if (head.back() != '*' || !ParseNumber(head.substr(0, head.size() - 1), coefficient)) {
      return false;
    }
  }
  double divisor = 1.0;
  std::string_view tail = token.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/' || !ParseNumber(tail.substr(1), divisor) || divisor == 0.0) {
      return false;
    }
  }
  value = sign * coefficient * std::numbers::pi / divisor;
  return true;
}

ControlMode ParseControlMode(std::string_view token) {
  if (token == "continuous") {
    return ControlMode::kContinuous;
  }
  if (token == "sampled") {
    return ControlMode::kSampled;
  }
  if (token == "open_loop" || token == "none") {
    return ControlMode::kOpenLoop;
  }
  throw ValidationError("unknown control mode '" + std::string(token) +
                        "' (expected continuous, sampled or open_loop)");
}

RunConfig ParseConfig(std::string_view text) {
  RunConfig config;
  const auto& schema = Schema();
  const std::map<std::string, Setter>* section = nullptr;
  std::string section_name;
  std::set<std::string> seen;
  bool any_entry = false;

  int line_no = 0;
  std::istringstream stream{std::string(text)};
  std::string raw;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("unterminated section header", line_no);
      }
      section_name = std::string(Trim(line.substr(1, line.size() - 2)));
      const auto it = schema.find(section_name);
      if (it == schema.end()) {
        throw ParseError("unknown section [" + section_name + "]", line_no);
      }
      section = &it->second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (section == nullptr) {
      throw ParseError("key outside of any section", line_no, key);
    }
    const auto setter = section->find(key);
    if (setter == section->end()) {
      throw ParseError("unknown key in [" + section_name + "]", line_no, key);
    }
    if (!seen.insert(section_name + "." + key).second) {
      throw ParseError("duplicate key", line_no, key);
    }
    if (!setter->second(config, value)) {
      throw ParseError("malformed value '" + std::string(value) + "'", line_no, key);
    }
    any_entry = true;
  }
  if (!any_entry) {
    throw ParseError("configuration is empty", line_no);
  }
  config.Validate();
  return config;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open config " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

}  // namespace wmrp::cli
