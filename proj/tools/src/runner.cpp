#include "wmrp_cli/runner.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>

namespace wmrp::cli {

std::string FormatDouble(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

namespace {

using Column = std::function<double(const TrajectorySample&)>;

const std::map<std::string, Column>& ColumnAccessors() {
  static const std::map<std::string, Column> accessors = {
      {"t", [](const TrajectorySample& s) { return s.t; }},
      {"x", [](const TrajectorySample& s) { return s.state.x; }},
      {"y", [](const TrajectorySample& s) { return s.state.y; }},
      {"psi", [](const TrajectorySample& s) { return s.state.psi; }},
      {"theta", [](const TrajectorySample& s) { return s.state.theta; }},
      {"v", [](const TrajectorySample& s) { return s.state.v; }},
      {"psi_dot", [](const TrajectorySample& s) { return s.state.psi_dot; }},
      {"theta_dot", [](const TrajectorySample& s) { return s.state.theta_dot; }},
      {"F", [](const TrajectorySample& s) { return s.input.F; }},
      {"tau", [](const TrajectorySample& s) { return s.input.tau; }},
      {"E", [](const TrajectorySample& s) { return s.diagnostics.E; }},
      {"E_total", [](const TrajectorySample& s) { return s.total_energy; }},
      {"V_E", [](const TrajectorySample& s) { return s.diagnostics.V_E; }},
      {"V_psi", [](const TrajectorySample& s) { return s.diagnostics.V_psi; }},
      {"psi_d", [](const TrajectorySample& s) { return s.diagnostics.psi_d; }},
      {"e_psi", [](const TrajectorySample& s) { return s.diagnostics.e_psi; }},
      {"e_v", [](const TrajectorySample& s) { return s.diagnostics.e_v; }},
      {"e_p", [](const TrajectorySample& s) { return s.diagnostics.e_p; }},
      {"lambda", [](const TrajectorySample& s) { return s.lambda; }},
  };
  return accessors;
}

bool IsDownwardRest(const FullVelocityState& s) {
  return s.theta_dot == 0.0 &&
         std::abs(std::abs(WrapToPi(s.theta)) - std::numbers::pi) < 1e-12;
}

bool IsPureSwingUp(const Scenario& sc) {
  return sc.gains.k_p == 0.0 && sc.gains.k_v == 0.0 && sc.mode != ControlMode::kOpenLoop;
}

const char* Bool(bool b) { return b ? "true" : "false"; }

}  // namespace

RunResult Execute(const RunConfig& config) {
  config.Validate();
  RunResult result;
  result.trajectory = Simulate(config.scenario);
  result.events = DetectEvents(result.trajectory, config.events);
  result.cart_loop_damped = config.scenario.gains.IsCartLoopDamped(config.scenario.params);

  const FullVelocityState& initial = config.scenario.initial;
  result.excluded_initial_condition = IsDownwardRest(initial);
  if (result.excluded_initial_condition) {
    bool moved = false;
    for (const auto& sample : result.trajectory.samples) {
      moved = moved || std::abs(sample.state.theta - initial.theta) > 1e-9;
    }
    result.no_swing_up = !moved;
  }

  if (config.diagnostics) {
    result.report = BuildResidualReport(result.trajectory);
  }

  const Scenario& sc = config.scenario;
  if (sc.control.alternate_accel_form && IsPureSwingUp(sc)) {
    Scenario corrected = sc;
    corrected.control.alternate_accel_form = false;
    const Trajectory reference = Simulate(corrected);
    PrintedFormComparison cmp;
    cmp.corrected_max = MaxAbs(EnergyLawResidual(reference, sc.params, sc.gains));
    cmp.printed_max = MaxAbs(EnergyLawResidual(result.trajectory, sc.params, sc.gains));
    result.comparison = cmp;
  }
  return result;
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& tr,
                        const std::vector<std::string>& columns) {
  const auto& accessors = ColumnAccessors();
  std::vector<const Column*> selected;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    selected.push_back(&accessors.at(columns[i]));
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  std::string line;
  for (const auto& sample : tr.samples) {
    line.clear();
    for (std::size_t i = 0; i < selected.size(); ++i) {
      if (i) {
        line += ',';
      }
      line += FormatDouble((*selected[i])(sample));
    }
    line += '\n';
    out << line;
  }
}

void WriteSummary(std::ostream& out, const RunConfig& config, const RunResult& result) {
  const Scenario& sc = config.scenario;
  const Trajectory& tr = result.trajectory;
  const TrajectorySample& last = tr.samples.back();
  const auto f = FormatDouble;

  out << "Pendulum on a differential-drive robot: run summary\n\n";
  out << "mode " << ToString(sc.mode) << ", dt " << f(sc.dt) << " s, t_final " << f(sc.t_final)
      << " s, " << tr.size() << " samples\n";
  out << "gains k_E " << f(sc.gains.k_E) << ", k_p " << f(sc.gains.k_p) << ", k_v "
      << f(sc.gains.k_v) << ", k_psi " << f(sc.gains.k_psi) << ", k_psi_dot "
      << f(sc.gains.k_psi_dot) << "\n";
  if (!result.cart_loop_damped) {
    out << "warning: cart loop is underdamped (k_v^2 < 4 (M + m) k_p)\n";
  }
  if (sc.control.alternate_accel_form) {
    out << "desired acceleration: alternate form (extra cos(theta) on the centripetal term)\n";
  }
  if (result.excluded_initial_condition) {
    out << (result.no_swing_up ? "excluded initial condition: no swing-up\n"
                               : "excluded initial condition, but the pendulum moved\n");
  }
  out << "\nfinal state: x " << f(last.state.x) << ", y " << f(last.state.y) << ", psi "
      << f(last.state.psi) << ", theta " << f(last.state.theta) << ", v " << f(last.state.v)
      << "\nfinal swing-up energy " << f(last.diagnostics.E) << " J, heading error "
      << f(last.diagnostics.e_psi) << " rad\n";

  out << "\nevents:\n";
  if (result.events.empty()) {
    out << "  none\n";
  }
  for (const Event& e : result.events) {
    out << "  " << ToString(e.kind) << " at t = " << f(e.t) << " s\n";
  }
  if (result.comparison) {
    out << "\nenergy-law residual, corrected form " << f(result.comparison->corrected_max)
        << ", alternate form " << f(result.comparison->printed_max) << " (ratio "
        << f(result.comparison->ratio()) << ")\n";
  }

  out << "\n[summary]\n";
  out << "mode = " << ToString(sc.mode) << "\n";
  out << "samples = " << tr.size() << "\n";
  out << "printed_eq24 = " << Bool(sc.control.alternate_accel_form) << "\n";
  out << "cart_loop_damped = " << Bool(result.cart_loop_damped) << "\n";
  out << "excluded_initial_condition = " << Bool(result.excluded_initial_condition) << "\n";
  out << "no_swing_up = " << Bool(result.no_swing_up) << "\n";
  for (const char* name : {"t", "x", "y", "psi", "theta", "v", "psi_dot", "theta_dot", "E",
                           "e_psi"}) {
    out << "final." << name << " = " << f(ColumnAccessors().at(name)(last)) << "\n";
  }
  for (EventKind kind :
       {EventKind::kEnergyCaptured, EventKind::kNearUpright, EventKind::kOriginReached}) {
    int count = 0;
    double first = 0.0;
    for (const Event& e : result.events) {
      if (e.kind == kind && count++ == 0) {
        first = e.t;
      }
    }
    out << "event." << ToString(kind) << " = " << (count ? f(first) : "none") << "\n";
    out << "event." << ToString(kind) << ".count = " << count << "\n";
  }
  if (result.report) {
    const ResidualReport& r = *result.report;
    if (r.energy_law_max) {
      out << "residual.energy_law_max = " << f(*r.energy_law_max) << "\n";
      out << "residual.V_E_max_increase = " << f(*r.V_E_max_increase) << "\n";
    }
    out << "residual.V_psi_max_increase = " << f(r.V_psi_max_increase) << "\n";
    out << "residual.power_balance_max = " << f(r.power_balance_max) << "\n";
    out << "residual.collinearity_initial = " << f(r.collinearity_initial) << "\n";
    out << "residual.collinearity_final = " << f(r.collinearity_final) << "\n";
    if (r.cartpole_max) {
      out << "residual.cartpole_tail_start = " << f(*r.cartpole_tail_start) << "\n";
      out << "residual.cartpole_max = " << f(*r.cartpole_max) << "\n";
    }
    out << "residual.constraint_max = " << f(r.constraint_max) << "\n";
  }
  if (result.comparison) {
    out << "comparison.energy_law_max_corrected = " << f(result.comparison->corrected_max)
        << "\n";
    out << "comparison.energy_law_max_printed = " << f(result.comparison->printed_max) << "\n";
    out << "comparison.ratio = " << f(result.comparison->ratio()) << "\n";
  }
}

RunResult Run(const RunConfig& config) {
  RunResult result = Execute(config);
  std::filesystem::create_directories(config.out_dir);
  {
    std::ofstream csv(config.out_dir / "trajectory.csv", std::ios::binary);
    if (!csv) {
      throw Error("cannot write " + (config.out_dir / "trajectory.csv").string());
    }
    WriteTrajectoryCsv(csv, result.trajectory, config.columns);
  }
  std::ofstream summary(config.out_dir / "summary.txt", std::ios::binary);
  if (!summary) {
    throw Error("cannot write " + (config.out_dir / "summary.txt").string());
  }
  WriteSummary(summary, config, result);
  return result;
}

}  // namespace wmrp::cli
