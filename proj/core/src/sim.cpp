#include "wmrp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wmrp {

const char* ToString(ControlMode mode) {
  switch (mode) {
    case ControlMode::kContinuous:
      return "continuous";
    case ControlMode::kSampled:
      return "sampled";
    case ControlMode::kOpenLoop:
      return "open_loop";
  }
  return "unknown";
}

const char* ToString(EventKind kind) {
  switch (kind) {
    case EventKind::kEnergyCaptured:
      return "energy_captured";
    case EventKind::kNearUpright:
      return "near_upright";
    case EventKind::kOriginReached:
      return "origin_reached";
  }
  return "unknown";
}

void Scenario::Validate() const {
  params.Validate();
  gains.Validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("dt must be > 0");
  }
  if (!(t_final >= dt) || !std::isfinite(t_final)) {
    throw ValidationError("t_final must be >= dt");
  }
  const double steps = t_final / dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * steps) {
    throw ValidationError("t_final must be an integer multiple of dt");
  }
  if (mode == ControlMode::kSampled) {
    const double ratio = sample_period / dt;
    if (!(sample_period >= dt) || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
      throw ValidationError("sample_period must be an integer multiple of dt, >= dt");
    }
  }
}

long Scenario::StepCount() const { return std::lround(t_final / dt); }

long Scenario::StepsPerSample() const { return std::lround(sample_period / dt); }

double ReconstructedSlipResidual(const ReducedState& s) {
  const double c = QuadrantCos(s.psi);
  const double sn = QuadrantSin(s.psi);
  return s.v * (-c * sn + sn * c);
}

namespace {

TrajectorySample MakeSample(double t, const ReducedState& s, const ControlInput& u,
                            const ControlDiagnostics& diag, const Params& p) {
  TrajectorySample out;
  out.t = t;
  out.state = s;
  out.input = u;
  out.diagnostics = diag;
  out.total_energy = TotalEnergy(s, p);
  out.lambda = LateralForce(s, p);
  out.constraint_residual = ReconstructedSlipResidual(s);
  return out;
}

}  // namespace

Trajectory Simulate(const Scenario& scenario) {
  scenario.Validate();
  const Params& p = scenario.params;
  Controller controller(p, scenario.gains, scenario.control);

  Trajectory tr;
  tr.scenario = scenario;
  const long steps = scenario.StepCount();
  tr.samples.reserve(static_cast<std::size_t>(steps) + 1);

  ReducedState s = FullToReduced(scenario.initial, scenario.constraint_tolerance);
  ControlInput held;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * scenario.dt;
    const ControlOutput now = controller(s);
    ControlInput applied;
    switch (scenario.mode) {
      case ControlMode::kContinuous:
        applied = now.input;
        break;
      case ControlMode::kSampled:
        if (k % scenario.StepsPerSample() == 0) {
          held = now.input;
        }
        applied = held;
        break;
      case ControlMode::kOpenLoop:
        break;
    }
    tr.samples.push_back(MakeSample(t, s, applied, now.diagnostics, p));
    if (k == steps) {
      break;
    }

    if (scenario.mode == ControlMode::kContinuous) {
      s = Rk4Step(
          [&](double, const ReducedState& x) {
            return ComputeStateDerivative(x, controller(x).input, p);
          },
          s, t, scenario.dt);
    } else {
      s = Rk4Step(
          [&](double, const ReducedState& x) { return ComputeStateDerivative(x, applied, p); },
          s, t, scenario.dt);
    }
  }
  return tr;
}

std::vector<Event> DetectEvents(const Trajectory& tr, const EventOptions& options) {
  std::vector<Event> events;
  const auto& samples = tr.samples;
  if (samples.empty()) {
    return events;
  }

  // Earliest sample after which |E| never leaves the band.
  std::size_t captured = samples.size();
  for (std::size_t i = samples.size(); i-- > 0;) {
    if (std::abs(samples[i].diagnostics.E) < options.tol_E) {
      captured = i;
    } else {
      break;
    }
  }
  if (captured < samples.size()) {
    events.push_back({EventKind::kEnergyCaptured, samples[captured].t});
  }

  bool inside = false;
  for (const auto& sample : samples) {
    const bool up = std::abs(WrapToPi(sample.state.theta)) < options.tol_up;
    if (up && !inside) {
      events.push_back({EventKind::kNearUpright, sample.t});
    }
    inside = up;
  }

  for (const auto& sample : samples) {
    if (std::hypot(sample.state.x, sample.state.y) < options.tol_origin) {
      events.push_back({EventKind::kOriginReached, sample.t});
      break;
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  return events;
}

}  // namespace wmrp
