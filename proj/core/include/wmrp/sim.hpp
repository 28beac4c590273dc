#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wmrp/control.hpp"
#include "wmrp/dynamics.hpp"
#include "wmrp/errors.hpp"
#include "wmrp/model.hpp"

namespace wmrp {

enum class ControlMode {
  kContinuous,  ///< control law evaluated at every integrator stage
  kSampled,     ///< zero-order hold at a fixed control period
  kOpenLoop,    ///< F = tau = 0
};

const char* ToString(ControlMode mode);

struct Scenario {
  Params params;
  Gains gains;
  FullVelocityState initial;
  double dt = 1e-3;
  double t_final = 60.0;
  ControlMode mode = ControlMode::kContinuous;
  /// Control period for kSampled; must be an integer multiple of dt.
  double sample_period = 1e-2;
  ControlOptions control;
  double constraint_tolerance = kDefaultConstraintTolerance;

  void Validate() const;
  /// Number of integration steps, t_final / dt.
  long StepCount() const;
  /// Integration steps per control period in sampled mode.
  long StepsPerSample() const;
};

struct TrajectorySample {
  double t = 0.0;
  ReducedState state;
  ControlInput input;
  ControlDiagnostics diagnostics;
  double total_energy = 0.0;
  double lambda = 0.0;
  /// Lateral-slip residual of the reconstructed Cartesian velocity.
  double constraint_residual = 0.0;
};

struct Trajectory {
  Scenario scenario;
  std::vector<TrajectorySample> samples;

  double dt() const { return scenario.dt; }
  std::size_t size() const { return samples.size(); }
};

/// Any state component beyond this magnitude counts as divergence.
inline constexpr double kDivergenceBound = 1e9;

/// Lateral-slip residual of (v cos psi, v sin psi), factored as v (-cos sin + sin cos)
/// so that it evaluates to exactly zero.
double ReconstructedSlipResidual(const ReducedState& s);

/// Classical four-stage Runge-Kutta step. `f(t, s)` returns the StateRate.
/// Throws NonFiniteState when the result is non-finite or exceeds kDivergenceBound.
template <typename RateFn>
ReducedState Rk4Step(RateFn&& f, const ReducedState& s, double t, double dt) {
  const StateRate k1 = f(t, s);
  const StateRate k2 = f(t + 0.5 * dt, Advance(s, k1, 0.5 * dt));
  const StateRate k3 = f(t + 0.5 * dt, Advance(s, k2, 0.5 * dt));
  const StateRate k4 = f(t + dt, Advance(s, k3, dt));
  const ReducedState next = Advance(s, k1 + 2.0 * k2 + 2.0 * k3 + k4, dt / 6.0);
  for (double c : {next.x, next.y, next.psi, next.theta, next.v, next.psi_dot,
                   next.theta_dot}) {
    if (!std::isfinite(c) || std::abs(c) > kDivergenceBound) {
      throw NonFiniteState("state diverged", t + dt);
    }
  }
  return next;
}

/// Runs the closed loop over [0, t_final]; sample k is at exactly k * dt.
/// Throws ConstraintViolation for an infeasible initial state and NonFiniteState on
/// divergence.
Trajectory Simulate(const Scenario& scenario);

enum class EventKind {
  kEnergyCaptured,  ///< |E| stays below tol_E from this sample to the end
  kNearUpright,     ///< entry into |wrap(theta)| < tol_up
  kOriginReached,   ///< first sample with sqrt(x^2 + y^2) < tol_origin
};

const char* ToString(EventKind kind);

struct Event {
  EventKind kind;
  double t = 0.0;
};

struct EventOptions {
  double tol_E = 1e-2;
  double tol_up = 0.1;
  double tol_origin = 0.1;
};

std::vector<Event> DetectEvents(const Trajectory& tr, const EventOptions& options = {});

}  // namespace wmrp
