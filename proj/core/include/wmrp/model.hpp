#pragma once

#include <numbers>
#include <utility>

namespace wmrp {

/// Physical constants of the differential-drive robot and the pendulum it carries.
///
/// `d` and `R` never enter the reduced equations of motion; they are only used to
/// reconstruct wheel rates and wheel torques. Their defaults are arbitrary.
struct Params {
  double M = 1.0;    ///< total robot mass [kg]
  double m = 0.1;    ///< pendulum bob mass [kg]
  double J = 0.01;   ///< effective yaw inertia [kg m^2]
  double l = 1.0;    ///< pendulum length [m]
  double g = 9.81;   ///< gravity [m/s^2]
  double d = 0.2;    ///< half wheel separation [m]
  double R = 0.1;    ///< wheel radius [m]

  /// Throws ValidationError naming the first non-positive or non-finite field.
  void Validate() const;
};

/// State on the reduced configuration space SE(2) x S^1.
///
/// The Cartesian velocity is not stored; it is always (v cos psi, v sin psi), so
/// the no-lateral-slip constraint holds identically. Angles are unwrapped.
struct ReducedState {
  double x = 0.0;          ///< [m]
  double y = 0.0;          ///< [m]
  double psi = 0.0;        ///< heading [rad]
  double theta = 0.0;      ///< pendulum angle from upright [rad]
  double v = 0.0;          ///< longitudinal speed [m/s]
  double psi_dot = 0.0;    ///< [rad/s]
  double theta_dot = 0.0;  ///< [rad/s]

  bool IsFinite() const;
  bool operator==(const ReducedState&) const = default;
};

/// Time derivative of a ReducedState.
struct StateRate {
  double x_dot = 0.0;
  double y_dot = 0.0;
  double psi_dot = 0.0;
  double theta_dot = 0.0;
  double v_dot = 0.0;
  double psi_ddot = 0.0;
  double theta_ddot = 0.0;

  bool operator==(const StateRate&) const = default;
};

StateRate operator+(const StateRate& a, const StateRate& b);
StateRate operator*(double h, const StateRate& r);

/// Returns s + h * r, component-wise.
ReducedState Advance(const ReducedState& s, const StateRate& r, double h);

/// Effective longitudinal force and yaw moment.
struct ControlInput {
  double F = 0.0;    ///< [N]
  double tau = 0.0;  ///< [N m]

  bool operator==(const ControlInput&) const = default;
};

/// Controller constants plus the numerical guard used near the origin.
struct Gains {
  double k_E = 1.0;
  double k_p = 0.16;
  double k_v = 0.8;
  double k_psi = 1.0;
  double k_psi_dot = 2.0;
  /// Radius [m] inside which the desired heading is frozen.
  double eps_origin = 1e-3;

  /// k_E >= 0 (0 disables swing-up), k_psi > 0, k_psi_dot > 0, k_p >= 0, k_v >= 0.
  void Validate() const;

  /// True when k_v^2 >= 4 (M + m) k_p, the critically/over damped heuristic.
  bool IsCartLoopDamped(const Params& p) const;
};

/// State as written in experiment descriptions: Cartesian velocities instead of v.
/// May violate the constraint; FullToReduced validates.
struct FullVelocityState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double theta = 0.0;
  double x_dot = 0.0;
  double y_dot = 0.0;
  double psi_dot = 0.0;
  double theta_dot = 0.0;
};

inline constexpr double kDefaultConstraintTolerance = 1e-9;

/// Residual of the no-lateral-slip constraint, -x_dot sin(psi) + y_dot cos(psi).
double LateralSlipResidual(double psi, double x_dot, double y_dot);

/// Projects the Cartesian velocity onto the heading.
/// Throws ConstraintViolation if |residual| > tol * max(1, |x_dot|, |y_dot|).
ReducedState FullToReduced(const FullVelocityState& s,
                           double tol = kDefaultConstraintTolerance);

struct CartesianVelocity {
  double x_dot = 0.0;
  double y_dot = 0.0;
};

CartesianVelocity ReducedToCartesianVelocity(const ReducedState& s);

struct WheelRates {
  double phi_dot_r = 0.0;
  double phi_dot_l = 0.0;
};

/// Rolling-without-slip wheel rates.
WheelRates ComputeWheelRates(const ReducedState& s, const Params& p);

struct WheelTorques {
  double tau_l = 0.0;
  double tau_r = 0.0;
};

/// Inverts F = (tau_l + tau_r) / (2 d) and tau = tau_r - tau_l.
///
/// The force relation is dimensionally odd (a conventional drive would divide by the
/// wheel radius). It is kept as written because wheel torques are only reported,
/// never fed back into the dynamics.
WheelTorques ComputeWheelTorques(const ControlInput& u, const Params& p);

/// Forward map of ComputeWheelTorques.
ControlInput EffectiveInput(const WheelTorques& w, const Params& p);

/// Wraps an angle into (-pi, pi]; an exact antipode maps to +pi.
double WrapToPi(double angle);

/// sin and cos that return exact values (0, +-1) when the angle is exactly the double
/// k * (pi / 2) for integer k, and std::sin / std::cos otherwise.
double QuadrantSin(double angle);
double QuadrantCos(double angle);

}  // namespace wmrp
