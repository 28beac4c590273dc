#pragma once

#include "wmrp/model.hpp"

namespace wmrp {

struct Accelerations {
  double a_l = 0.0;         ///< longitudinal acceleration along the heading [m/s^2]
  double theta_ddot = 0.0;  ///< [rad/s^2]
  double psi_ddot = 0.0;    ///< [rad/s^2]
};

/// Reduced equations of motion.
///
/// The longitudinal balance (the two planar equations projected on the heading, which
/// eliminates the lateral force) and the pendulum equation form a 2x2 system in
/// (a_l, theta_ddot):
///
///   [ M+m          m l cos(th) ] [a_l       ]   [ F + m l th_dot^2 sin(th)                        ]
///   [ m l cos(th)  m l^2       ] [theta_ddot] = [ m l^2 psi_dot^2 sin(th) cos(th) + m g l sin(th) ]
///
/// whose determinant m l^2 (M + m sin^2 th) never drops below m l^2 M. Yaw decouples:
///
///   (J + m l^2 sin^2 th) psi_ddot = tau - m l^2 th_dot psi_dot sin(2 th)
///
/// Throws NonFiniteInput if the state or input is not finite.
Accelerations ComputeAccelerations(const ReducedState& s, const ControlInput& u,
                                   const Params& p);

/// Mass-matrix determinant of the (a_l, theta_ddot) system.
double LongitudinalMassDeterminant(double theta, const Params& p);

/// Residuals of the longitudinal and pendulum equations for given accelerations.
struct EquationResiduals {
  double longitudinal = 0.0;
  double pendulum = 0.0;
  double yaw = 0.0;
};

EquationResiduals EvaluateEquationResiduals(const ReducedState& s, const ControlInput& u,
                                            const Accelerations& acc, const Params& p);

/// d/dt of the reduced state: kinematics plus the accelerations above.
StateRate ComputeStateDerivative(const ReducedState& s, const ControlInput& u,
                                 const Params& p);

/// Lateral (friction) force holding the wheels against side slip:
/// lambda = M (2 psi_dot v + l theta_dot psi_dot cos(theta)).
double LateralForce(const ReducedState& s, const Params& p);

/// Kinetic plus gravitational energy with the datum at upright rest. The constant
/// potential of the robot body is dropped.
double TotalEnergy(const ReducedState& s, const Params& p);

/// Mechanical power delivered by the inputs, F v + tau psi_dot.
double InputPower(const ReducedState& s, const ControlInput& u);

}  // namespace wmrp
