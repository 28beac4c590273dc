#include "wmrp/dynamics.hpp"

#include <cmath>

#include "wmrp/errors.hpp"

namespace wmrp {

double LongitudinalMassDeterminant(double theta, const Params& p) {
  const double s = QuadrantSin(theta);
  return p.m * p.l * p.l * (p.M + p.m * s * s);
}

Accelerations ComputeAccelerations(const ReducedState& s, const ControlInput& u,
                                   const Params& p) {
  if (!s.IsFinite() || !std::isfinite(u.F) || !std::isfinite(u.tau)) {
    throw NonFiniteInput("non-finite state or input passed to the dynamics");
  }
  const double sn = QuadrantSin(s.theta);
  const double cs = QuadrantCos(s.theta);
  const double ml = p.m * p.l;
  const double ml2 = ml * p.l;

  const double a11 = p.M + p.m;
  const double a12 = ml * cs;
  const double a22 = ml2;
  const double b1 = u.F + ml * s.theta_dot * s.theta_dot * sn;
  const double b2 = ml2 * s.psi_dot * s.psi_dot * sn * cs + p.m * p.g * p.l * sn;

  // Cramer's rule; the determinant equals ml^2 (M + m sin^2).
  const double det = a11 * a22 - a12 * a12;
  Accelerations acc;
  acc.a_l = (b1 * a22 - a12 * b2) / det;
  acc.theta_ddot = (a11 * b2 - a12 * b1) / det;
  acc.psi_ddot = (u.tau - ml2 * s.theta_dot * s.psi_dot * QuadrantSin(2.0 * s.theta)) /
                 (p.J + ml2 * sn * sn);
  return acc;
}

EquationResiduals EvaluateEquationResiduals(const ReducedState& s, const ControlInput& u,
                                            const Accelerations& acc, const Params& p) {
  const double sn = QuadrantSin(s.theta);
  const double cs = QuadrantCos(s.theta);
  const double ml = p.m * p.l;
  const double ml2 = ml * p.l;
  EquationResiduals r;
  r.longitudinal = (p.M + p.m) * acc.a_l + ml * acc.theta_ddot * cs -
                   ml * s.theta_dot * s.theta_dot * sn - u.F;
  r.pendulum = ml2 * acc.theta_ddot + ml * cs * acc.a_l -
               ml2 * s.psi_dot * s.psi_dot * sn * cs - p.m * p.g * p.l * sn;
  r.yaw = (p.J + ml2 * sn * sn) * acc.psi_ddot +
          ml2 * s.theta_dot * s.psi_dot * QuadrantSin(2.0 * s.theta) - u.tau;
  return r;
}

StateRate ComputeStateDerivative(const ReducedState& s, const ControlInput& u,
                                 const Params& p) {
  const Accelerations acc = ComputeAccelerations(s, u, p);
  const CartesianVelocity vel = ReducedToCartesianVelocity(s);
  return {vel.x_dot,  vel.y_dot,    s.psi_dot,     s.theta_dot,
          acc.a_l,    acc.psi_ddot, acc.theta_ddot};
}

double LateralForce(const ReducedState& s, const Params& p) {
  return p.M * (2.0 * s.psi_dot * s.v + p.l * s.theta_dot * s.psi_dot * QuadrantCos(s.theta));
}

double TotalEnergy(const ReducedState& s, const Params& p) {
  const double sn = QuadrantSin(s.theta);
  const double cs = QuadrantCos(s.theta);
  const double l2 = p.l * p.l;
  const double kinetic =
      0.5 * (p.M + p.m) * s.v * s.v + 0.5 * p.J * s.psi_dot * s.psi_dot +
      0.5 * p.m *
          (l2 * s.theta_dot * s.theta_dot + l2 * s.psi_dot * s.psi_dot * sn * sn +
           2.0 * s.v * p.l * s.theta_dot * cs);
  const double potential = p.m * p.g * p.l * (cs - 1.0);
  return kinetic + potential;
}

double InputPower(const ReducedState& s, const ControlInput& u) {
  return u.F * s.v + u.tau * s.psi_dot;
}

}  // namespace wmrp
