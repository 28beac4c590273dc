#include "wmrp/control.hpp"

#include <cmath>

#include "wmrp/dynamics.hpp"
#include "wmrp/errors.hpp"

namespace wmrp {

double SwingUpEnergy(double theta, double theta_dot, const Params& p) {
  return 0.5 * p.m * p.l * p.l * theta_dot * theta_dot -
         p.m * p.g * p.l * (1.0 - QuadrantCos(theta));
}

double DesiredAccel(const ReducedState& s, double E, double k_E, const Params& p,
                    const ControlOptions& options) {
  const double sn = QuadrantSin(s.theta);
  const double cs = QuadrantCos(s.theta);
  double centripetal = p.l * s.psi_dot * s.psi_dot * sn;
  if (options.alternate_accel_form) {
    centripetal *= cs;
  }
  return centripetal + k_E * s.theta_dot * cs * E;
}

double FeedforwardNu1(const ReducedState& s, const Params& p) {
  const double sn = QuadrantSin(s.theta);
  const double cs = QuadrantCos(s.theta);
  return p.m * p.g * sn * cs + p.m * p.l * s.psi_dot * s.psi_dot * sn * cs * cs -
         p.m * p.l * s.theta_dot * s.theta_dot * sn;
}

double FeedforwardForce(const ReducedState& s, double a_d, const Params& p) {
  const double sn = QuadrantSin(s.theta);
  return (p.M + p.m * sn * sn) * a_d + FeedforwardNu1(s, p);
}

double DesiredHeading(double x, double y, double eps_origin, double frozen) {
  if (std::hypot(x, y) > eps_origin) {
    return std::atan2(y, x);
  }
  return frozen;
}

HeadingRates DesiredHeadingRates(double x, double y, double x_dot, double y_dot,
                                 double x_ddot, double y_ddot, double eps_origin) {
  const double r2 = x * x + y * y;
  if (r2 <= eps_origin * eps_origin || r2 == 0.0) {
    throw OriginSingularity("desired heading rates are undefined at the origin");
  }
  const double cross = x * y_dot - y * x_dot;
  HeadingRates out;
  out.psi_d_dot = cross / r2;
  out.psi_d_ddot =
      (r2 * (x * y_ddot - y * x_ddot) - cross * (2.0 * x * x_dot + 2.0 * y * y_dot)) /
      (r2 * r2);
  return out;
}

HeadingErrors ComputeHeadingErrors(double psi, double psi_dot, double psi_d,
                                   double psi_d_dot) {
  return {WrapToPi(psi - psi_d), psi_dot - psi_d_dot};
}

double HeadingTorque(const ReducedState& s, const HeadingErrors& e, const Gains& gains,
                     const Params& p) {
  const double sn = QuadrantSin(s.theta);
  const double ml2 = p.m * p.l * p.l;
  return ml2 * s.theta_dot * s.psi_dot * QuadrantSin(2.0 * s.theta) +
         (p.J + ml2 * sn * sn) * (-gains.k_psi * e.e_psi - gains.k_psi_dot * e.e_psi_dot);
}

RegulationErrors ComputeRegulationErrors(const ReducedState& s) {
  return {s.v, s.x * QuadrantCos(s.psi) + s.y * QuadrantSin(s.psi)};
}

double SwingUpLyapunov(double E) { return 0.5 * E * E; }

double HeadingLyapunov(const HeadingErrors& e, const Gains& gains) {
  return 0.5 * gains.k_psi * e.e_psi * e.e_psi +
         0.5 * gains.k_psi_dot * e.e_psi_dot * e.e_psi_dot;
}

ControlOutput ComputeControl(const ReducedState& s, const Gains& gains, const Params& p,
                             std::optional<double> frozen_heading,
                             const ControlOptions& options) {
  ControlOutput out;
  ControlDiagnostics& diag = out.diagnostics;

  diag.E = SwingUpEnergy(s.theta, s.theta_dot, p);
  diag.a_d = DesiredAccel(s, diag.E, gains.k_E, p, options);
  diag.nu1 = FeedforwardNu1(s, p);
  const RegulationErrors reg = ComputeRegulationErrors(s);
  diag.e_v = reg.e_v;
  diag.e_p = reg.e_p;
  out.input.F = FeedforwardForce(s, diag.a_d, p) - gains.k_v * reg.e_v - gains.k_p * reg.e_p;

  const CartesianVelocity vel = ReducedToCartesianVelocity(s);
  diag.heading_frozen = !(std::hypot(s.x, s.y) > gains.eps_origin);
  if (diag.heading_frozen) {
    diag.psi_d = frozen_heading.value_or(s.psi);
  } else {
    diag.psi_d = std::atan2(s.y, s.x);
    diag.psi_d_dot = (s.x * vel.y_dot - s.y * vel.x_dot) / (s.x * s.x + s.y * s.y);
  }

  const HeadingErrors err = ComputeHeadingErrors(s.psi, s.psi_dot, diag.psi_d, diag.psi_d_dot);
  diag.e_psi = err.e_psi;
  diag.e_psi_dot = err.e_psi_dot;
  out.input.tau = HeadingTorque(s, err, gains, p);

  if (!diag.heading_frozen) {
    const double a_l = ComputeAccelerations(s, out.input, p).a_l;
    const double cp = QuadrantCos(s.psi);
    const double sp = QuadrantSin(s.psi);
    const double x_ddot = a_l * cp - s.v * s.psi_dot * sp;
    const double y_ddot = a_l * sp + s.v * s.psi_dot * cp;
    diag.psi_d_ddot = DesiredHeadingRates(s.x, s.y, vel.x_dot, vel.y_dot, x_ddot, y_ddot)
                          .psi_d_ddot;
  }

  diag.V_E = SwingUpLyapunov(diag.E);
  diag.V_psi = HeadingLyapunov(err, gains);
  return out;
}

Controller::Controller(const Params& params, const Gains& gains,
                       const ControlOptions& options)
    : params_(params), gains_(gains), options_(options) {
  params_.Validate();
  gains_.Validate();
}

ControlOutput Controller::operator()(const ReducedState& s) {
  ControlOutput out = ComputeControl(s, gains_, params_, last_heading_, options_);
  if (!out.diagnostics.heading_frozen || !last_heading_) {
    last_heading_ = out.diagnostics.psi_d;
  }
  return out;
}

}  // namespace wmrp
