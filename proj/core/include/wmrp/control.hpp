#pragma once

#include <optional>

#include "wmrp/model.hpp"

namespace wmrp {

/// Every intermediate quantity of the control law at one state.
struct ControlDiagnostics {
  double E = 0.0;           ///< swing-up energy [J]
  double a_d = 0.0;         ///< desired longitudinal acceleration [m/s^2]
  double nu1 = 0.0;         ///< feedforward force term [N]
  double psi_d = 0.0;       ///< desired heading [rad]
  double psi_d_dot = 0.0;   ///< [rad/s]
  double psi_d_ddot = 0.0;  ///< [rad/s^2], reported only
  double e_psi = 0.0;       ///< wrapped into (-pi, pi]
  double e_psi_dot = 0.0;
  double e_v = 0.0;
  double e_p = 0.0;
  double V_E = 0.0;
  double V_psi = 0.0;
  bool heading_frozen = false;  ///< inside the origin disk
};

struct ControlOutput {
  ControlInput input;
  ControlDiagnostics diagnostics;
};

struct ControlOptions {
  /// Use l psi_dot^2 sin(th) cos(th) as the first desired-acceleration term. This form
  /// does not satisfy the energy decay law; it exists for comparison runs.
  bool alternate_accel_form = false;
};

/// E = 1/2 m l^2 th_dot^2 - m g l (1 - cos th); zero at upright rest.
double SwingUpEnergy(double theta, double theta_dot, const Params& p);

/// Longitudinal acceleration that makes dE/dt = -m l k_E th_dot^2 cos^2(th) E:
///
///   a_d = l psi_dot^2 sin(th) + k_E th_dot cos(th) E
///
/// The pendulum equation gives dE/dt = -m l th_dot cos(th) (a_l - l psi_dot^2 sin th),
/// hence the positive sign on the energy term.
double DesiredAccel(const ReducedState& s, double E, double k_E, const Params& p,
                    const ControlOptions& options = {});

/// nu1 = m g sin cos + m l psi_dot^2 sin cos^2 - m l th_dot^2 sin.
double FeedforwardNu1(const ReducedState& s, const Params& p);

/// Force that realises a_l = a_d exactly: (M + m sin^2 th) a_d + nu1.
double FeedforwardForce(const ReducedState& s, double a_d, const Params& p);

/// atan2(y, x) outside the eps_origin disk, `frozen` inside it.
double DesiredHeading(double x, double y, double eps_origin, double frozen);

struct HeadingRates {
  double psi_d_dot = 0.0;
  double psi_d_ddot = 0.0;
};

/// Time derivatives of atan2(y, x). Throws OriginSingularity when x^2 + y^2 <= eps^2
/// (and always at the exact origin).
HeadingRates DesiredHeadingRates(double x, double y, double x_dot, double y_dot,
                                 double x_ddot, double y_ddot, double eps_origin = 0.0);

struct HeadingErrors {
  double e_psi = 0.0;
  double e_psi_dot = 0.0;
};

HeadingErrors ComputeHeadingErrors(double psi, double psi_dot, double psi_d,
                                   double psi_d_dot);

/// tau = m l^2 th_dot psi_dot sin(2 th) + (J + m l^2 sin^2 th)(-k_psi e - k_psi_dot e_dot),
/// which turns the yaw equation into psi_ddot = -k_psi e - k_psi_dot e_dot.
double HeadingTorque(const ReducedState& s, const HeadingErrors& e, const Gains& gains,
                     const Params& p);

struct RegulationErrors {
  double e_v = 0.0;  ///< speed along the heading
  double e_p = 0.0;  ///< position projected on the heading
};

RegulationErrors ComputeRegulationErrors(const ReducedState& s);

/// 1/2 E^2.
double SwingUpLyapunov(double E);

/// 1/2 k_psi e_psi^2 + 1/2 k_psi_dot e_psi_dot^2.
double HeadingLyapunov(const HeadingErrors& e, const Gains& gains);

/// Full law: F = (M + m sin^2) a_d + nu1 - k_v e_v - k_p e_p, tau from HeadingTorque.
///
/// `frozen_heading` is the desired heading used inside the origin disk; when it is
/// empty the current heading is used. Heading-rate diagnostics are zero there, and the
/// control output is finite for every finite state.
ControlOutput ComputeControl(const ReducedState& s, const Gains& gains, const Params& p,
                             std::optional<double> frozen_heading = std::nullopt,
                             const ControlOptions& options = {});

/// Per-run controller context. Remembers the last desired heading computed outside
/// the origin disk. Not meant to be shared between concurrent runs.
class Controller {
 public:
  Controller(const Params& params, const Gains& gains, const ControlOptions& options = {});

  ControlOutput operator()(const ReducedState& s);

  const Params& params() const { return params_; }
  const Gains& gains() const { return gains_; }
  const ControlOptions& options() const { return options_; }

 private:
  Params params_;
  Gains gains_;
  ControlOptions options_;
  std::optional<double> last_heading_;
};

}  // namespace wmrp
