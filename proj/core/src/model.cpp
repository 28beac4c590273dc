#include "wmrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wmrp/errors.hpp"

namespace wmrp {

namespace {

/// Quarter-turn index k when angle == k * (pi / 2) exactly, otherwise -1.
int ExactQuadrant(double angle) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double k = std::nearbyint(angle / kHalfPi);
  if (!std::isfinite(k) || std::abs(k) > 0x1p52 || k * kHalfPi != angle) {
    return -1;
  }
  const double q = std::fmod(k, 4.0);
  return static_cast<int>(q < 0 ? q + 4.0 : q);
}


void RequirePositive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError(std::string(name) + " must be finite and > 0, got " +
                          std::to_string(value));
  }
}

void RequireNonNegative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ValidationError(std::string(name) + " must be finite and >= 0, got " +
                          std::to_string(value));
  }
}

}  // namespace

void Params::Validate() const {
  RequirePositive(M, "M");
  RequirePositive(m, "m");
  RequirePositive(J, "J");
  RequirePositive(l, "l");
  RequirePositive(g, "g");
  RequirePositive(d, "d");
  RequirePositive(R, "R");
}

void Gains::Validate() const {
  RequireNonNegative(k_E, "k_E");
  RequireNonNegative(k_p, "k_p");
  RequireNonNegative(k_v, "k_v");
  RequirePositive(k_psi, "k_psi");
  RequirePositive(k_psi_dot, "k_psi_dot");
  RequireNonNegative(eps_origin, "eps_origin");
}

bool Gains::IsCartLoopDamped(const Params& p) const {
  return k_v * k_v >= 4.0 * (p.M + p.m) * k_p;
}

bool ReducedState::IsFinite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(psi) &&
         std::isfinite(theta) && std::isfinite(v) && std::isfinite(psi_dot) &&
         std::isfinite(theta_dot);
}

StateRate operator+(const StateRate& a, const StateRate& b) {
  return {a.x_dot + b.x_dot,         a.y_dot + b.y_dot,
          a.psi_dot + b.psi_dot,     a.theta_dot + b.theta_dot,
          a.v_dot + b.v_dot,         a.psi_ddot + b.psi_ddot,
          a.theta_ddot + b.theta_ddot};
}

StateRate operator*(double h, const StateRate& r) {
  return {h * r.x_dot,   h * r.y_dot,    h * r.psi_dot,   h * r.theta_dot,
          h * r.v_dot,   h * r.psi_ddot, h * r.theta_ddot};
}

ReducedState Advance(const ReducedState& s, const StateRate& r, double h) {
  return {s.x + h * r.x_dot,         s.y + h * r.y_dot,
          s.psi + h * r.psi_dot,     s.theta + h * r.theta_dot,
          s.v + h * r.v_dot,         s.psi_dot + h * r.psi_ddot,
          s.theta_dot + h * r.theta_ddot};
}

double LateralSlipResidual(double psi, double x_dot, double y_dot) {
  return -x_dot * QuadrantSin(psi) + y_dot * QuadrantCos(psi);
}

ReducedState FullToReduced(const FullVelocityState& s, double tol) {
  if (!(tol >= 0.0)) {
    throw ValidationError("constraint tolerance must be >= 0");
  }
  const double residual = LateralSlipResidual(s.psi, s.x_dot, s.y_dot);
  const double scale = std::max({1.0, std::abs(s.x_dot), std::abs(s.y_dot)});
  if (!std::isfinite(residual) || std::abs(residual) > tol * scale) {
    throw ConstraintViolation("lateral velocity " + std::to_string(residual) +
                              " violates the no-slip constraint");
  }
  ReducedState out;
  out.x = s.x;
  out.y = s.y;
  out.psi = s.psi;
  out.theta = s.theta;
  out.v = s.x_dot * QuadrantCos(s.psi) + s.y_dot * QuadrantSin(s.psi);
  out.psi_dot = s.psi_dot;
  out.theta_dot = s.theta_dot;
  return out;
}

CartesianVelocity ReducedToCartesianVelocity(const ReducedState& s) {
  return {s.v * QuadrantCos(s.psi), s.v * QuadrantSin(s.psi)};
}

WheelRates ComputeWheelRates(const ReducedState& s, const Params& p) {
  return {(s.v + p.d * s.psi_dot) / p.R, (s.v - p.d * s.psi_dot) / p.R};
}

WheelTorques ComputeWheelTorques(const ControlInput& u, const Params& p) {
  return {p.d * u.F - 0.5 * u.tau, p.d * u.F + 0.5 * u.tau};
}

ControlInput EffectiveInput(const WheelTorques& w, const Params& p) {
  return {(w.tau_l + w.tau_r) / (2.0 * p.d), w.tau_r - w.tau_l};
}

double WrapToPi(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) {
    wrapped += 2.0 * std::numbers::pi;
  }
  return wrapped;
}

double QuadrantSin(double angle) {
  switch (ExactQuadrant(angle)) {
    case 0:
    case 2:
      return 0.0;
    case 1:
      return 1.0;
    case 3:
      return -1.0;
    default:
      return std::sin(angle);
  }
}

double QuadrantCos(double angle) {
  switch (ExactQuadrant(angle)) {
    case 0:
      return 1.0;
    case 2:
      return -1.0;
    case 1:
    case 3:
      return 0.0;
    default:
      return std::cos(angle);
  }
}

}  // namespace wmrp
