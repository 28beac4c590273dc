#include "wmrp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "wmrp/errors.hpp"

namespace wmrp {

std::vector<double> Differentiate(std::span<const double> values, double dt) {
  const std::size_t n = values.size();
  std::vector<double> out(n, 0.0);
  if (n < 5) {
    // Too short for the five-point stencils.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      out[i] = (values[i + 1] - values[i]) / dt;
    }
    if (n >= 2) {
      out[n - 1] = out[n - 2];
    }
    return out;
  }
  const double h12 = 12.0 * dt;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) / h12;
  }
  const auto& f = values;
  out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / h12;
  out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / h12;
  const std::size_t k = n - 1;
  out[k] = (25.0 * f[k] - 48.0 * f[k - 1] + 36.0 * f[k - 2] - 16.0 * f[k - 3] + 3.0 * f[k - 4]) / h12;
  out[k - 1] = (3.0 * f[k] + 10.0 * f[k - 1] - 18.0 * f[k - 2] + 6.0 * f[k - 3] - f[k - 4]) / h12;
  return out;
}

double MaxAbs(std::span<const double> values, std::size_t first) {
  double best = 0.0;
  for (std::size_t i = first; i < values.size(); ++i) {
    best = std::max(best, std::abs(values[i]));
  }
  return best;
}

double MaxIncrease(std::span<const double> series, std::size_t first) {
  double best = 0.0;
  for (std::size_t i = first + 1; i < series.size(); ++i) {
    best = std::max(best, series[i] - series[i - 1]);
  }
  return best;
}

namespace {

template <typename Fn>
std::vector<double> Collect(const Trajectory& tr, Fn&& fn) {
  std::vector<double> out;
  out.reserve(tr.size());
  for (const auto& sample : tr.samples) {
    out.push_back(fn(sample));
  }
  return out;
}

bool IsPureSwingUp(const Trajectory& tr, const Gains& gains) {
  return gains.k_p == 0.0 && gains.k_v == 0.0 && tr.scenario.mode != ControlMode::kOpenLoop;
}

}  // namespace

std::vector<double> EnergyLawResidual(const Trajectory& tr, const Params& p,
                                      const Gains& gains) {
  if (!IsPureSwingUp(tr, gains)) {
    throw WrongMode("the energy decay law only holds in closed loop with k_p = k_v = 0");
  }
  const std::vector<double> E = Collect(tr, [](const auto& s) { return s.diagnostics.E; });
  std::vector<double> residual = Differentiate(E, tr.dt());
  for (std::size_t i = 0; i < residual.size(); ++i) {
    const auto& s = tr.samples[i].state;
    const double c = QuadrantCos(s.theta);
    residual[i] += p.m * p.l * gains.k_E * s.theta_dot * s.theta_dot * c * c * E[i];
  }
  return residual;
}

LyapunovTraces ComputeLyapunovTraces(const Trajectory& tr, const Gains& gains) {
  LyapunovTraces out;
  out.V_E = Collect(tr, [](const auto& s) { return SwingUpLyapunov(s.diagnostics.E); });
  out.V_psi = Collect(tr, [&](const auto& s) {
    return HeadingLyapunov({s.diagnostics.e_psi, s.diagnostics.e_psi_dot}, gains);
  });
  return out;
}

double MaxHeadingLyapunovIncrease(const Trajectory& tr, const Gains& gains,
                                  double psi_d_rate_tol) {
  const LyapunovTraces traces = ComputeLyapunovTraces(tr, gains);
  double best = 0.0;
  for (std::size_t i = 1; i < tr.size(); ++i) {
    const auto& prev = tr.samples[i - 1].diagnostics;
    const auto& cur = tr.samples[i].diagnostics;
    if (std::abs(prev.psi_d_dot) < psi_d_rate_tol && std::abs(cur.psi_d_dot) < psi_d_rate_tol) {
      best = std::max(best, traces.V_psi[i] - traces.V_psi[i - 1]);
    }
  }
  return best;
}

std::vector<double> PowerBalanceResidual(const Trajectory& tr) {
  const std::vector<double> energy = Collect(tr, [&](const auto& s) { return s.total_energy; });
  std::vector<double> residual = Differentiate(energy, tr.dt());
  for (std::size_t i = 0; i < residual.size(); ++i) {
    residual[i] -= InputPower(tr.samples[i].state, tr.samples[i].input);
  }
  return residual;
}

std::vector<double> CollinearityResidual(const Trajectory& tr) {
  return Collect(tr, [](const auto& sample) {
    const CartesianVelocity vel = ReducedToCartesianVelocity(sample.state);
    return vel.x_dot * sample.state.y - vel.y_dot * sample.state.x;
  });
}

std::vector<double> ConstraintResidual(const Trajectory& tr) {
  return Collect(tr, [](const auto& s) { return ReconstructedSlipResidual(s.state); });
}

std::optional<std::size_t> FindConvergedTail(const Trajectory& tr, const TailOptions& options) {
  std::size_t first = tr.size();
  for (std::size_t i = tr.size(); i-- > 0;) {
    if (std::abs(tr.samples[i].diagnostics.e_psi) < options.e_psi_tol) {
      first = i;
    } else {
      break;
    }
  }
  if (first >= tr.size()) {
    return std::nullopt;
  }
  if (tr.samples.back().t - tr.samples[first].t < options.min_duration) {
    return std::nullopt;
  }
  return first;
}

CartPoleResidual SteadyStateCartPoleResidual(const Trajectory& tr, const Params& p,
                                             const Gains& gains, const TailOptions& options) {
  const std::optional<std::size_t> tail = FindConvergedTail(tr, options);
  if (!tail) {
    throw NeverConverged("heading error never settled below the tail tolerance");
  }
  const std::vector<double> x_dot = Collect(tr, [](const auto& s) {
    return ReducedToCartesianVelocity(s.state).x_dot;
  });
  const std::vector<double> x_ddot = Differentiate(x_dot, tr.dt());

  CartPoleResidual out;
  out.first_index = *tail;
  out.residual.reserve(tr.size() - *tail);
  for (std::size_t i = *tail; i < tr.size(); ++i) {
    const auto& s = tr.samples[i].state;
    const double k = std::tan(s.psi);
    const double sn = QuadrantSin(s.theta);
    const double lhs = (x_ddot[i] + gains.k_v * x_dot[i] + gains.k_p * s.x) * std::sqrt(k * k + 1.0);
    const double rhs = -tr.samples[i].diagnostics.E * s.theta_dot * QuadrantCos(s.theta) /
                       (p.M + p.m * sn * sn);
    out.residual.push_back(lhs - rhs);
  }
  return out;
}

ResidualReport BuildResidualReport(const Trajectory& tr) {
  const Params& p = tr.scenario.params;
  const Gains& gains = tr.scenario.gains;
  ResidualReport report;
  if (IsPureSwingUp(tr, gains)) {
    report.energy_law_max = MaxAbs(EnergyLawResidual(tr, p, gains));
    report.V_E_max_increase = MaxIncrease(ComputeLyapunovTraces(tr, gains).V_E);
  }
  report.V_psi_max_increase = MaxHeadingLyapunovIncrease(tr, gains);
  report.power_balance_max = MaxAbs(PowerBalanceResidual(tr));
  const std::vector<double> collinear = CollinearityResidual(tr);
  if (!collinear.empty()) {
    report.collinearity_initial = std::abs(collinear.front());
    report.collinearity_final = std::abs(collinear.back());
  }
  if (FindConvergedTail(tr)) {
    const CartPoleResidual cp = SteadyStateCartPoleResidual(tr, p, gains);
    report.cartpole_max = MaxAbs(cp.residual);
    report.cartpole_tail_start = tr.samples[cp.first_index].t;
  }
  report.constraint_max = MaxAbs(ConstraintResidual(tr));
  return report;
}

}  // namespace wmrp
