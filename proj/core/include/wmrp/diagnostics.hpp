#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wmrp/model.hpp"
#include "wmrp/sim.hpp"

namespace wmrp {

/// Time derivative of a uniformly sampled series: five-point central differences in the
/// interior, fourth-order one-sided stencils on the first and last two samples.
std::vector<double> Differentiate(std::span<const double> values, double dt);

/// dE/dt + m l k_E th_dot^2 cos^2(th) E, per sample, with dE/dt by finite differences.
/// Throws WrongMode unless the run used the energy law alone (k_p = k_v = 0, closed loop).
std::vector<double> EnergyLawResidual(const Trajectory& tr, const Params& p,
                                      const Gains& gains);

struct LyapunovTraces {
  std::vector<double> V_E;
  std::vector<double> V_psi;
};

LyapunovTraces ComputeLyapunovTraces(const Trajectory& tr, const Gains& gains);

/// Largest sample-to-sample increase of a series over [first, end); 0 if it never grows.
double MaxIncrease(std::span<const double> series, std::size_t first = 0);

/// Largest increase of V_psi between consecutive samples where |psi_d_dot| stays below
/// `psi_d_rate_tol` (the desired heading is effectively constant).
double MaxHeadingLyapunovIncrease(const Trajectory& tr, const Gains& gains,
                                  double psi_d_rate_tol = 1e-3);

/// dE_total/dt - (F v + tau psi_dot), per sample.
std::vector<double> PowerBalanceResidual(const Trajectory& tr);

/// x_dot y - y_dot x, per sample; zero once the motion is radial.
std::vector<double> CollinearityResidual(const Trajectory& tr);

/// Lateral-slip residual of reconstructed velocities, per sample.
std::vector<double> ConstraintResidual(const Trajectory& tr);

struct TailOptions {
  double e_psi_tol = 0.01;   ///< [rad]
  double min_duration = 1.0;  ///< [s]
};

/// Index of the first sample from which |e_psi| < e_psi_tol holds to the end, provided
/// that tail lasts at least min_duration. Empty otherwise.
std::optional<std::size_t> FindConvergedTail(const Trajectory& tr,
                                             const TailOptions& options = {});

struct CartPoleResidual {
  std::size_t first_index = 0;
  std::vector<double> residual;  ///< one per tail sample
};

/// Residual of the one-dimensional steady-state reduction on the converged tail,
///
///   (x_ddot + k_v x_dot + k_p x) sqrt(k^2 + 1) + E th_dot cos(th) / (M + m sin^2 th),
///
/// with k = tan(psi) and x_ddot by finite differences. Evaluated in the units the
/// expression is written in; no physical meaning is claimed for them.
/// Throws NeverConverged when no converged tail exists.
CartPoleResidual SteadyStateCartPoleResidual(const Trajectory& tr, const Params& p,
                                             const Gains& gains,
                                             const TailOptions& options = {});

/// Maxima over a trajectory. Entries that do not apply to the run's mode are empty.
struct ResidualReport {
  std::optional<double> energy_law_max;
  std::optional<double> V_E_max_increase;
  double V_psi_max_increase = 0.0;
  double power_balance_max = 0.0;
  double collinearity_initial = 0.0;
  double collinearity_final = 0.0;
  std::optional<double> cartpole_max;
  std::optional<double> cartpole_tail_start;
  double constraint_max = 0.0;
};

ResidualReport BuildResidualReport(const Trajectory& tr);

double MaxAbs(std::span<const double> values, std::size_t first = 0);

}  // namespace wmrp
