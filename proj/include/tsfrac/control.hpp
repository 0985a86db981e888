#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsfrac/grid_function.hpp"
#include "tsfrac/ivp_solver.hpp"

namespace tsfrac {

/// Controlled problem: the base IVP with forcing b * u(t), steered to y(1) = y1.
struct ControlProblem {
  IVProblem base;
  double b_gain = 1.0;
  double target_y1 = 0.0;
  std::optional<double> M_W;  ///< bound on the inverse of the terminal functional
};

struct ControlLaw {
  explicit ControlLaw(GridFunction control) : u(std::move(control)) {}

  GridFunction u;
  double u_bound_Mu = 0.0;
  double terminal_value = 0.0;
  double terminal_error = 0.0;

  double drift = 0.0;  ///< uncontrolled part of y(1) for the final trajectory
  int rounds = 0;
  bool converged = false;
  double inverse_norm_sup = 0.0;
  double inverse_norm_l2 = 0.0;
  std::vector<std::string> warnings;
};

/// Kernel weights c_i (so that W u = sum_i c_i u_i) and Delta-measure weights m_i
/// on the [0, 1] grid, both evaluated for the terminal time t = 1.
struct ControlWeights {
  std::vector<double> c;
  std::vector<double> m;
};
ControlWeights control_weights(const ControlProblem& prob, const Grid& grid);

/// W u = (1 / (g Gamma(alpha))) int_0^1 psi^Delta (psi(1) - psi(s))^{alpha-1} b u(s) Delta s.
double w_functional(const ControlProblem& prob, const GridFunction& u);

/// Norms of the minimum-norm right inverse of W: sup-norm max_i |c_i / m_i| / S
/// and Delta-L2 norm S^{-1/2}, with S = sum_i c_i^2 / m_i.
double inverse_norm_sup(const ControlProblem& prob, const Grid& grid);
double inverse_norm_l2(const ControlProblem& prob, const Grid& grid);

/// Minimum-norm control steering y(1) to y1, alternating solve and synthesis
/// until u stabilises (at most 50 rounds), then verified by a fresh solve.
/// Throws NonInvertibleError for b = 0.
ControlLaw synthesize_control(const ControlProblem& prob, const SolverConfig& cfg);

/// M_W (|y1| + M (psi(1) - psi(0))^alpha / (g Gamma(alpha + 1))).
double control_bound(const ControlProblem& prob, const ControlLaw& law);

struct Controllability {
  double value = 0.0;
  bool satisfied = false;
};
/// M (psi(1) - psi(0))^{1 - beta(1 - alpha)} / (g Gamma(alpha + 1)) < 1.
Controllability controllability_condition(const ControlProblem& prob);

}  // namespace tsfrac
