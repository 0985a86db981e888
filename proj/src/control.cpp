#include "tsfrac/control.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/kernels.hpp"
#include "tsfrac/special.hpp"

namespace tsfrac {
namespace {

double g_equation(const IVProblem& prob) {
  const double gam = prob.params.gamma();
  return g_factor(prob.ts, gam - 1.0, 1.0 - gam);
}

std::size_t terminal_index(const Grid& grid) { return grid.index_of(1.0, "control terminal time"); }

double gram(const ControlWeights& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.c.size(); ++i)
    if (w.m[i] > 0.0) s += w.c[i] * w.c[i] / w.m[i];
  return s;
}

}  // namespace

ControlWeights control_weights(const ControlProblem& prob, const Grid& grid) {
  const std::size_t last = terminal_index(grid);
  const std::size_t first = grid.index_of(0.0, "control initial time");
  const auto u = psi_nodes(grid, prob.base.psi);
  const double scale = prob.b_gain / (g_equation(prob.base) * gamma_fn(prob.base.params.alpha));
  ControlWeights w;
  w.c.assign(grid.size(), 0.0);
  kernels::left_weights(u, grid.steps(), first, last, prob.base.params.alpha,
                        [&](std::size_t i, double v) { w.c[i] += v * scale; });
  w.m = delta_measure_weights(grid, first, last);
  return w;
}

double w_functional(const ControlProblem& prob, const GridFunction& u) {
  const auto w = control_weights(prob, u.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < w.c.size(); ++i) s += w.c[i] * u[i];
  return s;
}

double inverse_norm_sup(const ControlProblem& prob, const Grid& grid) {
  const auto w = control_weights(prob, grid);
  const double S = gram(w);
  if (!(S > 0.0)) throw NonInvertibleError("terminal functional vanishes identically");
  double best = 0.0;
  for (std::size_t i = 0; i < w.c.size(); ++i)
    if (w.m[i] > 0.0) best = std::max(best, std::abs(w.c[i] / w.m[i]));
  return best / S;
}

double inverse_norm_l2(const ControlProblem& prob, const Grid& grid) {
  const double S = gram(control_weights(prob, grid));
  if (!(S > 0.0)) throw NonInvertibleError("terminal functional vanishes identically");
  return 1.0 / std::sqrt(S);
}

ControlLaw synthesize_control(const ControlProblem& prob, const SolverConfig& cfg) {
  if (prob.b_gain == 0.0) throw NonInvertibleError("b_gain = 0: the control has no effect");
  if (!std::isfinite(prob.target_y1)) throw ParameterError("target y1 must be finite");
  prob.base.validate();
  cfg.validate();

  const GridPtr grid = problem_grid(prob.base, cfg.grid_N);
  const std::size_t last = terminal_index(*grid);
  const auto w = control_weights(prob, *grid);
  const double S = gram(w);
  if (!(S > 0.0)) throw NonInvertibleError("terminal functional vanishes identically");

  auto law_for = [&](double d) {
    std::vector<double> u(grid->size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (w.m[i] > 0.0) u[i] = w.c[i] / w.m[i] * d / S;
    return u;
  };
  auto forcing_for = [&](const std::vector<double>& u) {
    std::vector<double> f(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) f[i] = prob.b_gain * u[i];
    return f;
  };
  auto functional = [&](const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += w.c[i] * u[i];
    return s;
  };

  std::vector<double> u(grid->size(), 0.0);
  ControlLaw law(GridFunction(grid, u));
  double drift = 0.0;
  constexpr int kMaxRounds = 50;
  for (int round = 1; round <= kMaxRounds; ++round) {
    const SolverReport rep = picard_solve(prob.base, cfg, grid, forcing_for(u));
    if (!rep.converged)
      law.warnings.push_back("round " + std::to_string(round) + ": inner solve did not converge");
    drift = rep.solution[last] - functional(u);
    auto next = law_for(prob.target_y1 - drift);
    double change = 0.0, size = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      change = std::max(change, std::abs(next[i] - u[i]));
      size = std::max(size, std::abs(next[i]));
    }
    u = std::move(next);
    law.rounds = round;
    if (change <= cfg.tol * (1.0 + size)) {
      law.converged = true;
      break;
    }
  }
  if (!law.converged)
    law.warnings.push_back("control did not stabilise within " + std::to_string(kMaxRounds) +
                           " rounds");

  const SolverReport check = picard_solve(prob.base, cfg, grid, forcing_for(u));
  if (!check.converged) law.warnings.push_back("verification solve did not converge");
  law.u = GridFunction(grid, u);
  law.drift = check.solution[last] - functional(u);
  law.terminal_value = check.solution[last];
  law.terminal_error = std::abs(law.terminal_value - prob.target_y1);
  law.inverse_norm_sup = inverse_norm_sup(prob, *grid);
  law.inverse_norm_l2 = inverse_norm_l2(prob, *grid);
  if (prob.base.bound_M) {
    if (!prob.M_W) law.warnings.push_back("M_W not given; bound uses the computed sup-norm of the inverse");
    ControlProblem p = prob;
    if (!p.M_W) p.M_W = law.inverse_norm_sup;
    law.u_bound_Mu = control_bound(p, law);
  } else {
    law.u_bound_Mu = std::numeric_limits<double>::quiet_NaN();
    law.warnings.push_back("bound M not given; control bound unavailable");
  }
  return law;
}

double control_bound(const ControlProblem& prob, const ControlLaw&) {
  if (!prob.M_W) throw ParameterError("control_bound: M_W not given");
  if (!prob.base.bound_M) throw ParameterError("control_bound: bound M not given");
  const double a = prob.base.params.alpha;
  const double span = prob.base.psi(1.0) - prob.base.psi(0.0);
  return *prob.M_W * (std::abs(prob.target_y1) + *prob.base.bound_M * std::pow(span, a) /
                                                      (g_equation(prob.base) * gamma_fn(a + 1.0)));
}

Controllability controllability_condition(const ControlProblem& prob) {
  if (!prob.base.bound_M) throw ParameterError("controllability_condition: bound M not given");
  Controllability c;
  c.value = solution_radius(prob.base);
  c.satisfied = c.value < 1.0;
  return c;
}

}  // namespace tsfrac
