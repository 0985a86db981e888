#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsfrac/frac_operators.hpp"
#include "tsfrac/grid_function.hpp"
#include "tsfrac/psi.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac {

using RhsFn = std::function<double(double t, double y)>;

/// A named right-hand side f(t, y) with its default Lipschitz constant and bound
/// (absent when the form has none).
struct NamedRhs {
  FormSpec spec;
  RhsFn fn;
  std::optional<double> lipschitz;
  std::optional<double> bound;

  /// f = value.
  static NamedRhs constant(double value);
  /// f = slope * y + intercept.
  static NamedRhs linear(double slope, double intercept);
  /// f = scale * cos(y).
  static NamedRhs scaled_cosine(double scale);
  /// f = scale / (1 + exp(-y)).
  static NamedRhs logistic(double scale);
  /// Throws ValidationError on unknown forms or parameters.
  static NamedRhs from_spec(const FormSpec& spec);
};

/// Hilfer initial value problem on J = [0, 1] with I^{1-gamma} y(0) = 0, n = 1.
struct IVProblem {
  TimeScale ts;
  PsiFunction psi;
  FracParams params;
  RhsFn rhs;
  std::optional<double> lipschitz_L;
  std::optional<double> bound_M;

  /// Problem from a named right-hand side; L and M default to the form's values.
  static IVProblem make(TimeScale ts, PsiFunction psi, FracParams params, const NamedRhs& rhs,
                        std::optional<double> L = std::nullopt,
                        std::optional<double> M = std::nullopt);

  /// Checks 0 < alpha <= 1, n = 1 and that 0 and 1 lie on the scale.
  void validate() const;
};

struct SolverConfig {
  int grid_N = 256;
  int max_iters = 500;
  double tol = 1e-10;
  double damping = 1.0;

  void validate() const;
};

struct SolverReport {
  explicit SolverReport(GridFunction y) : solution(std::move(y)) {}

  GridFunction solution;
  int iterations = 0;
  double contraction_constant = 0.0;  ///< NaN when L is not given
  double radius_rho = 0.0;            ///< NaN when M is not given
  double residual = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;

  std::vector<double> diff_history;  ///< weighted norm of y_{k+1} - y_k per step
  double g_rhs = 1.0;                ///< g^T(alpha, gamma - alpha)
  double g_equation = 1.0;           ///< g^T(gamma - 1, 1 - gamma)
  double initial_condition = 0.0;    ///< I^{1-gamma} y at the first node after 0
  bool initial_condition_ok = true;
  std::string regime;                ///< "contraction" or "existence-only"
};

/// L (psi(1) - psi(0))^alpha / (g Gamma(alpha + 1)). Throws ParameterError without L.
double contraction_constant(const IVProblem& prob);
/// M (psi(1) - psi(0))^{1 - beta(1 - alpha)} / (g Gamma(alpha + 1)). Throws ParameterError without M.
double solution_radius(const IVProblem& prob);

/// Picard iteration y_{k+1} = (1 - d) y_k + d Theta(y_k) from y_0 = 0.
/// Non-convergence is reported, not thrown.
SolverReport picard_solve(const IVProblem& prob, const SolverConfig& cfg);
/// As above with an additive forcing term (one value per node of the [0, 1] grid).
SolverReport picard_solve(const IVProblem& prob, const SolverConfig& cfg,
                          const GridPtr& grid, const std::vector<double>& forcing);

/// Grid of the problem's scale restricted to [0, 1].
GridPtr problem_grid(const IVProblem& prob, int grid_N);

/// Theta(y) = (1 / (g Gamma(alpha))) int_0^t psi^Delta (psi(t) - psi(s))^{alpha-1} f(s, y(s)) Delta s.
GridFunction picard_operator(const IVProblem& prob, const GridFunction& y,
                             const std::vector<double>* forcing = nullptr);

/// Weighted C_{1-gamma, psi} norm of y - Theta(y).
double residual(const IVProblem& prob, const GridFunction& y);

}  // namespace tsfrac
