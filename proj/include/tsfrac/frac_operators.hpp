#pragma once

#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

#include "tsfrac/grid_function.hpp"
#include "tsfrac/psi.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac {

/// Order alpha, type beta and integer n with n - 1 < alpha <= n, 0 <= beta <= 1.
/// gamma and mu_H are always derived, never stored.
struct FracParams {
  double alpha = 0.5;
  double beta = 0.0;
  int n = 1;

  /// Validates and fills n = ceil(alpha) when n is 0. Throws ParameterError.
  static FracParams make(double alpha, double beta, int n = 0);

  double gamma() const noexcept { return alpha + beta * (n - alpha); }
  double mu_h() const noexcept { return n * (1.0 - beta) + beta * alpha; }
};

/// Records how each g^T factor was resolved. Appends are thread-safe.
class GFactorPolicy {
 public:
  enum class Mode { computed, unit_fallback };

  GFactorPolicy() = default;
  GFactorPolicy(const GFactorPolicy& other);
  GFactorPolicy& operator=(const GFactorPolicy& other);

  /// Mode of the most recent evaluation.
  Mode mode() const;
  std::vector<std::string> warnings() const;
  void record(Mode mode, std::string warning = {});

 private:
  mutable std::mutex mutex_;
  Mode mode_ = Mode::computed;
  std::vector<std::string> log_;
};

/// B^T_{a,b}(p, q) = int_a^b (s - a)^{q-1} (b - s)^{p-1} Delta s. Divergence is
/// reported in the result rather than thrown.
struct BetaResult {
  double value = 0.0;
  bool divergent = false;
  std::string reason;
};

BetaResult beta_timescale(const TimeScale& ts, double a, double b, double p, double q);

/// g^T(p, q) = B^T_{0,1}(p, q) / B(p, q), or 1 (logged) when p <= 0, q <= 0 or
/// B^T diverges. Exactly 1 when [0, 1] lies in one interval component.
/// Throws DomainError if 0 or 1 is not on the scale.
double g_factor(const TimeScale& ts, double p, double q, GFactorPolicy& policy);
double g_factor(const TimeScale& ts, double p, double q);

/// Left psi-Riemann-Liouville integral of `order` from a, evaluated at t.
/// Order 0 is the identity.
double rl_integral_left(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                        double order, double a, double t);
/// Right integral over (t, b), mirrored quadrature of the left one.
double rl_integral_right(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                         double order, double t, double b);

/// Left integral at every node t >= a (NaN before a).
GridFunction rl_integral_left_grid(const GridFunction& f, const PsiFunction& psi, double order,
                                   double a);
/// Right integral at every node t <= b (NaN after b).
GridFunction rl_integral_right_grid(const GridFunction& f, const PsiFunction& psi, double order,
                                    double b);

/// psi-Hilfer derivative I^{beta(n-alpha)} (D_psi)^n I^{n-gamma} f at t.
/// Stages are materialised on the grid; a non-finite stage value raises
/// PropagationError naming the stage.
double hilfer_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                         const FracParams& p, double a, double t);
/// Hilfer derivative at every node from a on. Nodes outside the domain of the
/// derivative (before a, or a left-scattered maximum when beta(n-alpha) = 0) hold NaN.
GridFunction hilfer_derivative_grid(const GridFunction& f, const PsiFunction& psi,
                                    const FracParams& p, double a);

double rl_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                     double order, double a, double t);
double caputo_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                         double order, double a, double t);

/// Gamma(delta) / Gamma(delta - alpha) (psi(t) - psi(a))^{delta - alpha - 1}, delta > 1.
double power_rule(const PsiFunction& psi, const FracParams& p, double a, double delta, double t);

/// f, f_psi^Delta, ..., (f_psi^Delta)^{(K)} at t. Right-scattered points use the
/// forward-difference recursion through sigma; right-dense points use the
/// Taylor jets of f and psi.
std::vector<double> psi_delta_derivatives(const TimeScale& ts, const AnalyticFunction& f,
                                          const PsiFunction& psi, double t, std::size_t K);

/// sum_{k<=K} binom(-alpha, k) f_psi^(k)(t) (psi(t) - psi(a))^{alpha+k} / Gamma(alpha+k+1).
double series_expansion(const TimeScale& ts, const AnalyticFunction& f, const PsiFunction& psi,
                        double order, double a, double t, std::size_t K);

/// sum_{k<=K} binom(-alpha, k) f_psi^(k)(t) I^{alpha+k} h (t).
double leibniz_product(const TimeScale& ts, const AnalyticFunction& f, const GridFunction& h,
                       const PsiFunction& psi, double order, double a, double t, std::size_t K);

/// Estimate of I^{order} f (a+): the value at a when a is right-scattered or
/// order = 0, otherwise a linear extrapolation in psi from the first two nodes after a.
double boundary_limit(const GridFunction& f, const PsiFunction& psi, double order, double a);

struct ReconstructResult {
  double value = 0.0;
  double boundary = 0.0;  ///< I^{1-gamma} f (a+)
  double g_alpha = 1.0;   ///< g^T(alpha, gamma - alpha)
  double g_gamma = 1.0;   ///< g^T(gamma - 1, 1 - gamma)
  bool divergent = false;
};

/// g1 g2 f(t) - g1 (psi(t) - psi(a))^{gamma-1} / Gamma(gamma) I^{1-gamma} f(a+), n = 1.
ReconstructResult reconstruct(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                              const FracParams& p, double a, double t, GFactorPolicy& policy);

struct PartsCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of int (I_{a+} phi) vphi Delta t = int phi psi^Delta I_{b-}(vphi / psi^Delta) Delta t.
PartsCheck integration_by_parts_check(const TimeScale& ts, const GridFunction& phi,
                                      const GridFunction& vphi, const PsiFunction& psi,
                                      double order, double a, double b);

/// I^{order; psi}_{a+} f (t) on a single-interval scale by the substitution
/// v = (psi(t) - psi(s))^order and tanh-sinh quadrature. Independent of the grid.
double conjugation_oracle(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi,
                          double order, double a, double t);

}  // namespace tsfrac
