#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tsfrac/timescale.hpp"

// Product-integration weights for the weakly singular kernel
//   K(s) = psi^Delta(s) (psi(t) - psi(s))^{alpha-1}
// on a grid, expressed in the coordinate u = psi(s).
//
// On a jump step the Delta-integral contributes one term per node. On a panel
// step the integrand is interpolated linearly in u and the moments of the
// kernel are integrated in closed form, so the singularity at u = U is exact.

namespace tsfrac::kernels {

namespace detail {

/// J(x) = E_{a+1}(x)/(a+1) - (1-x) E_a(x)/a with E_p(x) = 1 - (1-x)^p.
/// Equals x^2 times a positive series; the series branch avoids cancellation.
inline double panel_moment(double x, double alpha) {
  if (x < 0.1) {
    double term = 1.0, sum = 0.0;
    for (int m = 0; m < 60; ++m) {
      const double add = term / ((m + 1.0) * (m + 2.0));
      sum += add;
      if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
      term *= (m + 1.0 - alpha) / (m + 1.0) * x;
    }
    return sum * x * x;
  }
  const double l = std::log1p(-x);
  const double e_a = -std::expm1(alpha * l);
  const double e_a1 = -std::expm1((alpha + 1.0) * l);
  return e_a1 / (alpha + 1.0) - (1.0 - x) * e_a / alpha;
}

/// E_a(x)/a, the total panel mass divided by A^alpha.
inline double panel_mass(double x, double alpha) {
  return -std::expm1(alpha * std::log1p(-x)) / alpha;
}

}  // namespace detail

/// Calls visit(i, w) for every weight of the left integral from node `first`
/// to node `target`: sum_i w_i f_i approximates
/// int_{t_first}^{t_target} (U - psi(s))^{alpha-1} f(s) psi^Delta(s) Delta s.
/// A node can be visited twice (once from each adjacent panel).
template <class Visit>
void left_weights(std::span<const double> u, std::span<const Step> steps, std::size_t first,
                  std::size_t target, double alpha, Visit&& visit) {
  const double U = u[target];
  for (std::size_t i = first; i < target; ++i) {
    const double A = U - u[i];
    const double h = u[i + 1] - u[i];
    if (steps[i] == Step::jump) {
      visit(i, h * std::pow(A, alpha - 1.0));
      continue;
    }
    const double x = h / A;
    const double pa = std::pow(A, alpha);
    const double far = pa * detail::panel_moment(x, alpha) / x;
    const double near = pa * detail::panel_mass(x, alpha) - far;
    visit(i, far);
    visit(i + 1, near);
  }
}

/// Mirror of left_weights for int_{t_target}^{t_last} (psi(s) - U)^{alpha-1} ... Delta s.
/// Scattered mass at s = t_target is excluded and t_last carries none.
template <class Visit>
void right_weights(std::span<const double> u, std::span<const Step> steps, std::size_t target,
                   std::size_t last, double alpha, Visit&& visit) {
  const double U = u[target];
  for (std::size_t i = target; i < last; ++i) {
    const double h = u[i + 1] - u[i];
    if (steps[i] == Step::jump) {
      if (i != target) visit(i, h * std::pow(u[i] - U, alpha - 1.0));
      continue;
    }
    const double A = u[i + 1] - U;
    const double x = h / A;
    const double pa = std::pow(A, alpha);
    const double far = pa * detail::panel_moment(x, alpha) / x;
    const double near = pa * detail::panel_mass(x, alpha) - far;
    visit(i + 1, far);
    visit(i, near);
  }
}

inline double left_at(std::span<const double> u, std::span<const Step> steps,
                      std::span<const double> f, std::size_t first, std::size_t target,
                      double alpha) {
  double s = 0.0;
  left_weights(u, steps, first, target, alpha, [&](std::size_t i, double w) { s += w * f[i]; });
  return s;
}

inline double right_at(std::span<const double> u, std::span<const Step> steps,
                       std::span<const double> f, std::size_t target, std::size_t last,
                       double alpha) {
  double s = 0.0;
  right_weights(u, steps, target, last, alpha, [&](std::size_t i, double w) { s += w * f[i]; });
  return s;
}

/// Left integral from `first` at every node j in [first, last]; NaN elsewhere.
/// OpenMP-parallel over j.
std::vector<double> left_all(std::span<const double> u, std::span<const Step> steps,
                             std::span<const double> f, std::size_t first, std::size_t last,
                             double alpha);
/// Right integral up to `last` at every node j in [first, last]; NaN elsewhere.
/// OpenMP-parallel over j.
std::vector<double> right_all(std::span<const double> u, std::span<const Step> steps,
                              std::span<const double> f, std::size_t first, std::size_t last,
                              double alpha);

/// Single-threaded reference versions of the full-grid kernels.
namespace serial {
std::vector<double> left_all(std::span<const double> u, std::span<const Step> steps,
                             std::span<const double> f, std::size_t first, std::size_t last,
                             double alpha);
std::vector<double> right_all(std::span<const double> u, std::span<const Step> steps,
                              std::span<const double> f, std::size_t first, std::size_t last,
                              double alpha);
}  // namespace serial

}  // namespace tsfrac::kernels
