#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsfrac/grid_function.hpp"
#include "tsfrac/psi.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac {

/// psi evaluated at every grid node.
std::vector<double> psi_nodes(const Grid& grid, const PsiFunction& psi);

/// Derivative at node i in the coordinate x (x = t for the Delta-derivative,
/// x = psi(t) for the psi-weighted one). Right-scattered nodes use the forward
/// difference; right-dense nodes use a 3-point stencil, one-sided at component
/// edges. Nodes before `first` are treated as absent. Returns NaN when node i
/// is not in T^kappa or lies before `first`.
double stencil_derivative(const Grid& grid, std::span<const double> x, std::span<const double> f,
                          std::size_t i, std::size_t first = 0);

/// stencil_derivative at every node.
std::vector<double> grid_derivative(const Grid& grid, std::span<const double> x,
                                    std::span<const double> f, std::size_t first = 0);

/// f^Delta(t). Throws DomainError outside T^kappa, ResolutionError off the grid.
double delta_derivative(const TimeScale& ts, const GridFunction& f, double t);

/// f^Delta(t) / psi^Delta(t). Throws SingularWeightError if the psi spacing vanishes.
double psi_delta_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                            double t);

/// Node weights m_i with sum_i m_i f_i = int_{t_first}^{t_last} f Delta s:
/// mu(t_i) on jump steps, trapezoid halves on panels.
std::vector<double> delta_measure_weights(const Grid& grid, std::size_t first, std::size_t last);

/// int_a^b f(s) Delta s over [a, b). Throws OrderError if a > b.
double delta_integral(const TimeScale& ts, const GridFunction& f, double a, double b);

/// sup over nodes t > origin of |(psi(t) - psi(origin))^{1-gamma} f(t)|; the
/// origin node counts only when gamma = 1.
double weighted_norm(const GridFunction& f, const PsiFunction& psi, double gamma, double origin);

/// int_a^t psi^Delta(s) (psi(t) - psi(s))^{alpha-1} f(s) Delta s, without 1/Gamma(alpha).
double singular_kernel_integral(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                                double t, double alpha, double a);

}  // namespace tsfrac
