#include "tsfrac/delta_calculus.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "tsfrac/errors.hpp"
#include "tsfrac/kernels.hpp"

namespace tsfrac {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double spacing(std::span<const double> x, std::size_t lo, std::size_t hi, const Grid& grid) {
  const double d = x[hi] - x[lo];
  if (!(d > 0.0))
    throw SingularWeightError("derivative: coordinate spacing vanishes between t = " +
                              fmt(grid.t(lo)) + " and t = " + fmt(grid.t(hi)));
  return d;
}

// Panel step from j into j + 1, with j not before first.
bool panel_from(const Grid& grid, std::size_t j, std::size_t first) {
  return j >= first && j + 1 < grid.size() && grid.steps()[j] == Step::panel;
}

}  // namespace

std::vector<double> psi_nodes(const Grid& grid, const PsiFunction& psi) {
  std::vector<double> u(grid.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = psi(grid.t(i));
  return u;
}

double stencil_derivative(const Grid& grid, std::span<const double> x, std::span<const double> f,
                          std::size_t i, std::size_t first) {
  if (i < first) return kNaN;
  const Step step = grid.steps()[i];
  if (step == Step::jump) return (f[i + 1] - f[i]) / spacing(x, i, i + 1, grid);

  if (step == Step::panel) {
    const double d2 = spacing(x, i, i + 1, grid);
    if (i > first && panel_from(grid, i - 1, first)) {
      const double d1 = spacing(x, i - 1, i, grid);
      return -d2 / (d1 * (d1 + d2)) * f[i - 1] + (d2 - d1) / (d1 * d2) * f[i] +
             d1 / (d2 * (d1 + d2)) * f[i + 1];
    }
    if (panel_from(grid, i + 1, first)) {
      const double d1 = d2;
      const double e = spacing(x, i + 1, i + 2, grid);
      return -(2.0 * d1 + e) / (d1 * (d1 + e)) * f[i] + (d1 + e) / (d1 * e) * f[i + 1] -
             d1 / (e * (d1 + e)) * f[i + 2];
    }
    return (f[i + 1] - f[i]) / d2;
  }

  // Maximum of the scale: in T^kappa only when left-dense.
  if (i == first || !panel_from(grid, i - 1, first)) return kNaN;
  const double d1 = spacing(x, i - 1, i, grid);
  if (i - 1 > first && panel_from(grid, i - 2, first)) {
    const double e = spacing(x, i - 2, i - 1, grid);
    return (2.0 * d1 + e) / (d1 * (d1 + e)) * f[i] - (d1 + e) / (d1 * e) * f[i - 1] +
           d1 / (e * (d1 + e)) * f[i - 2];
  }
  return (f[i] - f[i - 1]) / d1;
}

std::vector<double> grid_derivative(const Grid& grid, std::span<const double> x,
                                    std::span<const double> f, std::size_t first) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = stencil_derivative(grid, x, f, i, first);
  return out;
}

namespace {

double derivative_at(const TimeScale& ts, const GridFunction& f, std::span<const double> x,
                     double t, const char* what) {
  if (!in_kappa(ts, t))
    throw DomainError(std::string(what) + ": t = " + fmt(t) +
                      " is a left-scattered maximum, outside T^kappa");
  const std::size_t i = f.grid().index_of(t, what);
  const double d = stencil_derivative(f.grid(), x, f.values(), i);
  if (std::isnan(d))
    throw ResolutionError(std::string(what) + ": not enough neighbouring nodes at t = " + fmt(t));
  return d;
}

}  // namespace

double delta_derivative(const TimeScale& ts, const GridFunction& f, double t) {
  return derivative_at(ts, f, f.grid().times(), t, "delta_derivative");
}

double psi_delta_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                            double t) {
  const auto u = psi_nodes(f.grid(), psi);
  return derivative_at(ts, f, u, t, "psi_delta_derivative");
}

std::vector<double> delta_measure_weights(const Grid& grid, std::size_t first, std::size_t last) {
  std::vector<double> m(grid.size(), 0.0);
  for (std::size_t i = first; i < last; ++i) {
    const double h = grid.t(i + 1) - grid.t(i);
    if (grid.steps()[i] == Step::jump) {
      m[i] += h;
    } else {
      m[i] += 0.5 * h;
      m[i + 1] += 0.5 * h;
    }
  }
  return m;
}

double delta_integral(const TimeScale& ts, const GridFunction& f, double a, double b) {
  if (!ts.contains(a) || !ts.contains(b))
    throw DomainError("delta_integral: endpoint " + fmt(ts.contains(a) ? b : a) +
                      " is not on the time scale");
  if (a > b) throw OrderError("delta_integral: a = " + fmt(a) + " exceeds b = " + fmt(b));
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "delta_integral lower limit");
  const std::size_t ib = g.index_of(b, "delta_integral upper limit");
  // Compensated summation; integrals of oscillating data often cancel.
  double s = 0.0, c = 0.0;
  for (std::size_t i = ia; i < ib; ++i) {
    const double h = g.t(i + 1) - g.t(i);
    const double x = g.steps()[i] == Step::jump ? f[i] * h : 0.5 * h * (f[i] + f[i + 1]);
    const double u = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - u) + x : (x - u) + s;
    s = u;
  }
  return s + c;
}

double weighted_norm(const GridFunction& f, const PsiFunction& psi, double gamma, double origin) {
  if (gamma < 0.0 || gamma > 1.0)
    throw ParameterError("weighted_norm: gamma = " + fmt(gamma) + " must lie in [0, 1]");
  const double base = psi(origin);
  const double e = 1.0 - gamma;
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = f.grid().t(i);
    double v;
    if (std::abs(t - origin) <= kSnapTolerance) {
      if (e != 0.0) continue;
      v = std::abs(f[i]);
    } else if (t > origin) {
      v = e == 0.0 ? std::abs(f[i]) : std::pow(psi(t) - base, e) * std::abs(f[i]);
    } else {
      continue;
    }
    if (std::isnan(v)) return v;
    if (v > best) best = v;
  }
  return best;
}

double singular_kernel_integral(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                                double t, double alpha, double a) {
  if (!(alpha > 0.0))
    throw ParameterError("singular_kernel_integral: alpha = " + fmt(alpha) + " must be > 0");
  if (!ts.contains(a) || !ts.contains(t))
    throw DomainError("singular_kernel_integral: limit " + fmt(ts.contains(a) ? t : a) +
                      " is not on the time scale");
  if (t < a) throw OrderError("singular_kernel_integral: t = " + fmt(t) + " precedes a = " + fmt(a));
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "singular_kernel_integral lower limit");
  const std::size_t it = g.index_of(t, "singular_kernel_integral point");
  const auto u = psi_nodes(g, psi);
  return kernels::left_at(u, g.steps(), f.values(), ia, it, alpha);
}

}  // namespace tsfrac
