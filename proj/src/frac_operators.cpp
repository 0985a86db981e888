#include "tsfrac/frac_operators.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/kernels.hpp"
#include "tsfrac/special.hpp"

namespace tsfrac {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void check_order(double order, const char* what) {
  if (!(order >= 0.0) || !std::isfinite(order))
    throw ParameterError(std::string(what) + ": order = " + fmt(order) + " must be >= 0");
}

void scale_in_place(std::vector<double>& v, double s) {
  for (double& x : v) x *= s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameters and g-factor policy

FracParams FracParams::make(double alpha, double beta, int n) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError("alpha = " + fmt(alpha) + " must be a positive number");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw ParameterError("beta = " + fmt(beta) + " must lie in [0, 1]");
  if (n == 0) n = static_cast<int>(std::ceil(alpha));
  if (!(n - 1 < alpha && alpha <= n))
    throw ParameterError("alpha = " + fmt(alpha) + " is not in (n-1, n] for n = " +
                         std::to_string(n));
  return FracParams{alpha, beta, n};
}

GFactorPolicy::GFactorPolicy(const GFactorPolicy& other) {
  std::lock_guard lock(other.mutex_);
  mode_ = other.mode_;
  log_ = other.log_;
}

GFactorPolicy& GFactorPolicy::operator=(const GFactorPolicy& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  mode_ = other.mode_;
  log_ = other.log_;
  return *this;
}

GFactorPolicy::Mode GFactorPolicy::mode() const {
  std::lock_guard lock(mutex_);
  return mode_;
}

std::vector<std::string> GFactorPolicy::warnings() const {
  std::lock_guard lock(mutex_);
  return log_;
}

void GFactorPolicy::record(Mode mode, std::string warning) {
  std::lock_guard lock(mutex_);
  mode_ = mode;
  if (!warning.empty()) log_.push_back(std::move(warning));
}

// ---------------------------------------------------------------------------
// Beta functions

BetaResult beta_timescale(const TimeScale& ts, double a, double b, double p, double q) {
  if (!ts.contains(a) || !ts.contains(b))
    throw DomainError("beta_timescale: endpoint " + fmt(ts.contains(a) ? b : a) +
                      " is not on the time scale");
  if (!(a < b)) throw OrderError("beta_timescale: need a < b, got a = " + fmt(a) + ", b = " + fmt(b));

  BetaResult r;
  auto diverge = [&](std::string why) {
    r.divergent = true;
    r.value = std::numeric_limits<double>::infinity();
    r.reason = std::move(why);
    return r;
  };
  auto at_a = [&](double s) { return std::abs(s - a) <= kSnapTolerance; };

  double sum = 0.0;
  // Scattered mass at s in [a, b).
  auto point_term = [&](double s) -> bool {
    if (s >= b - kSnapTolerance) return true;
    const double mu = graininess(ts, s);
    if (mu == 0.0) return true;
    if (at_a(s)) {
      if (q < 1.0) return false;
      sum += (q == 1.0 ? 1.0 : 0.0) * std::pow(b - s, p - 1.0) * mu;
      return true;
    }
    sum += std::pow(s - a, q - 1.0) * std::pow(b - s, p - 1.0) * mu;
    return true;
  };

  boost::math::quadrature::tanh_sinh<double> integrator;
  for (const auto& comp : ts.components()) {
    if (const auto* pt = std::get_if<Point>(&comp)) {
      if (pt->x < a - kSnapTolerance || pt->x > b) continue;
      if (!point_term(pt->x))
        return diverge("scattered left endpoint a = " + fmt(a) + " with q = " + fmt(q) + " < 1");
      continue;
    }
    const auto& iv = std::get<Interval>(comp);
    const double c0 = std::max(iv.lo, a), c1 = std::min(iv.hi, b);
    if (c1 > c0) {
      if (at_a(c0) && q <= 0.0) return diverge("q = " + fmt(q) + " <= 0 at a dense left endpoint");
      if (std::abs(c1 - b) <= kSnapTolerance && p <= 0.0)
        return diverge("p = " + fmt(p) + " <= 0 at a dense right endpoint");
      const double width = c1 - c0;
      // xc is the signed distance to the nearer end, which keeps the endpoint
      // singularities resolved to full precision.
      auto fn = [&](double, double xc) {
        const double d0 = xc < 0.0 ? -xc : width - xc;
        const double d1 = xc > 0.0 ? xc : width + xc;
        return std::pow((c0 - a) + d0, q - 1.0) * std::pow((b - c1) + d1, p - 1.0);
      };
      try {
        sum += integrator.integrate(fn, c0, c1, 1e-14);
      } catch (const std::exception& e) {
        return diverge(std::string("quadrature failed: ") + e.what());
      }
    }
    // The right end of an interval is right-scattered unless it is the maximum.
    if (iv.hi >= a && iv.hi < b && !point_term(iv.hi))
      return diverge("scattered left endpoint a = " + fmt(a) + " with q = " + fmt(q) + " < 1");
  }
  if (!std::isfinite(sum)) return diverge("non-finite sum");
  r.value = sum;
  return r;
}

double g_factor(const TimeScale& ts, double p, double q, GFactorPolicy& policy) {
  if (!ts.contains(0.0) || !ts.contains(1.0))
    throw DomainError("g_factor: the time scale must contain 0 and 1");
  using Mode = GFactorPolicy::Mode;
  if (!(p > 0.0) || !(q > 0.0)) {
    policy.record(Mode::unit_fallback, "g(" + fmt(p) + ", " + fmt(q) +
                                           "): non-positive Beta argument, using 1");
    return 1.0;
  }
  if (ts.covers_interval(0.0, 1.0)) {
    policy.record(Mode::computed);
    return 1.0;
  }
  const BetaResult bt = beta_timescale(ts, 0.0, 1.0, p, q);
  if (bt.divergent) {
    policy.record(Mode::unit_fallback,
                  "g(" + fmt(p) + ", " + fmt(q) + "): time-scale Beta diverges (" + bt.reason +
                      "), using 1");
    return 1.0;
  }
  policy.record(Mode::computed);
  return bt.value / beta_classical(p, q);
}

double g_factor(const TimeScale& ts, double p, double q) {
  GFactorPolicy policy;
  return g_factor(ts, p, q, policy);
}

// ---------------------------------------------------------------------------
// Integrals

double rl_integral_left(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                        double order, double a, double t) {
  check_order(order, "rl_integral_left");
  if (order == 0.0) {
    if (t < a) throw OrderError("rl_integral_left: t = " + fmt(t) + " precedes a = " + fmt(a));
    return f.at(t, psi);
  }
  return singular_kernel_integral(ts, f, psi, t, order, a) / gamma_fn(order);
}

double rl_integral_right(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                         double order, double t, double b) {
  check_order(order, "rl_integral_right");
  if (!ts.contains(t) || !ts.contains(b))
    throw DomainError("rl_integral_right: limit " + fmt(ts.contains(t) ? b : t) +
                      " is not on the time scale");
  if (t > b) throw OrderError("rl_integral_right: t = " + fmt(t) + " exceeds b = " + fmt(b));
  if (order == 0.0) return f.at(t, psi);
  const Grid& g = f.grid();
  const std::size_t it = g.index_of(t, "rl_integral_right point");
  const std::size_t ib = g.index_of(b, "rl_integral_right upper limit");
  const auto u = psi_nodes(g, psi);
  return kernels::right_at(u, g.steps(), f.values(), it, ib, order) / gamma_fn(order);
}

GridFunction rl_integral_left_grid(const GridFunction& f, const PsiFunction& psi, double order,
                                   double a) {
  check_order(order, "rl_integral_left");
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "rl_integral_left lower limit");
  if (order == 0.0) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i < ia; ++i) v[i] = kNaN;
    return GridFunction(f.grid_ptr(), std::move(v));
  }
  const auto u = psi_nodes(g, psi);
  auto v = kernels::left_all(u, g.steps(), f.values(), ia, g.size() - 1, order);
  scale_in_place(v, 1.0 / gamma_fn(order));
  return GridFunction(f.grid_ptr(), std::move(v));
}

GridFunction rl_integral_right_grid(const GridFunction& f, const PsiFunction& psi, double order,
                                    double b) {
  check_order(order, "rl_integral_right");
  const Grid& g = f.grid();
  const std::size_t ib = g.index_of(b, "rl_integral_right upper limit");
  if (order == 0.0) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (std::size_t i = ib + 1; i < v.size(); ++i) v[i] = kNaN;
    return GridFunction(f.grid_ptr(), std::move(v));
  }
  const auto u = psi_nodes(g, psi);
  auto v = kernels::right_all(u, g.steps(), f.values(), 0, ib, order);
  scale_in_place(v, 1.0 / gamma_fn(order));
  return GridFunction(f.grid_ptr(), std::move(v));
}

// ---------------------------------------------------------------------------
// Hilfer family

namespace {

struct Stages {
  std::vector<double> inner;  // I^{n-gamma} f
  std::vector<double> deriv;  // (D_psi)^n of inner
};

// Stages one and two on nodes [ia, upto].
Stages hilfer_stages(const GridFunction& f, std::span<const double> u, const FracParams& p,
                     std::size_t ia, std::size_t upto) {
  const Grid& g = f.grid();
  Stages s;
  const double o1 = p.n - p.gamma();
  if (o1 > 0.0) {
    s.inner = kernels::left_all(u, g.steps(), f.values(), ia, upto, o1);
    scale_in_place(s.inner, 1.0 / gamma_fn(o1));
  } else {
    s.inner.assign(g.size(), kNaN);
    for (std::size_t i = ia; i <= upto; ++i) s.inner[i] = f[i];
  }
  s.deriv = s.inner;
  for (int k = 0; k < p.n; ++k) {
    auto next = grid_derivative(g, u, s.deriv, ia);
    for (std::size_t i = upto + 1; i < next.size(); ++i) next[i] = kNaN;
    s.deriv = std::move(next);
  }
  return s;
}

std::string stage_of_failure(const Stages& s, std::size_t ia, std::size_t j, int n) {
  const std::size_t hi = std::min(j + 2 * static_cast<std::size_t>(n), s.inner.size() - 1);
  for (std::size_t k = ia; k <= hi; ++k)
    if (!std::isfinite(s.inner[k])) return "stage 1 (inner fractional integral)";
  for (std::size_t k = ia; k <= j; ++k)
    if (!std::isfinite(s.deriv[k])) return "stage 2 (psi-delta derivative)";
  return "stage 3 (outer fractional integral)";
}

double outer_order(const FracParams& p) { return p.beta * (p.n - p.alpha); }

}  // namespace

double hilfer_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                         const FracParams& p, double a, double t) {
  if (!ts.contains(a) || !ts.contains(t))
    throw DomainError("hilfer_derivative: point " + fmt(ts.contains(a) ? t : a) +
                      " is not on the time scale");
  if (t < a) throw OrderError("hilfer_derivative: t = " + fmt(t) + " precedes a = " + fmt(a));
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "hilfer_derivative lower limit");
  const std::size_t it = g.index_of(t, "hilfer_derivative point");
  const double o3 = outer_order(p);
  if (o3 == 0.0 && !in_kappa(ts, t))
    throw DomainError("hilfer_derivative: t = " + fmt(t) + " is outside T^kappa");

  const std::size_t upto = std::min(it + 2 * static_cast<std::size_t>(p.n) + 1, g.size() - 1);
  const auto u = psi_nodes(g, psi);
  const Stages s = hilfer_stages(f, u, p, ia, upto);
  const double v = o3 > 0.0 ? kernels::left_at(u, g.steps(), s.deriv, ia, it, o3) / gamma_fn(o3)
                            : s.deriv[it];
  if (!std::isfinite(v))
    throw PropagationError("hilfer_derivative: non-finite value at t = " + fmt(t) + " from " +
                           stage_of_failure(s, ia, it, p.n));
  return v;
}

GridFunction hilfer_derivative_grid(const GridFunction& f, const PsiFunction& psi,
                                    const FracParams& p, double a) {
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "hilfer_derivative lower limit");
  const std::size_t last = g.size() - 1;
  const auto u = psi_nodes(g, psi);
  const Stages s = hilfer_stages(f, u, p, ia, last);
  const double o3 = outer_order(p);
  std::vector<double> v;
  if (o3 > 0.0) {
    v = kernels::left_all(u, g.steps(), s.deriv, ia, last, o3);
    scale_in_place(v, 1.0 / gamma_fn(o3));
  } else {
    v = s.deriv;
  }
  for (std::size_t j = ia; j <= last; ++j) {
    if (std::isfinite(v[j])) continue;
    if (o3 == 0.0 && j == last && !in_kappa(g.scale(), g.t(j))) continue;
    throw PropagationError("hilfer_derivative: non-finite value at t = " + fmt(g.t(j)) + " from " +
                           stage_of_failure(s, ia, j, p.n));
  }
  return GridFunction(f.grid_ptr(), std::move(v));
}

namespace {

// (D_psi)^n g on nodes from ia on, NaN before ia.
std::vector<double> psi_derivative_n(const GridFunction& g, std::span<const double> u, int n,
                                     std::size_t ia) {
  std::vector<double> d(g.values().begin(), g.values().end());
  for (int k = 0; k < n; ++k) d = grid_derivative(g.grid(), u, d, ia);
  return d;
}

void check_limits(const TimeScale& ts, double a, double t, const char* what) {
  if (!ts.contains(a) || !ts.contains(t))
    throw DomainError(std::string(what) + ": point " + fmt(ts.contains(a) ? t : a) +
                      " is not on the time scale");
  if (t < a) throw OrderError(std::string(what) + ": t = " + fmt(t) + " precedes a = " + fmt(a));
}

}  // namespace

double rl_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                     double order, double a, double t) {
  check_limits(ts, a, t, "rl_derivative");
  const auto p = FracParams::make(order, 0.0);
  if (!in_kappa(ts, t)) throw DomainError("rl_derivative: t = " + fmt(t) + " is outside T^kappa");
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "rl_derivative lower limit");
  const std::size_t it = g.index_of(t, "rl_derivative point");
  const auto inner = rl_integral_left_grid(f, psi, p.n - p.alpha, a);
  const double v = psi_derivative_n(inner, psi_nodes(g, psi), p.n, ia)[it];
  if (!std::isfinite(v))
    throw PropagationError("rl_derivative: non-finite value at t = " + fmt(t));
  return v;
}

double caputo_derivative(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                         double order, double a, double t) {
  check_limits(ts, a, t, "caputo_derivative");
  const auto p = FracParams::make(order, 1.0);
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "caputo_derivative lower limit");
  const std::size_t it = g.index_of(t, "caputo_derivative point");
  const double o = p.n - p.alpha;
  if (o == 0.0 && !in_kappa(ts, t))
    throw DomainError("caputo_derivative: t = " + fmt(t) + " is outside T^kappa");
  const GridFunction d(f.grid_ptr(), psi_derivative_n(f, psi_nodes(g, psi), p.n, ia));
  const double v = o > 0.0 ? rl_integral_left(ts, d, psi, o, a, t) : d[it];
  if (!std::isfinite(v))
    throw PropagationError("caputo_derivative: non-finite value at t = " + fmt(t));
  return v;
}

double power_rule(const PsiFunction& psi, const FracParams& p, double a, double delta, double t) {
  if (!(delta > 1.0)) throw ParameterError("power_rule: delta = " + fmt(delta) + " must be > 1");
  const double c = gamma_fn(delta) / gamma_fn(delta - p.alpha);
  const double base = psi(t) - psi(a);
  const double e = delta - p.alpha - 1.0;
  if (base <= 0.0) return e > 0.0 ? 0.0 : (e == 0.0 ? c : std::numeric_limits<double>::infinity());
  return c * std::pow(base, e);
}

// ---------------------------------------------------------------------------
// Expansions

std::vector<double> psi_delta_derivatives(const TimeScale& ts, const AnalyticFunction& f,
                                          const PsiFunction& psi, double t, std::size_t K) {
  if (!ts.contains(t))
    throw DomainError("psi_delta_derivatives: t = " + fmt(t) + " is not on the time scale");
  std::map<std::pair<std::size_t, double>, double> memo;
  std::map<double, std::vector<double>> jets;

  auto rec = [&](auto& self, std::size_t k, double s) -> double {
    if (k == 0) return f(s);
    if (auto it = memo.find({k, s}); it != memo.end()) return it->second;
    double v;
    if (graininess(ts, s) > 0.0) {
      const double ss = sigma(ts, s);
      v = (self(self, k - 1, ss) - self(self, k - 1, s)) / (psi(ss) - psi(s));
    } else {
      if (!in_kappa(ts, s))
        throw DomainError("psi_delta_derivatives: t = " + fmt(s) + " is outside T^kappa");
      auto& jet = jets[s];
      if (jet.size() <= K) jet = psi_taylor_derivatives(f, psi, s, K);
      v = jet[k];
    }
    memo[{k, s}] = v;
    return v;
  };

  std::vector<double> out(K + 1);
  for (std::size_t k = 0; k <= K; ++k) out[k] = rec(rec, k, t);
  return out;
}

double series_expansion(const TimeScale& ts, const AnalyticFunction& f, const PsiFunction& psi,
                        double order, double a, double t, std::size_t K) {
  if (!(order > 0.0)) throw ParameterError("series_expansion: order must be > 0");
  if (t < a) throw OrderError("series_expansion: t = " + fmt(t) + " precedes a = " + fmt(a));
  const auto d = psi_delta_derivatives(ts, f, psi, t, K);
  const double base = psi(t) - psi(a);
  double s = 0.0;
  for (std::size_t k = 0; k <= K; ++k) {
    const double ak = order + static_cast<double>(k);
    s += binom_neg(order, k) * d[k] * std::pow(base, ak) / gamma_fn(ak + 1.0);
  }
  return s;
}

double leibniz_product(const TimeScale& ts, const AnalyticFunction& f, const GridFunction& h,
                       const PsiFunction& psi, double order, double a, double t, std::size_t K) {
  if (!(order > 0.0)) throw ParameterError("leibniz_product: order must be > 0");
  const auto d = psi_delta_derivatives(ts, f, psi, t, K);
  double s = 0.0;
  for (std::size_t k = 0; k <= K; ++k) {
    const double c = binom_neg(order, k) * d[k];
    if (c == 0.0) continue;
    s += c * rl_integral_left(ts, h, psi, order + static_cast<double>(k), a, t);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Reconstruction, integration by parts, conjugation

double boundary_limit(const GridFunction& f, const PsiFunction& psi, double order, double a) {
  const Grid& g = f.grid();
  const std::size_t ia = g.index_of(a, "boundary_limit point");
  if (order == 0.0) return f[ia];
  if (g.steps()[ia] != Step::panel) return 0.0;
  const auto u = psi_nodes(g, psi);
  const double inv = 1.0 / gamma_fn(order);
  const double v1 = kernels::left_at(u, g.steps(), f.values(), ia, ia + 1, order) * inv;
  if (ia + 2 >= g.size() || g.steps()[ia + 1] != Step::panel) return v1;
  const double v2 = kernels::left_at(u, g.steps(), f.values(), ia, ia + 2, order) * inv;
  return v1 + (v1 - v2) * (u[ia + 1] - u[ia]) / (u[ia + 2] - u[ia + 1]);
}

ReconstructResult reconstruct(const TimeScale& ts, const GridFunction& f, const PsiFunction& psi,
                              const FracParams& p, double a, double t, GFactorPolicy& policy) {
  if (p.n != 1) throw ParameterError("reconstruct: only n = 1 is supported");
  if (t < a) throw OrderError("reconstruct: t = " + fmt(t) + " precedes a = " + fmt(a));
  const double gam = p.gamma();
  ReconstructResult r;
  r.g_alpha = g_factor(ts, p.alpha, gam - p.alpha, policy);
  r.g_gamma = g_factor(ts, gam - 1.0, 1.0 - gam, policy);
  r.boundary = boundary_limit(f, psi, 1.0 - gam, a);
  const double base = psi(t) - psi(a);
  double term = 0.0;
  if (r.boundary != 0.0) {
    term = (gam == 1.0 ? 1.0 : std::pow(base, gam - 1.0)) / gamma_fn(gam) * r.boundary;
  }
  r.value = r.g_alpha * r.g_gamma * f.at(t, psi) - r.g_alpha * term;
  r.divergent = !std::isfinite(r.value);
  return r;
}

PartsCheck integration_by_parts_check(const TimeScale& ts, const GridFunction& phi,
                                      const GridFunction& vphi, const PsiFunction& psi,
                                      double order, double a, double b) {
  check_order(order, "integration_by_parts_check");
  if (phi.grid().times() != vphi.grid().times())
    throw ValidationError("integration_by_parts_check: functions are sampled on different grids");
  if (!ts.contains(a) || !ts.contains(b))
    throw DomainError("integration_by_parts_check: limit " + fmt(ts.contains(a) ? b : a) +
                      " is not on the time scale");
  if (a > b) throw OrderError("integration_by_parts_check: a exceeds b");
  const Grid& g = phi.grid();
  const std::size_t ia = g.index_of(a, "integration_by_parts_check lower limit");
  const std::size_t ib = g.index_of(b, "integration_by_parts_check upper limit");
  const auto u = psi_nodes(g, psi);
  const auto m = delta_measure_weights(g, ia, ib);

  std::vector<double> dpsi(g.size(), 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.steps()[i] == Step::jump)
      dpsi[i] = (u[i + 1] - u[i]) / (g.t(i + 1) - g.t(i));
    else if (g.node(i).kind == NodeKind::panel)
      dpsi[i] = psi.derivative(g.t(i));
  }
  std::vector<double> q(g.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = vphi[i] / dpsi[i];

  std::vector<double> left, right;
  if (order == 0.0) {
    left.assign(phi.values().begin(), phi.values().end());
    right = q;
  } else {
    const double inv = 1.0 / gamma_fn(order);
    left = kernels::left_all(u, g.steps(), phi.values(), ia, ib, order);
    right = kernels::right_all(u, g.steps(), q, ia, ib, order);
    scale_in_place(left, inv);
    scale_in_place(right, inv);
  }
  PartsCheck r;
  for (std::size_t i = ia; i <= ib; ++i) {
    if (m[i] == 0.0) continue;
    r.lhs += m[i] * left[i] * vphi[i];
    r.rhs += m[i] * phi[i] * dpsi[i] * right[i];
  }
  return r;
}

double conjugation_oracle(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi,
                          double order, double a, double t) {
  if (!ts.is_single_interval())
    throw DomainError("conjugation_oracle: the time scale must be a single interval");
  if (!ts.contains(a) || !ts.contains(t))
    throw DomainError("conjugation_oracle: point " + fmt(ts.contains(a) ? t : a) +
                      " is not on the time scale");
  if (t < a) throw OrderError("conjugation_oracle: t = " + fmt(t) + " precedes a = " + fmt(a));
  check_order(order, "conjugation_oracle");
  if (order == 0.0) return f(t);
  const double U = psi(t), Ua = psi(a);
  const double span = U - Ua;
  if (!(span > 0.0)) return 0.0;
  const double V = std::pow(span, order);
  auto fn = [&](double v) {
    const double y = std::clamp(U - std::pow(v, 1.0 / order), Ua, U);
    return f(std::clamp(psi.inverse(y, a, t), a, t));
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(fn, 0.0, V, 1e-14) / gamma_fn(order + 1.0);
}

}  // namespace tsfrac
