#include "tsfrac/ivp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

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

double rhs_param(const FormSpec& spec, const std::set<std::string>& allowed, const std::string& key,
                 std::optional<double> fallback) {
  for (const auto& [k, v] : spec.params)
    if (!allowed.count(k))
      throw ValidationError("rhs '" + spec.form + "': unknown parameter '" + k + "'");
  if (auto it = spec.params.find(key); it != spec.params.end()) return it->second;
  if (fallback) return *fallback;
  throw ValidationError("rhs '" + spec.form + "': missing parameter '" + key + "'");
}

double span01(const IVProblem& prob) { return prob.psi(1.0) - prob.psi(0.0); }

double g_equation(const IVProblem& prob) {
  const double gam = prob.params.gamma();
  return g_factor(prob.ts, gam - 1.0, 1.0 - gam);
}

}  // namespace

// ---------------------------------------------------------------------------
// Named right-hand sides

NamedRhs NamedRhs::constant(double value) {
  return {{"constant", {{"value", value}}},
          [=](double, double) { return value; },
          0.0,
          std::abs(value)};
}

NamedRhs NamedRhs::linear(double slope, double intercept) {
  return {{"linear", {{"slope", slope}, {"intercept", intercept}}},
          [=](double, double y) { return slope * y + intercept; },
          std::abs(slope),
          slope == 0.0 ? std::optional<double>(std::abs(intercept)) : std::nullopt};
}

NamedRhs NamedRhs::scaled_cosine(double scale) {
  return {{"scaled-cosine", {{"scale", scale}}},
          [=](double, double y) { return scale * std::cos(y); },
          std::abs(scale),
          std::abs(scale)};
}

NamedRhs NamedRhs::logistic(double scale) {
  return {{"logistic", {{"scale", scale}}},
          [=](double, double y) { return scale / (1.0 + std::exp(-y)); },
          std::abs(scale) / 4.0,
          std::abs(scale)};
}

NamedRhs NamedRhs::from_spec(const FormSpec& spec) {
  const auto& f = spec.form;
  if (f == "constant") return constant(rhs_param(spec, {"value"}, "value", std::nullopt));
  if (f == "linear") {
    const std::set<std::string> k{"slope", "intercept"};
    return linear(rhs_param(spec, k, "slope", std::nullopt), rhs_param(spec, k, "intercept", 0.0));
  }
  if (f == "scaled-cosine") return scaled_cosine(rhs_param(spec, {"scale"}, "scale", std::nullopt));
  if (f == "logistic") return logistic(rhs_param(spec, {"scale"}, "scale", std::nullopt));
  throw ValidationError("rhs: unknown form '" + f + "'");
}

// ---------------------------------------------------------------------------
// Problem and configuration

IVProblem IVProblem::make(TimeScale ts, PsiFunction psi, FracParams params, const NamedRhs& rhs,
                          std::optional<double> L, std::optional<double> M) {
  IVProblem p{std::move(ts), std::move(psi), params, rhs.fn,
              L ? L : rhs.lipschitz, M ? M : rhs.bound};
  p.validate();
  return p;
}

void IVProblem::validate() const {
  if (params.n != 1) throw ParameterError("ivp: only n = 1 is supported");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0))
    throw ParameterError("ivp: alpha = " + fmt(params.alpha) + " must lie in (0, 1]");
  if (!(params.beta >= 0.0 && params.beta <= 1.0))
    throw ParameterError("ivp: beta = " + fmt(params.beta) + " must lie in [0, 1]");
  if (!ts.contains(0.0) || !ts.contains(1.0))
    throw DomainError("ivp: the time scale must contain 0 and 1");
  if (!rhs) throw ParameterError("ivp: missing right-hand side");
  if (lipschitz_L && !(*lipschitz_L >= 0.0)) throw ParameterError("ivp: L must be >= 0");
  if (bound_M && !(*bound_M >= 0.0)) throw ParameterError("ivp: M must be >= 0");
}

void SolverConfig::validate() const {
  if (grid_N < 1) throw ParameterError("solver: grid_N must be >= 1");
  if (max_iters < 1) throw ParameterError("solver: max_iters must be >= 1");
  if (!(tol > 0.0)) throw ParameterError("solver: tol must be > 0");
  if (!(damping > 0.0 && damping <= 1.0)) throw ParameterError("solver: damping must lie in (0, 1]");
}

double contraction_constant(const IVProblem& prob) {
  if (!prob.lipschitz_L) throw ParameterError("contraction_constant: Lipschitz constant L not given");
  const double a = prob.params.alpha;
  return *prob.lipschitz_L * std::pow(span01(prob), a) / (g_equation(prob) * gamma_fn(a + 1.0));
}

double solution_radius(const IVProblem& prob) {
  if (!prob.bound_M) throw ParameterError("solution_radius: bound M not given");
  const double a = prob.params.alpha, b = prob.params.beta;
  const double s = span01(prob);
  if (!(s > 0.0)) return 0.0;
  return *prob.bound_M * std::pow(s, 1.0 - b * (1.0 - a)) / (g_equation(prob) * gamma_fn(a + 1.0));
}

// ---------------------------------------------------------------------------
// Picard iteration

GridPtr problem_grid(const IVProblem& prob, int grid_N) {
  return make_grid(prob.ts.restrict(0.0, 1.0), grid_N);
}

namespace {

struct ThetaContext {
  const IVProblem& prob;
  const Grid& grid;
  std::vector<double> u;
  double scale;  // 1 / (g Gamma(alpha))
  const std::vector<double>* forcing;

  ThetaContext(const IVProblem& p, const Grid& g, const std::vector<double>* f)
      : prob(p), grid(g), u(psi_nodes(g, p.psi)), forcing(f) {
    scale = 1.0 / (g_equation(p) * gamma_fn(p.params.alpha));
  }

  std::vector<double> apply(std::span<const double> y) const {
    std::vector<double> F(grid.size());
    for (std::size_t i = 0; i < F.size(); ++i) {
      const double v = prob.rhs(grid.t(i), y[i]) + (forcing ? (*forcing)[i] : 0.0);
      if (!std::isfinite(v))
        throw EvaluationError("rhs is not finite at node t = " + fmt(grid.t(i)) + " (y = " +
                              fmt(y[i]) + ")");
      F[i] = v;
    }
    auto out = kernels::left_all(u, grid.steps(), F, 0, grid.size() - 1, prob.params.alpha);
    for (double& v : out) v *= scale;
    return out;
  }

  double weighted_diff(std::span<const double> a, std::span<const double> b) const {
    const double e = 1.0 - prob.params.gamma();
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      double w;
      if (i == 0) {
        if (e != 0.0) continue;
        w = 1.0;
      } else {
        w = e == 0.0 ? 1.0 : std::pow(u[i] - u[0], e);
      }
      const double v = w * std::abs(a[i] - b[i]);
      if (std::isnan(v)) return v;
      best = std::max(best, v);
    }
    return best;
  }
};

}  // namespace

GridFunction picard_operator(const IVProblem& prob, const GridFunction& y,
                             const std::vector<double>* forcing) {
  ThetaContext ctx(prob, y.grid(), forcing);
  return GridFunction(y.grid_ptr(), ctx.apply(y.values()));
}

double residual(const IVProblem& prob, const GridFunction& y) {
  ThetaContext ctx(prob, y.grid(), nullptr);
  const auto ty = ctx.apply(y.values());
  return ctx.weighted_diff(y.values(), ty);
}

SolverReport picard_solve(const IVProblem& prob, const SolverConfig& cfg) {
  const GridPtr grid = problem_grid(prob, cfg.grid_N);
  return picard_solve(prob, cfg, grid, std::vector<double>(grid->size(), 0.0));
}

SolverReport picard_solve(const IVProblem& prob, const SolverConfig& cfg, const GridPtr& grid,
                          const std::vector<double>& forcing) {
  prob.validate();
  cfg.validate();
  if (forcing.size() != grid->size())
    throw ValidationError("picard_solve: forcing has " + std::to_string(forcing.size()) +
                          " values for " + std::to_string(grid->size()) + " nodes");

  SolverReport r(GridFunction::constant(grid, 0.0));
  for (const auto& w : prob.psi.validate_on(*grid)) r.warnings.push_back(w);

  const double gam = prob.params.gamma();
  GFactorPolicy policy;
  r.g_rhs = g_factor(prob.ts, prob.params.alpha, gam - prob.params.alpha, policy);
  r.g_equation = g_factor(prob.ts, gam - 1.0, 1.0 - gam, policy);
  for (const auto& w : policy.warnings()) r.warnings.push_back(w);

  r.contraction_constant = prob.lipschitz_L ? contraction_constant(prob) : kNaN;
  r.radius_rho = prob.bound_M ? solution_radius(prob) : kNaN;
  if (!prob.lipschitz_L) r.warnings.push_back("no Lipschitz constant given; contraction not certified");
  if (!prob.bound_M) r.warnings.push_back("no bound M given; radius not available");
  r.regime = (prob.lipschitz_L && r.contraction_constant < 1.0) ? "contraction" : "existence-only";

  ThetaContext ctx(prob, *grid, &forcing);
  std::vector<double> y(grid->size(), 0.0);
  const double d = cfg.damping;
  int applications = 0;
  for (int k = 0; k < cfg.max_iters; ++k) {
    auto ty = ctx.apply(y);
    ++applications;
    std::vector<double> next(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) next[i] = (1.0 - d) * y[i] + d * ty[i];
    const double diff = ctx.weighted_diff(next, y);
    r.diff_history.push_back(diff);
    y = std::move(next);
    if (diff <= cfg.tol) {
      r.converged = true;
      break;
    }
    if (!std::isfinite(diff)) {
      r.warnings.push_back("iteration diverged to a non-finite iterate at step " +
                           std::to_string(k + 1));
      break;
    }
  }
  // The last application only confirms the fixed point when it did not move.
  r.iterations = r.converged ? std::max(1, applications - 1) : applications;
  if (!r.converged)
    r.warnings.push_back("no convergence within " + std::to_string(cfg.max_iters) + " iterations");

  r.solution = GridFunction(grid, y);
  if (std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); })) {
    r.residual = ctx.weighted_diff(y, ctx.apply(y));
  } else {
    r.residual = std::numeric_limits<double>::infinity();
  }

  // Initial condition: I^{1-gamma} y (0+) must vanish. Its value at the first
  // node is compared with the a-priori envelope sup|F| (psi(t1)-psi(0))^e / Gamma(e+1).
  const double order = 1.0 - gam;
  if (order == 0.0 || grid->steps()[0] != Step::panel) {
    r.initial_condition = order == 0.0 ? y[0] : 0.0;
  } else if (std::isfinite(r.residual)) {
    r.initial_condition =
        kernels::left_at(ctx.u, grid->steps(), y, 0, 1, order) / gamma_fn(order);
    double sup_f = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      sup_f = std::max(sup_f, std::abs((prob.rhs(grid->t(i), y[i]) + forcing[i]) /
                                       (r.g_equation)));
    const double e = 1.0 - prob.params.beta * (1.0 - prob.params.alpha);
    const double envelope = sup_f * std::pow(ctx.u[1] - ctx.u[0], e) / gamma_fn(e + 1.0);
    r.initial_condition_ok = std::abs(r.initial_condition) <= envelope * (1.0 + 1e-6) + 1e-12;
  }
  if (!r.initial_condition_ok)
    r.warnings.push_back("initial condition I^{1-gamma} y(0+) = " + fmt(r.initial_condition) +
                         " does not vanish at the expected rate");
  return r;
}

}  // namespace tsfrac
