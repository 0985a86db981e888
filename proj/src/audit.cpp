#include "tsfrac/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "tsfrac/errors.hpp"
#include "tsfrac/frac_operators.hpp"
#include "tsfrac/io.hpp"
#include "tsfrac/oracles.hpp"
#include "tsfrac/special.hpp"

namespace tsfrac::audit {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Rounded to 6 decimals so the instance round-trips through text exactly.
double r6(double x) { return std::round(x * 1e6) / 1e6; }

std::vector<double> random_coeffs(Rng& rng, int count, double lo, double hi) {
  std::vector<double> c(static_cast<std::size_t>(count));
  for (double& x : c) x = r6(uniform(rng, lo, hi));
  return c;
}

// n sorted points in [0, span] with 0 always included, spacing at least 1e-3.
std::vector<double> random_points(Rng& rng, int n, double span, bool with_one) {
  std::vector<double> xs{0.0};
  if (with_one) xs.push_back(1.0);
  while (static_cast<int>(xs.size()) < n) {
    const double x = r6(uniform(rng, 0.0, span));
    bool ok = true;
    for (double y : xs) ok = ok && std::abs(x - y) > 1e-3;
    if (ok) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

json points_json(const std::vector<double>& xs) { return io::timescale_to_json(TimeScale::points(xs)); }

std::vector<double> vec(const json& j) { return j.get<std::vector<double>>(); }

AnalyticFunction poly(const json& j) { return AnalyticFunction::polynomial(vec(j)); }

struct Sides {
  double lhs;
  double rhs;
  json flags = json::object();
};

enum class Relation { equal, greater_equal };

struct Definition {
  Entry entry;
  Relation relation;
  std::function<json(Rng&)> generate;
  std::function<Sides(const json&)> evaluate;
};

GridPtr grid_for(const json& inst) {
  const TimeScale ts = io::timescale_from_json(inst.at("timescale"));
  return make_grid(ts, inst.value("grid_N", 1));
}

PsiFunction psi_for(const json& inst) {
  return inst.contains("psi") ? PsiFunction::from_spec(io::form_from_json(inst.at("psi"), "psi"))
                              : PsiFunction::identity();
}

json random_psi(Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0:
      return io::form_to_json({"power", {{"p", r6(uniform(rng, 1.0, 2.0))}}});
    case 1:
      return io::form_to_json({"exponential", {{"rate", r6(uniform(rng, 0.5, 1.5))}, {"shift", 0.0}, {"offset", -1.0}}});
    default:
      return io::form_to_json({"logarithm", {{"shift", r6(uniform(rng, 1.0, 2.0))}}});
  }
}

json unit_interval() { return io::timescale_to_json(TimeScale::interval(0.0, 1.0)); }

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = [] {
    std::vector<Definition> d;

    d.push_back({{"semigroup_real", "I^a I^b f = I^(a+b) f on [0,1] for a random cubic f"},
                 Relation::equal,
                 [](Rng& rng) {
                   return json{{"timescale", unit_interval()}, {"grid_N", 256},
                               {"coeffs", random_coeffs(rng, 4, -1.0, 1.0)},
                               {"alpha", r6(uniform(rng, 0.2, 0.8))},
                               {"beta", r6(uniform(rng, 0.2, 0.8))}, {"t", 1.0},
                               {"tolerance", 1e-3}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto psi = PsiFunction::identity();
                   const auto f = GridFunction::sample(g, poly(in["coeffs"]));
                   const double a = in["alpha"], b = in["beta"], t = in["t"];
                   const auto inner = rl_integral_left_grid(f, psi, b, 0.0);
                   return Sides{rl_integral_left(g->scale(), inner, psi, a, 0.0, t),
                                rl_integral_left(g->scale(), f, psi, a + b, 0.0, t)};
                 }});

    d.push_back({{"semigroup_discrete",
                  "I^a I^b f = g(a,b) I^(a+b) f on a random discrete scale containing 0 and 1"},
                 Relation::equal,
                 [](Rng& rng) {
                   const int n = uniform_int(rng, 8, 12);
                   return json{{"timescale", points_json(random_points(rng, n, 2.0, true))},
                               {"coeffs", random_coeffs(rng, 3, 0.5, 1.5)},
                               {"alpha", r6(uniform(rng, 0.3, 0.9))},
                               {"beta", r6(uniform(rng, 0.3, 0.9))}, {"tolerance", 1e-6}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto& ts = g->scale();
                   const auto psi = PsiFunction::identity();
                   const auto fn = poly(in["coeffs"]);
                   const auto f = GridFunction::sample(g, fn);
                   const double a = in["alpha"], b = in["beta"], t = ts.max();
                   const auto inner = rl_integral_left_grid(f, psi, b, 0.0);
                   const double lhs = rl_integral_left(ts, inner, psi, a, 0.0, t);
                   GFactorPolicy policy;
                   const double gf = g_factor(ts, a, b, policy);
                   const double oracle = oracle::brute_composition(
                       ts, [&](double x) { return fn(x); }, psi, 0.0, t, a, b);
                   Sides s{lhs, gf * rl_integral_left(ts, f, psi, a + b, 0.0, t)};
                   s.flags = {{"g_factor", gf},
                              {"g_mode", policy.mode() == GFactorPolicy::Mode::computed ? "computed" : "unit_fallback"},
                              {"oracle_abs_diff", std::abs(lhs - oracle)}};
                   return s;
                 }});

    d.push_back({{"hilfer_of_integral",
                  "D^(a,b) I^d f = g(1-a,d) g(c-a,c-d) I^(2c-a-d) f on [0,1] with beta = 0"},
                 Relation::equal,
                 [](Rng& rng) {
                   return json{{"timescale", unit_interval()}, {"grid_N", 512},
                               {"coeffs", random_coeffs(rng, 4, 0.5, 1.5)},
                               {"alpha", r6(uniform(rng, 0.6, 0.9))},
                               {"delta", r6(uniform(rng, 0.1, 0.3))}, {"beta", 0.0}, {"t", 1.0},
                               {"tolerance", 1e-3}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto& ts = g->scale();
                   const auto psi = PsiFunction::identity();
                   const auto f = GridFunction::sample(g, poly(in["coeffs"]));
                   const auto p = FracParams::make(in["alpha"], in["beta"]);
                   const double dl = in["delta"], t = in["t"], c = p.gamma();
                   const auto inner = rl_integral_left_grid(f, psi, dl, 0.0);
                   GFactorPolicy policy;
                   const double g1 = g_factor(ts, 1.0 - p.alpha, dl, policy);
                   const double g2 = g_factor(ts, c - p.alpha, c - dl, policy);
                   Sides s{hilfer_derivative(ts, inner, psi, p, 0.0, t),
                           g1 * g2 * rl_integral_left(ts, f, psi, 2.0 * c - p.alpha - dl, 0.0, t)};
                   s.flags = {{"g_factors", {g1, g2}}};
                   return s;
                 }});

    auto constant_case = [](double beta) {
      return [beta](Rng& rng) {
        return json{{"timescale", unit_interval()}, {"grid_N", 256},
                    {"value", r6(uniform(rng, 0.5, 2.0))}, {"alpha", r6(uniform(rng, 0.2, 0.8))},
                    {"beta", beta}, {"t", 1.0}, {"tolerance", 1e-6}};
      };
    };
    auto constant_eval = [](const json& in) {
      const auto g = grid_for(in);
      const auto f = GridFunction::constant(g, in["value"].get<double>());
      const auto p = FracParams::make(in["alpha"], in["beta"]);
      return Sides{hilfer_derivative(g->scale(), f, PsiFunction::identity(), p, 0.0, in["t"]), 0.0};
    };
    d.push_back({{"derivative_of_constant", "Hilfer derivative of a constant vanishes (beta = 0)"},
                 Relation::equal, constant_case(0.0), constant_eval});
    d.push_back({{"derivative_of_constant_caputo",
                  "Hilfer derivative of a constant vanishes (beta = 1)"},
                 Relation::equal, constant_case(1.0), constant_eval});

    d.push_back({{"series_truncation", "K = 1 series for a linear f equals I^a f on [0,1]"},
                 Relation::equal,
                 [](Rng& rng) {
                   return json{{"timescale", unit_interval()}, {"grid_N", 256},
                               {"coeffs", random_coeffs(rng, 2, -1.0, 1.0)},
                               {"alpha", r6(uniform(rng, 0.2, 0.9))},
                               {"t", uniform_int(rng, 128, 256) / 256.0}, {"K", 1},
                               {"tolerance", 1e-8}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto psi = PsiFunction::identity();
                   const auto fn = poly(in["coeffs"]);
                   const double a = in["alpha"], t = in["t"];
                   return Sides{series_expansion(g->scale(), fn, psi, a, 0.0, t, in["K"]),
                                rl_integral_left(g->scale(), GridFunction::sample(g, fn), psi, a, 0.0, t)};
                 }});

    d.push_back({{"leibniz_truncation",
                  "Leibniz sum with K = deg f reproduces I^a (f h) for polynomial f"},
                 Relation::equal,
                 [](Rng& rng) {
                   const int K = uniform_int(rng, 1, 3);
                   return json{{"timescale", unit_interval()}, {"grid_N", 512},
                               {"coeffs", random_coeffs(rng, K + 1, -1.0, 1.0)},
                               {"h_coeffs", json::array({1.0, r6(uniform(rng, -0.5, 0.5))})},
                               {"alpha", r6(uniform(rng, 0.2, 0.9))},
                               {"t", uniform_int(rng, 256, 512) / 512.0}, {"K", K},
                               {"tolerance", 1e-4}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto psi = PsiFunction::identity();
                   const auto fn = poly(in["coeffs"]);
                   const auto hn = poly(in["h_coeffs"]);
                   const auto h = GridFunction::sample(g, hn);
                   const auto fh = GridFunction::sample(g, [&](double x) { return fn(x) * hn(x); });
                   const double a = in["alpha"], t = in["t"];
                   return Sides{leibniz_product(g->scale(), fn, h, psi, a, 0.0, t, in["K"]),
                                rl_integral_left(g->scale(), fh, psi, a, 0.0, t)};
                 }});

    d.push_back({{"integration_by_parts",
                  "int (I_a+ phi) vphi = int phi psi^D I_b-(vphi / psi^D) on an 8-point scale"},
                 Relation::equal,
                 [](Rng& rng) {
                   return json{{"timescale", points_json(random_points(rng, 8, 3.0, false))},
                               {"psi", io::form_to_json({"affine", {{"scale", r6(uniform(rng, 0.5, 2.0))},
                                                                   {"shift", r6(uniform(rng, -1.0, 1.0))}}})},
                               {"phi", random_coeffs(rng, 8, -1.0, 1.0)},
                               {"vphi", random_coeffs(rng, 8, -1.0, 1.0)},
                               {"alpha", r6(uniform(rng, 0.2, 1.5))}, {"tolerance", 1e-12}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto psi = psi_for(in);
                   const GridFunction phi(g, vec(in["phi"])), vphi(g, vec(in["vphi"]));
                   const auto r = integration_by_parts_check(g->scale(), phi, vphi, psi, in["alpha"],
                                                             g->scale().min(), g->scale().max());
                   return Sides{r.lhs, r.rhs};
                 }});

    d.push_back({{"conjugation", "grid integral equals the substitution form for a random psi"},
                 Relation::equal,
                 [](Rng& rng) {
                   return json{{"timescale", unit_interval()}, {"grid_N", 512}, {"psi", random_psi(rng)},
                               {"frequency", r6(uniform(rng, 0.5, 2.0))},
                               {"alpha", r6(uniform(rng, 0.3, 0.9))},
                               {"t", uniform_int(rng, 256, 512) / 512.0}, {"tolerance", 1e-4}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto psi = psi_for(in);
                   const double w = in["frequency"], a = in["alpha"], t = in["t"];
                   const ScalarFn fn = [w](double x) { return std::cos(w * x); };
                   return Sides{rl_integral_left(g->scale(), GridFunction::sample(g, fn), psi, a, 0.0, t),
                                conjugation_oracle(g->scale(), fn, psi, a, 0.0, t)};
                 }});

    d.push_back({{"left_inverse", "D^(a,b) I^a f = g(c-1,1-c) f on [0,1]"},
                 Relation::equal,
                 [](Rng& rng) {
                   // beta (1 - alpha) is kept below 0.35: the derivative stage then
                   // grows no faster than s^-0.35 near 0, which the grid resolves.
                   const double alpha = r6(uniform(rng, 0.3, 0.8));
                   const double beta = r6(uniform(rng, 0.0, std::min(1.0, 0.35 / (1.0 - alpha))));
                   return json{{"timescale", unit_interval()}, {"grid_N", 2048},
                               {"coeffs", random_coeffs(rng, 3, 0.5, 1.5)}, {"alpha", alpha},
                               {"beta", beta}, {"t", 0.5}, {"tolerance", 1e-3}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto& ts = g->scale();
                   const auto psi = PsiFunction::identity();
                   const auto fn = poly(in["coeffs"]);
                   const auto p = FracParams::make(in["alpha"], in["beta"]);
                   const double t = in["t"];
                   const auto inner = rl_integral_left_grid(GridFunction::sample(g, fn), psi, p.alpha, 0.0);
                   const double gf = g_factor(ts, p.gamma() - 1.0, 1.0 - p.gamma());
                   return Sides{hilfer_derivative(ts, inner, psi, p, 0.0, t), gf * fn(t)};
                 }});

    d.push_back({{"reconstruction",
                  "I^a D^(a,b) f = f - boundary term for f = (psi - psi(0))^(d-1)"},
                 Relation::equal,
                 [](Rng& rng) {
                   return json{{"timescale", unit_interval()}, {"grid_N", 512},
                               {"psi", uniform_int(rng, 0, 1) == 0
                                           ? io::form_to_json({"identity", {}})
                                           : io::form_to_json({"power", {{"p", 2.0}}})},
                               {"delta", r6(uniform(rng, 2.0, 3.0))},
                               {"alpha", r6(uniform(rng, 0.3, 0.8))},
                               {"beta", r6(uniform(rng, 0.0, 1.0))},
                               {"t", uniform_int(rng, 256, 512) / 512.0}, {"tolerance", 1e-3}};
                 },
                 [](const json& in) {
                   const auto g = grid_for(in);
                   const auto& ts = g->scale();
                   const auto psi = psi_for(in);
                   const auto p = FracParams::make(in["alpha"], in["beta"]);
                   const double t = in["t"];
                   const auto fn = AnalyticFunction::psi_power(psi, 0.0, in["delta"]);
                   const auto f = GridFunction::sample(g, [&](double x) { return fn(x); });
                   const auto dh = hilfer_derivative_grid(f, psi, p, 0.0);
                   GFactorPolicy policy;
                   const auto rec = reconstruct(ts, f, psi, p, 0.0, t, policy);
                   Sides s{rl_integral_left(ts, dh, psi, p.alpha, 0.0, t), rec.value};
                   s.flags = {{"boundary", rec.boundary}, {"composition_order", "alpha"}};
                   return s;
                 }});

    auto beta_case = [](bool unit_q) {
      return [unit_q](Rng& rng) {
        const int n = uniform_int(rng, 3, 12);
        return json{{"timescale", points_json(random_points(rng, n, 2.0, false))},
                    {"p", unit_q ? r6(uniform(rng, 1.0, 3.0)) : 1.0}, {"q", unit_q ? 1.0 : 2.0},
                    {"tolerance", 1e-12}};
      };
    };
    auto beta_eval = [](const json& in) {
      const TimeScale ts = io::timescale_from_json(in["timescale"]);
      const double p = in["p"], q = in["q"], a = ts.min(), b = ts.max();
      const auto bt = beta_timescale(ts, a, b, p, q);
      Sides s{bt.divergent ? std::numeric_limits<double>::infinity() : bt.value,
              beta_classical(p, q) * std::pow(b - a, p + q - 1.0)};
      return s;
    };
    d.push_back({{"beta_inequality_q1", "B^T(p,1) >= B(p,1) (b-a)^p on a random discrete scale"},
                 Relation::greater_equal, beta_case(true), beta_eval});
    d.push_back({{"beta_inequality_q2", "B^T(1,2) >= B(1,2) (b-a)^2 on a random discrete scale"},
                 Relation::greater_equal, beta_case(false), beta_eval});
    return d;
  }();
  return defs;
}

const Definition& lookup(const std::string& name) {
  for (const auto& d : definitions())
    if (d.entry.name == name) return d;
  throw CatalogError("unknown identity '" + name + "'");
}

}  // namespace

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    for (const auto& d : definitions()) e.push_back(d.entry);
    return e;
  }();
  return entries;
}

json make_instance(const std::string& name, std::uint64_t seed) {
  const auto& d = lookup(name);
  // Mix the name into the seed so entries do not share random streams.
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  Rng rng(h);
  json inst = d.generate(rng);
  inst["seed"] = seed;
  return inst;
}

json audit_identity(const std::string& name, const json& instance) {
  const auto& d = lookup(name);
  json out{{"identity", name}, {"instance", instance}};
  Sides s{0.0, 0.0};
  try {
    s = d.evaluate(instance);
  } catch (const PropagationError& e) {
    out["lhs"] = nullptr;
    out["rhs"] = nullptr;
    out["abs_diff"] = nullptr;
    out["rel_diff"] = nullptr;
    out["verdict"] = "diverges";
    out["convention_flags"] = {{"error", e.what()}};
    return out;
  }
  const double tol = instance.value("tolerance", 1e-10);
  const double diff = std::abs(s.lhs - s.rhs);
  const double scale = std::max(std::abs(s.lhs), std::abs(s.rhs));
  auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  out["lhs"] = finite_or_null(s.lhs);
  out["rhs"] = finite_or_null(s.rhs);
  out["abs_diff"] = finite_or_null(diff);
  out["rel_diff"] = finite_or_null(scale > 0.0 ? diff / scale : 0.0);
  std::string verdict;
  if (!std::isfinite(s.lhs) || !std::isfinite(s.rhs)) {
    verdict = "diverges";
  } else if (d.relation == Relation::greater_equal) {
    verdict = s.lhs >= s.rhs - tol * std::max(1.0, std::abs(s.rhs)) ? "holds" : "fails";
  } else {
    verdict = diff <= tol * std::max(1.0, std::abs(s.rhs)) ? "holds" : "fails";
  }
  out["verdict"] = verdict;
  s.flags["relation"] = d.relation == Relation::equal ? "equal" : "greater_equal";
  s.flags["tolerance"] = tol;
  out["convention_flags"] = s.flags;
  return out;
}

json run_catalog(std::uint64_t seed) {
  json arr = json::array();
  for (const auto& e : catalog()) arr.push_back(audit_identity(e.name, make_instance(e.name, seed)));
  return arr;
}

std::string summary_table(const json& verdicts) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-9s %24s %24s %12s\n", "identity", "verdict", "lhs",
                "rhs", "abs_diff");
  os << line;
  auto num = [](const json& j) {
    char b[32];
    if (j.is_number())
      std::snprintf(b, sizeof b, "%.15g", j.get<double>());
    else
      std::snprintf(b, sizeof b, "%s", "-");
    return std::string(b);
  };
  for (const auto& v : verdicts) {
    char diff[32];
    if (v["abs_diff"].is_number())
      std::snprintf(diff, sizeof diff, "%.3e", v["abs_diff"].get<double>());
    else
      std::snprintf(diff, sizeof diff, "%s", "-");
    std::snprintf(line, sizeof line, "%-32s %-9s %24s %24s %12s\n",
                  v["identity"].get<std::string>().c_str(), v["verdict"].get<std::string>().c_str(),
                  num(v["lhs"]).c_str(), num(v["rhs"]).c_str(), diff);
    os << line;
  }
  return os.str();
}

}  // namespace tsfrac::audit
