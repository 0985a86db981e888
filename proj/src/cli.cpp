#include "tsfrac/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tsfrac/audit.hpp"
#include "tsfrac/control.hpp"
#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/frac_operators.hpp"
#include "tsfrac/grid_function.hpp"
#include "tsfrac/io.hpp"
#include "tsfrac/ivp_solver.hpp"

namespace tsfrac::cli {
namespace {

using io::json;
namespace fs = std::filesystem;

const char* const kCommands[] = {"describe-timescale", "fracint",    "fracderiv",
                                 "solve-ivp",          "synthesize-control", "verify"};

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_text(const GridFunction& f, const std::string& header, double from, double to) {
  const Grid& g = f.grid();
  std::ostringstream os;
  os << "t," << header << '\n';
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.t(i);
    if (t < from - kSnapTolerance || t > to + kSnapTolerance || std::isnan(f[i])) continue;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, f[i]);
    os << buf;
  }
  return os.str();
}

// Positional parameter names for the "name:p1,p2" flag syntax.
FormSpec parse_psi_flag(const std::string& text) {
  const auto colon = text.find(':');
  FormSpec spec;
  spec.form = text.substr(0, colon);
  std::vector<std::string> names;
  if (spec.form == "affine") names = {"scale", "shift"};
  else if (spec.form == "power") names = {"p"};
  else if (spec.form == "exponential") names = {"rate", "shift", "offset"};
  else if (spec.form == "logarithm") names = {"shift"};
  else if (spec.form != "identity") throw ValidationError("--psi: unknown form '" + spec.form + "'");
  if (colon == std::string::npos) return spec;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= names.size())
      throw ValidationError("--psi: too many parameters for '" + spec.form + "'");
    try {
      std::size_t used = 0;
      spec.params[names[k]] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError("--psi: parameter " + names[k] + " = '" + item + "' is not a number");
    }
    ++k;
  }
  return spec;
}

struct Common {
  TimeScale ts;
  PsiFunction psi;
  GridPtr grid;
};

Common load_common(const json& doc, const RunConfig& cfg) {
  if (!doc.contains("timescale")) throw ValidationError("input.timescale: missing");
  TimeScale ts = io::timescale_from_json(doc["timescale"]);
  PsiFunction psi = PsiFunction::identity();
  if (cfg.psi)
    psi = PsiFunction::from_spec(parse_psi_flag(*cfg.psi));
  else if (doc.contains("psi"))
    psi = PsiFunction::from_spec(io::form_from_json(doc["psi"], "input.psi"));
  auto grid = make_grid(ts, cfg.grid_N);
  return {std::move(ts), std::move(psi), std::move(grid)};
}

double pick(const std::optional<double>& flag, const json& doc, const std::string& key,
            std::optional<double> fallback) {
  if (flag) return *flag;
  if (doc.contains(key)) return io::get_number(doc, key, "input");
  if (fallback) return *fallback;
  throw ValidationError("input." + key + ": missing");
}

GridFunction load_function(const json& doc, const Common& c, double origin,
                           const std::string& input_path) {
  const bool has_fn = doc.contains("function"), has_csv = doc.contains("csv");
  if (has_fn == has_csv) throw ValidationError("input: exactly one of 'function' or 'csv' is required");
  if (has_fn) {
    const auto fn = AnalyticFunction::from_spec(io::form_from_json(doc["function"], "input.function"),
                                                c.psi, origin);
    return GridFunction::sample(c.grid, [&](double x) { return fn(x); });
  }
  fs::path path = io::get_string(doc, "csv", "input");
  if (path.is_relative()) path = fs::path(input_path).parent_path() / path;
  std::ifstream is(path);
  if (!is) throw ValidationError("input.csv: cannot open '" + path.string() + "'");
  return read_csv(is, c.grid);
}

json warnings_json(const std::vector<std::string>& w) { return json(w); }

int describe_timescale(const RunConfig& cfg, const json& doc, std::ostream& out) {
  io::require_keys(doc, {"timescale"}, "input");
  const Common c = load_common(doc, cfg);
  const TimeScale& ts = c.ts;
  const Grid& g = *c.grid;
  json points = json::array();
  std::ostringstream csv;
  csv << "t,value\n";
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double mu = g.graininess_at(i);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.t(i), mu);
    csv << buf;
  }
  for (double x : ts.isolated_points()) points.push_back(x);
  json report{{"description", ts.describe()},
              {"timescale", io::timescale_to_json(ts)},
              {"min", ts.min()},
              {"max", ts.max()},
              {"discrete", ts.is_discrete()},
              {"isolated_points", points},
              {"kappa", io::timescale_to_json(kappa_restrict(ts))},
              {"grid_nodes", g.size()},
              {"grid_N", cfg.grid_N}};
  if (cfg.t) {
    const double t = *cfg.t;
    report["at"] = {{"t", t},
                    {"sigma", sigma(ts, t)},
                    {"rho", rho(ts, t)},
                    {"graininess", graininess(ts, t)},
                    {"in_kappa", in_kappa(ts, t)}};
  }
  io::write_file((fs::path(cfg.output_dir) / "graininess.csv").string(), csv.str());
  io::write_file((fs::path(cfg.output_dir) / "timescale.json").string(), io::dump(report));
  out << ts.describe() << '\n';
  return kOk;
}

int fracint(const RunConfig& cfg, const json& doc, std::ostream& out) {
  io::require_keys(doc, {"timescale", "psi", "function", "csv", "alpha", "a", "b", "side", "t"},
                   "input");
  const Common c = load_common(doc, cfg);
  const double alpha = pick(cfg.alpha, doc, "alpha", std::nullopt);
  if (!(alpha >= 0.0)) throw ParameterError("alpha = " + std::to_string(alpha) + " must be >= 0");
  const std::string side = doc.contains("side") ? io::get_string(doc, "side", "input") : "left";
  if (side != "left" && side != "right")
    throw ValidationError("input.side: expected 'left' or 'right', got '" + side + "'");
  const double a = io::get_number_or(doc, "a", c.ts.min(), "input");
  const double b = io::get_number_or(doc, "b", c.ts.max(), "input");
  const bool left = side == "left";
  const GridFunction f = load_function(doc, c, left ? a : b, cfg.input_path);
  const GridFunction r = left ? rl_integral_left_grid(f, c.psi, alpha, a)
                              : rl_integral_right_grid(f, c.psi, alpha, b);
  json report{{"command", "fracint"}, {"side", side}, {"alpha", alpha}, {"a", a}, {"b", b},
              {"psi", io::form_to_json(c.psi.spec())}, {"grid_N", cfg.grid_N},
              {"warnings", warnings_json(c.psi.validate_on(*c.grid))}};
  std::optional<double> t = cfg.t;
  if (!t && doc.contains("t")) t = io::get_number(doc, "t", "input");
  if (t) {
    const double v = left ? rl_integral_left(c.ts, f, c.psi, alpha, a, *t)
                          : rl_integral_right(c.ts, f, c.psi, alpha, *t, b);
    report["t"] = *t;
    report["value"] = nullable(v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
  io::write_file((fs::path(cfg.output_dir) / "fracint.csv").string(),
                 csv_text(r, "value", left ? a : c.ts.min(), left ? c.ts.max() : b));
  io::write_file((fs::path(cfg.output_dir) / "fracint.json").string(), io::dump(report));
  return kOk;
}

int fracderiv(const RunConfig& cfg, const json& doc, std::ostream& out) {
  io::require_keys(doc, {"timescale", "psi", "function", "csv", "alpha", "beta", "a", "kind", "t"},
                   "input");
  const Common c = load_common(doc, cfg);
  const std::string kind = doc.contains("kind") ? io::get_string(doc, "kind", "input") : "hilfer";
  double beta_default;
  if (kind == "hilfer") beta_default = 0.0;
  else if (kind == "rl") beta_default = 0.0;
  else if (kind == "caputo") beta_default = 1.0;
  else throw ValidationError("input.kind: expected hilfer, rl or caputo, got '" + kind + "'");
  const double alpha = pick(cfg.alpha, doc, "alpha", std::nullopt);
  double beta = beta_default;
  if (kind == "hilfer") {
    beta = pick(cfg.beta, doc, "beta", 0.0);
  } else if (cfg.beta || doc.contains("beta")) {
    throw ValidationError("input.beta: not allowed with kind '" + kind + "'");
  }
  const auto p = FracParams::make(alpha, beta);
  const double a = io::get_number_or(doc, "a", c.ts.min(), "input");
  const GridFunction f = load_function(doc, c, a, cfg.input_path);
  const GridFunction r = hilfer_derivative_grid(f, c.psi, p, a);
  json report{{"command", "fracderiv"}, {"kind", kind}, {"alpha", p.alpha}, {"beta", p.beta},
              {"n", p.n}, {"gamma", p.gamma()}, {"a", a},
              {"psi", io::form_to_json(c.psi.spec())}, {"grid_N", cfg.grid_N},
              {"warnings", warnings_json(c.psi.validate_on(*c.grid))}};
  std::optional<double> t = cfg.t;
  if (!t && doc.contains("t")) t = io::get_number(doc, "t", "input");
  if (t) {
    const double v = hilfer_derivative(c.ts, f, c.psi, p, a, *t);
    report["t"] = *t;
    report["value"] = nullable(v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
  io::write_file((fs::path(cfg.output_dir) / "fracderiv.csv").string(),
                 csv_text(r, "value", a, c.ts.max()));
  io::write_file((fs::path(cfg.output_dir) / "fracderiv.json").string(), io::dump(report));
  return kOk;
}

IVProblem load_ivp(const RunConfig& cfg, const json& doc) {
  if (!doc.contains("rhs")) throw ValidationError("input.rhs: missing");
  TimeScale ts = io::timescale_from_json(doc["timescale"]);
  PsiFunction psi = PsiFunction::identity();
  if (cfg.psi)
    psi = PsiFunction::from_spec(parse_psi_flag(*cfg.psi));
  else if (doc.contains("psi"))
    psi = PsiFunction::from_spec(io::form_from_json(doc["psi"], "input.psi"));
  const double alpha = pick(cfg.alpha, doc, "alpha", std::nullopt);
  const double beta = pick(cfg.beta, doc, "beta", 0.0);
  const auto rhs = NamedRhs::from_spec(io::form_from_json(doc["rhs"], "input.rhs"));
  std::optional<double> L, M;
  if (doc.contains("L")) L = io::get_number(doc, "L", "input");
  if (doc.contains("M")) M = io::get_number(doc, "M", "input");
  auto prob = IVProblem::make(std::move(ts), std::move(psi), FracParams::make(alpha, beta), rhs, L, M);
  prob.validate();
  return prob;
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig s;
  s.grid_N = cfg.grid_N;
  s.tol = cfg.tol;
  s.validate();
  return s;
}

int solve_ivp(const RunConfig& cfg, const json& doc, std::ostream& out) {
  io::require_keys(doc, {"timescale", "psi", "alpha", "beta", "rhs", "L", "M"}, "input");
  const IVProblem prob = load_ivp(cfg, doc);
  const SolverReport r = picard_solve(prob, solver_config(cfg));
  const double y1 = r.solution.at(1.0, prob.psi);
  json report{{"converged", r.converged},
              {"iterations", r.iterations},
              {"contraction_constant", nullable(r.contraction_constant)},
              {"radius_rho", nullable(r.radius_rho)},
              {"residual", nullable(r.residual)},
              {"regime", r.regime},
              {"g_rhs", r.g_rhs},
              {"g_equation", r.g_equation},
              {"initial_condition", nullable(r.initial_condition)},
              {"initial_condition_ok", r.initial_condition_ok},
              {"y_at_1", nullable(y1)},
              {"diff_history", json::array()},
              {"warnings", warnings_json(r.warnings)},
              {"alpha", prob.params.alpha},
              {"beta", prob.params.beta},
              {"psi", io::form_to_json(prob.psi.spec())},
              {"grid_N", cfg.grid_N},
              {"tol", cfg.tol}};
  for (double d : r.diff_history) report["diff_history"].push_back(nullable(d));
  io::write_file((fs::path(cfg.output_dir) / "solution.csv").string(),
                 csv_text(r.solution, "value", 0.0, 1.0));
  io::write_file((fs::path(cfg.output_dir) / "report.json").string(), io::dump(report));
  out << (r.converged ? "converged" : "not converged") << " after " << r.iterations
      << " iterations, residual " << r.residual << '\n';
  return r.converged ? kOk : kNumerical;
}

int synthesize(const RunConfig& cfg, const json& doc, std::ostream& out) {
  io::require_keys(doc, {"timescale", "psi", "alpha", "beta", "rhs", "L", "M", "b_gain", "y1", "M_W"},
                   "input");
  ControlProblem cp{load_ivp(cfg, doc), io::get_number(doc, "b_gain", "input"),
                    io::get_number(doc, "y1", "input"), std::nullopt};
  if (doc.contains("M_W")) cp.M_W = io::get_number(doc, "M_W", "input");
  const ControlLaw law = synthesize_control(cp, solver_config(cfg));
  json report{{"converged", law.converged},
              {"rounds", law.rounds},
              {"terminal_value", nullable(law.terminal_value)},
              {"terminal_error", nullable(law.terminal_error)},
              {"target_y1", cp.target_y1},
              {"b_gain", cp.b_gain},
              {"drift", nullable(law.drift)},
              {"u_bound_Mu", nullable(law.u_bound_Mu)},
              {"inverse_norm_sup", nullable(law.inverse_norm_sup)},
              {"inverse_norm_l2", nullable(law.inverse_norm_l2)},
              {"warnings", warnings_json(law.warnings)},
              {"grid_N", cfg.grid_N},
              {"tol", cfg.tol}};
  if (cp.base.bound_M) {
    const auto cc = controllability_condition(cp);
    report["controllability"] = {{"value", cc.value}, {"satisfied", cc.satisfied}};
  }
  io::write_file((fs::path(cfg.output_dir) / "control.csv").string(),
                 csv_text(law.u, "u", 0.0, 1.0));
  io::write_file((fs::path(cfg.output_dir) / "control.json").string(), io::dump(report));
  out << "terminal value " << law.terminal_value << ", error " << law.terminal_error << '\n';
  return law.converged && std::isfinite(law.terminal_error) ? kOk : kNumerical;
}

int verify(const RunConfig& cfg, std::ostream& out) {
  const json verdicts = audit::run_catalog(cfg.seed);
  const std::string table = audit::summary_table(verdicts);
  io::write_file((fs::path(cfg.output_dir) / "verify.json").string(), io::dump(verdicts));
  io::write_file((fs::path(cfg.output_dir) / "verify.txt").string(), table);
  out << table;
  return kOk;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "verify") return verify(cfg, out);
  const json doc = io::read_json_file(cfg.input_path);
  if (!doc.is_object()) throw ValidationError("input: expected a JSON object");
  if (cfg.command == "describe-timescale") return describe_timescale(cfg, doc, out);
  if (cfg.command == "fracint") return fracint(cfg, doc, out);
  if (cfg.command == "fracderiv") return fracderiv(cfg, doc, out);
  if (cfg.command == "solve-ivp") return solve_ivp(cfg, doc, out);
  return synthesize(cfg, doc, out);
}

}  // namespace

void RunConfig::validate() const {
  bool known = false;
  for (const char* c : kCommands) known = known || command == c;
  if (!known) throw ValidationError("command: unknown '" + command + "'");
  if (command != "verify" && input_path.empty()) throw ValidationError("--input: required for " + command);
  if (command != "verify" && !fs::exists(input_path))
    throw ValidationError("--input: '" + input_path + "' does not exist");
  if (grid_N < 1) throw ValidationError("--grid-N: must be >= 1, got " + std::to_string(grid_N));
  if (!(tol > 0.0)) throw ValidationError("--tol: must be > 0");
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec || !fs::is_directory(output_dir))
    throw ValidationError("--out: cannot create '" + output_dir + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    return dispatch(config, out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const ParameterError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const DomainError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const OrderError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const CatalogError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Fractional calculus on time scales"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<double> alpha, beta, t;
  std::optional<std::string> psi;
  for (const char* name : kCommands) {
    auto* sub = app.add_subcommand(name);
    if (std::string(name) != "verify") sub->add_option("--input", cfg.input_path, "input JSON")->required();
    sub->add_option("--out", cfg.output_dir, "output directory");
    sub->add_option("--grid-N", cfg.grid_N, "panels per interval component");
    sub->add_option("--tol", cfg.tol, "solver tolerance");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--alpha", alpha, "order override");
    sub->add_option("--beta", beta, "type override");
    sub->add_option("--psi", psi, "psi override, name[:p1,p2,...]");
    sub->add_option("--t", t, "evaluation point");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.psi = psi;
  cfg.t = t;
  return run(cfg, std::cout, std::cerr);
}

}  // namespace tsfrac::cli
