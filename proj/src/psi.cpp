#include "tsfrac/psi.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "tsfrac/errors.hpp"

namespace tsfrac {
namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double param(const FormSpec& spec, const std::set<std::string>& allowed, const std::string& key,
             std::optional<double> fallback) {
  for (const auto& [k, v] : spec.params)
    if (!allowed.count(k))
      throw ValidationError("form '" + spec.form + "': unknown parameter '" + k + "'");
  if (auto it = spec.params.find(key); it != spec.params.end()) return it->second;
  if (fallback) return *fallback;
  throw ValidationError("form '" + spec.form + "': missing parameter '" + key + "'");
}

}  // namespace

PsiFunction::PsiFunction(std::string label, ScalarFn eval, ScalarFn derivative, JetFn jet,
                         ScalarFn inverse)
    : label_(std::move(label)),
      eval_(std::move(eval)),
      derivative_(std::move(derivative)),
      jet_(std::move(jet)),
      inverse_(std::move(inverse)),
      spec_{label_, {}} {}

PsiFunction PsiFunction::identity() {
  PsiFunction p(
      "identity", [](double x) { return x; }, [](double) { return 1.0; },
      [](const Jet& x) { return x; }, [](double y) { return y; });
  p.spec_ = {"identity", {}};
  return p;
}

PsiFunction PsiFunction::affine(double scale, double shift) {
  if (!(scale > 0.0)) throw ValidationError("psi affine: scale must be > 0");
  PsiFunction p(
      "affine(" + num(scale) + "," + num(shift) + ")",
      [=](double x) { return scale * x + shift; }, [=](double) { return scale; },
      [=](const Jet& x) { return scale * x + shift; }, [=](double y) { return (y - shift) / scale; });
  p.spec_ = {"affine", {{"scale", scale}, {"shift", shift}}};
  return p;
}

PsiFunction PsiFunction::power(double e) {
  if (!(e > 0.0)) throw ValidationError("psi power: exponent p must be > 0");
  PsiFunction p(
      "power(" + num(e) + ")", [=](double x) { return std::pow(x, e); },
      [=](double x) { return e * std::pow(x, e - 1.0); },
      [=](const Jet& x) { return pow(x, e); }, [=](double y) { return std::pow(y, 1.0 / e); });
  p.spec_ = {"power", {{"p", e}}};
  return p;
}

PsiFunction PsiFunction::exponential(double rate, double shift, double offset) {
  if (!(rate > 0.0)) throw ValidationError("psi exponential: rate must be > 0");
  PsiFunction p(
      "exponential(" + num(rate) + "," + num(shift) + "," + num(offset) + ")",
      [=](double x) {
        // expm1 keeps e^x - 1 accurate near 0.
        return offset == -1.0 && shift == 0.0 ? std::expm1(rate * x) : std::exp(rate * x + shift) + offset;
      },
      [=](double x) { return rate * std::exp(rate * x + shift); },
      [=](const Jet& x) { return exp(rate * x + shift) + offset; },
      [=](double y) { return (std::log(y - offset) - shift) / rate; });
  p.spec_ = {"exponential", {{"rate", rate}, {"shift", shift}, {"offset", offset}}};
  return p;
}

PsiFunction PsiFunction::logarithm(double shift) {
  PsiFunction p(
      "logarithm(" + num(shift) + ")", [=](double x) { return std::log(x + shift); },
      [=](double x) { return 1.0 / (x + shift); }, [=](const Jet& x) { return log(x + shift); },
      [=](double y) { return std::exp(y) - shift; });
  p.spec_ = {"logarithm", {{"shift", shift}}};
  return p;
}

PsiFunction PsiFunction::from_spec(const FormSpec& spec) {
  const auto& f = spec.form;
  if (f == "identity") {
    param(spec, {}, "", 0.0);
    return identity();
  }
  if (f == "affine") {
    const std::set<std::string> k{"scale", "shift"};
    return affine(param(spec, k, "scale", 1.0), param(spec, k, "shift", 0.0));
  }
  if (f == "power") return power(param(spec, {"p"}, "p", std::nullopt));
  if (f == "exponential") {
    const std::set<std::string> k{"rate", "shift", "offset"};
    return exponential(param(spec, k, "rate", 1.0), param(spec, k, "shift", 0.0),
                       param(spec, k, "offset", -1.0));
  }
  if (f == "logarithm") return logarithm(param(spec, {"shift"}, "shift", 1.0));
  throw ValidationError("psi: unknown form '" + f + "'");
}

Jet PsiFunction::jet(const Jet& x) const {
  if (!jet_) throw ParameterError("psi '" + label_ + "' has no jet evaluator");
  return jet_(x);
}

double PsiFunction::inverse(double y, double lo, double hi) const {
  if (inverse_) return inverse_(y);
  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    (eval_(m) < y ? a : b) = m;
  }
  return 0.5 * (a + b);
}

double PsiFunction::delta(const TimeScale& ts, double t) const {
  const double mu = graininess(ts, t);
  if (mu > 0.0) return (eval_(t + mu) - eval_(t)) / mu;
  return derivative_(t);
}

std::vector<std::string> PsiFunction::validate_on(const Grid& grid) const {
  std::vector<std::string> warnings;
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = eval_(grid.t(i));
    if (!std::isfinite(v))
      throw ValidationError("psi '" + label_ + "' is not finite at node t = " + num(grid.t(i)));
    if (i > 0 && !(v > prev))
      throw ValidationError("psi '" + label_ + "' is not strictly increasing at node t = " +
                            num(grid.t(i)));
    prev = v;
    if (grid.node(i).kind == NodeKind::panel && !(derivative_(grid.t(i)) > 0.0))
      warnings.push_back("psi '" + label_ + "' has non-positive derivative at t = " + num(grid.t(i)));
  }
  return warnings;
}

AnalyticFunction AnalyticFunction::constant(double c) {
  return AnalyticFunction(
      "constant(" + num(c) + ")", [=](double) { return c; },
      [=](const Jet& x) { return Jet(x.order(), c); });
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  std::string label = "polynomial(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) label += (i ? "," : "") + num(coeffs[i]);
  label += ")";
  return AnalyticFunction(
      label,
      [=](double x) {
        double s = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
        return s;
      },
      [=](const Jet& x) {
        Jet s(x.order(), 0.0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
        return s;
      });
}

AnalyticFunction AnalyticFunction::cosine(double amplitude, double frequency, double phase) {
  return AnalyticFunction(
      "cosine(" + num(amplitude) + "," + num(frequency) + "," + num(phase) + ")",
      [=](double x) { return amplitude * std::cos(frequency * x + phase); },
      [=](const Jet& x) { return amplitude * cos(frequency * x + phase); });
}

AnalyticFunction AnalyticFunction::exponential(double amplitude, double rate) {
  return AnalyticFunction(
      "exponential(" + num(amplitude) + "," + num(rate) + ")",
      [=](double x) { return amplitude * std::exp(rate * x); },
      [=](const Jet& x) { return amplitude * exp(rate * x); });
}

AnalyticFunction AnalyticFunction::psi_power(const PsiFunction& psi, double origin, double delta) {
  const double base = psi(origin);
  JetFn jet;
  if (psi.has_jet()) jet = [=](const Jet& x) { return pow(psi.jet(x) - base, delta - 1.0); };
  return AnalyticFunction(
      "psi_power(" + num(delta) + ")",
      [=](double x) {
        const double d = psi(x) - base;
        return d <= 0.0 ? (delta == 1.0 ? 1.0 : 0.0) : std::pow(d, delta - 1.0);
      },
      jet);
}

AnalyticFunction AnalyticFunction::from_spec(const FormSpec& spec, const PsiFunction& psi,
                                             double origin) {
  const auto& f = spec.form;
  if (f == "constant") return constant(param(spec, {"value"}, "value", std::nullopt));
  if (f == "polynomial") {
    std::set<std::string> allowed;
    for (int k = 0; k < 16; ++k) allowed.insert("c" + std::to_string(k));
    std::vector<double> cs;
    for (int k = 0; k < 16; ++k) cs.push_back(param(spec, allowed, "c" + std::to_string(k), 0.0));
    while (cs.size() > 1 && cs.back() == 0.0) cs.pop_back();
    return polynomial(std::move(cs));
  }
  if (f == "cosine") {
    const std::set<std::string> k{"amplitude", "frequency", "phase"};
    return cosine(param(spec, k, "amplitude", 1.0), param(spec, k, "frequency", 1.0),
                  param(spec, k, "phase", 0.0));
  }
  if (f == "exponential") {
    const std::set<std::string> k{"amplitude", "rate"};
    return exponential(param(spec, k, "amplitude", 1.0), param(spec, k, "rate", 1.0));
  }
  if (f == "psi_power") return psi_power(psi, origin, param(spec, {"delta"}, "delta", std::nullopt));
  throw ValidationError("function: unknown form '" + f + "'");
}

Jet AnalyticFunction::jet(const Jet& x) const {
  if (!jet_) throw ParameterError("function '" + label_ + "' has no jet evaluator");
  return jet_(x);
}

std::vector<double> psi_taylor_derivatives(const AnalyticFunction& f, const PsiFunction& psi,
                                           double t, std::size_t order) {
  const Jet pj = psi.jet(Jet::variable(t, order));
  if (order == 0) return {f(t)};
  const double c1 = pj[1];
  if (!(std::abs(c1) > 0.0))
    throw SingularWeightError("psi'(t) = 0 at t = " + num(t) + "; cannot differentiate with respect to psi");

  // Revert u = psi(t + e) - psi(t) for e(u) by fixed-point iteration; each
  // pass fixes one more coefficient.
  Jet du(order, 0.0);
  du[1] = 1.0;
  Jet e = du / c1;
  for (std::size_t pass = 1; pass < order; ++pass) {
    Jet higher(order, 0.0);
    for (std::size_t k = order; k >= 2; --k) higher = (higher + pj[k]) * e;
    higher = higher * e;
    e = (du - higher) / c1;
  }
  const Jet composed = f.jet(e + t);
  std::vector<double> out(order + 1);
  for (std::size_t k = 0; k <= order; ++k) out[k] = composed.derivative(k);
  return out;
}

}  // namespace tsfrac
