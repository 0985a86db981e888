#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsfrac/taylor.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac {

using ScalarFn = std::function<double(double)>;

/// Named form plus parameters; the serializable description of a function.
struct FormSpec {
  std::string form;
  std::map<std::string, double> params;
};

/// Strictly increasing weight function psi with its classical derivative.
///
/// The optional jet evaluator gives exact higher derivatives and is needed
/// only by the series and Leibniz expansions; the optional inverse is used by
/// the conjugation oracle (bisection is the fallback).
class PsiFunction {
 public:
  PsiFunction(std::string label, ScalarFn eval, ScalarFn derivative, JetFn jet = {},
              ScalarFn inverse = {});

  static PsiFunction identity();
  /// scale * x + shift, scale > 0.
  static PsiFunction affine(double scale, double shift);
  /// x^p on x >= 0, p > 0.
  static PsiFunction power(double p);
  /// exp(rate * x + shift) + offset, rate > 0. e^x - 1 is (1, 0, -1).
  static PsiFunction exponential(double rate, double shift, double offset);
  /// log(x + shift), defined for x > -shift.
  static PsiFunction logarithm(double shift);
  /// Builds from a named form; throws ValidationError on unknown names/keys.
  static PsiFunction from_spec(const FormSpec& spec);

  double operator()(double x) const { return eval_(x); }
  double derivative(double x) const { return derivative_(x); }
  const std::string& label() const noexcept { return label_; }
  const FormSpec& spec() const noexcept { return spec_; }

  bool has_jet() const noexcept { return static_cast<bool>(jet_); }
  Jet jet(const Jet& x) const;

  /// psi^{-1}(y) searched in [lo, hi].
  double inverse(double y, double lo, double hi) const;

  /// psi^Delta(t): (psi(sigma t) - psi t) / mu(t) when right-scattered, psi'(t) otherwise.
  double delta(const TimeScale& ts, double t) const;

  /// Checks strict increase across the grid nodes (throws ValidationError) and
  /// returns warnings for nodes where the classical derivative is not positive.
  std::vector<std::string> validate_on(const Grid& grid) const;

 private:
  std::string label_;
  ScalarFn eval_;
  ScalarFn derivative_;
  JetFn jet_;
  ScalarFn inverse_;
  FormSpec spec_;
};

/// A real function together with an optional Taylor-jet evaluator.
class AnalyticFunction {
 public:
  AnalyticFunction(std::string label, ScalarFn eval, JetFn jet = {})
      : label_(std::move(label)), eval_(std::move(eval)), jet_(std::move(jet)) {}

  static AnalyticFunction constant(double c);
  /// sum_k coeffs[k] * x^k.
  static AnalyticFunction polynomial(std::vector<double> coeffs);
  /// amplitude * cos(frequency * x + phase).
  static AnalyticFunction cosine(double amplitude, double frequency, double phase);
  /// amplitude * exp(rate * x).
  static AnalyticFunction exponential(double amplitude, double rate);
  /// (psi(x) - psi(origin))^(delta - 1).
  static AnalyticFunction psi_power(const PsiFunction& psi, double origin, double delta);
  static AnalyticFunction from_spec(const FormSpec& spec, const PsiFunction& psi, double origin);

  double operator()(double x) const { return eval_(x); }
  const std::string& label() const noexcept { return label_; }
  bool has_jet() const noexcept { return static_cast<bool>(jet_); }
  Jet jet(const Jet& x) const;

 private:
  std::string label_;
  ScalarFn eval_;
  JetFn jet_;
};

/// Derivatives d^k f / d psi^k at a point where psi'(t) != 0, k = 0..order,
/// obtained by reverting the psi jet and composing.
std::vector<double> psi_taylor_derivatives(const AnalyticFunction& f, const PsiFunction& psi,
                                           double t, std::size_t order);

}  // namespace tsfrac
