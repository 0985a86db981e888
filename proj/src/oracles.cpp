#include "tsfrac/oracles.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tsfrac/errors.hpp"
#include "tsfrac/special.hpp"

namespace tsfrac::oracle {
namespace {

// Neumaier's variant of Kahan summation.
class Sum {
 public:
  void add(double x) {
    const double t = s_ + x;
    c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

std::vector<double> members(const TimeScale& ts) {
  if (!ts.is_discrete()) throw DomainError("oracle: the time scale has a continuous component");
  return ts.isolated_points();
}

std::size_t position(const std::vector<double>& pts, double x) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(pts[i] - x) <= kSnapTolerance) return i;
  throw DomainError("oracle: " + std::to_string(x) + " is not a point of the scale");
}

// sigma read off the sorted point list.
double next(const std::vector<double>& pts, std::size_t i) {
  return i + 1 < pts.size() ? pts[i + 1] : pts[i];
}

}  // namespace

double brute_delta_integral(const TimeScale& ts, const ScalarFn& f, double a, double b) {
  const auto pts = members(ts);
  const std::size_t ia = position(pts, a), ib = position(pts, b);
  Sum s;
  for (std::size_t i = ia; i < ib; ++i) s.add(f(pts[i]) * (next(pts, i) - pts[i]));
  return s.value();
}

double brute_frac_integral(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi,
                           double alpha, double a, double t) {
  const auto pts = members(ts);
  const std::size_t ia = position(pts, a), it = position(pts, t);
  const double pt = psi(pts[it]);
  Sum s;
  for (std::size_t i = ia; i < it; ++i) {
    const double ps = psi(pts[i]);
    s.add((psi(next(pts, i)) - ps) * std::pow(pt - ps, alpha - 1.0) * f(pts[i]));
  }
  return s.value() / gamma_fn(alpha);
}

double brute_composition(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi, double a,
                         double t, double alpha, double beta) {
  const auto pts = members(ts);
  const std::size_t ia = position(pts, a), it = position(pts, t);
  const double pt = psi(pts[it]);
  Sum outer;
  for (std::size_t i = ia; i < it; ++i) {
    const double ps = psi(pts[i]);
    Sum inner;
    for (std::size_t j = ia; j < i; ++j) {
      const double pr = psi(pts[j]);
      inner.add((psi(next(pts, j)) - pr) * std::pow(ps - pr, beta - 1.0) * f(pts[j]));
    }
    const double inner_value = inner.value() / gamma_fn(beta);
    outer.add((psi(next(pts, i)) - ps) * std::pow(pt - ps, alpha - 1.0) * inner_value);
  }
  return outer.value() / gamma_fn(alpha);
}

double brute_frac_integral_right(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi,
                                 double alpha, double t, double b) {
  const auto pts = members(ts);
  const std::size_t it = position(pts, t), ib = position(pts, b);
  const double pt = psi(pts[it]);
  Sum s;
  for (std::size_t i = it + 1; i < ib; ++i) {
    const double ps = psi(pts[i]);
    s.add((psi(next(pts, i)) - ps) * std::pow(ps - pt, alpha - 1.0) * f(pts[i]));
  }
  return s.value() / gamma_fn(alpha);
}

}  // namespace tsfrac::oracle
