#include "tsfrac/special.hpp"

#include <cmath>
#include <string>

#include "tsfrac/errors.hpp"

namespace tsfrac {

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw PoleError("gamma: pole at x = " + std::to_string(x));
  return std::tgamma(x);
}

double beta_classical(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0))
    throw ParameterError("beta: arguments must be positive (p = " + std::to_string(p) +
                         ", q = " + std::to_string(q) + ")");
  return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
}

double binom_neg(double alpha, std::size_t k) {
  if (!(alpha > 0.0)) {
    // alpha = 0 gives the Kronecker delta; negative alpha is not needed.
    if (alpha == 0.0) return k == 0 ? 1.0 : 0.0;
    throw ParameterError("binom_neg: alpha must be >= 0");
  }
  const double kk = static_cast<double>(k);
  const double mag = std::exp(std::lgamma(alpha + kk) - std::lgamma(alpha) - std::lgamma(kk + 1.0));
  return (k % 2 == 0) ? mag : -mag;
}

}  // namespace tsfrac
