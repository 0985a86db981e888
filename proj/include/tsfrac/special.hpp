#pragma once

#include <cstddef>

namespace tsfrac {

/// Gamma function. Throws PoleError at non-positive integers.
double gamma_fn(double x);

/// Classical Beta B(p, q) for p, q > 0. Throws ParameterError otherwise.
double beta_classical(double p, double q);

/// binom(-alpha, k) = (-1)^k Gamma(alpha + k) / (Gamma(alpha) Gamma(k + 1)), alpha > 0.
double binom_neg(double alpha, std::size_t k);

}  // namespace tsfrac
