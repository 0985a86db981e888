#pragma once

#include "tsfrac/psi.hpp"
#include "tsfrac/timescale.hpp"

// Brute-force sums over the points of a purely discrete time scale. These
// paths share no quadrature code with the operators and exist to check them.

namespace tsfrac::oracle {

/// sum_{s in [a, b)} f(s) (sigma(s) - s), compensated summation.
/// Throws DomainError if the scale has an interval component or a, b are not members.
double brute_delta_integral(const TimeScale& ts, const ScalarFn& f, double a, double b);

/// (1/Gamma(alpha)) sum_{s in [a, t)} (psi(sigma s) - psi(s)) (psi(t) - psi(s))^{alpha-1} f(s).
double brute_frac_integral(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi,
                           double alpha, double a, double t);

/// I^alpha (I^beta f) (t) as an explicit double sum.
double brute_composition(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi, double a,
                         double t, double alpha, double beta);

/// (1/Gamma(alpha)) sum_{s in (t, b)} (psi(sigma s) - psi(s)) (psi(s) - psi(t))^{alpha-1} f(s).
double brute_frac_integral_right(const TimeScale& ts, const ScalarFn& f, const PsiFunction& psi,
                                 double alpha, double t, double b);

}  // namespace tsfrac::oracle
