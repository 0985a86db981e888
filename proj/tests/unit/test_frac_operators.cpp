#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "support.hpp"
#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/frac_operators.hpp"
#include "tsfrac/kernels.hpp"
#include "tsfrac/oracles.hpp"
#include "tsfrac/special.hpp"

using namespace tsfrac;
using testing_support::rel_err;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

TimeScale unit() { return TimeScale::interval(0, 1); }

GridFunction sample(const TimeScale& ts, int N, const ScalarFn& f) {
  return GridFunction::sample(make_grid(ts, N), f);
}

}  // namespace

TEST(FracParams, Validation) {
  const auto p = FracParams::make(0.4, 0.5);
  EXPECT_EQ(p.n, 1);
  EXPECT_DOUBLE_EQ(p.gamma(), 0.7);
  EXPECT_DOUBLE_EQ(p.mu_h(), 0.7);
  EXPECT_EQ(FracParams::make(1.0, 0.0).n, 1);
  EXPECT_EQ(FracParams::make(1.5, 0.0).n, 2);
  EXPECT_THROW(FracParams::make(0.0, 0.5), ParameterError);
  EXPECT_THROW(FracParams::make(0.5, 1.5), ParameterError);
  EXPECT_THROW(FracParams::make(0.5, 0.5, 3), ParameterError);
}

TEST(RlIntegral, ConstantOnReals) {
  const auto f = sample(unit(), 64, [](double) { return 1.0; });
  EXPECT_NEAR(rl_integral_left(unit(), f, PsiFunction::identity(), 0.5, 0, 1), 1.0 / gamma_fn(1.5), 1e-13);
}

TEST(RlIntegral, ConstantOnIntegers) {
  const auto z = TimeScale::integers(0, 5);
  const auto f = sample(z, 1, [](double) { return 1.0; });
  const double want = (1.0 / std::sqrt(2.0) + 1.0) / kSqrtPi;
  EXPECT_NEAR(rl_integral_left(z, f, PsiFunction::identity(), 0.5, 0, 2), want, 1e-15);
  EXPECT_NEAR(want, 0.96313, 5e-6);
}

TEST(RlIntegral, OrderOneIsDeltaIntegral) {
  const TimeScale mixed({Point{0.0}, Point{0.3}, Interval{0.5, 1.0}, Point{1.4}});
  const auto f = sample(mixed, 16, [](double t) { return std::cos(2 * t); });
  EXPECT_NEAR(rl_integral_left(mixed, f, PsiFunction::identity(), 1.0, 0, 1.4),
              delta_integral(mixed, f, 0, 1.4), 1e-14);
}

TEST(RlIntegral, ExactForLinearFunctionsAtAnyOrder) {
  const auto f = sample(unit(), 128, [](double t) { return 1.0 + 2.0 * t; });
  for (double a : {0.4, 1.0, 1.3, 2.5})
    for (double t : {0.125, 0.5, 1.0})
      EXPECT_NEAR(rl_integral_left(unit(), f, PsiFunction::identity(), a, 0, t),
                  std::pow(t, a) / gamma_fn(a + 1) + 2.0 * std::pow(t, a + 1) / gamma_fn(a + 2), 1e-14)
          << a << " " << t;
}

TEST(RlIntegral, OrderZeroIsIdentity) {
  const auto f = sample(unit(), 8, [](double t) { return t * t; });
  EXPECT_EQ(rl_integral_left(unit(), f, PsiFunction::identity(), 0.0, 0, 0.5), 0.25);
  const auto g = rl_integral_left_grid(f, PsiFunction::identity(), 0.0, 0);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(g[i], f[i]);
}

TEST(RlIntegral, Errors) {
  const auto f = sample(unit(), 8, [](double t) { return t; });
  EXPECT_THROW(rl_integral_left(unit(), f, PsiFunction::identity(), -0.5, 0, 1), ParameterError);
  EXPECT_THROW(rl_integral_left(unit(), f, PsiFunction::identity(), 0.5, 0.5, 0.25), OrderError);
  EXPECT_THROW(rl_integral_left(unit(), f, PsiFunction::identity(), 0.5, 0, 2.0), DomainError);
}

TEST(RlIntegralRight, Examples) {
  const auto one = sample(unit(), 32, [](double) { return 1.0; });
  EXPECT_NEAR(rl_integral_right(unit(), one, PsiFunction::identity(), 1.0, 0, 1), 1.0, 1e-14);

  const auto z = TimeScale::integers(0, 3);
  const auto f = sample(z, 1, [](double) { return 1.0; });
  // s = 0 excluded; s = 1, 2 contribute s^{-1/2}; b = 3 is outside [t, b).
  const double want = (1.0 + 1.0 / std::sqrt(2.0)) / kSqrtPi;
  EXPECT_NEAR(rl_integral_right(z, f, PsiFunction::identity(), 0.5, 0, 3), want, 1e-15);
  EXPECT_EQ(rl_integral_right(z, GridFunction::constant(f.grid_ptr(), 0.0), PsiFunction::identity(), 0.5, 0, 3), 0.0);
}

TEST(RlIntegral, MatchesOraclesOnRandomDiscreteScales) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.1, 1.5);
  const PsiFunction psis[] = {PsiFunction::identity(), PsiFunction::power(1.7),
                              PsiFunction::exponential(0.8, 0.0, -1.0)};
  for (int c = 0; c < 60; ++c) {
    const auto ts = testing_support::random_discrete(rng, 4 + c % 20);
    const auto& psi = psis[c % 3];
    const double alpha = U(rng), w = U(rng);
    const ScalarFn fn = [w](double x) { return std::sin(w * x) + 1.5; };
    const auto f = sample(ts, 1, fn);
    const auto grid = f.grid_ptr();
    const double a = grid->t(0), b = ts.max();
    for (std::size_t j = 0; j < grid->size(); j += 3) {
      const double t = grid->t(j);
      EXPECT_LE(rel_err(rl_integral_left(ts, f, psi, alpha, a, t),
                        oracle::brute_frac_integral(ts, fn, psi, alpha, a, t)), 1e-12);
      EXPECT_LE(rel_err(rl_integral_right(ts, f, psi, alpha, t, b),
                        oracle::brute_frac_integral_right(ts, fn, psi, alpha, t, b)), 1e-12);
    }
  }
}

TEST(RlIntegral, CompositionMatchesDoubleSum) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.2, 1.4);
  for (int c = 0; c < 30; ++c) {
    const auto ts = testing_support::random_discrete(rng, 6 + c % 10);
    const double a1 = U(rng), a2 = U(rng);
    const ScalarFn fn = [](double x) { return 1.0 + x * x; };
    const auto f = sample(ts, 1, fn);
    const auto psi = PsiFunction::power(1.3);
    const auto inner = rl_integral_left_grid(f, psi, a2, 0.0);
    const double lhs = rl_integral_left(ts, inner, psi, a1, 0.0, ts.max());
    EXPECT_LE(rel_err(lhs, oracle::brute_composition(ts, fn, psi, 0.0, ts.max(), a1, a2)), 1e-12);
  }
}

TEST(RlIntegral, SerialAndParallelKernelsAgree) {
  const TimeScale mixed({Point{0.0}, Point{0.2}, Interval{0.5, 1.0}, Point{1.3}, Interval{1.5, 2.0}});
  const auto g = make_grid(mixed, 300);
  const auto u = psi_nodes(*g, PsiFunction::power(1.5));
  std::vector<double> f;
  for (double t : g->times()) f.push_back(std::cos(5 * t));
  for (double alpha : {0.3, 1.0, 1.7}) {
    const auto p = kernels::left_all(u, g->steps(), f, 2, g->size() - 1, alpha);
    const auto s = kernels::serial::left_all(u, g->steps(), f, 2, g->size() - 1, alpha);
    const auto pr = kernels::right_all(u, g->steps(), f, 0, g->size() - 3, alpha);
    const auto sr = kernels::serial::right_all(u, g->steps(), f, 0, g->size() - 3, alpha);
    for (std::size_t i = 0; i < g->size(); ++i) {
      if (std::isnan(s[i])) EXPECT_TRUE(std::isnan(p[i]));
      else EXPECT_EQ(p[i], s[i]) << i;
      if (std::isnan(sr[i])) EXPECT_TRUE(std::isnan(pr[i]));
      else EXPECT_EQ(pr[i], sr[i]) << i;
    }
  }
}

TEST(RlIntegral, VanishingLimitNearOrigin) {
  const double gamma = 0.6, alpha = 0.5;
  const auto g = make_grid(unit(), 256);
  const auto f = GridFunction::sample(g, [&](double t) { return t > 0 ? std::pow(t, gamma - 1) : 0.0; });
  const auto r = rl_integral_left_grid(f, PsiFunction::identity(), alpha, 0.0);
  // |I^a f (t)| <= ||f||_{1-g} Gamma(g)/Gamma(g+a) t^{g+a-1}, and the bound tends to 0 at 0+.
  const double norm = weighted_norm(f, PsiFunction::identity(), gamma, 0.0);
  for (std::size_t i = 1; i < g->size(); ++i) {
    const double env = norm * gamma_fn(gamma) / gamma_fn(gamma + alpha) * std::pow(g->t(i), gamma + alpha - 1);
    EXPECT_GE(r[i], 0.0);
    EXPECT_LE(r[i], env * (1 + 1e-12)) << g->t(i);
  }
  for (std::size_t i = 2; i < 20; ++i) EXPECT_LT(r[i - 1], r[i]);
}

TEST(Beta, Examples) {
  const auto z = TimeScale::integers(0, 3);
  EXPECT_DOUBLE_EQ(beta_timescale(z, 0, 3, 1, 1).value, 3.0);
  EXPECT_NEAR(beta_timescale(unit(), 0, 1, 0.5, 0.5).value, std::numbers::pi, 1e-10);
  EXPECT_NEAR(beta_timescale(TimeScale::interval(0, 2), 0, 2, 1, 1).value, 2.0, 1e-12);
  EXPECT_TRUE(beta_timescale(z, 0, 3, 1, 0.5).divergent);
}

TEST(GFactor, Examples) {
  EXPECT_EQ(g_factor(unit(), 0.3, 0.8), 1.0);
  EXPECT_DOUBLE_EQ(g_factor(TimeScale::integers(0, 1), 1, 1), 1.0);
  GFactorPolicy policy;
  EXPECT_EQ(g_factor(TimeScale::integers(0, 3), -0.2, 0.2, policy), 1.0);
  EXPECT_EQ(policy.mode(), GFactorPolicy::Mode::unit_fallback);
  EXPECT_FALSE(policy.warnings().empty());
  EXPECT_THROW(g_factor(TimeScale::integers(2, 5), 1, 1), DomainError);
  const auto pts = TimeScale::points({0.0, 0.5, 1.0, 2.0});
  EXPECT_NEAR(g_factor(pts, 2.0, 2.0), beta_timescale(pts, 0, 1, 2, 2).value / beta_classical(2, 2), 1e-15);
}

TEST(Hilfer, PowerRuleExamples) {
  const auto g = make_grid(unit(), 1024);
  const auto x = GridFunction::sample(g, [](double t) { return t; });
  const auto x2 = GridFunction::sample(g, [](double t) { return t * t; });
  for (double beta : {0.0, 0.5, 1.0}) {
    const auto p = FracParams::make(0.5, beta);
    EXPECT_LE(rel_err(hilfer_derivative(unit(), x, PsiFunction::identity(), p, 0, 1), 1.0 / gamma_fn(1.5)), 1e-3);
    EXPECT_LE(rel_err(hilfer_derivative(unit(), x2, PsiFunction::identity(), p, 0, 1), 2.0 / gamma_fn(2.5)), 1e-3);
  }
}

TEST(Hilfer, RlAndCaputoExamples) {
  const auto g = make_grid(unit(), 1024);
  const auto one = GridFunction::constant(g, 1.0);
  const auto x = GridFunction::sample(g, [](double t) { return t; });
  const auto id = PsiFunction::identity();
  EXPECT_LE(rel_err(rl_derivative(unit(), one, id, 0.5, 0, 1), 1.0 / kSqrtPi), 1e-3);
  EXPECT_LE(rel_err(rl_derivative(unit(), x, id, 0.5, 0, 1), 1.0 / gamma_fn(1.5)), 1e-3);
  EXPECT_NEAR(caputo_derivative(unit(), one, id, 0.5, 0, 1), 0.0, 1e-12);
  EXPECT_LE(rel_err(caputo_derivative(unit(), x, id, 0.5, 0, 1), 1.0 / gamma_fn(1.5)), 1e-3);
}

TEST(Hilfer, OrderOneIsClassicalDerivative) {
  const auto f = sample(unit(), 512, [](double t) { return std::sin(2 * t); });
  for (double beta : {0.0, 0.5, 1.0})
    EXPECT_NEAR(hilfer_derivative(unit(), f, PsiFunction::identity(), FracParams::make(1.0, beta), 0, 0.5),
                2 * std::cos(1.0), 1e-5);
}

TEST(Hilfer, LimitCoherenceOnDiscreteScales) {
  std::mt19937_64 rng(3);
  for (int c = 0; c < 20; ++c) {
    const auto ts = testing_support::random_discrete(rng, 8);
    const auto f = sample(ts, 1, [](double t) { return std::exp(-t) + t; });
    const auto psi = PsiFunction::power(1.2);
    const double t = sigma(ts, sigma(ts, sigma(ts, 0.0)));
    EXPECT_LE(rel_err(hilfer_derivative(ts, f, psi, FracParams::make(0.6, 0.0), 0, t),
                      rl_derivative(ts, f, psi, 0.6, 0, t)), 1e-10);
    EXPECT_LE(rel_err(hilfer_derivative(ts, f, psi, FracParams::make(0.6, 1.0), 0, t),
                      caputo_derivative(ts, f, psi, 0.6, 0, t)), 1e-10);
  }
}

TEST(Hilfer, LinearityOnDiscreteScales) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int c = 0; c < 20; ++c) {
    const auto ts = testing_support::random_discrete(rng, 10);
    const auto g = make_grid(ts, 1);
    const auto f = GridFunction::sample(g, [](double t) { return std::cos(t); });
    const auto h = GridFunction::sample(g, [](double t) { return t * t; });
    const double l1 = U(rng), l2 = U(rng);
    const auto p = FracParams::make(0.7, 0.3);
    const auto psi = PsiFunction::identity();
    const double t = g->t(5);
    const double lhs = hilfer_derivative(ts, linear_combination(l1, f, l2, h), psi, p, 0, t);
    const double rhs = l1 * hilfer_derivative(ts, f, psi, p, 0, t) + l2 * hilfer_derivative(ts, h, psi, p, 0, t);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Hilfer, NonFiniteStageNamesTheStage) {
  const auto g = make_grid(unit(), 32);
  auto f = GridFunction::constant(g, 1.0);
  f[4] = std::numeric_limits<double>::infinity();
  try {
    hilfer_derivative(unit(), f, PsiFunction::identity(), FracParams::make(0.5, 0.5), 0, 1);
    FAIL() << "expected PropagationError";
  } catch (const PropagationError& e) {
    EXPECT_NE(std::string(e.what()).find("stage"), std::string::npos) << e.what();
  }
}

TEST(PowerRule, Examples) {
  const auto id = PsiFunction::identity();
  EXPECT_NEAR(power_rule(id, FracParams::make(0.5, 0), 0, 2, 1), 1.0 / gamma_fn(1.5), 1e-15);
  EXPECT_NEAR(power_rule(id, FracParams::make(1.0, 0), 0, 3, 0.7), 2 * 0.7, 1e-14);
  EXPECT_EQ(power_rule(id, FracParams::make(0.5, 0), 0, 2, 0), 0.0);
  EXPECT_THROW(power_rule(id, FracParams::make(2.0, 0), 0, 2.0, 0.5), PoleError);
  EXPECT_THROW(power_rule(id, FracParams::make(0.5, 0), 0, 1.0, 0.5), ParameterError);
}

TEST(Series, Examples) {
  const auto id = PsiFunction::identity();
  const double c = 1.7, a = 0.6, t = 0.8;
  for (std::size_t K : {0u, 3u, 6u})
    EXPECT_NEAR(series_expansion(unit(), AnalyticFunction::constant(c), id, a, 0, t, K),
                c * std::pow(t, a) / gamma_fn(a + 1), 1e-14);
  EXPECT_EQ(series_expansion(unit(), AnalyticFunction::constant(0.0), id, a, 0, t, 0), 0.0);
}

TEST(Series, LinearFunctionExactAtFirstOrder) {
  const auto g = make_grid(unit(), 256);
  const auto fn = AnalyticFunction::polynomial({0.3, -1.1});
  const double want = rl_integral_left(unit(), GridFunction::sample(g, [&](double x) { return fn(x); }),
                                       PsiFunction::identity(), 0.4, 0, 0.75);
  EXPECT_NEAR(series_expansion(unit(), fn, PsiFunction::identity(), 0.4, 0, 0.75, 1), want, 1e-10);
}

TEST(Leibniz, Examples) {
  const auto g = make_grid(unit(), 256);
  const auto h = GridFunction::sample(g, [](double t) { return std::exp(t); });
  const auto id = PsiFunction::identity();
  EXPECT_EQ(leibniz_product(unit(), AnalyticFunction::constant(1.0), h, id, 0.5, 0, 0.5, 0),
            rl_integral_left(unit(), h, id, 0.5, 0, 0.5));
  EXPECT_EQ(leibniz_product(unit(), AnalyticFunction::constant(0.0), GridFunction::constant(g, 0.0), id, 0.5, 0, 0.5, 2), 0.0);
}

TEST(Reconstruct, ZeroFunction) {
  const auto g = make_grid(unit(), 64);
  GFactorPolicy policy;
  const auto r = reconstruct(unit(), GridFunction::constant(g, 0.0), PsiFunction::identity(),
                             FracParams::make(0.5, 0.5), 0, 0.5, policy);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_FALSE(r.divergent);
}

TEST(Reconstruct, CaputoEdgeDropsBoundary) {
  const auto g = make_grid(unit(), 64);
  const auto f = GridFunction::sample(g, [](double t) { return 1.0 + t; });
  GFactorPolicy policy;
  const auto r = reconstruct(unit(), f, PsiFunction::identity(), FracParams::make(0.5, 1.0), 0, 0.5, policy);
  EXPECT_NEAR(r.value, 1.5 - 1.0, 1e-12);
}

TEST(IntegrationByParts, Examples) {
  const auto g = make_grid(unit(), 256);
  const auto zero = GridFunction::constant(g, 0.0), one = GridFunction::constant(g, 1.0);
  const auto id = PsiFunction::identity();
  const auto z = integration_by_parts_check(unit(), zero, one, id, 0.7, 0, 1);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);
  const auto r = integration_by_parts_check(unit(), one, one, id, 1.0, 0, 1);
  EXPECT_NEAR(r.lhs, 0.5, 1e-3);
  EXPECT_NEAR(r.rhs, 0.5, 1e-3);
}

TEST(IntegrationByParts, ExactOnSmallDiscreteScales) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(-1, 1), A(0.2, 1.8);
  for (int c = 0; c < 40; ++c) {
    const auto ts = testing_support::random_discrete(rng, 3 + c % 14);
    const auto g = make_grid(ts, 1);
    std::vector<double> phi(g->size()), vphi(g->size());
    for (auto& v : phi) v = U(rng);
    for (auto& v : vphi) v = U(rng);
    const auto psi = c % 2 ? PsiFunction::affine(1.5, 0.2) : PsiFunction::exponential(0.9, 0.0, -1.0);
    const auto r = integration_by_parts_check(ts, GridFunction(g, phi), GridFunction(g, vphi), psi, A(rng),
                                              ts.min(), ts.max());
    EXPECT_NEAR(r.lhs, r.rhs, 1e-12 * std::max(1.0, std::abs(r.rhs)));
  }
}

TEST(Conjugation, Examples) {
  const auto g = make_grid(unit(), 512);
  const ScalarFn one = [](double) { return 1.0; };
  const auto id = PsiFunction::identity();
  const auto sq = PsiFunction::power(2.0);
  const auto fone = GridFunction::sample(g, one);
  EXPECT_NEAR(conjugation_oracle(unit(), one, id, 0.5, 0, 1), rl_integral_left(unit(), fone, id, 0.5, 0, 1), 1e-12);
  EXPECT_NEAR(conjugation_oracle(unit(), one, sq, 0.5, 0, 1), rl_integral_left(unit(), fone, sq, 0.5, 0, 1), 1e-6);
  EXPECT_EQ(conjugation_oracle(unit(), [](double) { return 0.0; }, sq, 0.5, 0, 1), 0.0);
  EXPECT_THROW(conjugation_oracle(TimeScale::integers(0, 2), one, id, 0.5, 0, 1), DomainError);
}

TEST(Conjugation, AgreesForSmoothPsi) {
  const auto g = make_grid(unit(), 512);
  const PsiFunction psis[] = {PsiFunction::power(1.5), PsiFunction::exponential(1.0, 0.0, -1.0),
                              PsiFunction::logarithm(1.5)};
  const ScalarFn f = [](double x) { return std::cos(2.0 * x) + x; };
  const auto fg = GridFunction::sample(g, f);
  for (const auto& psi : psis)
    for (double a : {0.3, 0.8, 1.4})
      EXPECT_LE(rel_err(rl_integral_left(unit(), fg, psi, a, 0, 0.75), conjugation_oracle(unit(), f, psi, a, 0, 0.75)), 1e-4);
}
