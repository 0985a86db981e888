#include <gtest/gtest.h>

#include <cmath>

#include "tsfrac/control.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/oracles.hpp"
#include "tsfrac/special.hpp"

using namespace tsfrac;

namespace {

ControlProblem controlled(TimeScale ts, double alpha, double beta, const NamedRhs& rhs, double b, double y1,
                          std::optional<double> M_W = std::nullopt) {
  auto base = IVProblem::make(std::move(ts), PsiFunction::identity(), FracParams::make(alpha, beta), rhs);
  return ControlProblem{std::move(base), b, y1, M_W};
}

TimeScale unit() { return TimeScale::interval(0, 1); }
TimeScale five() { return TimeScale::points({0.0, 0.25, 0.5, 0.75, 1.0}); }

}  // namespace

TEST(WFunctional, Examples) {
  const auto cp = controlled(unit(), 1.0, 0, NamedRhs::constant(0), 1.0, 1.0);
  const auto g = problem_grid(cp.base, 64);
  EXPECT_NEAR(w_functional(cp, GridFunction::constant(g, 1.0)), 1.0, 1e-14);
  EXPECT_EQ(w_functional(cp, GridFunction::constant(g, 0.0)), 0.0);

  const auto dp = controlled(five(), 0.5, 0, NamedRhs::constant(0), 1.0, 1.0);
  const auto dg = problem_grid(dp.base, 1);
  const double want = oracle::brute_frac_integral(five(), [](double) { return 1.0; }, PsiFunction::identity(), 0.5, 0, 1);
  EXPECT_NEAR(w_functional(dp, GridFunction::constant(dg, 1.0)), want, 1e-14);
}

TEST(Synthesis, MinimumNormConstantOnReals) {
  const auto cp = controlled(unit(), 1.0, 0, NamedRhs::constant(0), 1.0, 1.0);
  const auto law = synthesize_control(cp, SolverConfig{});
  EXPECT_TRUE(law.converged);
  EXPECT_LE(law.terminal_error, 1e-6);
  for (double u : law.u.values()) EXPECT_NEAR(u, 1.0, 1e-9);
}

TEST(Synthesis, ZeroTargetZeroDrift) {
  const auto cp = controlled(unit(), 0.6, 0.4, NamedRhs::constant(0), 2.0, 0.0);
  const auto law = synthesize_control(cp, SolverConfig{});
  for (double u : law.u.values()) EXPECT_EQ(u, 0.0);
}

TEST(Synthesis, DiscreteFivePointScale) {
  for (double beta : {0.0, 0.5, 1.0}) {
    const auto cp = controlled(five(), 0.5, beta, NamedRhs::constant(1), 1.0, 0.3);
    const auto law = synthesize_control(cp, SolverConfig{});
    EXPECT_TRUE(law.converged);
    EXPECT_LE(law.terminal_error, 1e-8) << beta;
  }
}

TEST(Synthesis, NonlinearDrift) {
  const auto cp = controlled(unit(), 0.7, 0.5, NamedRhs::scaled_cosine(0.4), 1.5, -0.4);
  const auto law = synthesize_control(cp, SolverConfig{});
  EXPECT_TRUE(law.converged);
  EXPECT_LE(law.terminal_error, 1e-6);
}

TEST(Synthesis, ZeroGainThrows) {
  EXPECT_THROW(synthesize_control(controlled(unit(), 0.5, 0, NamedRhs::constant(1), 0.0, 1.0), SolverConfig{}),
               NonInvertibleError);
}

TEST(Bounds, ControlBound) {
  auto cp = controlled(unit(), 0.5, 0, NamedRhs::constant(1), 1.0, 1.0, 1.0);
  const auto law = synthesize_control(cp, SolverConfig{});
  EXPECT_NEAR(control_bound(cp, law), 1.0 + 1.0 / gamma_fn(1.5), 1e-12);
  auto zero = controlled(unit(), 0.5, 0, NamedRhs::constant(0), 1.0, 0.0, 1.0);
  EXPECT_EQ(control_bound(zero, synthesize_control(zero, SolverConfig{})), 0.0);
}

TEST(Bounds, Controllability) {
  const auto half = controllability_condition(controlled(unit(), 0.5, 1, NamedRhs::constant(0.5), 1, 1));
  EXPECT_NEAR(half.value, 0.5 / gamma_fn(1.5), 1e-15);
  EXPECT_TRUE(half.satisfied);
  const auto zero = controllability_condition(controlled(unit(), 0.5, 1, NamedRhs::constant(0), 1, 1));
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_TRUE(zero.satisfied);
  const auto one = controllability_condition(controlled(unit(), 0.5, 1, NamedRhs::constant(1), 1, 1));
  EXPECT_NEAR(one.value, 1.0 / gamma_fn(1.5), 1e-15);
  EXPECT_FALSE(one.satisfied);
  EXPECT_THROW(controllability_condition(controlled(unit(), 0.5, 1, NamedRhs::linear(1, 0), 1, 1)), ParameterError);
}

TEST(InverseNorms, RankOneFormulas) {
  const auto cp = controlled(unit(), 1.0, 0, NamedRhs::constant(0), 1.0, 1.0);
  const auto g = problem_grid(cp.base, 128);
  EXPECT_NEAR(inverse_norm_sup(cp, *g), 1.0, 1e-12);
  EXPECT_NEAR(inverse_norm_l2(cp, *g), 1.0, 1e-12);
}
