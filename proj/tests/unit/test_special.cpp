#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tsfrac/errors.hpp"
#include "tsfrac/special.hpp"

using namespace tsfrac;

TEST(Special, GammaValues) {
  EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
  EXPECT_NEAR(gamma_fn(0.5), 1.7724538509055160273, 1e-15);
  EXPECT_DOUBLE_EQ(gamma_fn(5.0), 24.0);
  EXPECT_NEAR(gamma_fn(-0.5), -2.0 * std::sqrt(std::numbers::pi), 1e-14);
}

TEST(Special, GammaPoles) {
  for (double x : {0.0, -1.0, -2.0, -7.0}) EXPECT_THROW(gamma_fn(x), PoleError) << x;
}

TEST(Special, BetaClassical) {
  EXPECT_NEAR(beta_classical(0.5, 0.5), std::numbers::pi, 1e-13);
  EXPECT_NEAR(beta_classical(2.0, 3.0), 1.0 / 12.0, 1e-15);
  EXPECT_THROW(beta_classical(0.0, 1.0), ParameterError);
  EXPECT_THROW(beta_classical(1.0, -0.5), ParameterError);
}

TEST(Special, BinomialOfNegativeOrder) {
  // binom(-a, k) = (-a)(-a-1)...(-a-k+1) / k!
  for (double a : {0.3, 0.5, 1.7}) {
    double direct = 1.0;
    for (std::size_t k = 0; k < 12; ++k) {
      EXPECT_NEAR(binom_neg(a, k), direct, 1e-12 * std::max(1.0, std::abs(direct))) << a << " " << k;
      direct *= (-a - static_cast<double>(k)) / static_cast<double>(k + 1);
    }
  }
  EXPECT_EQ(binom_neg(0.0, 0), 1.0);
  EXPECT_EQ(binom_neg(0.0, 3), 0.0);
}
