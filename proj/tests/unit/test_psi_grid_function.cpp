#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "tsfrac/errors.hpp"
#include "tsfrac/grid_function.hpp"
#include "tsfrac/psi.hpp"

using namespace tsfrac;

TEST(Psi, NamedForms) {
  EXPECT_EQ(PsiFunction::identity()(0.7), 0.7);
  EXPECT_DOUBLE_EQ(PsiFunction::affine(2.0, 1.0)(0.5), 2.0);
  EXPECT_DOUBLE_EQ(PsiFunction::power(2.0)(3.0), 9.0);
  EXPECT_NEAR(PsiFunction::exponential(1.0, 0.0, -1.0)(1.0), std::exp(1.0) - 1.0, 1e-15);
  EXPECT_NEAR(PsiFunction::logarithm(1.0)(1.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(PsiFunction::power(1.5).derivative(4.0), 1.5 * 2.0, 1e-14);
}

TEST(Psi, FromSpecRejectsUnknowns) {
  EXPECT_THROW(PsiFunction::from_spec({"cubic", {}}), ValidationError);
  EXPECT_THROW(PsiFunction::from_spec({"power", {{"q", 2.0}}}), ValidationError);
  EXPECT_THROW(PsiFunction::from_spec({"power", {}}), ValidationError);
  EXPECT_THROW(PsiFunction::power(-1.0), ValidationError);
  EXPECT_THROW(PsiFunction::affine(0.0, 1.0), ValidationError);
}

TEST(Psi, DeltaOnScatteredPoints) {
  const auto z = TimeScale::integers(0, 4);
  EXPECT_DOUBLE_EQ(PsiFunction::power(2.0).delta(z, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(PsiFunction::power(2.0).delta(TimeScale::interval(0, 3), 2.0), 4.0);
}

TEST(Psi, Inverse) {
  const auto p = PsiFunction::exponential(0.7, 0.0, -1.0);
  EXPECT_NEAR(p.inverse(p(0.42), 0.0, 1.0), 0.42, 1e-12);
}

TEST(AnalyticFunction, Forms) {
  const auto poly = AnalyticFunction::polynomial({1.0, -2.0, 3.0});
  EXPECT_DOUBLE_EQ(poly(2.0), 9.0);
  EXPECT_DOUBLE_EQ(AnalyticFunction::cosine(2.0, 3.0, 0.0)(0.0), 2.0);
  const auto pp = AnalyticFunction::psi_power(PsiFunction::power(2.0), 0.0, 3.0);
  EXPECT_NEAR(pp(0.5), std::pow(0.25, 2.0), 1e-15);
  EXPECT_THROW(AnalyticFunction::from_spec({"polynomial", {{"c16", 1.0}}}, PsiFunction::identity(), 0.0),
               ValidationError);
}

TEST(GridFunction, AtInterpolatesInPsi) {
  const auto g = make_grid(TimeScale::interval(0, 1), 4);
  const auto psi = PsiFunction::power(2.0);
  const auto f = GridFunction::sample(g, [&](double t) { return psi(t); });
  EXPECT_NEAR(f.at(0.6, psi), 0.36, 1e-15);
  EXPECT_THROW(f.at(1.5), DomainError);
  EXPECT_THROW(GridFunction(g, {1.0, 2.0}), ValidationError);
}

TEST(GridFunction, CsvRoundTrip) {
  const auto g = make_grid(TimeScale({Point{0.0}, Interval{0.5, 1.0}}), 3);
  const auto f = GridFunction::sample(g, [](double t) { return std::exp(t) / 3.0; });
  std::stringstream ss;
  write_csv(ss, f);
  EXPECT_EQ(ss.str().substr(0, 8), "t,value\n");
  const auto back = read_csv(ss, g);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_EQ(back[i], f[i]);
}

TEST(GridFunction, CsvRejectsMisalignedRows) {
  const auto g = make_grid(TimeScale::integers(0, 2), 1);
  std::stringstream bad("t,value\n0,1\n1.5,2\n2,3\n");
  EXPECT_THROW(read_csv(bad, g), ValidationError);
  std::stringstream short_file("t,value\n0,1\n1,2\n");
  EXPECT_THROW(read_csv(short_file, g), ValidationError);
}

TEST(GridFunction, LinearCombination) {
  const auto g = make_grid(TimeScale::integers(0, 3), 1);
  const auto a = GridFunction::sample(g, [](double t) { return t; });
  const auto b = GridFunction::constant(g, 1.0);
  const auto c = linear_combination(2.0, a, -3.0, b);
  EXPECT_EQ(c[3], 3.0);
}
