#include <gtest/gtest.h>

#include <cmath>

#include "subgeom/dual.hpp"

using subgeom::Dual;

namespace {

Dual var(double x) { return {x, 1.0}; }

}  // namespace

TEST(Dual, ProductAndQuotientRules) {
  const Dual x = var(1.7);
  const Dual p = x * x * x;
  EXPECT_DOUBLE_EQ(p.val, 1.7 * 1.7 * 1.7);
  EXPECT_NEAR(p.der, 3 * 1.7 * 1.7, 1e-14);
  const Dual q = Dual(2.0) / x;
  EXPECT_NEAR(q.der, -2.0 / (1.7 * 1.7), 1e-14);
}

TEST(Dual, ElementaryFunctions) {
  const double x0 = 0.37;
  const Dual x = var(x0);
  EXPECT_NEAR(exp(x).der, std::exp(x0), 1e-14);
  EXPECT_NEAR(log(x).der, 1.0 / x0, 1e-14);
  EXPECT_NEAR(sin(x).der, std::cos(x0), 1e-14);
  EXPECT_NEAR(cos(x).der, -std::sin(x0), 1e-14);
  EXPECT_NEAR(sqrt(x).der, 0.5 / std::sqrt(x0), 1e-14);
}

TEST(Dual, ChainRuleAgainstCentralDifference) {
  auto f = [](auto x) { return exp(sin(x) * x) / (x * x + 1.0); };
  const double x0 = 0.8, h = 1e-6;
  const double fd = (f(x0 + h) - f(x0 - h)) / (2 * h);
  EXPECT_NEAR(f(var(x0)).der, fd, 1e-8);
}

TEST(Dual, PowerWithConstantExponentAcceptsNegativeBase) {
  const Dual y = pow(var(-2.0), 3.0);
  EXPECT_DOUBLE_EQ(y.val, -8.0);
  EXPECT_DOUBLE_EQ(y.der, 12.0);
  const Dual z = pow(var(-2.0), Dual(2.0));
  EXPECT_DOUBLE_EQ(z.der, -4.0);
}

TEST(Dual, VariableExponent) {
  const Dual b = var(1.5);
  const Dual y = pow(Dual(2.0), b);
  EXPECT_NEAR(y.der, std::pow(2.0, 1.5) * std::log(2.0), 1e-13);
}

TEST(Dual, ComparisonsUseValueOnly) {
  EXPECT_TRUE(Dual(1.0, 5.0) < Dual(2.0, -5.0));
  EXPECT_EQ(subgeom::value_of(Dual(3.0, 1.0)), 3.0);
}
