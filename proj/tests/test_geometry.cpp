#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "subgeom/calculus.hpp"
#include "subgeom/contact.hpp"
#include "subgeom/warped_product.hpp"

using namespace subgeom;

namespace {

/// A 3-dimensional metric with off-diagonal, coordinate-dependent entries.
ChartManifold skew_metric() {
  MatrixField g = MatrixField::generic(3, 3, 3, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    const T a = 2.0 + x[0] * x[0];
    const T b = 0.3 * x[0] * x[1];
    const T c = 2.5 + sin(x[1]);
    const T d = 0.2 * x[2];
    const T e = 3.0 + exp(0.5 * x[2]);
    return std::vector<T>{a, b, T(0.0), b, c, d, T(0.0), d, e};
  });
  return ChartManifold(3, Box::cube(3, -1.0, 1.0), g, "skew");
}

Settings few(std::size_t n = 25, std::uint64_t seed = 7) {
  Settings s;
  s.samples = n;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(Box, ShrinkContainsAndProduct) {
  const Box b = Box::cube(2, -1.0, 1.0);
  EXPECT_TRUE(b.contains(Vec::Zero(2)));
  EXPECT_FALSE(b.contains(Vec::Constant(2, 1.5)));
  const Box s = b.shrunk(0.1);
  EXPECT_NEAR(s.lo[0], -0.8, 1e-15);
  EXPECT_NEAR(s.hi[1], 0.8, 1e-15);
  const Box p = Box::product(b, Box::cube(1, 0.0, 2.0));
  EXPECT_EQ(p.dim(), 3u);
  EXPECT_EQ(p.hi[2], 2.0);
}

TEST(ChartManifold, RejectsBadConstruction) {
  EXPECT_THROW(ChartManifold(2, Box::cube(3, -1, 1), MatrixField::constant(2, Mat::Identity(2, 2)), "x"),
               GeometryError);
  EXPECT_THROW(ChartManifold(2, Box::cube(2, 1, -1), MatrixField::constant(2, Mat::Identity(2, 2)), "x"),
               GeometryError);
}

TEST(ChartManifold, OutsideDomainIsDomainError) {
  const ChartManifold m = flat_space(2);
  try {
    m.metric_at(Vec::Constant(2, 3.0));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(ChartManifold, IllConditionedMetricIsRejected) {
  Mat g = Mat::Identity(2, 2);
  g(1, 1) = 1e-14;
  try {
    ChartManifold::guarded_inverse(g);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::conditioning);
  }
}

TEST(Christoffel, FlatSpaceVanishes) {
  const ChartManifold m = flat_space(3);
  const Christoffel g = christoffel(m, Vec::Constant(3, 0.2));
  for (const Mat& u : g.upper) EXPECT_LT(u.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Christoffel, KenmotsuChartHandValues) {
  const ChartManifold m = example_ken_structure().manifold;
  for (const Vec& p : sample_points(m, few())) {
    const Christoffel g = christoffel(m, p);
    const double e2 = std::exp(2 * p[4]);
    EXPECT_NEAR(g(4, 0, 0), -e2, 1e-12);
    EXPECT_NEAR(g(4, 3, 3), -e2, 1e-12);
    EXPECT_NEAR(g(0, 0, 4), 1.0, 1e-12);
    EXPECT_NEAR(g(2, 4, 2), 1.0, 1e-12);
    EXPECT_NEAR(g(0, 1, 1), 0.0, 1e-12);
  }
}

TEST(Christoffel, MatchesFiniteDifferenceOracle) {
  for (const ChartManifold& m : {skew_metric(), example_ken_structure().manifold}) {
    for (const Vec& p : sample_points(m, few(15))) {
      const Christoffel g = christoffel(m, p);
      const std::vector<Mat> o = oracle::christoffel(m, p);
      for (std::size_t k = 0; k < m.dim(); ++k) EXPECT_LT((g.upper[k] - o[k]).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Christoffel, SymmetricInLowerIndices) {
  const ChartManifold m = skew_metric();
  const Christoffel g = christoffel(m, Vec::Constant(3, 0.4));
  for (const Mat& u : g.upper) EXPECT_LT((u - u.transpose()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Connection, MetricCompatibility) {
  const ChartManifold m = skew_metric();
  const Settings s = few();
  VectorSampler vs(3);
  for (const Vec& p : sample_points(m, s)) {
    const Mat g = m.metric_at(p);
    const VectorField x = detail::random_field_at(vs, g, p);
    const VectorField y = detail::random_field_at(vs, g, p);
    const VectorField z = detail::random_field_at(vs, g, p);
    const ScalarField gyz(Mapping::generic(3, 1, [m, y, z](const auto& q) {
      using T = typename std::decay_t<decltype(q)>::value_type;
      const std::vector<T> gm = m.metric().eval(q);
      const std::vector<T> a = y.eval(q), b = z.eval(q);
      T acc(0.0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += gm[i * 3 + j] * a[i] * b[j];
      return std::vector<T>{acc};
    }));
    const Vec xp = x.at(p);
    const double lhs = gyz.derivative(p, xp);
    const double rhs = m.inner(p, covariant_derivative(m, xp, y, p), z.at(p)) +
                       m.inner(p, y.at(p), covariant_derivative(m, xp, z, p));
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
}

TEST(Connection, TorsionFree) {
  const ChartManifold m = skew_metric();
  VectorSampler vs(4);
  for (const Vec& p : sample_points(m, few())) {
    const Mat g = m.metric_at(p);
    const VectorField x = detail::random_field_at(vs, g, p);
    const VectorField y = detail::random_field_at(vs, g, p);
    const Vec t = covariant_derivative(m, x, y, p) - covariant_derivative(m, y, x, p) - lie_bracket(x, y, p);
    EXPECT_LT(t.norm(), 1e-12);
  }
}

TEST(LieBracket, CoordinateFieldsCommuteAndJacobiHolds) {
  const std::size_t n = 3;
  const VectorField e0 = VectorField::coordinate(n, 0), e1 = VectorField::coordinate(n, 1);
  EXPECT_LT(lie_bracket(e0, e1, Vec::Zero(3)).norm(), 1e-15);

  const VectorField x = VectorField::generic(n, [](const auto& q) {
    using T = typename std::decay_t<decltype(q)>::value_type;
    return std::vector<T>{q[1] * q[2], sin(q[0]), T(1.0) + q[0] * q[0]};
  });
  const VectorField y = VectorField::generic(n, [](const auto& q) {
    using T = typename std::decay_t<decltype(q)>::value_type;
    return std::vector<T>{exp(q[2]), q[0] * q[1], q[1]};
  });
  const VectorField z = VectorField::generic(n, [](const auto& q) {
    using T = typename std::decay_t<decltype(q)>::value_type;
    return std::vector<T>{q[0], q[2] * q[2], cos(q[1])};
  });
  const Vec p = Vec::Constant(3, 0.3);
  const Vec jac = lie_bracket(x, bracket_field(y, z), p) + lie_bracket(y, bracket_field(z, x), p) +
                  lie_bracket(z, bracket_field(x, y), p);
  EXPECT_LT(jac.norm(), 1e-6);
  // antisymmetry
  EXPECT_LT((lie_bracket(x, y, p) + lie_bracket(y, x, p)).norm(), 1e-14);
}

TEST(Divergence, ReebFieldOfKenmotsuChart) {
  const AlmostContactStructure st = example_ken_structure();
  for (const Vec& p : sample_points(st.manifold, few()))
    EXPECT_NEAR(divergence(st.manifold, st.xi, p), 4.0, 1e-12);
}

TEST(Gradient, DualToDifferential) {
  const ChartManifold m = skew_metric();
  const ScalarField f = ScalarField::generic(3, [](const auto& x) { return x[0] * x[1] + exp(x[2]); });
  VectorSampler vs(5);
  for (const Vec& p : sample_points(m, few())) {
    const Vec v = vs.gaussian(3);
    EXPECT_NEAR(m.inner(p, gradient(m, f, p), v), f.derivative(p, v), 1e-12);
  }
}

TEST(GramSchmidt, OrthonormalInMetric) {
  const ChartManifold m = skew_metric();
  const Vec p = Vec::Constant(3, -0.3);
  VectorSampler vs(6);
  Frame f{p, {vs.gaussian(3), vs.gaussian(3), vs.gaussian(3)}, false};
  const Frame o = gram_schmidt(f, m);
  const Mat e = o.matrix(3);
  EXPECT_LT((e.transpose() * m.metric_at(p) * e - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(GramSchmidt, DependentInputIsDegeneracyError) {
  const Vec a = Vec::Unit(3, 0);
  Frame f{Vec::Zero(3), {a, 2.0 * a}, false};
  try {
    gram_schmidt(f, Mat::Identity(3, 3));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degeneracy);
  }
  EXPECT_EQ(orthonormal_basis({a, 2.0 * a, Vec::Unit(3, 1)}, Mat::Identity(3, 3)).size(), 2u);
}

TEST(Sampling, DeterministicPerSeed) {
  const ChartManifold m = skew_metric();
  const auto a = sample_points(m, few(10, 42));
  const auto b = sample_points(m, few(10, 42));
  const auto c = sample_points(m, few(10, 43));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(a[0], c[0]);
  for (const Vec& p : a) EXPECT_TRUE(m.sample_box(few()).contains(p));
}

TEST(CheckMetric, AcceptsValidAndFlagsIndefinite) {
  const ChartManifold m = skew_metric();
  EXPECT_TRUE(check_metric(m, sample_points(m, few())).passed());
  Mat bad = Mat::Identity(2, 2);
  bad(1, 1) = -1.0;
  const ChartManifold ind(2, Box::cube(2, -1, 1), MatrixField::constant(2, bad), "indefinite");
  EXPECT_FALSE(check_metric(ind, {Vec::Zero(2)}).passed());
}

TEST(WarpedProduct, BlockDiagonalMetricAndPositivity) {
  const ScalarField f = ScalarField::generic(1, [](const auto& t) { return exp(t[0]); });
  const WarpedProduct w = make_warped(interval(), flat_space(4), f);
  const Vec p = (Vec(5) << 0.3, 0.1, -0.2, 0.4, 0.0).finished();
  Mat expected = Mat::Identity(5, 5);
  expected.bottomRightCorner(4, 4) *= std::exp(0.6);
  EXPECT_LT((w.product.metric_at(p) - expected).cwiseAbs().maxCoeff(), 1e-14);
  const Vec a = w.lift_base(VectorField::constant(Vec::Ones(1))).at(p);
  const Vec b = w.lift_fiber(VectorField::constant(Vec::Ones(4))).at(p);
  EXPECT_EQ(w.product.inner(p, a, b), 0.0);

  const ScalarField two = ScalarField::constant(1, 2.0);
  const WarpedProduct w2 = make_warped(interval(), flat_space(2), two);
  EXPECT_DOUBLE_EQ(w2.product.metric_at(Vec::Zero(3))(2, 2), 4.0);

  const ScalarField neg = ScalarField::generic(1, [](const auto& t) { return t[0]; });
  try {
    make_warped(interval(), flat_space(2), neg);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::construction);
  }
}
