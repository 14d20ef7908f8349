#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "subgeom/builtins.hpp"
#include "subgeom/submersion.hpp"

using namespace subgeom;

namespace {

Settings few(std::size_t n = 30) {
  Settings s;
  s.samples = n;
  return s;
}

const double r2 = std::sqrt(2.0);

/// e^{-z}-scaled φ-basis vector of the Kenmotsu chart: E1..E4 = ∂y1, ∂y2, ∂x1, ∂x2.
Vec basis(const Vec& p, int k) {
  static const int coord[] = {2, 3, 0, 1};
  return std::exp(-p[4]) * Vec::Unit(5, coord[k - 1]);
}

}  // namespace

TEST(Differential, MatchesOracleJacobian) {
  const SmoothMap f = builtins::mixed_xi_map();
  VectorSampler vs(1);
  for (const Vec& p : sample_points(f.source, few(10))) {
    const Mat j = f.jacobian(p);
    EXPECT_LT((j - oracle::jacobian(f, p)).cwiseAbs().maxCoeff(), 1e-9);
    const Vec v = vs.gaussian(5);
    EXPECT_LT((differential(f, p, v) - j * v).norm(), 1e-12);
  }
}

TEST(Split, ProjectorsAreComplementaryAndSelfAdjoint) {
  const SmoothMap f = builtins::example2_map();
  for (const Vec& p : sample_points(f.source, few(10))) {
    const SubmersionSplit sp = split(f, p);
    const Mat pv = sp.vertical_projector(), ph = sp.horizontal_projector();
    EXPECT_LT((pv * pv - pv).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((pv + ph - Mat::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-15);
    const Mat gpv = sp.metric * pv;
    EXPECT_LT((gpv - gpv.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((sp.jacobian * pv).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(sp.rank(), 3u);
    EXPECT_EQ(sp.fiber_dim(), 2u);
  }
}

TEST(Split, RankChangeIsInstability) {
  const SmoothMap f = builtins::example2_map();
  try {
    split(f, Vec::Zero(5), {}, 2);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::instability);
  }
}

TEST(Example2, VerticalAndHorizontalSpans) {
  const SmoothMap f = builtins::example2_map();
  const AlmostContactStructure st = example_ken_structure();
  for (const Vec& p : sample_points(f.source, few(10))) {
    const SubmersionSplit sp = split(f, p);
    const Vec v1 = (basis(p, 2) - basis(p, 3)) / r2;
    const Vec v2 = (basis(p, 1) - basis(p, 4)) / r2;
    const Vec h1 = (basis(p, 1) + basis(p, 4)) / r2;
    EXPECT_LT(sp.norm(sp.horizontal_part(v1)), 1e-12);
    EXPECT_LT(sp.norm(sp.horizontal_part(v2)), 1e-12);
    EXPECT_LT(sp.norm(sp.vertical_part(h1)), 1e-12);
    EXPECT_NEAR(sp.norm(v1), 1.0, 1e-12);
    const Mat phi = st.phi_at(p);
    EXPECT_LT(sp.norm(phi * v1 + h1), 1e-12);
    EXPECT_LT(sp.norm(phi * h1 - v1), 1e-12);
  }
}

TEST(Example2, RiemannianAntiInvariantWithMuSpanXi) {
  const SmoothMap f = builtins::example2_map();
  const AlmostContactStructure st = example_ken_structure();
  const auto pts = sample_points(f.source, Settings{});
  const CheckRecord riem = is_riemannian_submersion(f, pts);
  EXPECT_LT(riem.max_residual, 1e-6);
  EXPECT_LT(is_anti_invariant(f, st, pts).max_residual, 1e-7);
  EXPECT_EQ(xi_position(f, st, pts), XiPosition::horizontal);
  EXPECT_TRUE(mu_is_span_xi(f, st, pts));
  const CheckRecord dim = check_dim_theorem(f, st, pts);
  EXPECT_TRUE(dim.applicable);
  EXPECT_EQ(dim.max_residual, 0.0);
  EXPECT_EQ(dim.metrics.at("fiber_dim"), 2.0);
  EXPECT_EQ(dim.metrics.at("n"), 3.0);
}

TEST(PhiDecompose, ExampleTwoHasNoCComponent) {
  const SmoothMap f = builtins::example2_map();
  const AlmostContactStructure st = example_ken_structure();
  VectorSampler vs(2);
  for (const Vec& p : sample_points(f.source, few(10))) {
    const SubmersionSplit sp = split(f, p);
    Vec x = Vec::Zero(5);
    for (const Vec& h : sp.horizontal.vectors) x += vs.gaussian(1)[0] * h;
    const PhiDecomposition d = phi_decompose(f, st, {p, x});
    EXPECT_LT((d.b + d.c - st.phi_at(p) * x).norm(), 1e-13);
    EXPECT_LT(sp.norm(d.c), 1e-10);
    EXPECT_LT(sp.norm(sp.horizontal_part(d.b)), 1e-10);
  }
  const Vec p = Vec::Zero(5);
  const Vec v = split(f, p).vertical.vectors[0];
  EXPECT_THROW(phi_decompose(f, st, {p, v}), GeometryError);
}

TEST(Example3, ConformalWithDilationZ) {
  const SmoothMap f = builtins::example3_map();
  const AlmostContactStructure st = example_ken_structure();
  const auto pts = sample_points(f.source, Settings{});
  for (const Vec& p : pts) EXPECT_NEAR(conformal_dilation(f, p), p[4], 1e-6);
  EXPECT_FALSE(is_riemannian_submersion(f, pts).passed());
  EXPECT_TRUE(is_horizontally_conformal(f, pts).passed());
  EXPECT_TRUE(is_anti_invariant(f, st, pts).passed());
  EXPECT_EQ(xi_position(f, st, pts), XiPosition::vertical);
  EXPECT_EQ(mu_space(f, st, pts.front()).size(), 0u);
  EXPECT_FALSE(check_dim_theorem(f, st, pts).applicable);
}

TEST(ConformalDilation, IndependentOfHorizontalVector) {
  const SmoothMap f = builtins::example3_map();
  VectorSampler vs(3);
  for (const Vec& p : sample_points(f.source, few(10))) {
    const SubmersionSplit sp = split(f, p);
    const Vec x = sp.horizontal_part(vs.gaussian(5));
    const Mat gn = f.target.metric_at(f(p));
    const Vec fx = sp.jacobian * x;
    const double ratio = sp.inner(x, x) / fx.dot(gn * fx);
    EXPECT_NEAR(0.5 * std::log(ratio), conformal_dilation(f, p), 1e-10);
  }
}

TEST(ConformalDilation, ErrorsForRankAndAnisotropy) {
  const ChartManifold r2m = flat_space(2);
  const SmoothMap aniso = SmoothMap::generic(r2m, flat_space(2, Box::cube(2, -3, 3), "R^2"),
                                             [](const auto& x) {
                                               using T = typename std::decay_t<decltype(x)>::value_type;
                                               return std::vector<T>{x[0], T(2.0) * x[1]};
                                             },
                                             "aniso");
  try {
    conformal_dilation(aniso, Vec::Zero(2));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::anisotropy);
  }
  const SmoothMap fold = SmoothMap::generic(r2m, flat_space(2, Box::cube(2, -3, 3), "R^2"),
                                            [](const auto& x) { return std::vector{x[0], x[0]}; }, "fold");
  EXPECT_EQ(jacobian_rank(fold, Vec::Zero(2), 1e-8), 1u);
  try {
    conformal_dilation(fold, Vec::Zero(2));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::rank);
  }
  EXPECT_FALSE(is_riemannian_submersion(fold, {Vec::Zero(2)}).passed());
}

TEST(XiPosition, MixedCounterexample) {
  const SmoothMap f = builtins::mixed_xi_map();
  const AlmostContactStructure st = example_ken_structure();
  EXPECT_EQ(xi_position(f, st, sample_points(f.source, few())), XiPosition::mixed);
  EXPECT_STREQ(to_string(XiPosition::mixed), "mixed");
}

TEST(AntiInvariance, InvariantKernelFails) {
  const SmoothMap f = builtins::non_anti_invariant_map();
  const AlmostContactStructure st = example_ken_structure();
  const CheckRecord r = is_anti_invariant(f, st, sample_points(f.source, few()));
  EXPECT_FALSE(r.passed());
  EXPECT_NEAR(r.max_residual, 1.0, 1e-10);
}

TEST(SevenDimensional, NontrivialMu) {
  const Settings s = few();
  const SmoothMap f = builtins::seven_dim_map(s);
  const KenmotsuManifold k = builtins::kenmotsu_over_flat(3, s);
  const AlmostContactStructure& st = k.structure();
  const auto pts = sample_points(f.source, s);
  EXPECT_TRUE(is_riemannian_submersion(f, pts).passed());
  EXPECT_TRUE(is_anti_invariant(f, st, pts).passed());
  EXPECT_EQ(xi_position(f, st, pts), XiPosition::horizontal);
  EXPECT_EQ(mu_space(f, st, pts.front()).size(), 3u);
  EXPECT_FALSE(mu_is_span_xi(f, st, pts));
  EXPECT_FALSE(check_dim_theorem(f, st, pts).applicable);
  // φ∂x3 = ∂y3 lies in μ, so C does not vanish.
  const Vec p = pts.front();
  const Vec x3 = std::exp(-p[0]) * Vec::Unit(7, 3);
  const PhiDecomposition d = phi_decompose(f, st, {p, x3});
  EXPECT_NEAR(f.source.norm(p, d.c), 1.0, 1e-10);
}
