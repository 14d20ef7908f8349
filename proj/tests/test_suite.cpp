#include <gtest/gtest.h>

#include <cmath>

#include "subgeom/builtins.hpp"
#include "subgeom/run.hpp"
#include "subgeom/suite.hpp"

using namespace subgeom;

namespace {

Settings few(std::size_t n = 12) {
  Settings s;
  s.samples = n;
  return s;
}

ONeillContext ctx_for(const SmoothMap& f, std::optional<AlmostContactStructure> st, const Settings& s) {
  return ONeillContext::make(f, std::move(st), sample_points(f.source, s), s);
}

void expect_all_pass(const std::vector<CheckRecord>& rs) {
  for (const CheckRecord& r : rs) {
    EXPECT_TRUE(r.applicable) << r.name << ": " << r.note;
    EXPECT_TRUE(r.passed()) << r.name << " " << r.max_residual;
  }
}

}  // namespace

TEST(KenmotsuSuite, Example2ProceduresHold) {
  const Settings s = few();
  const ONeillContext ctx = ctx_for(builtins::example2_map(), example_ken_structure(), s);
  const auto pts = sample_points(ctx.source(), s);
  expect_all_pass(run_lemma_horAT(ctx, pts));

  const CheckRecord integ = run_integrability_equivalence(ctx, pts);
  expect_all_pass({integ});
  EXPECT_EQ(integ.metrics.at("integrable"), 1.0);
  EXPECT_LT(integ.metrics.at("nabla_F_form_residual"), 1e-5);
  EXPECT_LT(integ.metrics.at("corollary_A_X_phiY_minus_A_Y_phiX"), 1e-5);

  const CheckRecord geo = run_totally_geodesic_horizontal(ctx, pts);
  expect_all_pass({geo});
  EXPECT_EQ(geo.metrics.at("totally_geodesic"), 1.0);
  EXPECT_EQ(geo.metrics.at("verdicts_agree"), 1.0);
  EXPECT_LT(geo.metrics.at("corollary_A_X_phiY"), 1e-5);

  const CheckRecord fib = run_fibers_not_geodesic(ctx, pts);
  expect_all_pass({fib});
  EXPECT_NEAR(fib.metrics.at("min_norm_T_V_xi"), 1.0, 1e-6);
  // (∇F_*)(V,V) = −F_*(T_V V) = F_*ξ, which has unit length in N.
  EXPECT_NEAR(fib.metrics.at("min_norm_nablaF_VV"), 1.0, 1e-5);

  const CheckRecord mc = run_mean_curvature_remark(ctx, pts);
  expect_all_pass({mc});
  EXPECT_NEAR(mc.metrics.at("g_H_xi_min"), -1.0, 1e-6);
  EXPECT_NEAR(mc.metrics.at("g_H_xi_max"), -1.0, 1e-6);

  expect_all_pass({verify_basic_fields(ctx, pts)});
  EXPECT_FALSE(run_nonexistence_wpk(ctx, pts).applicable);
}

TEST(KenmotsuSuite, Example3IsConformalWithVerticalXi) {
  const Settings s = few();
  const ONeillContext ctx = ctx_for(builtins::example3_map(), example_ken_structure(), s);
  const auto pts = sample_points(ctx.source(), s);
  for (const CheckRecord& r : run_lemma_horAT(ctx, pts)) {
    EXPECT_FALSE(r.applicable) << r.name;
    EXPECT_EQ(r.note, "map is not a Riemannian submersion");
  }
  EXPECT_FALSE(run_integrability_equivalence(ctx, pts).applicable);
  EXPECT_FALSE(run_mean_curvature_remark(ctx, pts).applicable);

  const CheckRecord no = run_nonexistence_wpk(ctx, pts);
  EXPECT_TRUE(no.applicable);
  EXPECT_TRUE(no.passed());
  EXPECT_EQ(no.metrics.at("conformal"), 1.0);
  EXPECT_LT(no.metrics.at("A_X_xi_minus_X"), 1e-6);
  EXPECT_NE(no.note.find("confirmed"), std::string::npos);
}

TEST(KenmotsuSuite, SevenDimensionalMapWithNonzeroC) {
  const Settings s = few(8);
  const KenmotsuManifold k = builtins::kenmotsu_over_flat(3, s);
  const ONeillContext ctx = ctx_for(builtins::seven_dim_map(s), k.structure(), s);
  const auto pts = sample_points(ctx.source(), s);
  expect_all_pass(run_lemma_horAT(ctx, pts));
  const CheckRecord integ = run_integrability_equivalence(ctx, pts);
  expect_all_pass({integ});
  EXPECT_EQ(integ.metrics.count("corollary_A_X_phiY_minus_A_Y_phiX"), 0u);
  const CheckRecord geo = run_totally_geodesic_horizontal(ctx, pts);
  expect_all_pass({geo});
  EXPECT_EQ(geo.metrics.at("verdicts_agree"), 1.0);
  expect_all_pass({run_fibers_not_geodesic(ctx, pts), run_mean_curvature_remark(ctx, pts)});
}

TEST(KenmotsuSuite, NeedsAStructure) {
  const Settings s = few(4);
  const ONeillContext ctx = ctx_for(builtins::example2_map(), std::nullopt, s);
  const auto pts = sample_points(ctx.source(), s);
  for (const CheckRecord& r : run_lemma_horAT(ctx, pts)) EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(run_totally_geodesic_horizontal(ctx, pts).applicable);
  EXPECT_FALSE(run_nonexistence_wpk(ctx, pts).applicable);
}

TEST(RunAll, Example1HasOnlyStructureChecks) {
  RunOptions opt;
  opt.settings = few(20);
  const VerificationReport rep = run_all(example1_problem(), opt);
  EXPECT_EQ(rep.records.size(), 3u);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.map, "none");
}

TEST(RunAll, Example2PassesAndIsDeterministic) {
  RunOptions opt;
  opt.settings = few(10);
  const VerificationReport a = run_all(example2_problem(), opt);
  const VerificationReport b = run_all(example2_problem(), opt);
  EXPECT_TRUE(a.passed());
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].name, b.records[i].name);
    EXPECT_EQ(a.records[i].max_residual, b.records[i].max_residual) << a.records[i].name;
    if (a.records[i].counts()) EXPECT_TRUE(a.records[i].passed()) << a.records[i].name;
  }
  for (const char* name : {"kenmotsu_condition", "dimension_theorem", "lemma1_A_alternating", "integrability_pivot",
                           "mean_curvature_xi", "basic_fields"})
    ASSERT_NE(a.find(name), nullptr) << name;
  EXPECT_TRUE(a.find("dimension_theorem")->applicable);

  opt.settings.seed = 7;
  const VerificationReport c = run_all(example2_problem(), opt);
  EXPECT_NE(c.find("kenmotsu_condition")->max_residual, a.find("kenmotsu_condition")->max_residual);
}

TEST(RunAll, Example3PassesOnlyWithoutRequiringRiemannian) {
  RunOptions opt;
  opt.settings = few(10);
  const VerificationReport rep = run_all(example3_problem(), opt);
  EXPECT_TRUE(rep.passed());
  EXPECT_FALSE(rep.find("lemma1_A_alternating")->applicable);
  EXPECT_TRUE(rep.find("no_riemannian_submersion_xi_vertical")->passed());
  EXPECT_EQ(rep.find("xi_position")->note, "vertical");
  opt.require_riemannian = true;
  EXPECT_FALSE(run_all(example3_problem(), opt).passed());
}

TEST(RunAll, WarpedProblems) {
  RunOptions opt;
  opt.settings = few(8);
  const VerificationReport e = run_all(warped_problem(builtins::exp_warp(), "exp(t)", opt.settings), opt);
  EXPECT_TRUE(e.passed());
  EXPECT_TRUE(e.find("kenmotsu_condition")->passed());
  EXPECT_TRUE(e.find("composition_dilation")->passed());
  EXPECT_TRUE(e.find("warped_obstruction")->passed());
  EXPECT_TRUE(e.find("no_riemannian_submersion_xi_vertical")->applicable);

  // 2 + sin t does not give a Kenmotsu structure, so the suite does not apply.
  const VerificationReport w = run_all(warped_problem(builtins::sin_warp(), "2+sin(t)", opt.settings), opt);
  EXPECT_FALSE(w.find("kenmotsu_condition")->passed());
  EXPECT_FALSE(w.find("no_riemannian_submersion_xi_vertical")->applicable);
  EXPECT_FALSE(w.find("div_xi")->applicable);
  EXPECT_TRUE(w.find("composition_dilation")->passed());
  EXPECT_FALSE(w.passed());
}
