#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subgeom/check.hpp"
#include "subgeom/contact.hpp"
#include "subgeom/oneill.hpp"
#include "subgeom/submersion.hpp"
#include "subgeom/warped.hpp"

namespace subgeom {

namespace detail {

/// Reason the ξ-horizontal results do not apply, or nullopt.
inline std::optional<std::string> xi_gate(const ONeillContext& ctx, const std::vector<Vec>& points,
                                          XiPosition wanted) {
  if (!ctx.structure()) return "no almost contact structure on the source";
  if (ctx.conformal()) return "map is not a Riemannian submersion";
  if (!is_anti_invariant(ctx.map(), *ctx.structure(), points, ctx.settings()).passed())
    return "map is not anti-invariant";
  const XiPosition x = xi_position(ctx.map(), *ctx.structure(), points, ctx.settings());
  if (x != wanted) return std::string("xi is ") + to_string(x) + ", not " + to_string(wanted);
  return std::nullopt;
}

/// Random unit horizontal X, Y and vertical V at one point.
struct Probe {
  Vec x, y, v;
};

inline Probe probe(VectorSampler& vs, const SubmersionSplit& sp, std::size_t n) {
  return {random_in(vs, sp.horizontal.vectors, n), random_in(vs, sp.horizontal.vectors, n),
          random_in(vs, sp.vertical.vectors, n)};
}

}  // namespace detail

/// A_Xξ = 0, T_Uξ = U and g(∇_Y CX, φU) = −g(CX, φA_Y U) for horizontal X, Y and vertical U.
inline std::vector<CheckRecord> run_lemma_horAT(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord r1("A_X_xi_zero", "Eq.(IKE1)", s.first_order);
  CheckRecord r2("T_U_xi_equals_U", "Eq.(IKE2)", s.first_order);
  CheckRecord r4("nabla_CX_phiU", "Eq.(IKE4)", s.first_order);
  if (auto why = detail::xi_gate(ctx, points, XiPosition::horizontal)) {
    for (CheckRecord* r : {&r1, &r2, &r4}) r->inapplicable(*why);
    return {r1, r2, r4};
  }
  const AlmostContactStructure& st = *ctx.structure();
  const std::size_t n = ctx.dim();
  VectorSampler vs(s.seed + 41);
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const Mat phi = st.phi_at(p);
    const Christoffel gamma = christoffel(ctx.source(), p, s);
    const detail::Probe pr = detail::probe(vs, sp, n);
    const VectorField x = ctx.horizontal_through(pr.x);
    const VectorField y = ctx.horizontal_through(pr.y);
    const VectorField u = ctx.vertical_through(pr.v);

    r1.absorb(sp.norm(tensor_A(ctx, x, st.xi, p)));
    r2.absorb(sp.norm(tensor_T(ctx, u, st.xi, p) - pr.v));

    const VectorField cx = ctx.horizontal(apply(st.phi, x));
    const Vec lhs_vec = covariant_derivative(gamma, pr.y, cx, p, s);
    const double lhs = sp.inner(lhs_vec, phi * pr.v);
    const double rhs = -sp.inner(cx.at(p), phi * tensor_A(ctx, y, u, p));
    r4.absorb(lhs - rhs);
    for (CheckRecord* r : {&r1, &r2, &r4}) ++r->points_sampled;
  }
  return {r1, r2, r4};
}

/// Pivot identity of the integrability equivalence:
/// g([X,Y],V) = g(A_X BY − A_Y BX, φV) + g(CX, φA_Y V) − g(CY, φA_X V).
/// The (∇F_*) form of the same identity is reported as an informational metric.
inline CheckRecord run_integrability_equivalence(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("integrability_pivot", "Theorem 2", s.first_order);
  if (auto why = detail::xi_gate(ctx, points, XiPosition::horizontal)) return rec.inapplicable(*why);
  const AlmostContactStructure& st = *ctx.structure();
  const std::size_t n = ctx.dim();
  VectorSampler vs(s.seed + 42);
  double bracket_max = 0.0, corollary_max = 0.0, nabla_form = 0.0, lhs_max = 0.0;
  const bool c_vanishes = mu_is_span_xi(ctx.map(), st, points, s);
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const Mat phi = st.phi_at(p);
    const detail::Probe pr = detail::probe(vs, sp, n);
    const VectorField x = ctx.horizontal_through(pr.x);
    const VectorField y = ctx.horizontal_through(pr.y);
    const VectorField v = ctx.vertical_through(pr.v);
    const VectorField bx = ctx.vertical(apply(st.phi, x));
    const VectorField by = ctx.vertical(apply(st.phi, y));
    const Vec cx = sp.horizontal_part(phi * pr.x);
    const Vec cy = sp.horizontal_part(phi * pr.y);
    const Vec phi_v = phi * pr.v;
    const Vec ayv = tensor_A(ctx, y, v, p);
    const Vec axv = tensor_A(ctx, x, v, p);

    const Vec bracket = lie_bracket(x, y, p, s);
    const double lhs = sp.inner(bracket, pr.v);
    const double rhs = sp.inner(tensor_A(ctx, x, by, p) - tensor_A(ctx, y, bx, p), phi_v) +
                       sp.inner(cx, phi * ayv) - sp.inner(cy, phi * axv);
    rec.absorb(lhs - rhs);
    lhs_max = std::max(lhs_max, std::abs(lhs));
    bracket_max = std::max(bracket_max, sp.norm(sp.vertical_part(bracket)));

    const Mat gn = ctx.target().metric_at(ctx.map()(p));
    const Vec fphi_v = sp.jacobian * phi_v;
    const Vec sff = -second_fundamental_form(ctx, x, by, p).value + second_fundamental_form(ctx, y, bx, p).value;
    const double rhs2 = sff.dot(gn * fphi_v) + sp.inner(cx, phi * ayv) - sp.inner(cy, phi * axv);
    nabla_form = std::max(nabla_form, std::abs(lhs - rhs2));

    if (c_vanishes) {
      const VectorField phix = apply(st.phi, x), phiy = apply(st.phi, y);
      corollary_max = std::max(corollary_max, sp.norm(tensor_A(ctx, x, phiy, p) - tensor_A(ctx, y, phix, p)));
    }
    ++rec.points_sampled;
  }
  rec.metrics = {{"max_abs_lhs", lhs_max},
                 {"max_vertical_bracket", bracket_max},
                 {"integrable", bracket_max < s.first_order ? 1.0 : 0.0},
                 {"nabla_F_form_residual", nabla_form}};
  if (c_vanishes) rec.metrics["corollary_A_X_phiY_minus_A_Y_phiX"] = corollary_max;
  return rec;
}

/// Pivot identity of the totally geodesic horizontal distribution:
/// g(∇_X Y, V) = g(A_X BY, φV) − g(CY, φA_X V).
inline CheckRecord run_totally_geodesic_horizontal(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("totally_geodesic_pivot", "Theorem 3", s.first_order);
  if (auto why = detail::xi_gate(ctx, points, XiPosition::horizontal)) return rec.inapplicable(*why);
  const AlmostContactStructure& st = *ctx.structure();
  const std::size_t n = ctx.dim();
  VectorSampler vs(s.seed + 43);
  const bool c_vanishes = mu_is_span_xi(ctx.map(), st, points, s);
  double cond_ii = 0.0, vert_nabla = 0.0, corollary = 0.0;
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const Mat phi = st.phi_at(p);
    const Christoffel gamma = christoffel(ctx.source(), p, s);
    const detail::Probe pr = detail::probe(vs, sp, n);
    const VectorField x = ctx.horizontal_through(pr.x);
    const VectorField y = ctx.horizontal_through(pr.y);
    const VectorField v = ctx.vertical_through(pr.v);
    const VectorField by = ctx.vertical(apply(st.phi, y));
    const Vec cy = sp.horizontal_part(phi * pr.y);
    const Vec phi_v = phi * pr.v;

    const Vec nxy = covariant_derivative(gamma, pr.x, y, p, s);
    const double lhs = sp.inner(nxy, pr.v);
    const double a_term = sp.inner(tensor_A(ctx, x, by, p), phi_v);
    const double c_term = sp.inner(cy, phi * tensor_A(ctx, x, v, p));
    rec.absorb(lhs - (a_term - c_term));
    cond_ii = std::max(cond_ii, std::abs(a_term - c_term));
    vert_nabla = std::max(vert_nabla, sp.norm(sp.vertical_part(nxy)));
    if (c_vanishes) corollary = std::max(corollary, sp.norm(tensor_A(ctx, x, apply(st.phi, y), p)));
    ++rec.points_sampled;
  }
  const bool geodesic_ii = cond_ii < s.first_order;
  const bool geodesic_direct = vert_nabla < s.first_order;
  rec.metrics = {{"condition_ii_max", cond_ii},
                 {"max_vertical_nabla_XY", vert_nabla},
                 {"totally_geodesic", geodesic_direct ? 1.0 : 0.0},
                 {"verdicts_agree", geodesic_ii == geodesic_direct ? 1.0 : 0.0}};
  if (c_vanishes) rec.metrics["corollary_A_X_phiY"] = corollary;
  return rec;
}

/// Witness that the fibers are not totally geodesic: T_Vξ = V with ‖V‖ = 1, so T ≠ 0.
inline CheckRecord run_fibers_not_geodesic(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("fibers_not_totally_geodesic", "Theorem 4", s.first_order);
  if (auto why = detail::xi_gate(ctx, points, XiPosition::horizontal)) return rec.inapplicable(*why);
  if (ctx.fiber_dim() == 0) return rec.inapplicable("zero-dimensional fibers");
  const AlmostContactStructure& st = *ctx.structure();
  VectorSampler vs(s.seed + 44);
  double t_min = 1e300, sff_min = 1e300;
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const Vec v = detail::random_in(vs, sp.vertical.vectors, ctx.dim());
    const VectorField vf = ctx.vertical_through(v);
    const Vec t = tensor_T(ctx, vf, st.xi, p);
    rec.absorb(sp.norm(t - v));
    rec.absorb(std::abs(sp.norm(v) - 1.0));
    t_min = std::min(t_min, sp.norm(t));
    const Mat gn = ctx.target().metric_at(ctx.map()(p));
    const Vec h = second_fundamental_form(ctx, vf, vf, p).value;
    sff_min = std::min(sff_min, std::sqrt(std::max(0.0, h.dot(gn * h))));
    ++rec.points_sampled;
  }
  rec.metrics = {{"min_norm_T_V_xi", t_min}, {"min_norm_nablaF_VV", sff_min}};
  return rec;
}

/// |g(H, ξ) + 1|.
inline CheckRecord run_mean_curvature_remark(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("mean_curvature_xi", "Remark 4", s.first_order);
  if (auto why = detail::xi_gate(ctx, points, XiPosition::horizontal)) return rec.inapplicable(*why);
  if (ctx.fiber_dim() == 0) return rec.inapplicable("zero-dimensional fibers");
  const AlmostContactStructure& st = *ctx.structure();
  double lo = 1e300, hi = -1e300;
  for (const Vec& p : points) {
    const double ghx = ctx.source().inner(p, mean_curvature(ctx, p), st.xi_at(p));
    rec.absorb(ghx + 1.0);
    lo = std::min(lo, ghx);
    hi = std::max(hi, ghx);
    ++rec.points_sampled;
  }
  rec.metrics = {{"g_H_xi_min", lo}, {"g_H_xi_max", hi}};
  return rec;
}

/// With ξ vertical on a Kenmotsu source, no Riemannian submersion exists.
/// Passes when the map indeed fails the Riemannian test. ‖A_Xξ − X‖ is
/// reported as the local warped-product obstruction (f'/f = 1).
inline CheckRecord run_nonexistence_wpk(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("no_riemannian_submersion_xi_vertical", "Theorem 8", 0.5);
  if (!ctx.structure()) return rec.inapplicable("no almost contact structure on the source");
  const AlmostContactStructure& st = *ctx.structure();
  const XiPosition x = xi_position(ctx.map(), st, points, s);
  if (x != XiPosition::vertical) return rec.inapplicable(std::string("xi is ") + to_string(x) + ", not vertical");
  const CheckRecord riem = is_riemannian_submersion(ctx.map(), points, s);
  VectorSampler vs(s.seed + 45);
  double obstruction = 0.0;
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    if (sp.horizontal.empty()) continue;
    const Vec xh = detail::random_in(vs, sp.horizontal.vectors, ctx.dim());
    obstruction = std::max(obstruction, sp.norm(tensor_A(ctx, ctx.horizontal_through(xh), st.xi, p) - xh));
  }
  rec.points_sampled = points.size();
  rec.absorb(riem.passed() ? 1.0 : 0.0);
  rec.metrics = {{"riemannian_residual", riem.max_residual},
                 {"conformal", ctx.conformal() ? 1.0 : 0.0},
                 {"A_X_xi_minus_X", obstruction}};
  rec.note = riem.passed() ? "Riemannian submersion found with vertical xi: contradicts the nonexistence result"
                           : "prediction confirmed: map is not a Riemannian submersion";
  return rec;
}

/// Basic-field identities at sample points, with the horizontal lifts of coordinate fields of N
/// as basic fields: ℋ∇_U X = A_X U and ℋ[U, X] = 0 for vertical U.
inline CheckRecord verify_basic_fields(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("basic_fields", "Lemma 2", s.first_order);
  if (ctx.fiber_dim() == 0) return rec.inapplicable("zero-dimensional fibers");
  const std::size_t n = ctx.dim(), k = ctx.target().dim();
  VectorSampler vs(s.seed + 46);
  const ONeillContext* c = &ctx;
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const std::size_t alpha = static_cast<std::size_t>(vs.engine()() % k);
    const VectorField basic = VectorField::real(n, [c, alpha, k](const Vec& q) {
      const SubmersionSplit sq = c->split_at(q);
      const Mat h = sq.horizontal.matrix(c->dim());
      const Mat jh = sq.jacobian * h;
      return Vec(h * jh.partialPivLu().solve(Vec::Unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(alpha))));
    });
    const Vec v = detail::random_in(vs, sp.vertical.vectors, n);
    const VectorField u = ctx.vertical_through(v);
    const Vec lhs = sp.horizontal_part(covariant_derivative(ctx.source(), v, basic, p, s));
    rec.absorb(sp.norm(lhs - tensor_A(ctx, basic, u, p)));
    rec.absorb(sp.norm(sp.horizontal_part(lie_bracket(u, basic, p, s))));
    ++rec.points_sampled;
  }
  return ctx.tag(rec);
}

}  // namespace subgeom
