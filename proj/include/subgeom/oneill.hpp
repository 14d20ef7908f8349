#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subgeom/calculus.hpp"
#include "subgeom/check.hpp"
#include "subgeom/contact.hpp"
#include "subgeom/submersion.hpp"

namespace subgeom {

/// A submersion prepared for O'Neill-tensor evaluation.
///
/// The fiber dimension is read off the first sample point and every later
/// split is required to have the same rank. Maps that are horizontally
/// conformal but not Riemannian are accepted with conformal() == true; the
/// tensors are still defined from the vertical/horizontal split.
class ONeillContext {
 public:
  static ONeillContext make(SmoothMap map, std::optional<AlmostContactStructure> st, const std::vector<Vec>& points,
                            const Settings& s = {}) {
    if (points.empty()) throw GeometryError(ErrorKind::precondition, "O'Neill context needs sample points");
    if (st && st->manifold.dim() != map.source.dim())
      throw GeometryError(ErrorKind::precondition, "structure does not live on the source of the map");
    const SubmersionSplit first = split(map, points.front(), s);
    if (first.rank() != map.target.dim())
      throw GeometryError(ErrorKind::precondition, "map is not a submersion at the first sample point");
    for (const Vec& p : points) split(map, p, s, first.rank());
    ONeillContext ctx(std::move(map), std::move(st), s, first.fiber_dim());
    const CheckRecord riem = is_riemannian_submersion(ctx.map_, points, s);
    if (!riem.passed()) {
      if (!is_horizontally_conformal(ctx.map_, points, s).passed())
        throw GeometryError(ErrorKind::precondition, "map is neither a Riemannian nor a horizontally conformal submersion");
      ctx.conformal_ = true;
    }
    return ctx;
  }

  const SmoothMap& map() const { return map_; }
  const ChartManifold& source() const { return map_.source; }
  const ChartManifold& target() const { return map_.target; }
  const std::optional<AlmostContactStructure>& structure() const { return st_; }
  const Settings& settings() const { return s_; }
  bool conformal() const { return conformal_; }
  std::size_t fiber_dim() const { return fiber_dim_; }
  std::size_t dim() const { return map_.source.dim(); }

  SubmersionSplit split_at(const Vec& p) const { return split(map_, p, s_, map_.target.dim()); }
  VectorField vertical(const VectorField& x) const { return vertical_field(map_, x, s_); }
  VectorField horizontal(const VectorField& x) const { return horizontal_field(map_, x, s_); }

  /// Vertical field through a vertical vector v at p: q ↦ 𝒱_q(v).
  VectorField vertical_through(const Vec& v) const { return vertical(VectorField::constant(v)); }
  VectorField horizontal_through(const Vec& v) const { return horizontal(VectorField::constant(v)); }

  /// Marks a record with the context flags.
  CheckRecord& tag(CheckRecord& r) const {
    r.conformal_context = conformal_;
    return r;
  }

 private:
  ONeillContext(SmoothMap map, std::optional<AlmostContactStructure> st, Settings s, std::size_t fiber)
      : map_(std::move(map)), st_(std::move(st)), s_(s), fiber_dim_(fiber) {}

  SmoothMap map_;
  std::optional<AlmostContactStructure> st_;
  Settings s_;
  std::size_t fiber_dim_ = 0;
  bool conformal_ = false;
};

/// T_E G = ℋ∇_{𝒱E}𝒱G + 𝒱∇_{𝒱E}ℋG.
inline Vec tensor_T(const ONeillContext& ctx, const VectorField& e, const VectorField& g, const Vec& p) {
  const Settings& s = ctx.settings();
  const SubmersionSplit sp = ctx.split_at(p);
  const Christoffel gamma = christoffel(ctx.source(), p, s);
  const Vec ve = sp.vertical_part(e.at(p));
  const Vec a = covariant_derivative(gamma, ve, ctx.vertical(g), p, s);
  const Vec b = covariant_derivative(gamma, ve, ctx.horizontal(g), p, s);
  return sp.horizontal_part(a) + sp.vertical_part(b);
}

/// A_E G = 𝒱∇_{ℋE}ℋG + ℋ∇_{ℋE}𝒱G.
inline Vec tensor_A(const ONeillContext& ctx, const VectorField& e, const VectorField& g, const Vec& p) {
  const Settings& s = ctx.settings();
  const SubmersionSplit sp = ctx.split_at(p);
  const Christoffel gamma = christoffel(ctx.source(), p, s);
  const Vec he = sp.horizontal_part(e.at(p));
  const Vec a = covariant_derivative(gamma, he, ctx.horizontal(g), p, s);
  const Vec b = covariant_derivative(gamma, he, ctx.vertical(g), p, s);
  return sp.vertical_part(a) + sp.horizontal_part(b);
}

namespace detail {

inline Vec random_in(VectorSampler& vs, const std::vector<Vec>& basis, std::size_t dim) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  if (basis.empty()) return v;
  const Vec c = vs.gaussian(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) v += c[static_cast<Eigen::Index>(i)] * basis[i];
  return v / c.norm();  // unit, since the basis is orthonormal
}

}  // namespace detail

/// T_U W = T_W U for vertical U, W and A_X Y = −A_Y X = ½𝒱[X,Y] for horizontal X, Y.
/// The second identity is a Riemannian-submersion statement; in a conformal
/// context it is evaluated but marked inapplicable.
inline std::vector<CheckRecord> verify_lemma_identities(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord t_sym("lemma1_T_symmetric", "Eq.(11)", s.first_order);
  CheckRecord a_alt("lemma1_A_alternating", "Eq.(12)", s.first_order);
  VectorSampler vs(s.seed + 11);
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const std::size_t n = ctx.dim();
    if (!sp.vertical.empty()) {
      const VectorField u = ctx.vertical_through(detail::random_in(vs, sp.vertical.vectors, n));
      const VectorField w = ctx.vertical_through(detail::random_in(vs, sp.vertical.vectors, n));
      t_sym.absorb(sp.norm(tensor_T(ctx, u, w, p) - tensor_T(ctx, w, u, p)));
    }
    if (!sp.horizontal.empty()) {
      const VectorField x = ctx.horizontal_through(detail::random_in(vs, sp.horizontal.vectors, n));
      const VectorField y = ctx.horizontal_through(detail::random_in(vs, sp.horizontal.vectors, n));
      const Vec axy = tensor_A(ctx, x, y, p);
      const Vec ayx = tensor_A(ctx, y, x, p);
      const Vec half_bracket = 0.5 * sp.vertical_part(lie_bracket(x, y, p, s));
      a_alt.absorb(sp.norm(axy - half_bracket));
      a_alt.absorb(sp.norm(axy + ayx));
    }
    ++t_sym.points_sampled;
    ++a_alt.points_sampled;
  }
  ctx.tag(t_sym);
  ctx.tag(a_alt);
  if (ctx.conformal()) a_alt.applicable = false, a_alt.note = "conformal context: the alternation identity for A assumes a Riemannian submersion";
  return {t_sym, a_alt};
}

/// g(T_D E, G) + g(T_D G, E) = 0 and the same for A, for arbitrary D, E, G.
inline std::vector<CheckRecord> verify_skew_symmetry(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord t_skew("T_skew_symmetric", "Eq.(19)", s.first_order);
  CheckRecord a_skew("A_skew_symmetric", "Eq.(20)", s.first_order);
  VectorSampler vs(s.seed + 19);
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const VectorField d = detail::random_field_at(vs, sp.metric, p);
    const VectorField e = detail::random_field_at(vs, sp.metric, p);
    const VectorField g = detail::random_field_at(vs, sp.metric, p);
    const Vec ep = e.at(p), gp = g.at(p);
    t_skew.absorb(sp.inner(tensor_T(ctx, d, e, p), gp) + sp.inner(tensor_T(ctx, d, g, p), ep));
    a_skew.absorb(sp.inner(tensor_A(ctx, d, e, p), gp) + sp.inner(tensor_A(ctx, d, g, p), ep));
    ++t_skew.points_sampled;
    ++a_skew.points_sampled;
  }
  ctx.tag(t_skew);
  ctx.tag(a_skew);
  return {t_skew, a_skew};
}

/// The four splittings of ∇ into O'Neill tensor and projected connection parts.
inline std::vector<CheckRecord> verify_fundamental_equations(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord vv("fundamental_VV", "Eq.(13)", s.first_order);
  CheckRecord vh("fundamental_VH", "Eq.(14)", s.first_order);
  CheckRecord hv("fundamental_HV", "Eq.(15)", s.first_order);
  CheckRecord hh("fundamental_HH", "Eq.(16)", s.first_order);
  VectorSampler vs(s.seed + 13);
  const std::size_t n = ctx.dim();
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const Christoffel gamma = christoffel(ctx.source(), p, s);
    const VectorField v = ctx.vertical_through(detail::random_in(vs, sp.vertical.vectors, n));
    const VectorField w = ctx.vertical_through(detail::random_in(vs, sp.vertical.vectors, n));
    const VectorField x = ctx.horizontal_through(detail::random_in(vs, sp.horizontal.vectors, n));
    const VectorField y = ctx.horizontal_through(detail::random_in(vs, sp.horizontal.vectors, n));
    const Vec vp = v.at(p), xp = x.at(p);
    const Vec nvw = covariant_derivative(gamma, vp, w, p, s);
    const Vec nvx = covariant_derivative(gamma, vp, x, p, s);
    const Vec nxv = covariant_derivative(gamma, xp, v, p, s);
    const Vec nxy = covariant_derivative(gamma, xp, y, p, s);
    vv.absorb(sp.norm(nvw - tensor_T(ctx, v, w, p) - sp.vertical_part(nvw)));
    vh.absorb(sp.norm(nvx - sp.horizontal_part(nvx) - tensor_T(ctx, v, x, p)));
    hv.absorb(sp.norm(nxv - tensor_A(ctx, x, v, p) - sp.vertical_part(nxv)));
    hh.absorb(sp.norm(nxy - sp.horizontal_part(nxy) - tensor_A(ctx, x, y, p)));
    for (CheckRecord* r : {&vv, &vh, &hv, &hh}) ++r->points_sampled;
  }
  for (CheckRecord* r : {&vv, &vh, &hv, &hh}) ctx.tag(*r);
  return {vv, vh, hv, hh};
}

/// H = (1/dim fiber) Σ_j T_{U_j} U_j over an orthonormal vertical frame.
inline Vec mean_curvature(const ONeillContext& ctx, const Vec& p) {
  const SubmersionSplit sp = ctx.split_at(p);
  if (sp.vertical.empty()) throw GeometryError(ErrorKind::undefined, "mean curvature of zero-dimensional fibers");
  Vec h = Vec::Zero(static_cast<Eigen::Index>(ctx.dim()));
  for (const Vec& u : sp.vertical.vectors) {
    const VectorField uf = ctx.vertical_through(u);
    h += tensor_T(ctx, uf, uf, p);
  }
  return h / static_cast<double>(sp.vertical.size());
}

/// Residual of T_U W − g(U,W)H over random vertical U, W.
inline CheckRecord is_totally_umbilical(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("totally_umbilical_fibers", "Eq.(17)", s.first_order);
  VectorSampler vs(s.seed + 17);
  for (const Vec& p : points) {
    ++rec.points_sampled;
    const SubmersionSplit sp = ctx.split_at(p);
    if (sp.vertical.empty()) continue;
    const Vec h = mean_curvature(ctx, p);
    const Vec u = detail::random_in(vs, sp.vertical.vectors, ctx.dim());
    const Vec w = detail::random_in(vs, sp.vertical.vectors, ctx.dim());
    const Vec t = tensor_T(ctx, ctx.vertical_through(u), ctx.vertical_through(w), p);
    rec.absorb(sp.norm(t - sp.inner(u, w) * h));
  }
  return ctx.tag(rec);
}

/// (∇F_*)(X,Y) at p, an element of T_{F(p)}N.
struct MapHessianTerm {
  Vec base;   ///< F(p)
  Vec value;
};

/// (∇F_*)(X,Y) = ∇^F_X(F_*Y) − F_*(∇^M_X Y), with the pullback derivative taken
/// along the curve c(t) = p + tX(p) using a 4-point central stencil.
inline MapHessianTerm second_fundamental_form(const SmoothMap& f, const VectorField& x, const VectorField& y,
                                              const Vec& p, const Settings& s = {}) {
  const Vec xp = x.at(p);
  const double h = s.curve_step;
  auto pushed = [&](double t) {
    const Vec q = p + t * xp;
    return Vec(f.jacobian(q, s) * y.at(q));
  };
  const Vec dw = (-pushed(2 * h) + 8.0 * pushed(h) - 8.0 * pushed(-h) + pushed(-2 * h)) / (12.0 * h);
  const Vec fp = f(p);
  const Mat jac = f.jacobian(p, s);
  const Christoffel gamma_n = christoffel(f.target, fp, s);
  const Vec value = dw + gamma_n.contract(jac * xp, jac * y.at(p)) - jac * covariant_derivative(f.source, xp, y, p, s);
  return {fp, value};
}

inline MapHessianTerm second_fundamental_form(const ONeillContext& ctx, const VectorField& x, const VectorField& y,
                                              const Vec& p) {
  return second_fundamental_form(ctx.map(), x, y, p, ctx.settings());
}

/// Symmetry of (∇F_*), its vanishing on horizontal pairs, and
/// (∇F_*)(V,V) = −F_*(T_V V) on vertical V.
inline std::vector<CheckRecord> verify_second_fundamental_form(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord sym("sff_symmetric", "second fundamental form is symmetric", s.second_order);
  CheckRecord hor("sff_horizontal_zero", "Eq.(22)", s.second_order);
  CheckRecord ver("sff_vertical", "(nabla F*)(V,V) = -F*(T_V V)", s.second_order);
  VectorSampler vs(s.seed + 21);
  const std::size_t n = ctx.dim();
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const Mat gn = ctx.target().metric_at(ctx.map()(p));
    auto norm_n = [&](const Vec& v) { return std::sqrt(std::max(0.0, v.dot(gn * v))); };

    const VectorField a = detail::random_field_at(vs, sp.metric, p);
    const VectorField b = detail::random_field_at(vs, sp.metric, p);
    sym.absorb(norm_n(second_fundamental_form(ctx, a, b, p).value - second_fundamental_form(ctx, b, a, p).value));

    if (!sp.horizontal.empty()) {
      const VectorField x = ctx.horizontal_through(detail::random_in(vs, sp.horizontal.vectors, n));
      const VectorField y = ctx.horizontal_through(detail::random_in(vs, sp.horizontal.vectors, n));
      hor.absorb(norm_n(second_fundamental_form(ctx, x, y, p).value));
    }
    if (!sp.vertical.empty()) {
      const VectorField v = ctx.vertical_through(detail::random_in(vs, sp.vertical.vectors, n));
      const Vec lhs = second_fundamental_form(ctx, v, v, p).value;
      const Vec rhs = -sp.jacobian * tensor_T(ctx, v, v, p);
      ver.absorb(norm_n(lhs - rhs));
    }
    for (CheckRecord* r : {&sym, &hor, &ver}) ++r->points_sampled;
  }
  for (CheckRecord* r : {&sym, &hor, &ver}) ctx.tag(*r);
  if (ctx.conformal()) hor.applicable = false, hor.note = "conformal context: vanishing on horizontals assumes a Riemannian submersion";
  return {sym, hor, ver};
}

/// τ = Σ_i (∇F_*)(e_i, e_i) over the orthonormal frame vertical ∪ horizontal.
inline Vec tension_field(const ONeillContext& ctx, const Vec& p) {
  const SubmersionSplit sp = ctx.split_at(p);
  Vec tau = Vec::Zero(static_cast<Eigen::Index>(ctx.target().dim()));
  for (const Frame* fr : {&sp.vertical, &sp.horizontal})
    for (const Vec& e : fr->vectors) {
      const VectorField ef = VectorField::constant(e);
      tau += second_fundamental_form(ctx, ef, ef, p).value;
    }
  return tau;
}

/// Pass iff max ‖τ‖ < tolerance.
inline CheckRecord is_harmonic(const ONeillContext& ctx, const std::vector<Vec>& points) {
  const Settings& s = ctx.settings();
  CheckRecord rec("harmonic", "harmonic map: trace(nabla F*) = 0", s.second_order);
  double lo = 1e300;
  for (const Vec& p : points) {
    const Vec tau = tension_field(ctx, p);
    const Mat gn = ctx.target().metric_at(ctx.map()(p));
    const double nt = std::sqrt(std::max(0.0, tau.dot(gn * tau)));
    lo = std::min(lo, nt);
    rec.absorb(nt);
    ++rec.points_sampled;
  }
  rec.metrics = {{"tau_norm_min", lo}, {"tau_norm_max", rec.max_residual}};
  return ctx.tag(rec);
}

}  // namespace subgeom
