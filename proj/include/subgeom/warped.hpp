#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "subgeom/calculus.hpp"
#include "subgeom/check.hpp"
#include "subgeom/oneill.hpp"
#include "subgeom/submersion.hpp"
#include "subgeom/warped_product.hpp"

namespace subgeom {

/// Residuals of the four warped-connection identities on M₁ ×_f M₂, one record each:
/// (i) ∇_{X₁}Y₁ is the lift of ∇¹_{X₁}Y₁,
/// (ii) ∇_{X₁}X₂ = ∇_{X₂}X₁ = (X₁f/f)X₂,
/// (iii) nor ∇_{X₂}Y₂ = −(g(X₂,Y₂)/f) grad f,
/// (iv) tan ∇_{X₂}Y₂ is the lift of ∇²_{X₂}Y₂.
/// nor/tan are the orthogonal projections onto the base and fiber blocks.
inline std::vector<CheckRecord> verify_oneill_proposition(const WarpedProduct& w, const std::vector<Vec>& points,
                                                          const Settings& s = {}) {
  CheckRecord r1("warped_connection_i", "Proposition 1(i)", s.second_order);
  CheckRecord r2("warped_connection_ii", "Proposition 1(ii)", s.second_order);
  CheckRecord r3("warped_connection_iii", "Proposition 1(iii)", s.second_order);
  CheckRecord r4("warped_connection_iv", "Proposition 1(iv)", s.second_order);
  const std::size_t b = w.base_dim(), k = w.fiber_dim();
  const auto bi = static_cast<Eigen::Index>(b), ki = static_cast<Eigen::Index>(k);
  VectorSampler vs(s.seed + 31);
  const ScalarField f = w.warp;

  auto lift_b = [&](const Vec& v) {
    Vec out = Vec::Zero(bi + ki);
    out.head(bi) = v;
    return out;
  };
  auto lift_f = [&](const Vec& v) {
    Vec out = Vec::Zero(bi + ki);
    out.tail(ki) = v;
    return out;
  };

  for (const Vec& p : points) {
    const Vec p1 = w.base_part(p), p2 = w.fiber_part(p);
    const Mat g = w.product.metric_at(p);
    auto norm = [&](const Vec& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); };
    const Christoffel gamma = christoffel(w.product, p, s);

    const VectorField x1 = detail::random_field_at(vs, w.base.metric_at(p1), p1);
    const VectorField y1 = detail::random_field_at(vs, w.base.metric_at(p1), p1);
    const VectorField x2 = detail::random_field_at(vs, w.fiber.metric_at(p2), p2);
    const VectorField y2 = detail::random_field_at(vs, w.fiber.metric_at(p2), p2);
    const VectorField lx1 = w.lift_base(x1), ly1 = w.lift_base(y1);
    const VectorField lx2 = w.lift_fiber(x2), ly2 = w.lift_fiber(y2);
    const Vec x1p = lx1.at(p), x2p = lx2.at(p);

    const Vec base_conn = covariant_derivative(w.base, x1.at(p1), y1, p1, s);
    r1.absorb(norm(covariant_derivative(gamma, x1p, ly1, p, s) - lift_b(base_conn)));

    const double fv = f.at(p1);
    const double xf = f.derivative(p1, x1.at(p1), s);
    const Vec expected = (xf / fv) * x2p;
    r2.absorb(norm(covariant_derivative(gamma, x1p, lx2, p, s) - expected));
    r2.absorb(norm(covariant_derivative(gamma, x2p, lx1, p, s) - expected));

    const Vec nvw = covariant_derivative(gamma, x2p, ly2, p, s);
    Vec nor = nvw, tan = nvw;
    nor.tail(ki).setZero();
    tan.head(bi).setZero();
    const double gxy = x2p.dot(g * ly2.at(p));
    const Vec grad_f = lift_b(gradient(w.base, f, p1, s));
    r3.absorb(norm(nor + (gxy / fv) * grad_f));
    const Vec fiber_conn = covariant_derivative(w.fiber, x2.at(p2), y2, p2, s);
    r4.absorb(norm(tan - lift_f(fiber_conn)));

    for (CheckRecord* r : {&r1, &r2, &r3, &r4}) ++r->points_sampled;
  }
  return {r1, r2, r3, r4};
}

/// π₂(p, q) = q.
inline SmoothMap second_projection(const WarpedProduct& w) {
  const std::size_t b = w.base_dim(), k = w.fiber_dim();
  Mapping fn = Mapping::generic(b + k, k, [b](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return std::vector<T>(x.begin() + static_cast<std::ptrdiff_t>(b), x.end());
  });
  return SmoothMap(w.product, w.fiber, fn, "pi2: " + w.product.label() + " -> " + w.fiber.label());
}

/// f₂ = f₁ ∘ π₂. Requires f₁ to be a Riemannian submersion on its sample set.
inline SmoothMap compose_with_submersion(const WarpedProduct& w, const SmoothMap& f1, const Settings& s = {}) {
  if (f1.source.dim() != w.fiber_dim())
    throw GeometryError(ErrorKind::precondition, "submersion must start on the fiber of the warped product");
  const CheckRecord riem = is_riemannian_submersion(f1, sample_points(f1.source, s), s);
  if (!riem.passed())
    throw GeometryError(ErrorKind::precondition, "inner map is not a Riemannian submersion (residual " +
                                                     std::to_string(riem.max_residual) + ")");
  const std::size_t b = w.base_dim(), k = w.fiber_dim();
  const Mapping inner = f1.fn;
  Mapping fn = Mapping::derived(
      b + k, f1.target.dim(),
      [inner, b](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        const std::vector<T> q(x.begin() + static_cast<std::ptrdiff_t>(b), x.end());
        return inner.eval(q);
      },
      inner);
  return SmoothMap(w.product, f1.target, fn, f1.label + " o pi2");
}

/// max ‖A_X∂t − (f'/f)X‖ over unit horizontal X, where ∂t is the coordinate
/// vector t_index and log_derivative = f'/f on the source chart.
///
/// Inapplicable when ∂t is not vertical. If the map is also a Riemannian
/// submersion, g(A_X X, ∂t) = −(f'/f) forces f' = 0; a nonzero f'/f together
/// with a Riemannian verdict is recorded in the note as a contradiction.
inline CheckRecord wpc_obstruction(const SmoothMap& f, std::size_t t_index, const ScalarField& log_derivative,
                                   const std::vector<Vec>& points, const Settings& s = {}) {
  CheckRecord rec("warped_obstruction", "Eq.(RIE2)", s.second_order);
  rec.points_sampled = points.size();
  const auto n = static_cast<Eigen::Index>(f.source.dim());
  const Vec dt = Vec::Unit(n, static_cast<Eigen::Index>(t_index));
  for (const Vec& p : points) {
    const SubmersionSplit sp = split(f, p, s);
    if (sp.norm(sp.horizontal_part(dt)) > s.anti_invariance)
      return rec.inapplicable("d/dt is not vertical at every sample point");
  }
  const ONeillContext ctx = ONeillContext::make(f, std::nullopt, points, s);
  const VectorField dt_field = VectorField::constant(dt);
  VectorSampler vs(s.seed + 7);
  double max_ld = 0.0;
  for (const Vec& p : points) {
    const SubmersionSplit sp = ctx.split_at(p);
    const double ld = log_derivative.at(p);
    max_ld = std::max(max_ld, std::abs(ld));
    for (std::size_t trial = 0; trial < 2 && !sp.horizontal.empty(); ++trial) {
      const Vec xh = detail::random_in(vs, sp.horizontal.vectors, ctx.dim());
      const Vec a = tensor_A(ctx, ctx.horizontal_through(xh), dt_field, p);
      rec.absorb(sp.norm(a - ld * xh));
    }
  }
  const bool riemannian = !ctx.conformal();
  rec.conformal_context = ctx.conformal();
  rec.metrics = {{"max_abs_log_derivative", max_ld}, {"riemannian", riemannian ? 1.0 : 0.0}};
  if (riemannian && max_ld > s.second_order)
    rec.note = "contradiction: Riemannian submersion with vertical d/dt requires a constant warping function";
  else if (riemannian)
    rec.note = "Riemannian submersion with vertical d/dt; warping function is constant";
  else
    rec.note = "not a Riemannian submersion; consistent with a non-constant warping function";
  return rec;
}

/// wpc_obstruction on the product chart of a warped product over an interval.
inline CheckRecord wpc_obstruction(const WarpedProduct& w, const SmoothMap& f, const std::vector<Vec>& points,
                                   const Settings& s = {}) {
  if (w.base_dim() != 1)
    throw GeometryError(ErrorKind::precondition, "obstruction check needs a one-dimensional base");
  if (f.source.dim() != w.product.dim())
    throw GeometryError(ErrorKind::precondition, "map must start on the warped product");
  const ScalarField warp = w.warp;
  const ScalarField ld(Mapping(w.product.dim(), 1, [warp, s](const Vec& x) {
    const Vec t = x.head(1);
    Vec out(1);
    out[0] = warp.derivative(t, Vec::Ones(1), s) / warp.at(t);
    return out;
  }));
  return wpc_obstruction(f, 0, ld, points, s);
}

}  // namespace subgeom
