#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "subgeom/calculus.hpp"
#include "subgeom/check.hpp"
#include "subgeom/function.hpp"
#include "subgeom/manifold.hpp"
#include "subgeom/warped_product.hpp"

namespace subgeom {

/// (φ, ξ, η, g) on a chart manifold; φ acts on coordinate column vectors.
struct AlmostContactStructure {
  ChartManifold manifold;
  MatrixField phi;
  VectorField xi;
  CovectorField eta;

  AlmostContactStructure() = default;
  AlmostContactStructure(ChartManifold m, MatrixField phi_, VectorField xi_, CovectorField eta_)
      : manifold(std::move(m)), phi(std::move(phi_)), xi(std::move(xi_)), eta(std::move(eta_)) {
    const std::size_t n = manifold.dim();
    if (phi.rows() != n || phi.cols() != n || phi.dim() != n || xi.dim() != n || eta.dim() != n)
      throw GeometryError(ErrorKind::construction, "almost contact structure dimension mismatch");
  }

  std::size_t dim() const { return manifold.dim(); }
  Mat phi_at(const Vec& p) const { return phi.at(p); }
  Vec xi_at(const Vec& p) const { return xi.at(p); }
  Vec eta_at(const Vec& p) const { return eta.at(p); }
};

/// φ² = −I + η⊗ξ, φξ = 0, η∘φ = 0, η(ξ) = 1 and metric compatibility at the
/// sample points, with random vector pairs.
inline CheckRecord verify_almost_contact(const AlmostContactStructure& st, const std::vector<Vec>& points,
                                         const Settings& s = {}) {
  CheckRecord rec("almost_contact", "Eqs.(1)-(3)", s.algebraic);
  VectorSampler vs(s.seed + 1);
  const auto n = static_cast<Eigen::Index>(st.dim());
  double phi2 = 0, phixi = 0, etaphi = 0, etaxi = 0, compat = 0, skew = 0, dual = 0;
  for (const Vec& p : points) {
    const Mat g = st.manifold.metric_at(p);
    const Mat f = st.phi_at(p);
    const Vec xi = st.xi_at(p);
    const Vec eta = st.eta_at(p);
    const Mat id = Mat::Identity(n, n);
    phi2 = std::max(phi2, (f * f + id - xi * eta.transpose()).cwiseAbs().maxCoeff());
    phixi = std::max(phixi, (f * xi).cwiseAbs().maxCoeff());
    etaphi = std::max(etaphi, (eta.transpose() * f).cwiseAbs().maxCoeff());
    etaxi = std::max(etaxi, std::abs(eta.dot(xi) - 1.0));
    for (int trial = 0; trial < 3; ++trial) {
      const Vec x = vs.unit(g), y = vs.unit(g);
      compat = std::max(compat, std::abs((f * x).dot(g * (f * y)) - x.dot(g * y) + eta.dot(x) * eta.dot(y)));
      skew = std::max(skew, std::abs((f * x).dot(g * y) + x.dot(g * (f * y))));
      dual = std::max(dual, std::abs(eta.dot(x) - x.dot(g * xi)));
    }
    ++rec.points_sampled;
  }
  rec.metrics = {{"phi_squared", phi2}, {"phi_xi", phixi},   {"eta_phi", etaphi}, {"eta_xi", etaxi},
                 {"metric", compat},    {"skew", skew},      {"eta_dual", dual}};
  for (const auto& [k, v] : rec.metrics) rec.absorb(v);
  return rec;
}

/// Φ(X,Y) = g(X, φY).
inline double fundamental_two_form(const AlmostContactStructure& st, const TangentVector& x, const TangentVector& y) {
  if (x.base.size() != y.base.size() || x.base != y.base)
    throw GeometryError(ErrorKind::precondition, "tangent vectors at different base points");
  return st.manifold.inner(x.base, x.components, st.phi_at(x.base) * y.components);
}

/// ‖(∇_Xφ)Y − g(φX,Y)ξ + η(Y)φX‖ with (∇_Xφ)Y = ∇_X(φY) − φ(∇_X Y).
inline double kenmotsu_defect(const AlmostContactStructure& st, const VectorField& x, const VectorField& y,
                              const Vec& p, const Settings& s = {}) {
  const ChartManifold& m = st.manifold;
  const Christoffel gamma = christoffel(m, p, s);
  const Vec xp = x.at(p), yp = y.at(p);
  const Mat f = st.phi_at(p);
  const Vec nabla_phi_y = covariant_derivative(gamma, xp, apply(st.phi, y), p, s) -
                          f * covariant_derivative(gamma, xp, y, p, s);
  const Vec r = nabla_phi_y - m.inner(p, f * xp, yp) * st.xi_at(p) + st.eta_at(p).dot(yp) * (f * xp);
  return m.norm(p, r);
}

/// |X(η(Y)) − η(∇_X Y) − g(X,Y) + η(X)η(Y)|.
inline double nabla_eta_check(const AlmostContactStructure& st, const VectorField& x, const VectorField& y,
                              const Vec& p, const Settings& s = {}) {
  const ChartManifold& m = st.manifold;
  const Vec xp = x.at(p), yp = y.at(p), eta = st.eta_at(p);
  const double lhs = pair(st.eta, y).derivative(p, xp, s) - eta.dot(covariant_derivative(m, xp, y, p, s));
  return std::abs(lhs - m.inner(p, xp, yp) + eta.dot(xp) * eta.dot(yp));
}

/// ‖∇_X ξ − X + η(X)ξ‖.
inline double reeb_defect(const AlmostContactStructure& st, const Vec& x, const Vec& p, const Settings& s = {}) {
  const ChartManifold& m = st.manifold;
  const Vec r = covariant_derivative(m, x, st.xi, p, s) - x + st.eta_at(p).dot(x) * st.xi_at(p);
  return m.norm(p, r);
}

namespace detail {

/// Random affine field whose value at p is a g-unit vector.
inline VectorField random_field_at(VectorSampler& vs, const Mat& g, const Vec& p) {
  const Vec v = vs.unit(g);
  Mat a(g.rows(), g.cols());
  for (Eigen::Index c = 0; c < a.cols(); ++c) a.col(c) = 0.3 * vs.gaussian(static_cast<std::size_t>(g.rows()));
  return VectorField::affine(v - a * p, a);
}

}  // namespace detail

/// (∇_Xφ)Y = g(φX,Y)ξ − η(Y)φX, plus ∇_Xξ = X − η(X)ξ and the matching ∇η formula.
inline CheckRecord verify_kenmotsu(const AlmostContactStructure& st, const std::vector<Vec>& points,
                                   const Settings& s = {}) {
  CheckRecord rec("kenmotsu_condition", "Eq.(4)", s.first_order);
  VectorSampler vs(s.seed + 2);
  double defect = 0, reeb = 0, eta = 0;
  for (const Vec& p : points) {
    const Mat g = st.manifold.metric_at(p);
    const VectorField x = detail::random_field_at(vs, g, p);
    const VectorField y = detail::random_field_at(vs, g, p);
    defect = std::max(defect, kenmotsu_defect(st, x, y, p, s));
    reeb = std::max(reeb, reeb_defect(st, x.at(p), p, s));
    eta = std::max(eta, nabla_eta_check(st, x, y, p, s));
    ++rec.points_sampled;
  }
  rec.metrics = {{"defect", defect}, {"reeb", reeb}, {"nabla_eta", eta}};
  for (const auto& [k, v] : rec.metrics) rec.absorb(v);
  return rec;
}

/// |div ξ − (dim − 1)| at the sample points.
inline CheckRecord verify_reeb_divergence(const AlmostContactStructure& st, const std::vector<Vec>& points,
                                          const Settings& s = {}) {
  CheckRecord rec("div_xi", "div xi = 2m", s.first_order);
  const double expected = static_cast<double>(st.dim()) - 1.0;
  double lo = 1e300, hi = -1e300;
  for (const Vec& p : points) {
    const double d = divergence(st.manifold, st.xi, p, s);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    rec.absorb(d - expected);
    ++rec.points_sampled;
  }
  rec.metrics = {{"div_min", lo}, {"div_max", hi}, {"expected", expected}};
  return rec;
}

/// An almost contact structure certified to satisfy the Kenmotsu condition.
class KenmotsuManifold {
 public:
  /// Verifies the almost contact and Kenmotsu identities at seeded sample points;
  /// throws a precondition error otherwise.
  static KenmotsuManifold certify(AlmostContactStructure st, const Settings& s = {}) {
    const std::vector<Vec> pts = sample_points(st.manifold, s);
    CheckRecord ac = verify_almost_contact(st, pts, s);
    if (!ac.passed())
      throw GeometryError(ErrorKind::precondition,
                          "not an almost contact metric structure (residual " + std::to_string(ac.max_residual) + ")");
    CheckRecord ken = verify_kenmotsu(st, pts, s);
    if (!ken.passed())
      throw GeometryError(ErrorKind::precondition,
                          "Kenmotsu condition fails (residual " + std::to_string(ken.max_residual) + ")");
    return KenmotsuManifold(std::move(st), std::move(ac), std::move(ken));
  }

  const AlmostContactStructure& structure() const { return st_; }
  const ChartManifold& manifold() const { return st_.manifold; }
  const CheckRecord& almost_contact_record() const { return ac_; }
  const CheckRecord& kenmotsu_record() const { return ken_; }

 private:
  KenmotsuManifold(AlmostContactStructure st, CheckRecord ac, CheckRecord ken)
      : st_(std::move(st)), ac_(std::move(ac)), ken_(std::move(ken)) {}

  AlmostContactStructure st_;
  CheckRecord ac_;
  CheckRecord ken_;
};

/// The R^5 structure with coordinates (x1, x2, y1, y2, z):
/// g = e^{2z} Σ (dx_i² + dy_i²) + dz², η = dz, ξ = ∂z.
inline AlmostContactStructure example_ken_structure(double lo = -1.0, double hi = 1.0) {
  MatrixField g = MatrixField::generic(5, 5, 5, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    const T e2 = exp(2.0 * x[4]);
    std::vector<T> m(25, T(0.0));
    for (int i = 0; i < 4; ++i) m[i * 5 + i] = e2;
    m[24] = T(1.0);
    return m;
  });
  ChartManifold m(5, Box::cube(5, lo, hi), g, "Kenmotsu R^5");
  Mat phi = Mat::Zero(5, 5);
  phi(0, 2) = -1;
  phi(1, 3) = -1;
  phi(2, 0) = 1;
  phi(3, 1) = 1;
  return AlmostContactStructure(m, MatrixField::constant(5, phi), VectorField::coordinate(5, 4),
                                CovectorField::constant(Vec::Unit(5, 4)));
}

inline KenmotsuManifold example_ken(const Settings& s = {}) { return KenmotsuManifold::certify(example_ken_structure(), s); }

/// A Kaehler manifold (L, J, g_L); J acts on coordinate vectors.
struct KaehlerManifold {
  ChartManifold manifold;
  MatrixField complex_structure;
};

/// J = [[0, −I], [I, 0]] on coordinates (x_1..x_n, y_1..y_n), so J∂x_i = ∂y_i.
inline Mat standard_complex_structure(std::size_t complex_dim) {
  const auto n = static_cast<Eigen::Index>(complex_dim);
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return j;
}

/// Flat C^n as (R^{2n}, standard J).
inline KaehlerManifold flat_kaehler(std::size_t complex_dim, double lo = -1.0, double hi = 1.0) {
  const std::size_t d = 2 * complex_dim;
  return {flat_space(d, Box::cube(d, lo, hi), "C^" + std::to_string(complex_dim)),
          MatrixField::constant(d, standard_complex_structure(complex_dim))};
}

/// J² = −I, g(JX,JY) = g(X,Y), ∇J = 0 at the sample points.
inline CheckRecord check_kaehler(const KaehlerManifold& l, const std::vector<Vec>& points, const Settings& s = {}) {
  CheckRecord rec("kaehler", "Kaehler structure", s.first_order);
  const ChartManifold& m = l.manifold;
  const auto n = static_cast<Eigen::Index>(m.dim());
  for (const Vec& p : points) {
    const Mat j = l.complex_structure.at(p);
    const Mat g = m.metric_at(p);
    rec.absorb((j * j + Mat::Identity(n, n)).cwiseAbs().maxCoeff());
    rec.absorb((j.transpose() * g * j - g).cwiseAbs().maxCoeff());
    const Christoffel gamma = christoffel(m, p, s);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vec e = Vec::Unit(n, i);
      const Mat gx = gamma.along(e);
      const Mat nabla_j = l.complex_structure.derivative(p, e, s) + gx * j - j * gx;
      rec.absorb(nabla_j.cwiseAbs().maxCoeff());
    }
    ++rec.points_sampled;
  }
  return rec;
}

/// I ×_f L with f(t) = s·e^t on the chart (t, coordinates of L).
inline WarpedProduct kaehler_warped_product(const KaehlerManifold& l, double s, double t_lo = -1.0,
                                            double t_hi = 1.0, const Settings& settings = {}) {
  if (!(s > 0.0)) throw GeometryError(ErrorKind::precondition, "warping constant s must be positive");
  const ScalarField f = ScalarField::generic(1, [s](const auto& t) { return s * exp(t[0]); });
  return make_warped(interval(t_lo, t_hi), l.manifold, f, settings);
}

/// Kenmotsu structure on I ×_{s e^t} L: ξ = ∂t, η = dt, φ the lift of J annihilating ∂t.
inline KenmotsuManifold kenmotsu_from_kaehler(const KaehlerManifold& l, double s, double t_lo = -1.0,
                                              double t_hi = 1.0, const Settings& settings = {}) {
  if (!(s > 0.0)) throw GeometryError(ErrorKind::precondition, "warping constant s must be positive");
  const CheckRecord k = check_kaehler(l, sample_points(l.manifold, settings), settings);
  if (!k.passed())
    throw GeometryError(ErrorKind::precondition,
                        "input is not Kaehler (residual " + std::to_string(k.max_residual) + ")");
  const WarpedProduct w = kaehler_warped_product(l, s, t_lo, t_hi, settings);
  const std::size_t n = w.product.dim();
  const MatrixField j = l.complex_structure;
  MatrixField phi(Mapping::derived(
                      n, n * n,
                      [j, n](const auto& x) {
                        using T = typename std::decay_t<decltype(x)>::value_type;
                        const std::vector<T> tail(x.begin() + 1, x.end());
                        const std::vector<T> jm = j.eval(tail);
                        std::vector<T> out(n * n, T(0.0));
                        for (std::size_t r = 1; r < n; ++r)
                          for (std::size_t c = 1; c < n; ++c) out[r * n + c] = jm[(r - 1) * (n - 1) + (c - 1)];
                        return out;
                      },
                      j.mapping()),
                  n, n);
  AlmostContactStructure st(w.product, phi, VectorField::coordinate(n, 0),
                            CovectorField::constant(Vec::Unit(static_cast<Eigen::Index>(n), 0)));
  return KenmotsuManifold::certify(std::move(st), settings);
}

}  // namespace subgeom
