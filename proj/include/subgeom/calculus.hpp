#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "subgeom/check.hpp"
#include "subgeom/function.hpp"
#include "subgeom/manifold.hpp"

namespace subgeom {

struct TangentVector {
  Vec base;
  Vec components;
};

/// Vectors attached to a common base point.
struct Frame {
  Vec base;
  std::vector<Vec> vectors;
  bool orthonormal = false;

  std::size_t size() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }

  /// Columns are the frame vectors.
  Mat matrix(std::size_t dim) const {
    Mat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
    return m;
  }
};

/// (∇_x Y)(p) for a vector x at p, with precomputed Christoffel symbols.
inline Vec covariant_derivative(const Christoffel& gamma, const Vec& x, const VectorField& y, const Vec& p,
                                const Settings& s = {}) {
  return y.derivative(p, x, s) + gamma.contract(x, y.at(p));
}

inline Vec covariant_derivative(const ChartManifold& m, const Vec& x, const VectorField& y, const Vec& p,
                                const Settings& s = {}) {
  return covariant_derivative(christoffel(m, p, s), x, y, p, s);
}

/// (∇_X Y)^k = X^i ∂_i Y^k + Γ^k_{ij} X^i Y^j.
inline Vec covariant_derivative(const ChartManifold& m, const VectorField& x, const VectorField& y, const Vec& p,
                                const Settings& s = {}) {
  return covariant_derivative(m, x.at(p), y, p, s);
}

/// [X,Y]^k = X^i ∂_i Y^k − Y^i ∂_i X^k.
inline Vec lie_bracket(const VectorField& x, const VectorField& y, const Vec& p, const Settings& s = {}) {
  return y.derivative(p, x.at(p), s) - x.derivative(p, y.at(p), s);
}

/// The field p ↦ [X,Y](p); derivatives of it go through central differences.
inline VectorField bracket_field(const VectorField& x, const VectorField& y, const Settings& s = {}) {
  return VectorField::real(x.dim(), [x, y, s](const Vec& p) { return lie_bracket(x, y, p, s); });
}

/// Modified Gram–Schmidt in the inner product g. Throws on dependent input.
inline Frame gram_schmidt(const Frame& f, const Mat& g, const Settings& s = {}) {
  Frame out{f.base, {}, true};
  for (const Vec& v : f.vectors) {
    const double n0 = std::sqrt(std::max(0.0, v.dot(g * v)));
    Vec w = v;
    for (const Vec& e : out.vectors) w -= e.dot(g * w) * e;
    const double n = std::sqrt(std::max(0.0, w.dot(g * w)));
    if (!(n0 > 0.0) || n <= s.degeneracy * n0)
      throw GeometryError(ErrorKind::degeneracy, "frame vectors are linearly dependent");
    out.vectors.push_back(w / n);
  }
  return out;
}

inline Frame gram_schmidt(const Frame& f, const ChartManifold& m, const Settings& s = {}) {
  return gram_schmidt(f, m.metric_at(f.base), s);
}

/// Rank-revealing variant: dependent (or zero) vectors are dropped instead of rejected.
inline std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vs, const Mat& g, double rel_tol = 1e-8) {
  std::vector<Vec> out;
  for (const Vec& v : vs) {
    const double n0 = std::sqrt(std::max(0.0, v.dot(g * v)));
    if (n0 < 1e-12) continue;
    Vec w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& e : out) w -= e.dot(g * w) * e;
    const double n = std::sqrt(std::max(0.0, w.dot(g * w)));
    if (n <= rel_tol * n0) continue;
    out.push_back(w / n);
  }
  return out;
}

/// Matrix of v ↦ ∇_v X at p (column i is ∇_{∂_i} X).
inline Mat covariant_jacobian(const ChartManifold& m, const VectorField& x, const Vec& p, const Settings& s = {}) {
  const Christoffel gamma = christoffel(m, p, s);
  const auto n = static_cast<Eigen::Index>(m.dim());
  Mat d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d.col(i) = covariant_derivative(gamma, Vec::Unit(n, i), x, p, s);
  return d;
}

/// div X = trace(v ↦ ∇_v X).
inline double divergence(const ChartManifold& m, const VectorField& x, const Vec& p, const Settings& s = {}) {
  return covariant_jacobian(m, x, p, s).trace();
}

/// (grad f)^k = g^{kl} ∂_l f.
inline Vec gradient(const ChartManifold& m, const ScalarField& f, const Vec& p, const Settings& s = {}) {
  return m.inverse_metric(p, s) * f.differential(p, s);
}

/// Symmetry and positive definiteness of the raw metric components at the given points.
inline CheckRecord check_metric(const ChartManifold& m, const std::vector<Vec>& points, const Settings& s = {}) {
  CheckRecord rec("metric_valid", "compatible Riemannian metric", s.algebraic);
  for (const Vec& p : points) {
    m.require_inside(p);
    const Mat g = m.metric().at(p);
    rec.absorb((g - g.transpose()).cwiseAbs().maxCoeff());
    const double lo = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (g + g.transpose())).eigenvalues().minCoeff();
    if (!(lo > s.algebraic)) rec.absorb(std::numeric_limits<double>::infinity());
    ++rec.points_sampled;
  }
  return rec;
}

}  // namespace subgeom
