#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "subgeom/function.hpp"
#include "subgeom/manifold.hpp"

namespace subgeom {

/// M₁ ×_f M₂ with metric g₁ + f² g₂, realized on the product chart
/// (base coordinates first, then fiber coordinates).
struct WarpedProduct {
  ChartManifold base;
  ChartManifold fiber;
  ScalarField warp;  ///< f on base coordinates
  ChartManifold product;

  std::size_t base_dim() const { return base.dim(); }
  std::size_t fiber_dim() const { return fiber.dim(); }

  Vec base_part(const Vec& x) const { return x.head(static_cast<Eigen::Index>(base_dim())); }
  Vec fiber_part(const Vec& x) const { return x.tail(static_cast<Eigen::Index>(fiber_dim())); }

  /// Lift of a base field: (X₁(x₁), 0).
  VectorField lift_base(const VectorField& x1) const {
    const std::size_t b = base_dim(), k = fiber_dim();
    return VectorField(Mapping::derived(
        b + k, b + k,
        [x1, b, k](const auto& x) {
          using T = typename std::decay_t<decltype(x)>::value_type;
          std::vector<T> head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(b));
          std::vector<T> out = x1.eval(head);
          out.resize(b + k, T(0.0));
          return out;
        },
        x1));
  }

  /// Lift of a fiber field: (0, X₂(x₂)).
  VectorField lift_fiber(const VectorField& x2) const {
    const std::size_t b = base_dim(), k = fiber_dim();
    return VectorField(Mapping::derived(
        b + k, b + k,
        [x2, b, k](const auto& x) {
          using T = typename std::decay_t<decltype(x)>::value_type;
          std::vector<T> tail(x.begin() + static_cast<std::ptrdiff_t>(b), x.end());
          const std::vector<T> v = x2.eval(tail);
          std::vector<T> out(b, T(0.0));
          out.insert(out.end(), v.begin(), v.end());
          return out;
        },
        x2));
  }

  /// f pulled back to the product chart.
  ScalarField warp_on_product() const {
    const std::size_t b = base_dim(), k = fiber_dim();
    const ScalarField f = warp;
    return ScalarField(Mapping::derived(
        b + k, 1,
        [f, b](const auto& x) {
          using T = typename std::decay_t<decltype(x)>::value_type;
          std::vector<T> head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(b));
          return std::vector<T>{f.eval(head)};
        },
        f));
  }
};

/// Builds M₁ ×_f M₂. Throws a construction error if f is not positive on the base.
inline WarpedProduct make_warped(const ChartManifold& m1, const ChartManifold& m2, const ScalarField& f,
                                 const Settings& s = {}) {
  if (f.dim() != m1.dim()) throw GeometryError(ErrorKind::construction, "warping function must live on the base");
  Settings probe = s;
  probe.samples = std::max<std::size_t>(s.samples, 64);
  std::vector<Vec> pts = PointSampler(m1, probe).take(probe.samples);
  pts.push_back(m1.domain().lo);
  pts.push_back(m1.domain().hi);
  for (const Vec& p : pts) {
    const double v = f.at(p);
    if (!(v > 0.0)) throw GeometryError(ErrorKind::construction, "warping function must be positive on the base");
  }

  const std::size_t b = m1.dim(), k = m2.dim(), n = b + k;
  const MatrixField g1 = m1.metric(), g2 = m2.metric();
  MatrixField g(Mapping::derived(
                    n, n * n,
                    [g1, g2, f, b, k, n](const auto& x) {
                      using T = typename std::decay_t<decltype(x)>::value_type;
                      std::vector<T> x1(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(b));
                      std::vector<T> x2(x.begin() + static_cast<std::ptrdiff_t>(b), x.end());
                      const std::vector<T> a = g1.eval(x1);
                      const std::vector<T> c = g2.eval(x2);
                      const T fv = f.eval(x1);
                      const T f2 = fv * fv;
                      std::vector<T> out(n * n, T(0.0));
                      for (std::size_t i = 0; i < b; ++i)
                        for (std::size_t j = 0; j < b; ++j) out[i * n + j] = a[i * b + j];
                      for (std::size_t i = 0; i < k; ++i)
                        for (std::size_t j = 0; j < k; ++j) out[(b + i) * n + (b + j)] = f2 * c[i * k + j];
                      return out;
                    },
                    g1.mapping(), g2.mapping(), f.mapping()),
                n, n);
  ChartManifold product(n, Box::product(m1.domain(), m2.domain()), g,
                        m1.label() + " x_f " + m2.label());
  return {m1, m2, f, product};
}

/// Flat Euclidean space on a box.
inline ChartManifold flat_space(std::size_t dim, const Box& box, const std::string& label) {
  return ChartManifold(dim, box,
                       MatrixField::constant(dim, Mat::Identity(static_cast<Eigen::Index>(dim),
                                                                static_cast<Eigen::Index>(dim))),
                       label);
}

inline ChartManifold flat_space(std::size_t dim, double lo = -1.0, double hi = 1.0) {
  return flat_space(dim, Box::cube(dim, lo, hi), "R^" + std::to_string(dim));
}

/// The interval I = [lo, hi] with metric dt².
inline ChartManifold interval(double lo = -1.0, double hi = 1.0) {
  return flat_space(1, Box::cube(1, lo, hi), "I");
}

}  // namespace subgeom
