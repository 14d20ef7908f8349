#pragma once

#include <cmath>
#include <string>

#include "subgeom/contact.hpp"
#include "subgeom/submersion.hpp"
#include "subgeom/warped.hpp"
#include "subgeom/warped_product.hpp"

namespace subgeom::builtins {

inline const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

/// N = R³ with e^{2z}(du² + dv²) + dz² on [−2,2]² × [−1,1].
inline ChartManifold example2_target() {
  MatrixField g = MatrixField::generic(3, 3, 3, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    const T e2 = exp(2.0 * x[2]);
    std::vector<T> m(9, T(0.0));
    m[0] = e2;
    m[4] = e2;
    m[8] = T(1.0);
    return m;
  });
  Box box = Box::cube(3, -2.0, 2.0);
  box.lo[2] = -1.0;
  box.hi[2] = 1.0;
  return ChartManifold(3, box, g, "N^3");
}

/// F(x1,x2,y1,y2,z) = ((x1+y2)/√2, (x2+y1)/√2, z).
inline SmoothMap example2_map() {
  return SmoothMap::generic(example_ken_structure().manifold, example2_target(),
                            [](const auto& x) {
                              using T = typename std::decay_t<decltype(x)>::value_type;
                              return std::vector<T>{(x[0] + x[3]) * inv_sqrt2, (x[1] + x[2]) * inv_sqrt2, x[4]};
                            },
                            "example2");
}

/// The same map without the z component, into flat R².
inline SmoothMap example3_map() {
  return SmoothMap::generic(example_ken_structure().manifold, flat_space(2, Box::cube(2, -2.0, 2.0), "R^2"),
                            [](const auto& x) {
                              using T = typename std::decay_t<decltype(x)>::value_type;
                              return std::vector<T>{(x[0] + x[3]) * inv_sqrt2, (x[1] + x[2]) * inv_sqrt2};
                            },
                            "example3");
}

/// ξ neither vertical nor horizontal: third component z − (x1−y2)/√2.
inline SmoothMap mixed_xi_map() {
  Box box = Box::cube(3, -2.0, 2.0);
  box.lo[2] = -3.0;
  box.hi[2] = 3.0;
  return SmoothMap::generic(example_ken_structure().manifold, flat_space(3, box, "R^3"),
                            [](const auto& x) {
                              using T = typename std::decay_t<decltype(x)>::value_type;
                              return std::vector<T>{(x[0] + x[3]) * inv_sqrt2, (x[1] + x[2]) * inv_sqrt2,
                                                    x[4] - (x[0] - x[3]) * inv_sqrt2};
                            },
                            "mixed-xi");
}

/// F = (x2, y2, z): kernel span{∂x1, ∂y1} is φ-invariant.
inline SmoothMap non_anti_invariant_map() {
  return SmoothMap::generic(example_ken_structure().manifold, flat_space(3, Box::cube(3, -1.0, 1.0), "R^3"),
                            [](const auto& x) {
                              using T = typename std::decay_t<decltype(x)>::value_type;
                              return std::vector<T>{x[1], x[3], x[4]};
                            },
                            "non-anti-invariant");
}

/// I ×_f R^k over t ∈ [t_lo, t_hi], fiber box [−1,1]^k.
inline WarpedProduct warped_over_flat(std::size_t k, const ScalarField& f, double t_lo = -1.0, double t_hi = 1.0,
                                      const Settings& s = {}) {
  return make_warped(interval(t_lo, t_hi), flat_space(k, -1.0, 1.0), f, s);
}

inline ScalarField exp_warp(double scale = 1.0) {
  return ScalarField::generic(1, [scale](const auto& t) { return scale * exp(t[0]); });
}

inline ScalarField sin_warp() {
  return ScalarField::generic(1, [](const auto& t) { return 2.0 + sin(t[0]); });
}

/// Kenmotsu structure on I ×_{e^t} C^n with the standard flat J.
inline KenmotsuManifold kenmotsu_over_flat(std::size_t complex_dim, const Settings& s = {}) {
  return kenmotsu_from_kaehler(flat_kaehler(complex_dim), 1.0, -1.0, 1.0, s);
}

/// R⁴ → R², (a,b,c,d) ↦ ((a+d)/√2, (b+c)/√2); a Riemannian submersion of flat spaces.
inline SmoothMap planar_projection() {
  return SmoothMap::generic(flat_space(4, -1.0, 1.0), flat_space(2, Box::cube(2, -2.0, 2.0), "R^2"),
                            [](const auto& x) {
                              using T = typename std::decay_t<decltype(x)>::value_type;
                              return std::vector<T>{(x[0] + x[3]) * inv_sqrt2, (x[1] + x[2]) * inv_sqrt2};
                            },
                            "planar");
}

/// 7-dimensional Kenmotsu I ×_{e^t} C³ mapped to I ×_{e^t} R⁴ by
/// (t, x1,x2,x3, y1,y2,y3) ↦ (t, (x1+y2)/√2, (x2+y1)/√2, x3, y3).
/// μ = span{ξ, ∂x3, ∂y3}, so C does not vanish.
inline SmoothMap seven_dim_map(const Settings& s = {}) {
  const ChartManifold source = kenmotsu_over_flat(3, s).manifold();
  Box fiber_box = Box::cube(4, -2.0, 2.0);
  const WarpedProduct target = make_warped(interval(-1.0, 1.0), flat_space(4, fiber_box, "R^4"), exp_warp(), s);
  return SmoothMap::generic(source, target.product,
                            [](const auto& x) {
                              using T = typename std::decay_t<decltype(x)>::value_type;
                              return std::vector<T>{x[0], (x[1] + x[5]) * inv_sqrt2, (x[2] + x[4]) * inv_sqrt2, x[3],
                                                    x[6]};
                            },
                            "seven-dim");
}

/// 3-dimensional Kenmotsu I ×_{e^t} C¹ mapped to I ×_{e^t} R by (t, x, y) ↦ (t, x).
inline SmoothMap three_dim_map(const Settings& s = {}) {
  const ChartManifold source = kenmotsu_over_flat(1, s).manifold();
  const WarpedProduct target = make_warped(interval(-1.0, 1.0), flat_space(1, -1.0, 1.0), exp_warp(), s);
  return SmoothMap::generic(source, target.product,
                            [](const auto& x) {
                              using T = typename std::decay_t<decltype(x)>::value_type;
                              return std::vector<T>{x[0], x[1]};
                            },
                            "three-dim");
}

/// C¹ with the conformally flat metric e^{2u}(dx² + dy²), u = 0.3x − 0.2y, and standard J.
inline KaehlerManifold conformal_kaehler() {
  MatrixField g = MatrixField::generic(2, 2, 2, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    const T e2 = exp(2.0 * (0.3 * x[0] - 0.2 * x[1]));
    return std::vector<T>{e2, T(0.0), T(0.0), e2};
  });
  return {ChartManifold(2, Box::cube(2, -1.0, 1.0), g, "conformal C^1"),
          MatrixField::constant(2, standard_complex_structure(1))};
}

}  // namespace subgeom::builtins
