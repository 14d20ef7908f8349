#pragma once

#include <Eigen/SVD>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subgeom/calculus.hpp"
#include "subgeom/check.hpp"
#include "subgeom/contact.hpp"
#include "subgeom/function.hpp"
#include "subgeom/manifold.hpp"

namespace subgeom {

/// F: M → N given in coordinates.
struct SmoothMap {
  ChartManifold source;
  ChartManifold target;
  Mapping fn;
  std::string label;

  SmoothMap() = default;
  SmoothMap(ChartManifold src, ChartManifold tgt, Mapping f, std::string name)
      : source(std::move(src)), target(std::move(tgt)), fn(std::move(f)), label(std::move(name)) {
    if (fn.in_dim() != source.dim() || fn.out_dim() != target.dim())
      throw GeometryError(ErrorKind::construction, "map dimensions do not match source/target");
  }

  template <class F>
  static SmoothMap generic(ChartManifold src, ChartManifold tgt, F f, std::string name) {
    const std::size_t in = src.dim(), out = tgt.dim();
    return SmoothMap(std::move(src), std::move(tgt), Mapping::generic(in, out, std::move(f)), std::move(name));
  }

  Vec operator()(const Vec& p) const { return fn(p); }

  /// dim N × dim M matrix of F_* at p.
  Mat jacobian(const Vec& p, const Settings& s = {}) const {
    source.require_inside(p);
    return fn.jacobian(p, s.fd_step);
  }
};

/// F_* v at p (Jacobian–vector product).
inline Vec differential(const SmoothMap& f, const Vec& p, const Vec& v, const Settings& s = {}) {
  f.source.require_inside(p);
  return f.fn.directional(p, v, s.fd_step);
}

inline Vec singular_values(const Mat& j) {
  if (j.size() == 0) return Vec();
  return Eigen::JacobiSVD<Mat>(j).singularValues();
}

inline std::size_t numerical_rank(const Vec& sv, double rel) {
  if (sv.size() == 0) return 0;
  const double top = sv.maxCoeff();
  if (!(top > 0.0)) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rel * top) ++r;
  return r;
}

/// Number of singular values above threshold · σ_max.
inline std::size_t jacobian_rank(const SmoothMap& f, const Vec& p, double threshold) {
  return numerical_rank(singular_values(f.jacobian(p)), threshold);
}

/// g_M-orthonormal bases of ker F_* and its orthogonal complement at one point.
struct SubmersionSplit {
  Vec base;
  Frame vertical;
  Frame horizontal;
  Mat jacobian;
  Mat metric;  ///< g_M at base
  Vec singular_values;

  std::size_t rank() const { return horizontal.size(); }
  std::size_t fiber_dim() const { return vertical.size(); }

  /// P_V = Σ v_i v_iᵀ g.
  Mat vertical_projector() const {
    const auto n = static_cast<Eigen::Index>(metric.rows());
    Mat p = Mat::Zero(n, n);
    for (const Vec& v : vertical.vectors) p += v * (metric * v).transpose();
    return p;
  }
  Mat horizontal_projector() const {
    const auto n = static_cast<Eigen::Index>(metric.rows());
    return Mat::Identity(n, n) - vertical_projector();
  }
  Vec vertical_part(const Vec& x) const {
    Vec out = Vec::Zero(x.size());
    for (const Vec& v : vertical.vectors) out += v.dot(metric * x) * v;
    return out;
  }
  Vec horizontal_part(const Vec& x) const { return x - vertical_part(x); }
  double inner(const Vec& a, const Vec& b) const { return a.dot(metric * b); }
  double norm(const Vec& a) const { return std::sqrt(std::max(0.0, inner(a, a))); }
};

/// Kernel by SVD (ascending singular value order), complement via g⁻¹·(row space),
/// both Gram–Schmidt orthonormalized in g_M.
inline SubmersionSplit split(const SmoothMap& f, const Vec& p, const Settings& s = {},
                             std::optional<std::size_t> expected_rank = std::nullopt) {
  SubmersionSplit out;
  out.base = p;
  out.jacobian = f.jacobian(p, s);
  out.metric = f.source.metric_at(p);
  const auto n = static_cast<Eigen::Index>(f.source.dim());
  Eigen::JacobiSVD<Mat> svd(out.jacobian, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const auto r = static_cast<Eigen::Index>(numerical_rank(out.singular_values, s.rank_rel));
  if (expected_rank && static_cast<std::size_t>(r) != *expected_rank)
    throw GeometryError(ErrorKind::instability, "rank of F_* changes across the sample (" + std::to_string(r) +
                                                    " vs " + std::to_string(*expected_rank) + ")");
  const Mat& v = svd.matrixV();
  Frame vert{p, {}, false};
  for (Eigen::Index c = n - 1; c >= r; --c) vert.vectors.push_back(v.col(c));
  const Mat ginv = ChartManifold::guarded_inverse(out.metric, s);
  Frame hor{p, {}, false};
  for (Eigen::Index c = 0; c < r; ++c) hor.vectors.push_back(ginv * v.col(c));
  out.vertical = gram_schmidt(vert, out.metric, s);
  out.horizontal = gram_schmidt(hor, out.metric, s);
  return out;
}

/// p ↦ 𝒱(X(p)); differentiated by central differences.
inline VectorField vertical_field(const SmoothMap& f, const VectorField& x, const Settings& s = {}) {
  return VectorField::real(x.dim(), [f, x, s](const Vec& p) { return split(f, p, s).vertical_part(x.at(p)); });
}

/// p ↦ ℋ(X(p)); differentiated by central differences.
inline VectorField horizontal_field(const SmoothMap& f, const VectorField& x, const Settings& s = {}) {
  return VectorField::real(x.dim(), [f, x, s](const Vec& p) { return split(f, p, s).horizontal_part(x.at(p)); });
}

/// max |g_M(X,Y) − g_N(F_*X, F_*Y)| over horizontal frame pairs.
inline CheckRecord is_riemannian_submersion(const SmoothMap& f, const std::vector<Vec>& points, const Settings& s = {}) {
  CheckRecord rec("riemannian_submersion", "S1-S2", s.algebraic);
  for (const Vec& p : points) {
    ++rec.points_sampled;
    const SubmersionSplit sp = split(f, p, s);
    if (sp.rank() != f.target.dim()) {
      rec.absorb(std::numeric_limits<double>::infinity());
      rec.note = "rank deficient: rank " + std::to_string(sp.rank()) + " < dim N " + std::to_string(f.target.dim());
      continue;
    }
    const Mat gn = f.target.metric_at(f(p));
    const Mat h = sp.horizontal.matrix(f.source.dim());
    const Mat pushed = sp.jacobian * h;
    const Mat gram_m = h.transpose() * sp.metric * h;
    const Mat gram_n = pushed.transpose() * gn * pushed;
    rec.absorb((gram_m - gram_n).cwiseAbs().maxCoeff());
  }
  return rec;
}

/// λ(p) with g_M(X,Y) = e^{2λ} g_N(F_*X, F_*Y) on horizontal vectors.
/// Throws a rank error below maximal rank and an anisotropy error when the
/// horizontal stretch factors differ by more than settings.conformal_spread.
inline double conformal_dilation(const SmoothMap& f, const Vec& p, const Settings& s = {}) {
  const SubmersionSplit sp = split(f, p, s);
  if (sp.rank() != f.target.dim() || sp.rank() == 0)
    throw GeometryError(ErrorKind::rank, "F_* does not have maximal rank at the point");
  const Mat gn = f.target.metric_at(f(p));
  const Mat pushed = sp.jacobian * sp.horizontal.matrix(f.source.dim());
  // Rayleigh ratios g_N(F_*h, F_*h) / g_M(h, h) over the horizontal space; g_M(h,h) = 1.
  const Vec q = Eigen::SelfAdjointEigenSolver<Mat>(pushed.transpose() * gn * pushed).eigenvalues();
  const double mean = q.mean();
  if (!(q.minCoeff() > 0.0)) throw GeometryError(ErrorKind::rank, "horizontal vectors collapse under F_*");
  if ((q.maxCoeff() - q.minCoeff()) / mean > s.conformal_spread)
    throw GeometryError(ErrorKind::anisotropy, "F_* is not conformal on the horizontal space");
  return -0.5 * std::log(mean);
}

/// Conformality at every sample point; residual is the relative stretch spread.
inline CheckRecord is_horizontally_conformal(const SmoothMap& f, const std::vector<Vec>& points, const Settings& s = {}) {
  CheckRecord rec("horizontally_conformal", "horizontally conformal submersion", s.conformal_spread);
  double lo = 1e300, hi = -1e300;
  for (const Vec& p : points) {
    ++rec.points_sampled;
    const SubmersionSplit sp = split(f, p, s);
    if (sp.rank() != f.target.dim() || sp.rank() == 0) {
      rec.absorb(std::numeric_limits<double>::infinity());
      rec.note = "rank deficient";
      continue;
    }
    const Mat gn = f.target.metric_at(f(p));
    const Mat pushed = sp.jacobian * sp.horizontal.matrix(f.source.dim());
    const Vec q = Eigen::SelfAdjointEigenSolver<Mat>(pushed.transpose() * gn * pushed).eigenvalues();
    rec.absorb((q.maxCoeff() - q.minCoeff()) / q.mean());
    const double lambda = -0.5 * std::log(q.mean());
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
  }
  if (rec.points_sampled > 0) rec.metrics = {{"lambda_min", lo}, {"lambda_max", hi}};
  return rec;
}

/// max ‖𝒱(φv)‖ over unit vertical v; pass iff φ(ker F_*) ⊆ (ker F_*)^⊥.
inline CheckRecord is_anti_invariant(const SmoothMap& f, const AlmostContactStructure& st,
                                     const std::vector<Vec>& points, const Settings& s = {}) {
  CheckRecord rec("anti_invariant", "Definition 1", s.anti_invariance);
  for (const Vec& p : points) {
    ++rec.points_sampled;
    const SubmersionSplit sp = split(f, p, s);
    const Mat phi = st.phi_at(p);
    for (const Vec& v : sp.vertical.vectors) rec.absorb(sp.norm(sp.vertical_part(phi * v)));
  }
  return rec;
}

/// φX = BX + CX for horizontal X: B the vertical part, C the rest.
struct PhiDecomposition {
  Vec b;
  Vec c;
};

inline PhiDecomposition phi_decompose(const SmoothMap& f, const AlmostContactStructure& st, const TangentVector& x,
                                      const Settings& s = {}) {
  const SubmersionSplit sp = split(f, x.base, s);
  const double nx = sp.norm(x.components);
  if (sp.norm(sp.vertical_part(x.components)) > s.anti_invariance * std::max(1.0, nx))
    throw GeometryError(ErrorKind::precondition, "phi_decompose needs a horizontal vector");
  const Vec fx = st.phi_at(x.base) * x.components;
  const Vec b = sp.vertical_part(fx);
  return {b, fx - b};
}

namespace detail {

/// Orthonormal basis of φ(ker F_*) (horizontal part) followed by one of its
/// complement μ inside (ker F_*)^⊥.
inline std::pair<std::vector<Vec>, std::vector<Vec>> phi_kernel_and_mu(const SubmersionSplit& sp, const Mat& phi) {
  std::vector<Vec> image;
  for (const Vec& v : sp.vertical.vectors) image.push_back(sp.horizontal_part(phi * v));
  std::vector<Vec> w = orthonormal_basis(image, sp.metric);
  const std::size_t k = w.size();
  std::vector<Vec> all = w;
  all.insert(all.end(), sp.horizontal.vectors.begin(), sp.horizontal.vectors.end());
  std::vector<Vec> basis = orthonormal_basis(all, sp.metric);
  std::vector<Vec> mu(basis.begin() + static_cast<std::ptrdiff_t>(std::min(k, basis.size())), basis.end());
  return {w, mu};
}

}  // namespace detail

/// Orthonormal basis of μ, the complement of φ(ker F_*) in (ker F_*)^⊥.
inline Frame mu_space(const SmoothMap& f, const AlmostContactStructure& st, const Vec& p, const Settings& s = {}) {
  const SubmersionSplit sp = split(f, p, s);
  auto [w, mu] = detail::phi_kernel_and_mu(sp, st.phi_at(p));
  return {p, mu, true};
}

enum class XiPosition { vertical, horizontal, mixed };

inline const char* to_string(XiPosition x) {
  switch (x) {
    case XiPosition::vertical: return "vertical";
    case XiPosition::horizontal: return "horizontal";
    case XiPosition::mixed: return "mixed";
  }
  return "mixed";
}

inline XiPosition xi_position(const SmoothMap& f, const AlmostContactStructure& st, const std::vector<Vec>& points,
                              const Settings& s = {}) {
  bool vertical = true, horizontal = true;
  for (const Vec& p : points) {
    const SubmersionSplit sp = split(f, p, s);
    const Vec xi = st.xi_at(p);
    const double len = std::max(sp.norm(xi), 1e-300);
    if (sp.norm(sp.horizontal_part(xi)) / len > s.anti_invariance) vertical = false;
    if (sp.norm(sp.vertical_part(xi)) / len > s.anti_invariance) horizontal = false;
  }
  if (vertical && !horizontal) return XiPosition::vertical;
  if (horizontal && !vertical) return XiPosition::horizontal;
  return XiPosition::mixed;
}

/// True when μ = span{ξ} at every point, i.e. (ker F_*)^⊥ = φ ker F_* ⊕ {ξ}.
inline bool mu_is_span_xi(const SmoothMap& f, const AlmostContactStructure& st, const std::vector<Vec>& points,
                          const Settings& s = {}) {
  for (const Vec& p : points) {
    const Frame mu = mu_space(f, st, p, s);
    if (mu.size() != 1) return false;
    const Vec xi = st.xi_at(p);
    const double c = std::abs(f.source.inner(p, mu.vectors[0], xi)) / f.source.norm(p, xi);
    if (std::abs(c - 1.0) > s.anti_invariance) return false;
  }
  return true;
}

/// dim(ker F_*) + 1 = dim N under the hypotheses of the dimension theorem.
inline CheckRecord check_dim_theorem(const SmoothMap& f, const AlmostContactStructure& st,
                                     const std::vector<Vec>& points, const Settings& s = {}) {
  CheckRecord rec("dimension_theorem", "Theorem 1", 0.5);
  rec.points_sampled = points.size();
  if (points.empty()) return rec.inapplicable("no sample points");
  if (!is_riemannian_submersion(f, points, s).passed()) return rec.inapplicable("map is not a Riemannian submersion");
  if (!is_anti_invariant(f, st, points, s).passed()) return rec.inapplicable("map is not anti-invariant");
  if (xi_position(f, st, points, s) != XiPosition::horizontal) return rec.inapplicable("xi is not horizontal");
  if (!mu_is_span_xi(f, st, points, s)) return rec.inapplicable("horizontal space is not phi(ker F*) + span{xi}");
  const SubmersionSplit sp = split(f, points.front(), s);
  const double m = (static_cast<double>(f.source.dim()) - 1.0) / 2.0;
  const double n = static_cast<double>(f.target.dim());
  rec.metrics = {{"m", m}, {"n", n}, {"fiber_dim", static_cast<double>(sp.fiber_dim())}};
  rec.absorb(static_cast<double>(sp.fiber_dim()) + 1.0 - n);
  rec.absorb(m + 1.0 - n);
  return rec;
}

}  // namespace subgeom
