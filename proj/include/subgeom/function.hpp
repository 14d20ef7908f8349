#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "subgeom/dual.hpp"
#include "subgeom/settings.hpp"

namespace subgeom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace detail {

inline std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

inline Vec to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace detail

/// A smooth function R^in -> R^out that can be evaluated on doubles and,
/// when built from generic code, on dual numbers.
///
/// Differentiation uses dual numbers when available and falls back to
/// central differences otherwise (e.g. for fields that go through an SVD).
class Mapping {
 public:
  using RealFn = std::function<Vec(const Vec&)>;
  using DualFn = std::function<std::vector<Dual>(const std::vector<Dual>&)>;

  Mapping() = default;
  Mapping(std::size_t in, std::size_t out, RealFn real, DualFn dual = {})
      : in_(in), out_(out), real_(std::move(real)), dual_(std::move(dual)) {}

  /// Wraps a generic callable `f(const std::vector<T>&) -> std::vector<T>`
  /// usable with T = double and T = Dual.
  template <class F>
  static Mapping generic(std::size_t in, std::size_t out, F f) {
    RealFn real = [f, out](const Vec& p) {
      std::vector<double> y = f(detail::to_std(p));
      if (y.size() != out) throw GeometryError(ErrorKind::construction, "mapping returned wrong size");
      return detail::to_eigen(y);
    };
    DualFn dual = [f](const std::vector<Dual>& x) { return f(x); };
    return Mapping(in, out, std::move(real), std::move(dual));
  }

  /// Like generic(), but the dual route is kept only if every part supports it.
  template <class F, class... Parts>
  static Mapping derived(std::size_t in, std::size_t out, F f, const Parts&... parts) {
    Mapping m = generic(in, out, std::move(f));
    if (!(parts.differentiable() && ...)) m.dual_ = {};
    return m;
  }

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  bool differentiable() const { return static_cast<bool>(dual_); }
  explicit operator bool() const { return static_cast<bool>(real_); }

  Vec operator()(const Vec& p) const { return real_(p); }

  /// Generic evaluation so composite mappings can be written once.
  template <class T>
  std::vector<T> eval(const std::vector<T>& x) const {
    if constexpr (std::is_same_v<T, double>) {
      return detail::to_std(real_(detail::to_eigen(x)));
    } else {
      if (!dual_) throw GeometryError(ErrorKind::undefined, "mapping has no dual-number route");
      return dual_(x);
    }
  }

  /// d/ds f(p + s·v) at s = 0.
  Vec directional(const Vec& p, const Vec& v, double fd_step) const {
    if (dual_) {
      std::vector<Dual> x(static_cast<std::size_t>(p.size()));
      for (Eigen::Index i = 0; i < p.size(); ++i) x[i] = Dual(p[i], v[i]);
      const std::vector<Dual> y = dual_(x);
      Vec d(static_cast<Eigen::Index>(y.size()));
      for (std::size_t k = 0; k < y.size(); ++k) d[k] = y[k].der;
      return d;
    }
    const double vn = detail::inf_norm(v);
    if (vn == 0.0) return Vec::Zero(static_cast<Eigen::Index>(out_));
    const double h = fd_step * (1.0 + detail::inf_norm(p)) / vn;
    return (real_(p + h * v) - real_(p - h * v)) / (2.0 * h);
  }

  /// out × in matrix of first partial derivatives.
  Mat jacobian(const Vec& p, double fd_step) const {
    const auto n = static_cast<Eigen::Index>(in_);
    Mat jac(static_cast<Eigen::Index>(out_), n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (dual_) {
        jac.col(i) = directional(p, Vec::Unit(n, i), fd_step);
      } else {
        const double h = fd_step * (1.0 + std::abs(p[i]));
        Vec a = p, b = p;
        a[i] += h;
        b[i] -= h;
        jac.col(i) = (real_(a) - real_(b)) / (2.0 * h);
      }
    }
    return jac;
  }

 private:
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  RealFn real_;
  DualFn dual_;
};

/// Vector field given by coordinate components.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Mapping m) : map_(std::move(m)) {
    if (map_.in_dim() != map_.out_dim())
      throw GeometryError(ErrorKind::construction, "vector field must map R^n to R^n");
  }

  template <class F>
  static VectorField generic(std::size_t dim, F f) {
    return VectorField(Mapping::generic(dim, dim, std::move(f)));
  }
  static VectorField real(std::size_t dim, Mapping::RealFn f) {
    return VectorField(Mapping(dim, dim, std::move(f)));
  }
  static VectorField constant(const Vec& c) {
    const std::vector<double> cs = detail::to_std(c);
    return generic(cs.size(), [cs](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::value_type;
      return std::vector<T>(cs.begin(), cs.end());
    });
  }
  static VectorField coordinate(std::size_t dim, std::size_t i) {
    return constant(Vec::Unit(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(i)));
  }
  static VectorField zero(std::size_t dim) { return constant(Vec::Zero(static_cast<Eigen::Index>(dim))); }
  /// x ↦ c + A x.
  static VectorField affine(const Vec& c, const Mat& a) {
    const std::vector<double> cs = detail::to_std(c);
    const Mat am = a;
    return generic(cs.size(), [cs, am](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::value_type;
      std::vector<T> out(cs.begin(), cs.end());
      for (std::size_t r = 0; r < cs.size(); ++r)
        for (std::size_t k = 0; k < cs.size(); ++k) out[r] += am(r, k) * x[k];
      return out;
    });
  }

  std::size_t dim() const { return map_.in_dim(); }
  bool differentiable() const { return map_.differentiable(); }
  const Mapping& mapping() const { return map_; }

  Vec at(const Vec& p) const { return map_(p); }
  template <class T>
  std::vector<T> eval(const std::vector<T>& x) const { return map_.eval(x); }

  /// Componentwise derivative of the field along v at p.
  Vec derivative(const Vec& p, const Vec& v, const Settings& s = {}) const {
    return map_.directional(p, v, s.fd_step);
  }

 private:
  Mapping map_;
};

/// Covector (1-form) field given by coordinate components.
class CovectorField {
 public:
  CovectorField() = default;
  explicit CovectorField(Mapping m) : map_(std::move(m)) {}
  template <class F>
  static CovectorField generic(std::size_t dim, F f) {
    return CovectorField(Mapping::generic(dim, dim, std::move(f)));
  }
  static CovectorField constant(const Vec& c) { return CovectorField(VectorField::constant(c).mapping()); }

  std::size_t dim() const { return map_.in_dim(); }
  bool differentiable() const { return map_.differentiable(); }
  const Mapping& mapping() const { return map_; }
  Vec at(const Vec& p) const { return map_(p); }
  template <class T>
  std::vector<T> eval(const std::vector<T>& x) const { return map_.eval(x); }

 private:
  Mapping map_;
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(Mapping m) : map_(std::move(m)) {
    if (map_.out_dim() != 1) throw GeometryError(ErrorKind::construction, "scalar field must be R^n -> R");
  }

  /// `f(const std::vector<T>&) -> T`.
  template <class F>
  static ScalarField generic(std::size_t dim, F f) {
    return ScalarField(Mapping::generic(dim, 1, [f](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::value_type;
      return std::vector<T>{static_cast<T>(f(x))};
    }));
  }
  static ScalarField constant(std::size_t dim, double c) {
    return generic(dim, [c](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::value_type;
      return T(c);
    });
  }

  std::size_t dim() const { return map_.in_dim(); }
  bool differentiable() const { return map_.differentiable(); }
  const Mapping& mapping() const { return map_; }
  double at(const Vec& p) const { return map_(p)[0]; }
  template <class T>
  T eval(const std::vector<T>& x) const { return map_.eval(x)[0]; }

  /// Coordinate differential (∂_1 f, ..., ∂_n f).
  Vec differential(const Vec& p, const Settings& s = {}) const {
    return map_.jacobian(p, s.fd_step).row(0).transpose();
  }
  double derivative(const Vec& p, const Vec& v, const Settings& s = {}) const {
    return map_.directional(p, v, s.fd_step)[0];
  }

 private:
  Mapping map_;
};

/// Matrix-valued field, stored row-major in the underlying mapping.
class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(Mapping m, std::size_t rows, std::size_t cols) : map_(std::move(m)), rows_(rows), cols_(cols) {
    if (map_.out_dim() != rows * cols) throw GeometryError(ErrorKind::construction, "matrix field size mismatch");
  }

  /// `f(const std::vector<T>&) -> std::vector<T>` of length rows*cols, row-major.
  template <class F>
  static MatrixField generic(std::size_t in, std::size_t rows, std::size_t cols, F f) {
    return MatrixField(Mapping::generic(in, rows * cols, std::move(f)), rows, cols);
  }
  static MatrixField constant(std::size_t in, const Mat& m) {
    std::vector<double> entries;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
    return generic(in, static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                   [entries](const auto& x) {
                     using T = typename std::decay_t<decltype(x)>::value_type;
                     return std::vector<T>(entries.begin(), entries.end());
                   });
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return map_.in_dim(); }
  bool differentiable() const { return map_.differentiable(); }
  const Mapping& mapping() const { return map_; }

  Mat at(const Vec& p) const { return reshape(map_(p)); }
  template <class T>
  std::vector<T> eval(const std::vector<T>& x) const { return map_.eval(x); }

  /// Entrywise derivative along v.
  Mat derivative(const Vec& p, const Vec& v, const Settings& s = {}) const {
    return reshape(map_.directional(p, v, s.fd_step));
  }

 private:
  Mat reshape(const Vec& flat) const {
    Mat m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = flat[r * cols_ + c];
    return m;
  }

  Mapping map_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

// Field algebra that keeps the dual-number route whenever every operand has one.

/// Pointwise matrix-vector product p ↦ A(p) X(p).
inline VectorField apply(const MatrixField& a, const VectorField& x) {
  const std::size_t n = x.dim();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  return VectorField(Mapping::derived(
      n, rows,
      [a, x, rows, cols](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::value_type;
        const std::vector<T> m = a.eval(p);
        const std::vector<T> v = x.eval(p);
        std::vector<T> out(rows, T(0.0));
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cols; ++c) out[r] += m[r * cols + c] * v[c];
        return out;
      },
      a, x));
}

/// Pointwise pairing p ↦ ω(p)(X(p)).
inline ScalarField pair(const CovectorField& w, const VectorField& x) {
  return ScalarField(Mapping::derived(
      x.dim(), 1,
      [w, x](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::value_type;
        const std::vector<T> a = w.eval(p);
        const std::vector<T> b = x.eval(p);
        T s(0.0);
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return std::vector<T>{s};
      },
      w, x));
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(Mapping::derived(
      a.dim(), a.dim(),
      [a, b](const auto& p) {
        auto u = a.eval(p);
        const auto v = b.eval(p);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += v[i];
        return u;
      },
      a, b));
}

inline VectorField operator*(double k, const VectorField& a) {
  return VectorField(Mapping::derived(
      a.dim(), a.dim(),
      [a, k](const auto& p) {
        auto u = a.eval(p);
        for (auto& c : u) c *= k;
        return u;
      },
      a));
}

inline VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-1.0) * b; }

}  // namespace subgeom
