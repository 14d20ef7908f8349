#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "subgeom/function.hpp"
#include "subgeom/settings.hpp"

namespace subgeom {

/// Axis-aligned coordinate box [lo, hi].
struct Box {
  Vec lo;
  Vec hi;

  static Box cube(std::size_t dim, double lo, double hi) {
    const auto n = static_cast<Eigen::Index>(dim);
    return {Vec::Constant(n, lo), Vec::Constant(n, hi)};
  }

  std::size_t dim() const { return static_cast<std::size_t>(lo.size()); }

  bool contains(const Vec& p) const {
    if (p.size() != lo.size()) return false;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (!(p[i] >= lo[i] && p[i] <= hi[i])) return false;
    return true;
  }

  /// Box shrunk by margin·(1 + |bound|) on every side.
  Box shrunk(double margin) const {
    Box b = *this;
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      b.lo[i] += margin * (1.0 + std::abs(lo[i]));
      b.hi[i] -= margin * (1.0 + std::abs(hi[i]));
    }
    return b;
  }

  bool nonempty() const {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (!(lo[i] < hi[i])) return false;
    return true;
  }

  /// Concatenation of two boxes (product chart).
  static Box product(const Box& a, const Box& b) {
    Box r;
    r.lo.resize(a.lo.size() + b.lo.size());
    r.hi.resize(a.lo.size() + b.lo.size());
    r.lo << a.lo, b.lo;
    r.hi << a.hi, b.hi;
    return r;
  }
};

/// Christoffel symbols Γ^k_{ij}, stored as one matrix per upper index k.
struct Christoffel {
  std::vector<Mat> upper;  // upper[k](i, j)

  std::size_t dim() const { return upper.size(); }

  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return upper[k](i, j); }

  /// Γ^k_{ij} X^i Y^j.
  Vec contract(const Vec& x, const Vec& y) const {
    Vec out(static_cast<Eigen::Index>(upper.size()));
    for (std::size_t k = 0; k < upper.size(); ++k) out[k] = x.dot(upper[k] * y);
    return out;
  }

  /// Matrix of the endomorphism v ↦ Γ(X, v), i.e. (Γ_X)^k_j = Γ^k_{ij} X^i.
  Mat along(const Vec& x) const {
    const auto n = static_cast<Eigen::Index>(upper.size());
    Mat m(n, n);
    for (Eigen::Index k = 0; k < n; ++k) m.row(k) = x.transpose() * upper[k];
    return m;
  }
};

/// A Riemannian manifold covered by a single coordinate chart.
class ChartManifold {
 public:
  ChartManifold() = default;
  ChartManifold(std::size_t dim, Box domain, MatrixField metric, std::string label)
      : dim_(dim), domain_(std::move(domain)), metric_(std::move(metric)), label_(std::move(label)) {
    if (dim_ == 0) throw GeometryError(ErrorKind::construction, "manifold dimension must be positive");
    if (domain_.dim() != dim_ || domain_.hi.size() != domain_.lo.size())
      throw GeometryError(ErrorKind::construction, "domain box dimension mismatch");
    if (!domain_.nonempty()) throw GeometryError(ErrorKind::construction, "domain box is empty");
    if (metric_.rows() != dim_ || metric_.cols() != dim_ || metric_.dim() != dim_)
      throw GeometryError(ErrorKind::construction, "metric field must be dim x dim on R^dim");
  }

  std::size_t dim() const { return dim_; }
  const Box& domain() const { return domain_; }
  const MatrixField& metric() const { return metric_; }
  const std::string& label() const { return label_; }

  void require_inside(const Vec& p) const {
    if (!domain_.contains(p)) throw GeometryError(ErrorKind::domain, "point outside the domain of " + label_);
  }

  /// g_ij(p), symmetrized.
  Mat metric_at(const Vec& p) const {
    require_inside(p);
    const Mat g = metric_.at(p);
    return 0.5 * (g + g.transpose());
  }

  /// ∂_i g at p for every i (dual numbers when available).
  std::vector<Mat> metric_partials(const Vec& p, const Settings& s = {}) const {
    require_inside(p);
    std::vector<Mat> d;
    d.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const Mat m = metric_.derivative(p, Vec::Unit(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(i)), s);
      d.push_back(0.5 * (m + m.transpose()));
    }
    return d;
  }

  /// Inverse metric with a condition-number guard.
  Mat inverse_metric(const Vec& p, const Settings& s = {}) const { return guarded_inverse(metric_at(p), s); }

  static Mat guarded_inverse(const Mat& g, const Settings& s = {}) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(g);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0)) throw GeometryError(ErrorKind::conditioning, "metric is not positive definite");
    if (hi / lo > s.condition_limit) throw GeometryError(ErrorKind::conditioning, "metric condition number exceeds limit");
    return Eigen::PartialPivLU<Mat>(g).inverse();
  }

  double inner(const Vec& p, const Vec& u, const Vec& v) const { return u.dot(metric_at(p) * v); }
  double norm(const Vec& p, const Vec& u) const { return std::sqrt(std::max(0.0, inner(p, u, u))); }

  /// Box used for random sampling: the domain minus the differencing margin.
  Box sample_box(const Settings& s = {}) const {
    return domain_.shrunk(s.margin_factor * std::max(s.fd_step, s.curve_step));
  }

 private:
  std::size_t dim_ = 0;
  Box domain_;
  MatrixField metric_;
  std::string label_;
};

inline Mat metric_at(const ChartManifold& m, const Vec& p) { return m.metric_at(p); }

/// Γ^k_{ij} = ½ g^{kl}(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij}).
inline Christoffel christoffel(const ChartManifold& m, const Vec& p, const Settings& s = {}) {
  const std::size_t n = m.dim();
  const Mat ginv = m.inverse_metric(p, s);
  const std::vector<Mat> dg = m.metric_partials(p, s);
  // first kind: L(i, j, l) = ½(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij})
  Christoffel gamma;
  gamma.upper.assign(n, Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec first(static_cast<Eigen::Index>(n));
      for (std::size_t l = 0; l < n; ++l) first[l] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
      const Vec second = ginv * first;
      for (std::size_t k = 0; k < n; ++k) gamma.upper[k](i, j) = second[k];
    }
  }
  return gamma;
}

/// Deterministic uniform sampling in a manifold's sample box.
class PointSampler {
 public:
  PointSampler(const ChartManifold& m, const Settings& s = {}) : box_(m.sample_box(s)), rng_(s.seed) {
    if (!box_.nonempty()) throw GeometryError(ErrorKind::domain, "domain too small for the differencing margin");
  }

  Vec next() {
    Vec p(box_.lo.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      std::uniform_real_distribution<double> u(box_.lo[i], box_.hi[i]);
      p[i] = u(rng_);
    }
    return p;
  }

  std::vector<Vec> take(std::size_t count) {
    std::vector<Vec> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(next());
    return pts;
  }

 private:
  Box box_;
  std::mt19937_64 rng_;
};

inline std::vector<Vec> sample_points(const ChartManifold& m, const Settings& s = {}) {
  return PointSampler(m, s).take(s.samples);
}

/// Random vectors for property-style checks, seeded independently of points.
class VectorSampler {
 public:
  explicit VectorSampler(std::uint64_t seed) : rng_(seed) {}

  Vec gaussian(std::size_t dim) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = nd(rng_);
    return v;
  }

  /// Gaussian vector normalized to unit length in the metric g.
  Vec unit(const Mat& g) {
    for (;;) {
      Vec v = gaussian(static_cast<std::size_t>(g.rows()));
      const double n2 = v.dot(g * v);
      if (n2 > 1e-12) return v / std::sqrt(n2);
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace subgeom
