#pragma once

// Independent reference computations. These use only the real-valued routes
// (no dual numbers, no frames) and plain central differences.

#include <cmath>
#include <vector>

#include "subgeom/manifold.hpp"
#include "subgeom/submersion.hpp"

namespace oracle {

using subgeom::Mat;
using subgeom::Vec;

inline Mat raw_metric(const subgeom::ChartManifold& m, const Vec& p) {
  const Mat g = m.metric().at(p);
  return 0.5 * (g + g.transpose());
}

/// ∂_l g by central differences with step h.
inline std::vector<Mat> metric_partials(const subgeom::ChartManifold& m, const Vec& p, double h = 1e-5) {
  std::vector<Mat> out;
  for (Eigen::Index l = 0; l < p.size(); ++l) {
    Vec a = p, b = p;
    a[l] += h;
    b[l] -= h;
    out.push_back((raw_metric(m, a) - raw_metric(m, b)) / (2 * h));
  }
  return out;
}

/// Γ[k](i,j) from finite-difference metric partials and a plain matrix inverse.
inline std::vector<Mat> christoffel(const subgeom::ChartManifold& m, const Vec& p) {
  const auto n = p.size();
  const Mat ginv = raw_metric(m, p).inverse();
  const std::vector<Mat> dg = metric_partials(m, p);
  std::vector<Mat> gamma(static_cast<std::size_t>(n), Mat::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        double acc = 0.0;
        for (Eigen::Index l = 0; l < n; ++l)
          acc += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                               dg[static_cast<std::size_t>(l)](i, j));
        gamma[static_cast<std::size_t>(k)](i, j) = 0.5 * acc;
      }
  return gamma;
}

/// Jacobian of F by central differences.
inline Mat jacobian(const subgeom::SmoothMap& f, const Vec& p, double h = 1e-6) {
  const Vec f0 = f(p);
  Mat j(f0.size(), p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Vec a = p, b = p;
    a[i] += h;
    b[i] -= h;
    j.col(i) = (f(a) - f(b)) / (2 * h);
  }
  return j;
}

/// Tension field in coordinates:
/// τ^γ = g^{ij}(∂_i∂_j F^γ − Γ^k_{ij} ∂_k F^γ + Γ^N{}^γ_{αβ} ∂_i F^α ∂_j F^β).
inline Vec tension(const subgeom::SmoothMap& f, const Vec& p) {
  const auto n = p.size();
  const double h = 1e-4;
  const Vec f0 = f(p);
  const auto k = f0.size();
  std::vector<Mat> hess(static_cast<std::size_t>(k), Mat::Zero(n, n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Vec pp = p, pm = p, mp = p, mm = p;
      pp[i] += h, pp[j] += h;
      pm[i] += h, pm[j] -= h;
      mp[i] -= h, mp[j] += h;
      mm[i] -= h, mm[j] -= h;
      const Vec d = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
      for (Eigen::Index g = 0; g < k; ++g) hess[static_cast<std::size_t>(g)](i, j) = d[g];
    }
  const Mat jac = jacobian(f, p);
  const Mat ginv = raw_metric(f.source, p).inverse();
  const std::vector<Mat> gm = oracle::christoffel(f.source, p);
  const std::vector<Mat> gn = oracle::christoffel(f.target, f0);
  Vec tau = Vec::Zero(k);
  for (Eigen::Index g = 0; g < k; ++g) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        double term = hess[static_cast<std::size_t>(g)](i, j);
        for (Eigen::Index l = 0; l < n; ++l) term -= gm[static_cast<std::size_t>(l)](i, j) * jac(g, l);
        for (Eigen::Index a = 0; a < k; ++a)
          for (Eigen::Index b = 0; b < k; ++b)
            term += gn[static_cast<std::size_t>(g)](a, b) * jac(a, i) * jac(b, j);
        acc += ginv(i, j) * term;
      }
    tau[g] = acc;
  }
  return tau;
}

}  // namespace oracle
