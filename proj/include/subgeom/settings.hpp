#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace subgeom {

/// Every numerical knob of the engine in one place.
struct Settings {
  // Differencing.
  double fd_step = 1e-5;      ///< central-difference step, scaled by (1 + |coordinate|)
  double curve_step = 1e-4;   ///< curve parameter step for the map's second fundamental form
  double margin_factor = 10;  ///< sampling margin = margin_factor * max(fd_step, curve_step) * (1 + |bound|)

  // Linear algebra.
  double condition_limit = 1e12;  ///< metric inversion guard
  double rank_rel = 1e-8;         ///< singular values below rank_rel * sigma_max count as zero
  double degeneracy = 1e-10;      ///< Gram-Schmidt relative residual below which input is dependent

  // Verdict tolerances.
  double algebraic = 1e-8;        ///< pointwise identities with no differentiation
  double first_order = 1e-5;      ///< identities using first derivatives
  double second_order = 1e-4;     ///< identities using second derivatives
  double anti_invariance = 1e-7;  ///< projections of unit vectors
  double conformal_spread = 1e-6; ///< relative spread of horizontal stretch factors

  // Sampling.
  std::size_t samples = 200;
  std::uint64_t seed = 42;
};

enum class ErrorKind {
  domain,
  conditioning,
  degeneracy,
  rank,
  anisotropy,
  precondition,
  instability,
  undefined,
  construction,
  config,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::rank: return "rank";
    case ErrorKind::anisotropy: return "anisotropy";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::instability: return "instability";
    case ErrorKind::undefined: return "undefined";
    case ErrorKind::construction: return "construction";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace subgeom
