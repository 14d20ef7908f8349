#pragma once

#include <cmath>
#include <ostream>

namespace subgeom {

/// Forward-mode dual number a + b·ε with ε² = 0.
///
/// Only a single derivative direction is carried. Partial derivatives are
/// obtained by seeding one coordinate at a time; directional derivatives by
/// seeding the direction vector.
struct Dual {
  double val = 0.0;
  double der = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(double v, double d) : val(v), der(d) {}

  constexpr Dual& operator+=(const Dual& o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    der = der * o.val + val * o.der;
    val *= o.val;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    der = (der * o.val - val * o.der) / (o.val * o.val);
    val /= o.val;
    return *this;
  }
};

constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
constexpr Dual operator-(const Dual& a) { return {-a.val, -a.der}; }
constexpr Dual operator+(const Dual& a) { return a; }

constexpr bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
constexpr bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
constexpr bool operator<=(const Dual& a, const Dual& b) { return a.val <= b.val; }
constexpr bool operator>=(const Dual& a, const Dual& b) { return a.val >= b.val; }

inline Dual exp(const Dual& a) {
  const double e = std::exp(a.val);
  return {e, e * a.der};
}
inline Dual log(const Dual& a) { return {std::log(a.val), a.der / a.val}; }
inline Dual sin(const Dual& a) { return {std::sin(a.val), std::cos(a.val) * a.der}; }
inline Dual cos(const Dual& a) { return {std::cos(a.val), -std::sin(a.val) * a.der}; }
inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.val);
  return {s, a.der / (2.0 * s)};
}
inline Dual pow(const Dual& a, double k) {
  if (k == 0.0) return {1.0, 0.0};
  return {std::pow(a.val, k), k * std::pow(a.val, k - 1.0) * a.der};
}
// a^b = exp(b log a); only valid for a > 0 unless b carries no derivative.
inline Dual pow(const Dual& a, const Dual& b) {
  if (b.der == 0.0) return pow(a, b.val);
  const double v = std::pow(a.val, b.val);
  return {v, v * (b.der * std::log(a.val) + b.val * a.der / a.val)};
}

inline std::ostream& operator<<(std::ostream& os, const Dual& d) {
  return os << d.val << " + " << d.der << "e";
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.val; }

// Pull std math into scope so generic code can call exp(x) for both double
// and Dual via ADL/ordinary lookup.
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

}  // namespace subgeom
