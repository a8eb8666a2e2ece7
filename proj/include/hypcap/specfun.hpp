#pragma once

// Complete elliptic integral of the first kind, the Groetzsch ring modulus
// mu(r) and the closed-form capacities built on top of them.

#include <cmath>
#include <numbers>

#include "hypcap/errors.hpp"

namespace hypcap {

inline constexpr double kPi = std::numbers::pi;

/// Smallest argument accepted by mu() and returned by mu_inverse().
inline constexpr double kMuMinArg = 1e-8;

namespace detail {

/// Arithmetic-geometric mean of a >= b > 0. Stops once the two means agree
/// to 1e-15 relative.
inline double agm(double a, double b) {
  for (int it = 0; it < 64; ++it) {
    if (std::abs(a - b) <= 1e-15 * a) break;
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

/// sqrt(1 - r^2) without cancellation near r = 1.
inline double complementary(double r) { return std::sqrt((1.0 - r) * (1.0 + r)); }

}  // namespace detail

/// K(r) = int_0^{pi/2} dt / sqrt(1 - r^2 sin^2 t), via K(r) = pi / (2 AGM(1, r')).
inline double ellint_K(double r) {
  if (!(r >= 0.0 && r < 1.0)) detail::domain_fail("ellint_K", "requires 0 <= r < 1");
  return kPi / (2.0 * detail::agm(1.0, detail::complementary(r)));
}

/// Decreasing homeomorphism mu : (0,1] -> [0,inf), mu(r) = (pi/2) K(r') / K(r).
/// Capacity of the Groetzsch ring (D, [0,r]) is 2 pi / mu(r).
inline double mu(double r) {
  if (!(r >= kMuMinArg && r <= 1.0)) detail::domain_fail("mu", "requires 1e-8 <= r <= 1");
  if (r == 1.0) return 0.0;
  // K(r')/K(r) = AGM(1, r') / AGM(1, r)
  const double rc = detail::complementary(r);
  return 0.5 * kPi * detail::agm(1.0, rc) / detail::agm(1.0, r);
}

/// d mu / dr = -pi^2 / (4 r (1 - r^2) K(r)^2).
inline double mu_derivative(double r) {
  if (!(r >= kMuMinArg && r < 1.0)) detail::domain_fail("mu_derivative", "requires 1e-8 <= r < 1");
  const double k = ellint_K(r);
  return -kPi * kPi / (4.0 * r * (1.0 - r) * (1.0 + r) * k * k);
}

/// Inverse of mu. Bracketed bisection on [1e-8, 1] followed by Newton polish.
inline double mu_inverse(double y) {
  if (!(y >= 0.0)) detail::domain_fail("mu_inverse", "requires y >= 0");
  if (y == 0.0) return 1.0;
  double lo = kMuMinArg;
  double hi = 1.0;
  if (y > mu(lo)) detail::domain_fail("mu_inverse", "value exceeds mu(1e-8)");
  // mu decreasing: mu(lo) >= y > mu(hi) = 0
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mu(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double r = 0.5 * (lo + hi);
  const double tol = 1e-12 * std::max(1.0, y);
  for (int it = 0; it < 4; ++it) {
    if (r >= 1.0) break;
    const double err = mu(r) - y;
    if (std::abs(err) <= 0.25 * tol) break;
    const double next = r - err / mu_derivative(r);
    if (!(next > kMuMinArg && next <= 1.0)) break;
    r = next;
  }
  return r;
}

/// Capacity of the annulus a < |z| < b.
inline double annulus_cap(double a, double b) {
  if (!(a > 0.0 && a < b)) detail::domain_fail("annulus_cap", "requires 0 < a < b");
  return 2.0 * kPi / std::log(b / a);
}

/// cap(D, [0,r]) = 2 pi / mu(r).
inline double grotzsch_cap(double r) {
  if (!(r > 0.0 && r < 1.0)) detail::domain_fail("grotzsch_cap", "requires 0 < r < 1");
  return 2.0 * kPi / mu(r);
}

/// Capacity of the hyperbolic disk centred at 0 whose hyperbolic perimeter is c.
inline double f1(double c) {
  if (!(c > 0.0)) detail::domain_fail("f1", "requires c > 0");
  const double q = 2.0 * kPi / c;
  return 2.0 * kPi / std::log(std::sqrt(1.0 + q * q) + q);
}

/// Capacity of the radial segment [0, th(c/4)], viewed as a thin rectangle of perimeter c.
inline double f2(double c) {
  if (!(c > 0.0)) detail::domain_fail("f2", "requires c > 0");
  const double t = 0.25 * c;
  const double r = std::tanh(t);
  if (r <= 0.5 * std::numbers::sqrt2) return 2.0 * kPi / mu(r);
  // th(t) rounds to 1 for t > 19; use mu(r) mu(r') = pi^2/4 with r' = sech t
  const double e = std::exp(-t);
  const double rc = 2.0 * e / (1.0 + e * e);
  // mu(x) = log(4/x) + O(x^2) below the mu() floor
  const double mu_rc = rc >= kMuMinArg ? mu(rc) : std::log(2.0) + t + std::log1p(e * e);
  return 8.0 * mu_rc / kPi;
}

struct MuBoundCheck {
  bool lower_ok = false;
  bool upper_ok = false;
  double ratio = 0.0;
};

/// Two-sided bound 1 < mu(t) / log(sqrt(1+u^2) + u) < pi/2 with u = pi / (2 arth t).
inline MuBoundCheck check_mu_bound(double t) {
  if (!(t > 0.0 && t < 1.0)) detail::domain_fail("check_mu_bound", "requires 0 < t < 1");
  const double u = kPi / (2.0 * std::atanh(t));
  MuBoundCheck out;
  out.ratio = mu(t) / std::asinh(u);
  out.lower_ok = out.ratio > 1.0;
  out.upper_ok = out.ratio < 0.5 * kPi;
  return out;
}

}  // namespace hypcap
