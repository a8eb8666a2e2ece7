#pragma once

// Closed-form condenser capacities: hyperbolic disks, isoarea and
// isoperimetric comparison radii, reference values for sequences of regular
// polygons, and two-sided bounds for equilateral triangles.

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "hypcap/errors.hpp"
#include "hypcap/hypgeom.hpp"
#include "hypcap/specfun.hpp"

namespace hypcap {

/// A family of hyperbolic disks. Centres never enter the closed forms.
struct DiskFamily {
  std::vector<double> radii;
  std::vector<DiskPoint> centers;
};

/// cap(D, B(x, M)) = 2 pi / (-log th(M/2)) for any centre x.
inline double cap_hyp_disk(double radius) {
  if (!(radius > 0.0)) detail::domain_fail("cap_hyp_disk", "requires M > 0");
  return 2.0 * kPi / -std::log(std::tanh(0.5 * radius));
}

namespace detail {

inline void check_radii(const char* fn, std::span<const double> radii) {
  if (radii.empty()) domain_fail(fn, "radius list is empty");
  for (double l : radii) {
    if (!(l > 0.0)) domain_fail(fn, "radii must be positive");
  }
}

}  // namespace detail

/// L with sh^2(L/2) = sum sh^2(L_j/2): a single disk with the total area.
inline double isoarea_radius(std::span<const double> radii) {
  detail::check_radii("isoarea_radius", radii);
  double sum = 0.0;
  for (double l : radii) {
    const double s = std::sinh(0.5 * l);
    sum += s * s;
  }
  return 2.0 * std::asinh(std::sqrt(sum));
}

/// L with sh(L) = sum sh(L_j): a single disk with the total perimeter.
inline double isoperim_radius(std::span<const double> radii) {
  detail::check_radii("isoperim_radius", radii);
  double sum = 0.0;
  for (double l : radii) sum += std::sinh(l);
  return std::asinh(sum);
}

/// f(x) = 2x g(x) + g(x)^2 with g(x) = sum (sqrt(sh^2 L_j + x^2) - x).
/// f(0) = sh^2 of the isoperimetric radius, f(1) = sh^2 of the isoarea radius.
inline double lemma_f(double x, std::span<const double> radii) {
  detail::check_radii("lemma_f", radii);
  if (!(x >= 0.0 && x <= 1.0)) detail::domain_fail("lemma_f", "requires 0 <= x <= 1");
  double g = 0.0;
  for (double l : radii) {
    const double s = std::sinh(l);
    // sqrt(s^2 + x^2) - x without cancellation
    g += s * s / (std::hypot(s, x) + x);
  }
  return 2.0 * x * g + g * g;
}

/// M1 = sqrt(1 + 4 pi / c): 2 pi / log M1 is the capacity of the disk centred at 0 with h-area c.
inline double ref_M1(double c) {
  if (!(c > 0.0 && c < kPi)) detail::domain_fail("ref_M1", "requires 0 < c < pi");
  return std::sqrt(1.0 + 4.0 * kPi / c);
}

/// Unchecked form of ref_M1 for any c > 0.
inline double ref_M1_formula(double c) {
  if (!(c > 0.0)) detail::domain_fail("ref_M1_formula", "requires c > 0");
  return std::sqrt(1.0 + 4.0 * kPi / c);
}

/// M2 = sqrt(1 + 4 pi^2 / c^2) + 2 pi / c: 2 pi / log M2 is the capacity of the disk with h-perimeter c.
inline double ref_M2(double c) {
  if (!(c > 0.0)) detail::domain_fail("ref_M2", "requires c > 0");
  const double q = 2.0 * kPi / c;
  return std::sqrt(1.0 + q * q) + q;
}

inline double ref_cap1(double c) { return 2.0 * kPi / std::log(ref_M1(c)); }
inline double ref_cap2(double c) { return 2.0 * kPi / std::log(ref_M2(c)); }

/// Exact capacity of the three spokes [0, s] e^{2 pi i k/3}, k = 0,1,2: 6 pi / mu(s^3).
/// The spokes lie inside the equilateral triangle with the same vertices.
inline double hat_triangle_cap(double s) {
  if (!(s > 0.0 && s < 1.0)) detail::domain_fail("hat_triangle_cap", "requires 0 < s < 1");
  return 6.0 * kPi / mu(s * s * s);
}

/// Perimeter u of the equilateral triangle with vertices s e^{2 pi i k/3}:
/// th(u/6) = sqrt3 s / sqrt(s^4 + s^2 + 1).
inline double equilateral_perimeter_from_s(double s) {
  if (!(s > 0.0 && s < 1.0)) detail::domain_fail("equilateral_perimeter_from_s", "requires 0 < s < 1");
  return 6.0 * std::atanh(std::sqrt(3.0) * s / std::sqrt(s * s * s * s + s * s + 1.0));
}

/// Area v of the same triangle from 2 ch(u/6) sin((pi - v)/6) = 1.
inline double equilateral_area_from_perimeter(double u) {
  if (!(u > 0.0)) detail::domain_fail("equilateral_area_from_perimeter", "requires u > 0");
  return kPi - 6.0 * std::asin(1.0 / (2.0 * std::cosh(u / 6.0)));
}

/// s^3 from the perimeter u: sigma = 3 sqrt3 / (2 sh(u/6) th^2(u/6)), s^3 = sqrt(sigma^2 + 1) - sigma.
inline double s3_from_perimeter(double u) {
  if (!(u > 0.0)) detail::domain_fail("s3_from_perimeter", "requires u > 0");
  const double t = std::tanh(u / 6.0);
  const double sigma = 3.0 * std::sqrt(3.0) / (2.0 * std::sinh(u / 6.0) * t * t);
  return 1.0 / (std::hypot(sigma, 1.0) + sigma);
}

/// s^3 from the area v: tau = sqrt3 tan((pi - v)/6), s^3 = ((1 - tau)/(1 + tau))^{3/2}.
inline double s3_from_area(double v) {
  if (!(v > 0.0 && v < kPi)) detail::domain_fail("s3_from_area", "requires 0 < v < pi");
  const double tau = std::sqrt(3.0) * std::tan((kPi - v) / 6.0);
  return std::pow((1.0 - tau) / (1.0 + tau), 1.5);
}

struct TriangleBoundSet {
  double s = 0.0;
  double perimeter = 0.0;  ///< u
  double area = 0.0;       ///< v
  double lower = 0.0;
  double upper_s = 0.0;
  double upper_perim = 0.0;
  double upper_area = 0.0;
};

/// Lower and upper bounds for cap(D, T), T the equilateral triangle with
/// vertices s e^{2 pi i k/3}; the upper bound in three equivalent forms.
inline TriangleBoundSet triangle_bounds_from_s(double s) {
  if (!(s > 0.0 && s < 1.0)) detail::domain_fail("triangle_bounds_from_s", "requires 0 < s < 1");
  TriangleBoundSet b;
  b.s = s;
  b.perimeter = equilateral_perimeter_from_s(s);
  b.area = equilateral_area_from_perimeter(b.perimeter);
  b.lower = hat_triangle_cap(s);
  b.upper_s = 3.0 * kPi / mu(std::sqrt(3.0) * s / std::sqrt(s * s * s * s + s * s + 1.0));
  b.upper_perim = 3.0 * kPi / mu(std::tanh(b.perimeter / 6.0));
  b.upper_area = 12.0 / kPi * mu(2.0 * std::sin((kPi - b.area) / 6.0));
  return b;
}

}  // namespace hypcap
