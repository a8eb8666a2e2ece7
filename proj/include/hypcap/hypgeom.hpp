#pragma once

// Hyperbolic geometry of the Poincare unit disk: distance, Moebius
// automorphisms, hyperbolic disks, geodesic arcs and geodesic polygons.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hypcap/errors.hpp"
#include "hypcap/specfun.hpp"

namespace hypcap {

using Complex = std::complex<double>;

/// A point of the open unit disk.
class DiskPoint {
 public:
  DiskPoint() = default;
  DiskPoint(Complex z) : z_(z) {  // NOLINT(google-explicit-constructor)
    if (!(std::abs(z) < 1.0)) {
      detail::domain_fail("DiskPoint", "point must lie in the open unit disk");
    }
  }
  DiskPoint(double re, double im = 0.0) : DiskPoint(Complex(re, im)) {}

  [[nodiscard]] Complex z() const { return z_; }
  [[nodiscard]] double abs() const { return std::abs(z_); }
  operator Complex() const { return z_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  Complex z_{0.0, 0.0};
};

namespace detail {

/// 1 - |z|^2 with the factored form for points close to the unit circle.
inline double one_minus_abs2(Complex z) {
  const double a = std::abs(z);
  return (1.0 - a) * (1.0 + a);
}

inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a;
}

inline double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace detail

/// rho(x, y) = 2 arsh(|x - y| / sqrt((1 - |x|^2)(1 - |y|^2))).
inline double hyp_dist(DiskPoint x, DiskPoint y) {
  const double num = std::abs(x.z() - y.z());
  return 2.0 * std::asinh(num / std::sqrt(detail::one_minus_abs2(x) * detail::one_minus_abs2(y)));
}

/// T_a(z) = (z - a) / (1 - conj(a) z).
inline DiskPoint mobius(DiskPoint a, DiskPoint z) {
  const Complex w = (z.z() - a.z()) / (1.0 - std::conj(a.z()) * z.z());
  // |w| < 1 analytically; clamp rounding for points extremely close to the circle
  if (!(std::abs(w) < 1.0)) return DiskPoint(w * (std::nextafter(1.0, 0.0) / std::abs(w)));
  return DiskPoint(w);
}

/// Hyperbolic disk B_rho(center, radius).
struct HypDisk {
  DiskPoint center;
  double radius = 0.0;

  HypDisk(DiskPoint c, double r) : center(c), radius(r) {
    if (!(r > 0.0)) detail::domain_fail("HypDisk", "radius must be positive");
  }
};

struct EuclidDisk {
  Complex center;
  double radius = 0.0;
};

/// Euclidean centre and radius of a hyperbolic disk.
inline EuclidDisk hyp_disk_to_euclid(const HypDisk& d) {
  const Complex x = d.center.z();
  const double t = std::tanh(0.5 * d.radius);
  const double x2 = std::norm(x);
  const double den = 1.0 - x2 * t * t;
  return {x * (1.0 - t * t) / den, (1.0 - x2) * t / den};
}

/// 4 pi sh^2(L/2)
inline double hyp_disk_area(double radius) {
  if (!(radius > 0.0)) detail::domain_fail("hyp_disk_area", "radius must be positive");
  const double s = std::sinh(0.5 * radius);
  return 4.0 * kPi * s * s;
}

/// 2 pi sh(L)
inline double hyp_disk_perimeter(double radius) {
  if (!(radius > 0.0)) detail::domain_fail("hyp_disk_perimeter", "radius must be positive");
  return 2.0 * kPi * std::sinh(radius);
}

/// One geodesic side: a circular arc orthogonal to the unit circle, or a
/// diametral segment. Parametrised on t in [0,1] proportionally to arc length,
/// running from start() to end().
class GeodesicArc {
 public:
  enum class Kind { kCircular, kSegment };

  static GeodesicArc segment(Complex a, Complex b) {
    GeodesicArc g;
    g.kind_ = Kind::kSegment;
    g.start_ = a;
    g.end_ = b;
    return g;
  }

  static GeodesicArc circular(Complex a, Complex b, Complex center) {
    GeodesicArc g;
    g.kind_ = Kind::kCircular;
    g.start_ = a;
    g.end_ = b;
    g.center_ = center;
    g.radius_ = std::sqrt(std::norm(center) - 1.0);
    g.phi0_ = std::arg(a - center);
    // the sub-arc inside the disk subtends less than pi at the centre
    g.sweep_ = detail::wrap_angle(std::arg(b - center) - g.phi0_);
    return g;
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] Complex start() const { return start_; }
  [[nodiscard]] Complex end() const { return end_; }
  [[nodiscard]] Complex center() const { return center_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double sweep() const { return sweep_; }

  [[nodiscard]] Complex point(double t) const {
    if (kind_ == Kind::kSegment) {
      if (t == 1.0) return end_;
      return start_ + (end_ - start_) * t;
    }
    if (t == 0.0) return start_;
    if (t == 1.0) return end_;
    return center_ + std::polar(radius_, phi0_ + sweep_ * t);
  }

  /// Unit tangent in the direction of traversal.
  [[nodiscard]] Complex tangent(double t) const {
    if (kind_ == Kind::kSegment) return (end_ - start_) / std::abs(end_ - start_);
    const Complex u = std::polar(1.0, phi0_ + sweep_ * t);
    return sweep_ > 0 ? Complex(0, 1) * u : Complex(0, -1) * u;
  }

  /// Euclidean length.
  [[nodiscard]] double length() const {
    if (kind_ == Kind::kSegment) return std::abs(end_ - start_);
    return radius_ * std::abs(sweep_);
  }

  /// | |c|^2 - R^2 - 1 | / max(1, |c|^2) for circular arcs, normalised cross
  /// product with the origin for segments.
  [[nodiscard]] double invariant_residual() const {
    if (kind_ == Kind::kCircular) {
      const double c2 = std::norm(center_);
      return std::abs(c2 - radius_ * radius_ - 1.0) / std::max(1.0, c2);
    }
    const double scale = std::max(1.0, std::abs(start_) * std::abs(end_));
    return std::abs(detail::cross(start_, end_)) / scale;
  }

 private:
  Kind kind_ = Kind::kSegment;
  Complex start_;
  Complex end_;
  Complex center_;
  double radius_ = 0.0;
  double phi0_ = 0.0;
  double sweep_ = 0.0;
};

/// Geodesic of the disk joining z1 and z2.
inline GeodesicArc geodesic_arc(DiskPoint z1, DiskPoint z2) {
  const Complex a = z1.z();
  const Complex b = z2.z();
  if (a == b) throw GeometryError("geodesic_arc: endpoints coincide");
  const double scale = std::max(1.0, std::abs(a) * std::abs(b));
  const double cr = detail::cross(a, b);
  if (std::abs(cr) / scale < 1e-14) return GeodesicArc::segment(a, b);
  // 2 Re(conj(z) c) = |z|^2 + 1 for z = a, b
  const double r1 = 0.5 * (std::norm(a) + 1.0);
  const double r2 = 0.5 * (std::norm(b) + 1.0);
  const double cx = (r1 * b.imag() - r2 * a.imag()) / cr;
  const double cy = (a.real() * r2 - b.real() * r1) / cr;
  return GeodesicArc::circular(a, b, Complex(cx, cy));
}

/// Side lengths, angles, area and perimeter of a hyperbolic triangle.
/// angles[i] is opposite sides[i].
struct TriangleMeasures {
  std::array<double, 3> sides{};
  std::array<double, 3> angles{};
  double area = 0.0;
  double perimeter = 0.0;
};

/// Angles from side lengths by the hyperbolic law of cosines, written in the
/// half-angle form tan^2(a/2) = sh(s-b) sh(s-c) / (sh s sh(s-a)).
inline TriangleMeasures triangle_from_sides(double a, double b, double c) {
  if (!(a > 0 && b > 0 && c > 0)) throw GeometryError("triangle_from_sides: degenerate side");
  TriangleMeasures t;
  t.sides = {a, b, c};
  const double s = 0.5 * (a + b + c);
  const double ss = std::sinh(s);
  const std::array<double, 3> d = {std::sinh(std::max(0.0, s - a)), std::sinh(std::max(0.0, s - b)),
                                   std::sinh(std::max(0.0, s - c))};
  for (int i = 0; i < 3; ++i) {
    const double num = d[(i + 1) % 3] * d[(i + 2) % 3];
    t.angles[i] = 2.0 * std::atan2(std::sqrt(num), std::sqrt(ss * d[i]));
  }
  t.area = kPi - (t.angles[0] + t.angles[1] + t.angles[2]);
  t.perimeter = a + b + c;
  return t;
}

inline TriangleMeasures triangle_measures(DiskPoint p0, DiskPoint p1, DiskPoint p2) {
  return triangle_from_sides(hyp_dist(p1, p2), hyp_dist(p0, p2), hyp_dist(p0, p1));
}

/// Closed polygon of geodesic arcs. Vertices are stored counterclockwise;
/// clockwise input is reversed on construction.
class HypPolygon {
 public:
  /// Number of rays used by the starlikeness check.
  static constexpr int kStarlikeRays = 720;

  explicit HypPolygon(std::vector<DiskPoint> vertices) : vertices_(std::move(vertices)) {
    const std::size_t m = vertices_.size();
    if (m < 3) throw GeometryError("HypPolygon: need at least 3 vertices");
    for (std::size_t k = 0; k < m; ++k) {
      if (vertices_[k] == vertices_[(k + 1) % m]) {
        throw GeometryError("HypPolygon: consecutive vertices coincide");
      }
    }
    double shoelace = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      shoelace += detail::cross(vertices_[k].z(), vertices_[(k + 1) % m].z());
    }
    if (shoelace < 0.0) std::reverse(vertices_.begin(), vertices_.end());
    sides_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) sides_.push_back(geodesic_arc(vertices_[k], vertices_[(k + 1) % m]));
    starlike_ = check_starlike();
  }

  static HypPolygon from_complex(std::span<const Complex> zs) {
    std::vector<DiskPoint> v;
    v.reserve(zs.size());
    for (Complex z : zs) v.emplace_back(z);
    return HypPolygon(std::move(v));
  }

  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] const std::vector<DiskPoint>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<GeodesicArc>& sides() const { return sides_; }
  [[nodiscard]] const DiskPoint& vertex(std::size_t k) const { return vertices_[k % size()]; }

  /// Starlike with respect to 0 with 0 in the interior.
  [[nodiscard]] bool starlike() const { return starlike_; }

  /// Image of the polygon under z -> T_a(z). Geodesics map to geodesics.
  [[nodiscard]] HypPolygon mapped(DiskPoint a) const {
    std::vector<DiskPoint> v;
    v.reserve(size());
    for (const auto& p : vertices_) v.push_back(mobius(a, p));
    return HypPolygon(std::move(v));
  }

  /// Point a such that T_a moves the Klein-model vertex centroid to 0.
  [[nodiscard]] DiskPoint klein_centroid() const {
    Complex kc{0.0, 0.0};
    for (const auto& p : vertices_) kc += 2.0 * p.z() / (1.0 + std::norm(p.z()));
    kc /= static_cast<double>(size());
    return DiskPoint(kc / (1.0 + std::sqrt(detail::one_minus_abs2(kc))));
  }

  /// Distance from 0 to the boundary along the ray of angle theta.
  /// Only meaningful for starlike polygons.
  [[nodiscard]] double boundary_radius(double theta) const {
    const Complex dir = std::polar(1.0, theta);
    for (std::size_t k = 0; k < size(); ++k) {
      const double a0 = std::arg(vertices_[k].z());
      const double span = sweeps_[k];
      double off = std::fmod(theta - a0, 2.0 * kPi);
      if (off < 0) off += 2.0 * kPi;
      if (off <= span) return ray_hit(sides_[k], dir);
    }
    return 0.0;
  }

  /// Strict interior test for starlike polygons.
  [[nodiscard]] bool contains(Complex z) const {
    if (!starlike_) throw GeometryError("HypPolygon::contains: polygon is not starlike about 0");
    if (z == Complex(0.0, 0.0)) return true;
    return std::abs(z) < boundary_radius(std::arg(z));
  }

 private:
  static double ray_hit(const GeodesicArc& side, Complex dir) {
    if (side.kind() == GeodesicArc::Kind::kSegment) return 0.0;
    // |rho e^{i theta} - c|^2 = R^2 with |c|^2 - R^2 = 1: rho^2 - 2 rho b + 1 = 0
    const double b = (std::conj(side.center()) * dir).real();
    const double disc = std::max(0.0, b * b - 1.0);
    return 1.0 / (b + std::sqrt(disc));
  }

  bool check_starlike() {
    const std::size_t m = size();
    sweeps_.assign(m, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const Complex a = vertices_[k].z();
      const Complex b = vertices_[(k + 1) % m].z();
      if (std::abs(a) == 0.0 || sides_[k].kind() == GeodesicArc::Kind::kSegment) return false;
      sweeps_[k] = detail::wrap_angle(std::arg(b) - std::arg(a));
      if (!(sweeps_[k] > 0.0)) return false;
      total += sweeps_[k];
    }
    if (std::abs(total - 2.0 * kPi) > 1e-9) return false;
    // every ray must cross the boundary exactly once
    for (int j = 0; j < kStarlikeRays; ++j) {
      const double theta = (j + 0.5) * 2.0 * kPi / kStarlikeRays;
      int hits = 0;
      for (std::size_t k = 0; k < m; ++k) {
        double off = std::fmod(theta - std::arg(vertices_[k].z()), 2.0 * kPi);
        if (off < 0) off += 2.0 * kPi;
        if (off < sweeps_[k]) ++hits;
      }
      if (hits != 1) return false;
    }
    return true;
  }

  std::vector<DiskPoint> vertices_;
  std::vector<GeodesicArc> sides_;
  std::vector<double> sweeps_;
  bool starlike_ = false;
};

/// Sum of hyperbolic side lengths.
inline double polygon_perimeter(const HypPolygon& p) {
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += hyp_dist(p.vertex(k), p.vertex(k + 1));
  return sum;
}

struct PolygonMeasures {
  double area = 0.0;
  double perimeter = 0.0;
  std::vector<double> angles;  ///< interior angle at each vertex, in vertex order
};

/// Area, perimeter and interior angles via the fan {0, b_k, b_{k+1}}.
/// A polygon that is not starlike about 0 is first moved by the Moebius map
/// sending its Klein centroid to 0; area and angles are invariant.
inline PolygonMeasures polygon_measures(const HypPolygon& poly) {
  const HypPolygon* use = &poly;
  HypPolygon moved = poly;
  if (!poly.starlike()) {
    for (const auto& v : poly.vertices()) {
      if (v.z() == Complex(0.0, 0.0)) throw GeometryError("polygon_measures: vertex at 0 degenerates the fan");
    }
    moved = poly.mapped(poly.klein_centroid());
    if (!moved.starlike()) throw GeometryError("polygon_measures: polygon is not starlike");
    use = &moved;
  }
  const std::size_t m = use->size();
  PolygonMeasures out;
  out.angles.assign(m, 0.0);
  const DiskPoint origin(0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const DiskPoint& b0 = use->vertex(k);
    const DiskPoint& b1 = use->vertex(k + 1);
    // sides opposite 0, b0, b1
    const TriangleMeasures t = triangle_from_sides(hyp_dist(b0, b1), hyp_dist(origin, b1), hyp_dist(origin, b0));
    out.area += t.area;
    out.angles[k] += t.angles[1];
    out.angles[(k + 1) % m] += t.angles[2];
  }
  out.perimeter = polygon_perimeter(*use);
  return out;
}

/// r such that the triangle r, r e^{2 pi i/3}, r e^{4 pi i/3} has all angles omega:
/// r^2 = (2 - cos w - sqrt3 sin w) / (2 cos w - 1).
inline double equilateral_triangle_radius(double omega) {
  if (!(omega > 0.0 && omega < kPi / 3.0)) {
    detail::domain_fail("equilateral_triangle_radius", "requires 0 < omega < pi/3");
  }
  const double c = std::cos(omega);
  const double r2 = (2.0 - c - std::sqrt(3.0) * std::sin(omega)) / (2.0 * c - 1.0);
  return std::sqrt(std::clamp(r2, 0.0, 1.0));
}

/// Vertices r exp(2 pi i k / m), k = 0..m-1.
inline HypPolygon regular_polygon(int m, double r) {
  if (m < 3) detail::domain_fail("regular_polygon", "requires m >= 3");
  if (!(r > 0.0 && r < 1.0)) detail::domain_fail("regular_polygon", "requires 0 < r < 1");
  std::vector<DiskPoint> v;
  v.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) v.emplace_back(std::polar(r, 2.0 * kPi * k / m));
  return HypPolygon(std::move(v));
}

/// Inverse of L = 2m arsh(2 r sin(pi/m) / (1 - r^2)).
inline double regular_radius_from_perimeter(int m, double perimeter) {
  if (m < 3) detail::domain_fail("regular_radius_from_perimeter", "requires m >= 3");
  if (!(perimeter > 0.0)) detail::domain_fail("regular_radius_from_perimeter", "requires L > 0");
  const double s = std::sin(kPi / m);
  const double h = std::sinh(perimeter / (2.0 * m));
  // (-s + sqrt(s^2 + h^2)) / h, rationalised
  return h / (s + std::hypot(s, h));
}

/// r such that regular_polygon(m, r) has hyperbolic area c, by bisection.
inline double regular_radius_from_area(int m, double area) {
  if (m < 3) detail::domain_fail("regular_radius_from_area", "requires m >= 3");
  if (!(area > 0.0 && area < (m - 2) * kPi)) {
    detail::domain_fail("regular_radius_from_area", "requires 0 < c < (m-2) pi");
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0 || mid >= 1.0) break;
    if (polygon_measures(regular_polygon(m, mid)).area < area) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hypcap
