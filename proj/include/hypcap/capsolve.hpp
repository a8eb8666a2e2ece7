#pragma once

// Condenser capacity cap(D, E) for a plate E inside the unit disk by charge
// simulation: the potential is a sum of logarithmic sources inside E, fitted
// to u = 1 on the boundary of E (and u = 0 on the unit circle) in least squares.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypcap/errors.hpp"
#include "hypcap/hypgeom.hpp"
#include "hypcap/specfun.hpp"

namespace hypcap {

/// How the condition u = 0 on the unit circle is enforced.
enum class OuterMode {
  /// Every source is paired with its Kelvin image 1/conj(p), so each basis
  /// function vanishes identically on |z| = 1.
  kImage,
  /// Free sources on |z| = outer_charge_radius, collocated on the unit circle.
  kFree,
};

enum class Recenter {
  kAuto,    ///< move the Klein centroid to 0 only if the polygon is not starlike about 0
  kAlways,  ///< always move the Klein centroid to 0
  kNever,
};

struct ChargeCounts {
  int inner = 32;  ///< smooth sources per polygon side, or on the whole circle
  int outer = 64;  ///< free outer sources (OuterMode::kFree only)
};

struct SolverParams {
  int nodes_per_side = 96;
  double corner_grading_strength = 1.0;
  /// Smooth source depth as a fraction of the distance from the node to 0,
  /// capped at smooth_offset_spacings local source spacings. For circles the
  /// sources sit at (1 - inner_charge_offset) times the radius.
  double inner_charge_offset = 0.35;
  double outer_charge_radius = 1.25;
  ChargeCounts charge_counts{};
  int check_grid_factor = 4;

  OuterMode outer_mode = OuterMode::kImage;
  Recenter recenter = Recenter::kAuto;
  double smooth_offset_spacings = 2.0;
  /// Corner sources per e-fold of distance scale as corner_density / (2 pi sin(w/2)).
  double corner_density = 10.0;
  /// Corner sources reach down to exp(-corner_efolds) times the corner scale.
  double corner_efolds = 20.0;
  /// Corner scale as a fraction of the shorter adjacent side.
  double corner_reach = 0.5;
  /// Same for corners with interior angle below pi/2.
  double acute_corner_reach = 0.9;
  /// Collocation nodes per corner source on each adjacent side.
  int corner_samples = 1;
  int max_refine = 3;
  /// The retry ladder stops before a level whose source count would exceed this.
  int max_unknowns = 5000;

  void validate() const {
    if (nodes_per_side < 8) throw ConfigError("nodes_per_side must be >= 8");
    if (charge_counts.inner < 8 || charge_counts.outer < 8) throw ConfigError("charge counts must be >= 8");
    if (!(corner_grading_strength >= 0.0)) throw ConfigError("corner_grading_strength must be >= 0");
    if (!(inner_charge_offset > 0.0 && inner_charge_offset < 1.0)) {
      throw ConfigError("inner_charge_offset must lie in (0,1)");
    }
    if (!(outer_charge_radius > 1.0)) throw ConfigError("outer_charge_radius must exceed 1");
    if (check_grid_factor < 2) throw ConfigError("check_grid_factor must be >= 2");
    if (!(smooth_offset_spacings > 0.0)) throw ConfigError("smooth_offset_spacings must be positive");
    if (!(corner_density > 0.0) || !(corner_efolds > 0.0)) throw ConfigError("corner parameters must be positive");
    if (!(corner_reach > 0.0 && corner_reach <= 1.0) || !(acute_corner_reach > 0.0 && acute_corner_reach <= 1.0)) {
      throw ConfigError("corner reach fractions must lie in (0,1]");
    }
    if (corner_samples < 1) throw ConfigError("corner_samples must be >= 1");
    if (max_refine < 0) throw ConfigError("max_refine must be >= 0");
    if (max_unknowns < 8) throw ConfigError("max_unknowns must be >= 8");
  }

  /// Same configuration with node and source counts multiplied by 2^level
  /// and corner sources reaching 4 e-folds deeper per level.
  [[nodiscard]] SolverParams refined(int level) const {
    SolverParams q = *this;
    const int f = 1 << level;
    q.nodes_per_side *= f;
    q.charge_counts.inner *= f;
    q.charge_counts.outer *= f;
    q.corner_density *= std::sqrt(static_cast<double>(f));
    q.corner_efolds += 4.0 * level;
    return q;
  }
};

struct SolveReport {
  double capacity = 0.0;
  double modulus_q = 0.0;
  double boundary_residual = 0.0;
  int n_collocation = 0;
  int n_charges = 0;
  bool converged = false;
  int refinements = 0;  ///< retry ladder levels used beyond the first solve
  int rank = 0;

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

/// A corner of the inner curve.
struct Corner {
  Complex vertex;
  double angle = 0.0;  ///< interior angle of E
  Complex bisector;    ///< unit vector into E
  double reach = 0.0;  ///< largest corner source distance
};

/// Boundary of the plate E: a closed chain of geodesic arcs, or a circle.
class BoundarySet {
 public:
  static BoundarySet from_polygon(const HypPolygon& poly) {
    if (!poly.starlike()) throw GeometryError("BoundarySet: polygon is not starlike about 0");
    BoundarySet b;
    b.poly_ = poly;
    const auto& sides = poly.sides();
    const std::size_t m = sides.size();
    for (std::size_t k = 0; k < m; ++k) {
      if (sides[k].end() != sides[(k + 1) % m].start()) throw GeometryError("BoundarySet: open boundary chain");
    }
    for (std::size_t k = 0; k < m; ++k) {
      const GeodesicArc& out = sides[k];
      const GeodesicArc& in = sides[(k + m - 1) % m];
      const Complex a = out.tangent(0.0);
      const Complex bt = -in.tangent(1.0);
      double w = std::arg(bt / a);
      if (w <= 0.0) w += 2.0 * kPi;
      Corner c;
      c.vertex = out.start();
      c.angle = w;
      c.bisector = a * std::polar(1.0, 0.5 * w);
      c.reach = std::min(out.length(), in.length());
      b.corners_.push_back(c);
    }
    b.check_inside_disk();
    return b;
  }

  static BoundarySet from_circle(EuclidDisk disk) {
    if (!(disk.radius > 0.0)) throw GeometryError("BoundarySet: circle radius must be positive");
    BoundarySet b;
    b.circle_ = disk;
    b.check_inside_disk();
    return b;
  }

  static BoundarySet from_hyp_disk(const HypDisk& d) { return from_circle(hyp_disk_to_euclid(d)); }

  [[nodiscard]] bool is_circle() const { return circle_.has_value(); }
  [[nodiscard]] const HypPolygon& polygon() const { return *poly_; }
  [[nodiscard]] const EuclidDisk& circle() const { return *circle_; }
  [[nodiscard]] const std::vector<Corner>& corners() const { return corners_; }

  /// Strict interior of E.
  [[nodiscard]] bool contains(Complex z) const {
    if (circle_) return std::abs(z - circle_->center) < circle_->radius;
    return poly_->contains(z);
  }

 private:
  void check_inside_disk() const {
    double mx = 0.0;
    if (circle_) {
      mx = std::abs(circle_->center) + circle_->radius;
    } else {
      for (const auto& s : poly_->sides()) {
        for (int i = 0; i <= 64; ++i) mx = std::max(mx, std::abs(s.point(i / 64.0)));
      }
    }
    if (!(mx < 1.0 - 1e-6)) throw GeometryError("BoundarySet: inner boundary too close to the unit circle");
  }

  std::optional<HypPolygon> poly_;
  std::optional<EuclidDisk> circle_;
  std::vector<Corner> corners_;
};

/// Collocation and check points together with the source positions.
struct Discretization {
  std::vector<Complex> inner_nodes;  ///< u = 1
  std::vector<Complex> outer_nodes;  ///< u = 0 (free mode)
  std::vector<Complex> inner_check;
  std::vector<Complex> outer_check;
  std::vector<Complex> inner_charges;
  std::vector<Complex> outer_charges;

  [[nodiscard]] int n_collocation() const { return static_cast<int>(inner_nodes.size() + outer_nodes.size()); }
  [[nodiscard]] int n_charges() const { return static_cast<int>(inner_charges.size() + outer_charges.size()); }
};

namespace detail {

/// w(t) = t - sin(2 pi t)/(2 pi) composed floor(s) times, blended linearly
/// with one more composition for the fractional part of s.
inline double grade(double t, double strength) {
  const auto w = [](double x) { return x - std::sin(2.0 * kPi * x) / (2.0 * kPi); };
  const int whole = static_cast<int>(std::floor(strength));
  for (int i = 0; i < whole; ++i) t = w(t);
  const double frac = strength - whole;
  if (frac > 0.0) t = (1.0 - frac) * t + frac * w(t);
  return t;
}

inline std::vector<double> uniform_circle_angles(int n, double shift) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = 2.0 * kPi * (k + shift) / n;
  return a;
}

/// Corner sources per e-fold for interior angle w.
inline double corner_per_efold(const SolverParams& p, double w) {
  const double s = std::sin(0.5 * std::min(w, kPi));
  return std::max(3.0, p.corner_density / (2.0 * kPi * s));
}

/// Distances from a corner: reach * exp(-(k + shift) / (per_efold * sub)), k = 0..count.
inline std::vector<double> corner_distances(const Corner& c, const SolverParams& p, int sub, double shift) {
  const double npe = corner_per_efold(p, c.angle) * sub;
  const int count = static_cast<int>(std::ceil(p.corner_efolds * npe));
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(count) + 1);
  const double reach = (c.angle < 0.5 * kPi ? p.acute_corner_reach : p.corner_reach) * c.reach;
  for (int k = 0; k <= count; ++k) d.push_back(reach * std::exp(-(k + shift) / npe));
  return d;
}

inline void sample_sides(const BoundarySet& b, const SolverParams& p, int factor, bool check,
                         std::vector<Complex>& out) {
  const HypPolygon& poly = b.polygon();
  const auto& sides = poly.sides();
  const auto& corners = b.corners();
  const std::size_t m = sides.size();
  const int n = p.nodes_per_side * factor;
  const double shift = check ? 0.5 : 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const GeodesicArc& s = sides[k];
    const double len = s.length();
    if (check) out.push_back(s.point(0.0));
    for (int i = 0; i < n; ++i) out.push_back(s.point(grade((i + shift) / n, p.corner_grading_strength)));
    // corner samples at the source distances, measured from each end
    for (double d : corner_distances(corners[k], p, p.corner_samples * factor, shift)) {
      if (d < len) out.push_back(s.point(d / len));
    }
    for (double d : corner_distances(corners[(k + 1) % m], p, p.corner_samples * factor, shift)) {
      if (d < len) out.push_back(s.point(1.0 - d / len));
    }
  }
}

/// Depth of the first exit of the ray z + t n from E, scanned up to t = limit.
inline double exit_depth(const BoundarySet& b, Complex z, Complex n, double limit) {
  constexpr int kSteps = 32;
  for (int k = 1; k <= kSteps; ++k) {
    const double t = limit * k / kSteps;
    if (!b.contains(z + n * t)) return t;
  }
  return limit;
}

/// Source position at distance d from a corner. Acute corners use the midpoint
/// of the two boundary points at arc length d, which follows a curved wedge.
inline Complex corner_source(const BoundarySet& b, std::size_t k, double d) {
  const auto& sides = b.polygon().sides();
  const std::size_t m = sides.size();
  const Corner& c = b.corners()[k];
  if (c.angle >= 0.5 * kPi) return c.vertex + c.bisector * d;
  const GeodesicArc& out = sides[k];
  const GeodesicArc& in = sides[(k + m - 1) % m];
  const Complex pa = out.point(std::min(1.0, d / out.length()));
  const Complex pb = in.point(std::max(0.0, 1.0 - d / in.length()));
  return 0.5 * (pa + pb);
}

inline void place_polygon_charges(const BoundarySet& b, const SolverParams& p, std::vector<Complex>& out) {
  out.emplace_back(0.0, 0.0);
  const auto& sides = b.polygon().sides();
  const int ns = p.charge_counts.inner;
  for (const GeodesicArc& s : sides) {
    const double len = s.length();
    for (int j = 0; j < ns; ++j) {
      const double t0 = grade(static_cast<double>(j) / ns, p.corner_grading_strength);
      const double t1 = grade(static_cast<double>(j + 1) / ns, p.corner_grading_strength);
      const double t = grade((j + 0.5) / ns, p.corner_grading_strength);
      const Complex z = s.point(t);
      const Complex normal = Complex(0.0, 1.0) * s.tangent(t);
      const double want = std::min(p.smooth_offset_spacings * len * (t1 - t0), p.inner_charge_offset * std::abs(z));
      // stay at most halfway across E
      const double depth = std::min(want, 0.5 * exit_depth(b, z, normal, 2.0 * want));
      const Complex q = z + normal * depth;
      if (depth > 0.0 && b.contains(q)) out.push_back(q);
    }
  }
  const auto& corners = b.corners();
  for (std::size_t k = 0; k < corners.size(); ++k) {
    for (double d : corner_distances(corners[k], p, 1, 0.0)) {
      const Complex q = corner_source(b, k, d);
      if (b.contains(q)) out.push_back(q);
    }
  }
}

}  // namespace detail

/// Collocation nodes, check points and sources for one level of the ladder.
inline Discretization discretize(const BoundarySet& b, const SolverParams& p) {
  p.validate();
  Discretization d;
  if (b.is_circle()) {
    const EuclidDisk c = b.circle();
    const int n = std::max(p.nodes_per_side, 2 * (p.charge_counts.inner + 1));
    for (double a : detail::uniform_circle_angles(n, 0.0)) d.inner_nodes.push_back(c.center + std::polar(c.radius, a));
    for (double a : detail::uniform_circle_angles(n * p.check_grid_factor, 0.5)) {
      d.inner_check.push_back(c.center + std::polar(c.radius, a));
    }
    d.inner_charges.push_back(c.center);
    const double rc = c.radius * (1.0 - p.inner_charge_offset);
    for (double a : detail::uniform_circle_angles(p.charge_counts.inner, 0.0)) {
      d.inner_charges.push_back(c.center + std::polar(rc, a));
    }
  } else {
    detail::sample_sides(b, p, 1, false, d.inner_nodes);
    detail::sample_sides(b, p, p.check_grid_factor, true, d.inner_check);
    detail::place_polygon_charges(b, p, d.inner_charges);
  }
  if (p.outer_mode == OuterMode::kFree) {
    const int no = p.charge_counts.outer;
    for (double a : detail::uniform_circle_angles(2 * no, 0.0)) d.outer_nodes.push_back(std::polar(1.0, a));
    for (double a : detail::uniform_circle_angles(2 * no * p.check_grid_factor, 0.5)) {
      d.outer_check.push_back(std::polar(1.0, a));
    }
    for (double a : detail::uniform_circle_angles(no, 0.5)) d.outer_charges.push_back(std::polar(p.outer_charge_radius, a));
  }
  if (d.n_collocation() < 2 * d.n_charges()) {
    throw ConfigError("discretize: fewer than two collocation nodes per unknown");
  }
  return d;
}

namespace detail {

inline double basis(Complex z, Complex p, OuterMode mode, bool inner) {
  if (mode == OuterMode::kImage && inner) return std::log(std::abs(z - p) / std::abs(1.0 - std::conj(p) * z));
  return std::log(std::abs(z - p));
}

inline Eigen::MatrixXd assemble(const Discretization& d, const std::vector<Complex>& inner_pts,
                                const std::vector<Complex>& outer_pts, OuterMode mode) {
  const Eigen::Index rows = static_cast<Eigen::Index>(inner_pts.size() + outer_pts.size());
  const Eigen::Index cols = d.n_charges();
  Eigen::MatrixXd a(rows, cols);
  const std::size_t ni = d.inner_charges.size();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const bool inner = static_cast<std::size_t>(j) < ni;
    const Complex q = inner ? d.inner_charges[static_cast<std::size_t>(j)]
                            : d.outer_charges[static_cast<std::size_t>(j) - ni];
    Eigen::Index i = 0;
    for (Complex z : inner_pts) a(i++, j) = basis(z, q, mode, inner);
    for (Complex z : outer_pts) a(i++, j) = basis(z, q, mode, inner);
  }
  return a;
}

}  // namespace detail

/// Relative threshold on |R_ii| / max |R_jj| below which a direction counts as numerically null.
inline constexpr double kRankTolerance = 1e-12;

namespace detail {

inline int numerical_rank(const Eigen::MatrixXd& qr) {
  const Eigen::Index n = std::min(qr.rows(), qr.cols());
  const double top = qr.diagonal().head(n).cwiseAbs().maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) rank += std::abs(qr(i, i)) > kRankTolerance * top ? 1 : 0;
  return top > 0.0 ? rank : 0;
}

}  // namespace detail

/// One least-squares solve at fixed resolution.
inline SolveReport solve_once(const BoundarySet& b, const SolverParams& p, double tol) {
  const Discretization d = discretize(b, p);
  Eigen::MatrixXd a = detail::assemble(d, d.inner_nodes, d.outer_nodes, p.outer_mode);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(a.rows());
  rhs.head(static_cast<Eigen::Index>(d.inner_nodes.size())).setOnes();

  Eigen::VectorXd scale = a.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (!(scale(j) > 0.0)) throw SolverError("solve_capacity: zero basis column");
  }
  a = a * scale.cwiseInverse().asDiagonal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const int rank = detail::numerical_rank(qr.matrixQR());
  if (rank == 0) throw SolverError("solve_capacity: rank-deficient system");
  const Eigen::VectorXd x = qr.solve(rhs).cwiseQuotient(scale);
  if (!x.allFinite()) throw SolverError("solve_capacity: non-finite coefficients");

  SolveReport r;
  r.rank = rank;
  double sum_b = 0.0;
  for (std::size_t j = 0; j < d.inner_charges.size(); ++j) sum_b += x(static_cast<Eigen::Index>(j));
  r.capacity = -2.0 * kPi * sum_b;
  if (!(r.capacity > 0.0)) throw SolverError("solve_capacity: non-positive capacity");
  r.modulus_q = std::exp(-2.0 * kPi / r.capacity);

  const Eigen::MatrixXd c = detail::assemble(d, d.inner_check, d.outer_check, p.outer_mode);
  const Eigen::VectorXd u = c * x;
  const auto ni = static_cast<Eigen::Index>(d.inner_check.size());
  double res = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) res = std::max(res, std::abs(u(i) - (i < ni ? 1.0 : 0.0)));
  r.boundary_residual = res;
  r.n_collocation = d.n_collocation();
  r.n_charges = d.n_charges();
  r.converged = res < tol;
  return r;
}

/// Solve with the retry ladder: up to max_refine doublings of node and source
/// counts while the check-grid residual stays above tol. Returns the report
/// with the smallest residual among the levels run.
inline SolveReport solve_capacity(const BoundarySet& b, const SolverParams& p, double tol) {
  if (!(tol > 0.0)) throw ConfigError("solve_capacity: tol must be positive");
  p.validate();
  SolveReport best = solve_once(b, p, tol);
  for (int level = 1; level <= p.max_refine && !best.converged; ++level) {
    const SolverParams q = p.refined(level);
    if (discretize(b, q).n_charges() > p.max_unknowns) break;
    SolveReport next = solve_once(b, q, tol);
    next.refinements = level;
    if (next.boundary_residual < best.boundary_residual) best = next;
  }
  return best;
}

/// Default check-grid tolerance for polygons and for smooth boundaries.
inline constexpr double kPolygonTol = 5e-4;
inline constexpr double kSmoothTol = 1e-6;

/// The polygon actually handed to the solver, after optional recentring.
inline HypPolygon solver_polygon(const HypPolygon& poly, Recenter mode) {
  if (mode == Recenter::kNever) return poly;
  if (mode == Recenter::kAuto && poly.starlike()) return poly;
  HypPolygon moved = poly.mapped(poly.klein_centroid());
  if (moved.starlike()) return moved;
  if (poly.starlike()) return poly;
  throw GeometryError("cap_polygon: polygon is not starlike about any tried centre");
}

inline SolveReport cap_polygon(const HypPolygon& poly, double tol = kPolygonTol, const SolverParams& p = {}) {
  return solve_capacity(BoundarySet::from_polygon(solver_polygon(poly, p.recenter)), p, tol);
}

inline SolveReport cap_hyp_disk_numeric(const HypDisk& disk, double tol = kSmoothTol, const SolverParams& p = {}) {
  return solve_capacity(BoundarySet::from_hyp_disk(disk), p, tol);
}

inline SolveReport cap_euclid_disk_numeric(EuclidDisk disk, double tol = kSmoothTol, const SolverParams& p = {}) {
  return solve_capacity(BoundarySet::from_circle(disk), p, tol);
}

}  // namespace hypcap
