#pragma once

// Experiment drivers: conjecture checks on triangles and polygons, capacity
// tables of regular polygons, monotone sequences under fixed area or
// perimeter, and the closed-form property suites. Every row stores the
// numbers its verdicts were computed from.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypcap/capsolve.hpp"
#include "hypcap/condenser.hpp"
#include "hypcap/errors.hpp"
#include "hypcap/hypgeom.hpp"
#include "hypcap/specfun.hpp"

namespace hypcap {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- verdicts

enum class Relation { kGe, kLe, kGt, kLt, kNear };

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::kGe: return ">=";
    case Relation::kLe: return "<=";
    case Relation::kGt: return ">";
    case Relation::kLt: return "<";
    case Relation::kNear: return "~=";
  }
  return "?";
}

/// lhs (relation) rhs, judged with an absolute slack.
///  >= and <=: margin beyond slack passes, |margin| <= slack is inconclusive.
///  > and <: strict, the slack is ignored.
///  ~=: |lhs - rhs| <= slack passes.
struct Verdict {
  Relation relation = Relation::kGe;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::string status;

  [[nodiscard]] bool failed() const { return status == "fail"; }
};

inline Verdict judge(double lhs, Relation rel, double rhs, double slack = 0.0) {
  Verdict v{rel, lhs, rhs, slack, "fail"};
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return v;
  switch (rel) {
    case Relation::kGe:
    case Relation::kLe: {
      const double margin = rel == Relation::kGe ? lhs - rhs : rhs - lhs;
      if (margin > slack) {
        v.status = "pass";
      } else if (margin >= -slack) {
        v.status = "inconclusive";
      }
      break;
    }
    case Relation::kGt: v.status = lhs > rhs ? "pass" : "fail"; break;
    case Relation::kLt: v.status = lhs < rhs ? "pass" : "fail"; break;
    case Relation::kNear: v.status = std::abs(lhs - rhs) <= slack ? "pass" : "fail"; break;
  }
  return v;
}

// ---------------------------------------------------------------- rows

struct ExperimentRow {
  std::string id;
  Json inputs = Json::object();
  std::vector<std::pair<std::string, double>> values;
  double residual = 0.0;  ///< largest solver residual behind this row, 0 for closed forms
  std::vector<std::pair<std::string, Verdict>> verdicts;
  std::string error;  ///< non-empty when the row could not be computed

  void set(const std::string& key, double v) {
    for (auto& kv : values) {
      if (kv.first == key) {
        kv.second = v;
        return;
      }
    }
    values.emplace_back(key, v);
  }
  [[nodiscard]] double get(const std::string& key) const {
    for (const auto& kv : values) {
      if (kv.first == key) return kv.second;
    }
    throw std::out_of_range("ExperimentRow: no value " + key);
  }
  [[nodiscard]] const Verdict* verdict(const std::string& key) const {
    for (const auto& kv : verdicts) {
      if (kv.first == key) return &kv.second;
    }
    return nullptr;
  }
  void add(const std::string& key, Verdict v) { verdicts.emplace_back(key, std::move(v)); }

  [[nodiscard]] bool any_fail() const {
    return std::any_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second.failed(); });
  }
};

inline Json to_json(const Verdict& v) {
  Json j;
  j["status"] = v.status;
  j["lhs"] = v.lhs;
  j["relation"] = relation_symbol(v.relation);
  j["rhs"] = v.rhs;
  j["slack"] = v.slack;
  return j;
}

inline Json to_json(const ExperimentRow& r) {
  Json j;
  j["id"] = r.id;
  j["inputs"] = r.inputs;
  Json vals = Json::object();
  for (const auto& [k, v] : r.values) vals[k] = v;
  j["values"] = vals;
  j["residual"] = r.residual;
  Json ver = Json::object();
  for (const auto& [k, v] : r.verdicts) ver[k] = to_json(v);
  j["verdicts"] = ver;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline Json to_json(const std::vector<ExperimentRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Short form for row ids.
inline std::string label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Flat CSV: id, every value key, residual, every verdict status, error.
/// Columns appear in first-seen order over all rows.
inline void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  std::vector<std::string> vkeys;
  std::vector<std::string> dkeys;
  const auto remember = [](std::vector<std::string>& keys, const std::string& k) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  };
  for (const auto& r : rows) {
    for (const auto& kv : r.values) remember(vkeys, kv.first);
    for (const auto& kv : r.verdicts) remember(dkeys, kv.first);
  }
  os << "id";
  for (const auto& k : vkeys) os << ',' << detail::csv_escape(k);
  os << ",residual";
  for (const auto& k : dkeys) os << ',' << detail::csv_escape("verdict:" + k);
  os << ",error\n";
  for (const auto& r : rows) {
    os << detail::csv_escape(r.id);
    for (const auto& k : vkeys) {
      os << ',';
      for (const auto& kv : r.values) {
        if (kv.first == k) os << detail::format_double(kv.second);
      }
    }
    os << ',' << detail::format_double(r.residual);
    for (const auto& k : dkeys) {
      os << ',';
      if (const Verdict* v = r.verdict(k)) os << v->status;
    }
    os << ',' << detail::csv_escape(r.error) << '\n';
  }
}

inline bool any_fail(const std::vector<ExperimentRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.any_fail(); });
}

inline bool any_error(const std::vector<ExperimentRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return !r.error.empty(); });
}

// ---------------------------------------------------------------- parallel map

/// out[i] = f(i) on up to `threads` workers. Output order never depends on
/// scheduling; the first exception (by index) is rethrown.
template <class F>
auto parallel_map(std::size_t n, F&& f, unsigned threads = 0) -> std::vector<decltype(f(std::size_t{}))> {
  using T = decltype(f(std::size_t{}));
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  const auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += threads) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// ---------------------------------------------------------------- reference data

struct TriangleRef {
  std::array<Complex, 3> vertices;
  double cap_t = 0.0;
  double cap_t0 = 0.0;
};

/// Published capacities of nine triangles T and their equal-area equilateral T0.
inline std::vector<TriangleRef> reference_triangles() {
  using C = Complex;
  return {
      {{C(0.6, 0), C(0.2, -0.5), C(-0.3, -0.5)}, 5.61438997196548, 4.96507462804135},
      {{C(0.9, 0), C(0.2, -0.5), C(-0.3, -0.5)}, 7.57256635825877, 5.39880575287883},
      {{C(0, 0.3), C(0.3, -0.5), C(-0.3, -0.5)}, 5.63768713031744, 5.60191869448996},
      {{C(0, 0.5), C(0.25, -0.4), C(-0.25, -0.4)}, 5.52754816211627, 5.21348957109432},
      {{C(0, 0.9), C(0.78, -0.45), C(-0.78, -0.45)}, 13.2881689301735, 13.2881521954927},
      {{C(0, 0.95), C(0.7, -0.4), C(-0.5, -0.8)}, 13.92508317827, 12.4763956630121},
      {{C(0, 0.2), C(0.17, -0.1), C(-0.17, -0.1)}, 3.23750018859583, 3.23740547036233},
      {{C(0, 0.1), C(0.087, -0.05), C(-0.087, -0.05)}, 2.40145519669907, 2.40145213607884},
      {{C(0, -0.1), C(0.5, -0.5), C(-0.5, -0.5)}, 5.98941024500545, 4.85509874205801},
      {{C(0, -0.1), C(0.7, -0.5), C(-0.7, -0.5)}, 8.25251632029587, 4.89997376235771},
  };
}

struct PolygonRef {
  std::vector<Complex> vertices;
  double cap_p = 0.0;
  double cap_p0 = 0.0;
};

/// Published capacities of polygons P and the regular polygon P0 of equal perimeter.
inline std::vector<PolygonRef> reference_polygons() {
  using C = Complex;
  return {
      {{C(0.6, 0), C(0.1, -0.8), C(-0.5, 0.6)}, 9.0274303701827, 9.07270475215184},
      {{C(0.601, 0), C(0, -0.6), C(-0.599, 0), C(0, 0.6)}, 8.3279404581868, 8.32794231176445},
      {{C(0.6, 0), C(0.1, -0.8), C(-0.5, -0.5), C(-0.5, 0.6), C(0.5, 0.5)}, 11.9589944965738, 12.0640771315217},
      {{C(0.6, 0), C(0.1, -0.8), C(-0.5, -0.5), C(-0.8, 0), C(-0.5, 0.6), C(0.5, 0.5)},
       13.5302396750603,
       13.6288953941389},
      {{C(0.6, 0), C(0.1, -0.8), C(-0.5, -0.5), C(-0.8, 0), C(-0.5, 0.6), C(0, 0.9), C(0.5, 0.5)},
       15.9302933204252,
       16.0808062702908},
      {{C(0.6, 0), C(0.5, -0.5), C(0.1, -0.8), C(-0.5, -0.5), C(-0.8, 0), C(-0.5, 0.6), C(0, 0.9), C(0.5, 0.5)},
       16.7814228075178,
       16.9697317440523},
      {{C(0.7, 0.2), C(0.7, -0.2), C(0.4, -0.5), C(0, -0.8), C(-0.4, -0.7), C(-0.7, -0.4), C(-0.8, 0),
        C(-0.7, 0.3), C(-0.4, 0.7), C(0, 0.9), C(0.3, 0.8), C(0.5, 0.5)},
       20.8062404526496,
       21.0023784573094},
  };
}

inline const std::vector<int>& table_ms() {
  static const std::vector<int> ms = {3, 4, 5, 6, 7};
  return ms;
}

inline const std::vector<double>& table_rs() {
  static const std::vector<double> rs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  return rs;
}

/// Published cap(D, regular_polygon(m, r)); rows r = 0.1..0.9, columns m = 3..7.
inline std::optional<double> reference_regular(int m, double r) {
  static const double table[9][5] = {
      {2.3993612914, 2.5281340146, 2.5942462887, 2.6324787004, 2.6565098093},
      {3.2528141529, 3.4946167264, 3.6244949167, 3.7016779579, 3.7510464324},
      {4.0913694284, 4.4816138033, 4.7030688851, 4.8395121547, 4.9289424320},
      {4.9856760383, 5.5743497987, 5.9308261981, 6.1608778512, 6.3167666667},
      {5.9799062371, 6.8325631892, 7.3878902352, 7.7670978659, 8.0354723585},
      {7.1266240809, 8.3279319407, 9.1730250087, 9.7887982158, 10.248675793},
      {8.5161561610, 10.180067164, 11.444185389, 12.431726677, 13.216542846},
      {10.349853454, 12.653202360, 14.534982854, 16.110376899, 17.447408861},
      {13.274319210, 16.602537086, 19.510028327, 22.105923933, 24.452171599},
  };
  if (m < 3 || m > 7) return std::nullopt;
  const double row = r * 10.0 - 1.0;
  const long i = std::lround(row);
  if (i < 0 || i > 8 || std::abs(row - static_cast<double>(i)) > 1e-9) return std::nullopt;
  return table[i][m - 3];
}

// ---------------------------------------------------------------- config

struct HarnessConfig {
  double polygon_tol = kPolygonTol;
  double smooth_tol = kSmoothTol;
  SolverParams params{};
  unsigned threads = 0;
  std::uint64_t seed = 20240601;
};

/// Slack for comparing two solved capacities: twice the larger residual.
inline double residual_slack(double r1, double r2) { return 2.0 * std::max(r1, r2); }

/// Margin allowed above the perimeter upper bound.
inline constexpr double kPerimeterBoundSlack = 1e-6;

namespace detail {

inline Json vertices_json(const HypPolygon& p) {
  Json a = Json::array();
  for (const auto& v : p.vertices()) a.push_back({v.z().real(), v.z().imag()});
  return a;
}

template <class Range>
inline Json complex_list_json(const Range& zs) {
  Json a = Json::array();
  for (Complex z : zs) a.push_back({z.real(), z.imag()});
  return a;
}

inline void record_solve(ExperimentRow& row, const std::string& tag, const SolveReport& s) {
  row.set("cap_" + tag, s.capacity);
  row.set("residual_" + tag, s.boundary_residual);
  row.set("charges_" + tag, s.n_charges);
  row.set("converged_" + tag, s.converged ? 1.0 : 0.0);
  row.residual = std::max(row.residual, s.boundary_residual);
}

inline void perimeter_bound(ExperimentRow& row, const std::string& tag, double cap, double perimeter) {
  row.add("perimeter_bound_" + tag, judge(cap, Relation::kLe, ref_cap2(perimeter), kPerimeterBoundSlack));
}

inline void reference_deviation(ExperimentRow& row, const std::string& tag, double cap, double ref) {
  row.set("published_" + tag, ref);
  row.set("rel_dev_" + tag, (cap - ref) / ref);
}

}  // namespace detail

// ---------------------------------------------------------------- experiments

struct TriangleInput {
  std::array<Complex, 3> vertices;
  std::optional<double> ref_t;
  std::optional<double> ref_t0;
};

/// For each T: the equilateral T0 centred at 0 with the same area, both
/// capacities, and the verdict cap(T) >= cap(T0).
inline std::vector<ExperimentRow> run_triangle_conjecture(const std::vector<TriangleInput>& rows,
                                                          const HarnessConfig& cfg) {
  return parallel_map(
      rows.size(),
      [&](std::size_t i) {
        const TriangleInput& in = rows[i];
        ExperimentRow row;
        row.id = "triangle-" + std::to_string(i + 1);
        row.inputs["vertices"] = detail::complex_list_json(in.vertices);
        try {
          const HypPolygon t = HypPolygon::from_complex(in.vertices);
          const PolygonMeasures mt = polygon_measures(t);
          const double omega = (mt.angles[0] + mt.angles[1] + mt.angles[2]) / 3.0;
          const double r = equilateral_triangle_radius(omega);
          const HypPolygon t0 = regular_polygon(3, r);
          const PolygonMeasures m0 = polygon_measures(t0);
          const SolveReport st = cap_polygon(t, cfg.polygon_tol, cfg.params);
          const SolveReport s0 = cap_polygon(t0, cfg.polygon_tol, cfg.params);
          row.set("area_T", mt.area);
          row.set("area_T0", m0.area);
          row.set("perimeter_T", mt.perimeter);
          row.set("perimeter_T0", m0.perimeter);
          row.set("omega", omega);
          row.set("r_T0", r);
          detail::record_solve(row, "T", st);
          detail::record_solve(row, "T0", s0);
          if (in.ref_t) detail::reference_deviation(row, "T", st.capacity, *in.ref_t);
          if (in.ref_t0) detail::reference_deviation(row, "T0", s0.capacity, *in.ref_t0);
          row.add("conjecture", judge(st.capacity, Relation::kGe, s0.capacity,
                                      residual_slack(st.boundary_residual, s0.boundary_residual)));
          row.add("equal_area", judge(mt.area, Relation::kNear, m0.area, 1e-9));
          detail::perimeter_bound(row, "T", st.capacity, mt.perimeter);
          detail::perimeter_bound(row, "T0", s0.capacity, m0.perimeter);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        return row;
      },
      cfg.threads);
}

inline std::vector<TriangleInput> reference_triangle_inputs() {
  std::vector<TriangleInput> out;
  for (const auto& t : reference_triangles()) out.push_back({t.vertices, t.cap_t, t.cap_t0});
  return out;
}

struct PolygonInput {
  std::vector<Complex> vertices;
  std::optional<double> ref_p;
  std::optional<double> ref_p0;
};

/// For each P: the regular P0 centred at 0 with the same perimeter, both
/// capacities, and the verdict cap(P) <= cap(P0).
inline std::vector<ExperimentRow> run_polygon_conjecture(const std::vector<PolygonInput>& rows,
                                                         const HarnessConfig& cfg) {
  return parallel_map(
      rows.size(),
      [&](std::size_t i) {
        const PolygonInput& in = rows[i];
        ExperimentRow row;
        row.id = "polygon-" + std::to_string(i + 1);
        row.inputs["vertices"] = detail::complex_list_json(in.vertices);
        try {
          const HypPolygon p = HypPolygon::from_complex(in.vertices);
          const int m = static_cast<int>(p.size());
          const double len = polygon_perimeter(p);
          const double r = regular_radius_from_perimeter(m, len);
          const HypPolygon p0 = regular_polygon(m, r);
          const SolveReport sp = cap_polygon(p, cfg.polygon_tol, cfg.params);
          const SolveReport s0 = cap_polygon(p0, cfg.polygon_tol, cfg.params);
          row.inputs["m"] = m;
          row.set("perimeter_P", len);
          row.set("perimeter_P0", polygon_perimeter(p0));
          row.set("r_P0", r);
          detail::record_solve(row, "P", sp);
          detail::record_solve(row, "P0", s0);
          if (in.ref_p) detail::reference_deviation(row, "P", sp.capacity, *in.ref_p);
          if (in.ref_p0) detail::reference_deviation(row, "P0", s0.capacity, *in.ref_p0);
          row.add("conjecture", judge(sp.capacity, Relation::kLe, s0.capacity,
                                      residual_slack(sp.boundary_residual, s0.boundary_residual)));
          detail::perimeter_bound(row, "P", sp.capacity, len);
          detail::perimeter_bound(row, "P0", s0.capacity, len);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        return row;
      },
      cfg.threads);
}

inline std::vector<PolygonInput> reference_polygon_inputs() {
  std::vector<PolygonInput> out;
  for (const auto& p : reference_polygons()) out.push_back({p.vertices, p.cap_p, p.cap_p0});
  return out;
}

/// cap(D, regular_polygon(m, r)) over the grid, rows ordered by r then m.
/// Each row carries monotonicity verdicts against its neighbours in r and m.
inline std::vector<ExperimentRow> run_regular_table(const std::vector<int>& ms, const std::vector<double>& rs,
                                                    const HarnessConfig& cfg) {
  const std::size_t nm = ms.size();
  auto rows = parallel_map(
      ms.size() * rs.size(),
      [&](std::size_t k) {
        const double r = rs[k / nm];
        const int m = ms[k % nm];
        ExperimentRow row;
        std::ostringstream id;
        id << "r=" << r << ",m=" << m;
        row.id = id.str();
        row.inputs["m"] = m;
        row.inputs["r"] = r;
        try {
          const HypPolygon p = regular_polygon(m, r);
          const double len = polygon_perimeter(p);
          const SolveReport s = cap_polygon(p, cfg.polygon_tol, cfg.params);
          row.set("perimeter", len);
          detail::record_solve(row, "P", s);
          if (auto ref = reference_regular(m, r)) detail::reference_deviation(row, "P", s.capacity, *ref);
          detail::perimeter_bound(row, "P", s.capacity, len);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        return row;
      },
      cfg.threads);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    ExperimentRow& row = rows[k];
    if (!row.error.empty()) continue;
    const double cap = row.get("cap_P");
    if (k % nm > 0 && rows[k - 1].error.empty()) {
      const ExperimentRow& prev = rows[k - 1];
      row.add("increasing_in_m", judge(cap, Relation::kGe, prev.get("cap_P"),
                                       residual_slack(row.residual, prev.residual)));
    }
    if (k >= nm && rows[k - nm].error.empty()) {
      const ExperimentRow& prev = rows[k - nm];
      row.add("increasing_in_r", judge(cap, Relation::kGe, prev.get("cap_P"),
                                       residual_slack(row.residual, prev.residual)));
    }
  }
  return rows;
}

/// Table layout: one line per r, one column per m.
inline void write_regular_table_csv(std::ostream& os, const std::vector<ExperimentRow>& rows,
                                    const std::vector<int>& ms, const std::vector<double>& rs) {
  os << "r";
  for (int m : ms) os << ",m=" << m;
  os << '\n';
  for (std::size_t i = 0; i < rs.size(); ++i) {
    os << detail::label(rs[i]);
    for (std::size_t j = 0; j < ms.size(); ++j) {
      const ExperimentRow& row = rows[i * ms.size() + j];
      os << ',' << (row.error.empty() ? detail::format_double(row.get("cap_P")) : std::string("nan"));
    }
    os << '\n';
  }
}

namespace detail {

/// Regular m-gons whose radius comes from `radius_of(m)`, with sequence verdicts.
template <class RadiusOf>
inline std::vector<ExperimentRow> run_sequence(const std::string& tag, double c, const std::vector<int>& ms,
                                               RadiusOf radius_of, Relation order, Relation bound_rel,
                                               double bound, const HarnessConfig& cfg) {
  auto rows = parallel_map(
      ms.size(),
      [&](std::size_t i) {
        const int m = ms[i];
        ExperimentRow row;
        row.id = tag + "-m" + std::to_string(m);
        row.inputs["c"] = c;
        row.inputs["m"] = m;
        try {
          const double r = radius_of(m);
          const HypPolygon p = regular_polygon(m, r);
          const PolygonMeasures pm = polygon_measures(p);
          const SolveReport s = cap_polygon(p, cfg.polygon_tol, cfg.params);
          row.set("r", r);
          row.set("area", pm.area);
          row.set("perimeter", pm.perimeter);
          detail::record_solve(row, "P", s);
          row.set("bound", bound);
          row.set("gap_to_bound", std::abs(bound - s.capacity));
          row.add("bound", judge(s.capacity, bound_rel, bound, 2.0 * s.boundary_residual));
          detail::perimeter_bound(row, "P", s.capacity, pm.perimeter);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        return row;
      },
      cfg.threads);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!rows[i].error.empty() || !rows[i - 1].error.empty()) continue;
    rows[i].add("monotone", judge(rows[i].get("cap_P"), order, rows[i - 1].get("cap_P"),
                                  residual_slack(rows[i].residual, rows[i - 1].residual)));
  }
  return rows;
}

}  // namespace detail

/// Regular m-gons of h-area c: capacities decrease in m and stay above 2 pi / log M1(c).
inline std::vector<ExperimentRow> run_sequence_area(double c, const std::vector<int>& ms, const HarnessConfig& cfg) {
  if (!(c > 0.0 && c < kPi)) detail::domain_fail("run_sequence_area", "requires 0 < c < pi");
  return detail::run_sequence(
      "area", c, ms, [c](int m) { return regular_radius_from_area(m, c); }, Relation::kLe, Relation::kGe,
      ref_cap1(c), cfg);
}

/// Regular m-gons of h-perimeter c: capacities increase in m and stay below 2 pi / log M2(c).
inline std::vector<ExperimentRow> run_sequence_perim(double c, const std::vector<int>& ms, const HarnessConfig& cfg) {
  if (!(c > 0.0)) detail::domain_fail("run_sequence_perim", "requires c > 0");
  return detail::run_sequence(
      "perim", c, ms, [c](int m) { return regular_radius_from_perimeter(m, c); }, Relation::kGe, Relation::kLe,
      ref_cap2(c), cfg);
}

/// Grid of n points from lo to hi, geometric when both are positive and `geometric` is set.
inline std::vector<double> grid(double lo, double hi, int n, bool geometric = false) {
  std::vector<double> g;
  if (n <= 0) return g;
  if (n == 1) return {lo};
  g.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    g.push_back(geometric ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
  }
  g.back() = hi;
  return g;
}

/// (c, f1, f2, f1 - f2) with the verdict f1 > f2.
inline std::vector<ExperimentRow> run_f1f2(const std::vector<double>& cs) {
  std::vector<ExperimentRow> rows;
  rows.reserve(cs.size());
  for (double c : cs) {
    ExperimentRow row;
    row.id = "f1f2-" + detail::label(c);
    row.inputs["c"] = c;
    const double a = f1(c);
    const double b = f2(c);
    row.set("f1", a);
    row.set("f2", b);
    row.set("f1_minus_f2", a - b);
    row.add("f1_gt_f2", judge(a, Relation::kGt, b));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Lower bound, solved capacity and upper bound for equilateral triangles with vertices s e^{2 pi i k/3}.
inline std::vector<ExperimentRow> run_triangle_bounds(const std::vector<double>& ss, const HarnessConfig& cfg) {
  return parallel_map(
      ss.size(),
      [&](std::size_t i) {
        const double s = ss[i];
        ExperimentRow row;
        row.id = "bounds-s" + detail::label(s);
        row.inputs["s"] = s;
        try {
          const TriangleBoundSet b = triangle_bounds_from_s(s);
          const HypPolygon t = regular_polygon(3, s);
          const SolveReport sol = cap_polygon(t, cfg.polygon_tol, cfg.params);
          row.set("lower", b.lower);
          detail::record_solve(row, "T", sol);
          row.set("upper_s", b.upper_s);
          row.set("upper_perim", b.upper_perim);
          row.set("upper_area", b.upper_area);
          row.set("perimeter", b.perimeter);
          row.set("area", b.area);
          const double slack = 2.0 * sol.boundary_residual;
          row.add("lower_bound", judge(sol.capacity, Relation::kGe, b.lower, slack));
          row.add("upper_bound", judge(sol.capacity, Relation::kLe, b.upper_s, slack));
          row.add("upper_perim_form", judge(b.upper_perim, Relation::kNear, b.upper_s, 1e-10));
          row.add("upper_area_form", judge(b.upper_area, Relation::kNear, b.upper_s, 1e-10));
          detail::perimeter_bound(row, "T", sol.capacity, b.perimeter);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        return row;
      },
      cfg.threads);
}

/// Capacity of a single polygon with its measures and the perimeter bound.
inline ExperimentRow run_cap_polygon(const std::vector<Complex>& vertices, const HarnessConfig& cfg) {
  ExperimentRow row;
  row.id = "cap-polygon";
  row.inputs["vertices"] = detail::complex_list_json(vertices);
  const HypPolygon p = HypPolygon::from_complex(vertices);
  const PolygonMeasures pm = polygon_measures(p);
  const SolveReport s = cap_polygon(p, cfg.polygon_tol, cfg.params);
  row.set("area", pm.area);
  row.set("perimeter", pm.perimeter);
  detail::record_solve(row, "P", s);
  row.set("modulus_q", s.modulus_q);
  row.set("refinements", s.refinements);
  detail::perimeter_bound(row, "P", s.capacity, pm.perimeter);
  return row;
}

/// Numerical and closed-form capacity of a hyperbolic disk.
inline ExperimentRow run_cap_disk(DiskPoint center, double radius, const HarnessConfig& cfg) {
  ExperimentRow row;
  row.id = "cap-disk";
  row.inputs["center"] = {center.z().real(), center.z().imag()};
  row.inputs["radius"] = radius;
  const HypDisk d(center, radius);
  const SolveReport s = cap_hyp_disk_numeric(d, cfg.smooth_tol, cfg.params);
  const double exact = cap_hyp_disk(radius);
  detail::record_solve(row, "numeric", s);
  row.set("cap_closed_form", exact);
  row.set("rel_err", (s.capacity - exact) / exact);
  row.add("closed_form", judge(s.capacity, Relation::kNear, exact, 1e-7 * exact));
  return row;
}

// ---------------------------------------------------------------- property suites

namespace detail {

/// Uniform doubles in [0,1) from a fixed-seed generator, identical on every platform.
class UnitRng {
 public:
  explicit UnitRng(std::uint64_t seed) : state_(seed) {}
  double operator()() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
  int integer(int lo, int hi) { return lo + static_cast<int>((*this)() * (hi - lo + 1)); }
  Complex disk_point(double max_abs) {
    const double rad = max_abs * std::sqrt((*this)());
    return std::polar(rad, 2.0 * kPi * (*this)());
  }

 private:
  std::uint64_t next() {  // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

inline ExperimentRow property_row(const std::string& id) {
  ExperimentRow r;
  r.id = id;
  return r;
}

}  // namespace detail

/// Special-function identities, monotonicity and the two-sided mu bound.
inline std::vector<ExperimentRow> verify_specfun() {
  std::vector<ExperimentRow> rows;
  {
    auto row = detail::property_row("mu-identities");
    double e52 = 0.0;
    double e54 = 0.0;
    for (int i = 1; i <= 99; ++i) {
      const double r = i / 100.0;
      e52 = std::max(e52, std::abs(mu(r) * mu(std::sqrt((1.0 - r) * (1.0 + r))) - kPi * kPi / 4.0));
      const double q = r / (1.0 + std::sqrt((1.0 - r) * (1.0 + r)));
      e54 = std::max(e54, std::abs(mu(r) - 0.5 * mu(q * q)));
    }
    row.set("max_err_product", e52);
    row.set("max_err_doubling", e54);
    row.set("mu_at_inv_sqrt2", mu(1.0 / std::sqrt(2.0)));
    row.add("product", judge(e52, Relation::kLt, 1e-11));
    row.add("doubling", judge(e54, Relation::kLt, 1e-11));
    row.add("symmetric_point", judge(mu(1.0 / std::sqrt(2.0)), Relation::kNear, kPi / 2.0, 1e-13));
    rows.push_back(std::move(row));
  }
  {
    auto row = detail::property_row("mu-bound");
    double lo = 1e300;
    double hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = 0.001 + 0.998 * i / 999.0;
      const MuBoundCheck c = check_mu_bound(t);
      lo = std::min(lo, c.ratio);
      hi = std::max(hi, c.ratio);
    }
    row.set("min_ratio", lo);
    row.set("max_ratio", hi);
    row.add("lower", judge(lo, Relation::kGt, 1.0));
    row.add("upper", judge(hi, Relation::kLt, kPi / 2.0));
    rows.push_back(std::move(row));
  }
  {
    auto row = detail::property_row("mu-monotone-bracket-inverse");
    bool decreasing = true;
    bool bracket = true;
    double inv = 0.0;
    double prev = mu(0.001);
    for (int i = 2; i <= 999; ++i) {
      const double r = i / 1000.0;
      const double v = mu(r);
      decreasing = decreasing && v < prev;
      bracket = bracket && std::log(1.0 / r) < v && v < std::log(4.0 / r);
      inv = std::max(inv, std::abs(mu_inverse(v) - r));
      prev = v;
    }
    row.set("decreasing", decreasing ? 1.0 : 0.0);
    row.set("bracket", bracket ? 1.0 : 0.0);
    row.set("max_inverse_err", inv);
    row.add("decreasing", judge(decreasing ? 1.0 : 0.0, Relation::kNear, 1.0, 0.0));
    row.add("bracket", judge(bracket ? 1.0 : 0.0, Relation::kNear, 1.0, 0.0));
    row.add("inverse", judge(inv, Relation::kLt, 1e-10));
    rows.push_back(std::move(row));
  }
  {
    auto row = detail::property_row("f1-gt-f2");
    double worst = 1e300;
    for (double c : grid(0.05, 100.0, 200, true)) worst = std::min(worst, f1(c) - f2(c));
    row.set("min_difference", worst);
    row.add("positive", judge(worst, Relation::kGt, 0.0));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Metric axioms, Moebius invariance, Gauss-Bonnet and constructor roundtrips.
inline std::vector<ExperimentRow> verify_hypgeom(std::uint64_t seed) {
  detail::UnitRng rng(seed);
  std::vector<ExperimentRow> rows;
  {
    auto row = detail::property_row("metric-and-moebius");
    double tri = 0.0;
    double inv = 0.0;
    for (int i = 0; i < 100; ++i) {
      const DiskPoint a(rng.disk_point(0.9));
      const DiskPoint x(rng.disk_point(0.95));
      const DiskPoint y(rng.disk_point(0.95));
      const DiskPoint z(rng.disk_point(0.95));
      tri = std::max(tri, hyp_dist(x, z) - hyp_dist(x, y) - hyp_dist(y, z));
      inv = std::max(inv, std::abs(hyp_dist(mobius(a, x), mobius(a, y)) - hyp_dist(x, y)));
    }
    row.set("max_triangle_excess", tri);
    row.set("max_invariance_err", inv);
    row.add("triangle_inequality", judge(tri, Relation::kLe, 1e-12));
    row.add("moebius_invariance", judge(inv, Relation::kLe, 1e-10));
    rows.push_back(std::move(row));
  }
  {
    auto row = detail::property_row("polygon-moebius-invariance");
    double area = 0.0;
    double perim = 0.0;
    int done = 0;
    for (int i = 0; i < 100; ++i) {
      const int m = rng.integer(3, 8);
      const double r = rng.uniform(0.1, 0.85);
      const HypPolygon p = regular_polygon(m, r);
      const DiskPoint a(rng.disk_point(0.5));
      const HypPolygon q = p.mapped(a);
      const PolygonMeasures mp = polygon_measures(p);
      const PolygonMeasures mq = polygon_measures(q);
      area = std::max(area, std::abs(mp.area - mq.area));
      perim = std::max(perim, std::abs(mp.perimeter - mq.perimeter));
      ++done;
    }
    row.set("cases", done);
    row.set("max_area_err", area);
    row.set("max_perimeter_err", perim);
    row.add("area", judge(area, Relation::kLe, 1e-10));
    row.add("perimeter", judge(perim, Relation::kLe, 1e-10));
    rows.push_back(std::move(row));
  }
  {
    auto row = detail::property_row("gauss-bonnet-and-roundtrips");
    double gb = 0.0;
    double perim = 0.0;
    double omega_rt = 0.0;
    for (int m = 3; m <= 12; ++m) {
      for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const HypPolygon p = regular_polygon(m, r);
        const PolygonMeasures pm = polygon_measures(p);
        double sum = 0.0;
        for (double a : pm.angles) sum += a;
        gb = std::max(gb, std::abs(pm.area - ((m - 2) * kPi - sum)));
        const double closed = 2.0 * m * std::asinh(2.0 * r * std::sin(kPi / m) / (1.0 - r * r));
        perim = std::max(perim, std::abs(pm.perimeter - closed));
      }
    }
    for (int i = 1; i < 50; ++i) {
      const double omega = kPi / 3.0 * i / 50.0;
      const PolygonMeasures pm = polygon_measures(regular_polygon(3, equilateral_triangle_radius(omega)));
      for (double a : pm.angles) omega_rt = std::max(omega_rt, std::abs(a - omega));
    }
    row.set("max_gauss_bonnet_err", gb);
    row.set("max_perimeter_err", perim);
    row.set("max_triangle_angle_err", omega_rt);
    row.add("gauss_bonnet", judge(gb, Relation::kLe, 1e-10));
    row.add("perimeter_formula", judge(perim, Relation::kLe, 1e-10));
    row.add("triangle_radius", judge(omega_rt, Relation::kLe, 1e-9));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Disk-family comparisons and triangle-bound identities.
inline std::vector<ExperimentRow> verify_condenser(std::uint64_t seed) {
  detail::UnitRng rng(seed ^ 0x5DEECE66DULL);
  std::vector<ExperimentRow> rows;
  {
    auto row = detail::property_row("disk-families");
    double perim_margin = 1e300;
    double area_margin = 1e300;
    double gap = 1e300;
    double f_drop = 1e300;
    for (int i = 0; i < 1000; ++i) {
      const int p = rng.integer(2, 6);
      std::vector<double> ls;
      for (int j = 0; j < p; ++j) ls.push_back(rng.uniform(0.05, 4.0));
      double sum = 0.0;
      for (double l : ls) sum += cap_hyp_disk(l);
      const double lhat = isoperim_radius(ls);
      const double l = isoarea_radius(ls);
      perim_margin = std::min(perim_margin, sum - cap_hyp_disk(lhat));
      area_margin = std::min(area_margin, sum - cap_hyp_disk(l));
      gap = std::min(gap, lhat - l);
      if (i < 50) {
        double prev = lemma_f(0.0, ls);
        for (int k = 1; k <= 100; ++k) {
          const double v = lemma_f(k / 100.0, ls);
          f_drop = std::min(f_drop, prev - v);
          prev = v;
        }
      }
    }
    row.set("min_margin_perimeter", perim_margin);
    row.set("min_margin_area", area_margin);
    row.set("min_radius_gap", gap);
    row.set("min_f_decrease", f_drop);
    row.add("perimeter_disk", judge(perim_margin, Relation::kGe, 0.0));
    row.add("area_disk", judge(area_margin, Relation::kGe, 0.0));
    row.add("radius_order", judge(gap, Relation::kGt, 0.0));
    row.add("f_decreasing", judge(f_drop, Relation::kGt, 0.0));
    rows.push_back(std::move(row));
  }
  {
    auto row = detail::property_row("triangle-bound-identities");
    double perim_err = 0.0;
    double area_err = 0.0;
    double inv_err = 0.0;
    double order = 1e300;
    for (int i = 1; i < 20; ++i) {
      const double s = 0.05 * i;
      const TriangleBoundSet b = triangle_bounds_from_s(s);
      perim_err = std::max(perim_err, std::abs(b.upper_perim - b.upper_s));
      area_err = std::max(area_err, std::abs(b.upper_area - b.upper_s));
      inv_err = std::max(inv_err, std::abs(s3_from_perimeter(b.perimeter) - s * s * s));
      inv_err = std::max(inv_err, std::abs(s3_from_area(b.area) - s * s * s));
      order = std::min(order, b.upper_s - b.lower);
    }
    row.set("max_upper_perim_err", perim_err);
    row.set("max_upper_area_err", area_err);
    row.set("max_s3_roundtrip_err", inv_err);
    row.set("min_upper_minus_lower", order);
    row.add("upper_perim_form", judge(perim_err, Relation::kLe, 1e-10));
    row.add("upper_area_form", judge(area_err, Relation::kLe, 1e-10));
    row.add("s3_roundtrip", judge(inv_err, Relation::kLe, 1e-10));
    row.add("lower_le_upper", judge(order, Relation::kGe, 0.0));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Solver against the closed form for random hyperbolic disks, and Moebius
/// invariance of solved polygon capacities.
inline std::vector<ExperimentRow> verify_capsolve(const HarnessConfig& cfg) {
  detail::UnitRng rng(cfg.seed ^ 0xC0FFEEULL);
  std::vector<ExperimentRow> rows;
  {
    std::vector<HypDisk> disks;
    while (disks.size() < 20) {
      const HypDisk d(DiskPoint(rng.disk_point(0.7)), rng.uniform(0.1, 2.5));
      const EuclidDisk e = hyp_disk_to_euclid(d);
      if (std::abs(e.center) + e.radius < 0.999) disks.push_back(d);
    }
    auto solved = parallel_map(
        disks.size(), [&](std::size_t i) { return cap_hyp_disk_numeric(disks[i], cfg.smooth_tol, cfg.params); },
        cfg.threads);
    auto row = detail::property_row("disk-oracle");
    double worst = 0.0;
    double res = 0.0;
    for (std::size_t i = 0; i < disks.size(); ++i) {
      const double exact = cap_hyp_disk(disks[i].radius);
      worst = std::max(worst, std::abs(solved[i].capacity - exact) / exact);
      res = std::max(res, solved[i].boundary_residual);
    }
    row.residual = res;
    row.set("max_rel_err", worst);
    row.add("closed_form", judge(worst, Relation::kLe, 1e-7));
    rows.push_back(std::move(row));
  }
  {
    auto row = detail::property_row("polygon-moebius-capacity");
    SolverParams p = cfg.params;
    p.recenter = Recenter::kNever;
    double worst_ratio = 0.0;
    for (int i = 0; i < 4; ++i) {
      const int m = 3 + i;
      const HypPolygon poly = regular_polygon(m, rng.uniform(0.3, 0.6));
      HypPolygon moved = poly;
      for (int tries = 0; tries < 100; ++tries) {
        moved = poly.mapped(DiskPoint(rng.disk_point(0.4)));
        if (moved.starlike()) break;
      }
      if (!moved.starlike()) throw GeometryError("verify: no starlike Moebius image found");
      const SolveReport a = cap_polygon(poly, cfg.polygon_tol, p);
      const SolveReport b = cap_polygon(moved, cfg.polygon_tol, p);
      const double allowed = 3.0 * std::max(a.boundary_residual, b.boundary_residual);
      worst_ratio = std::max(worst_ratio, std::abs(a.capacity - b.capacity) / allowed);
      row.residual = std::max({row.residual, a.boundary_residual, b.boundary_residual});
    }
    row.set("max_diff_over_allowed", worst_ratio);
    row.add("invariance", judge(worst_ratio, Relation::kLe, 1.0));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<ExperimentRow> run_verify(const HarnessConfig& cfg) {
  std::vector<ExperimentRow> rows = verify_specfun();
  for (auto&& part : {verify_hypgeom(cfg.seed), verify_condenser(cfg.seed), verify_capsolve(cfg)}) {
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace hypcap
