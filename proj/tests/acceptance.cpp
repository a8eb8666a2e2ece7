// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcap/hypcap.hpp"

namespace {

using hypcap::ExperimentRow;
using hypcap::kPi;
using Clock = std::chrono::steady_clock;

constexpr double kTableRel = 5e-4;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// every polygon perimeter-bound verdict seen anywhere, for the last criterion
std::vector<std::pair<std::string, hypcap::Verdict>> g_perimeter_verdicts;

void collect_perimeter_bounds(const std::vector<ExperimentRow>& rows) {
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.verdicts) {
      if (k.rfind("perimeter_bound_", 0) == 0) g_perimeter_verdicts.emplace_back(r.id + "/" + k, v);
    }
  }
}

bool no_errors(const std::vector<ExperimentRow>& rows, Outcome& out) {
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      out.ok = false;
      out.detail += " error[" + r.id + "]: " + r.error;
    }
  }
  return out.ok;
}

/// Largest |rel_dev_<tag>| over the rows, -1 if a row lacks it.
double worst_deviation(const std::vector<ExperimentRow>& rows, const std::vector<std::string>& tags) {
  double worst = 0.0;
  for (const auto& r : rows) {
    for (const auto& t : tags) {
      try {
        worst = std::max(worst, std::abs(r.get("rel_dev_" + t)));
      } catch (const std::out_of_range&) {
        return -1.0;
      }
    }
  }
  return worst;
}

int count_status(const std::vector<ExperimentRow>& rows, const std::string& key, const std::string& status) {
  int n = 0;
  for (const auto& r : rows) {
    if (const auto* v = r.verdict(key); v != nullptr && v->status == status) ++n;
  }
  return n;
}

Outcome specfun_identities() {
  Outcome out;
  const auto t0 = Clock::now();
  double e52 = 0.0;
  double e54 = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double r = i / 100.0;
    const double rc = std::sqrt(1.0 - r * r);
    e52 = std::max(e52, std::abs(hypcap::mu(r) * hypcap::mu(rc) - kPi * kPi / 4.0));
    const double t = r / (1.0 + rc);
    e54 = std::max(e54, std::abs(hypcap::mu(r) - 0.5 * hypcap::mu(t * t)));
  }
  const double e_sym = std::abs(hypcap::mu(1.0 / std::sqrt(2.0)) - kPi / 2.0);
  const double dt = seconds_since(t0);
  out.ok = e52 < 1e-11 && e54 < 1e-11 && e_sym < 1e-13 && dt < 1.0;
  out.detail = fmt("complementary err %.2e", e52) + fmt(", doubling err %.2e", e54) +
               fmt(", |mu(1/sqrt2) - pi/2| %.2e", e_sym) + fmt(", %.3f s", dt);
  return out;
}

Outcome mu_bound() {
  Outcome out;
  const auto t0 = Clock::now();
  double lo = 1e300;
  double hi = 0.0;
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t = 0.001 + 0.998 * (i + 0.5) / 1000.0;
    const auto b = hypcap::check_mu_bound(t);
    if (!b.lower_ok || !b.upper_ok) ++bad;
    lo = std::min(lo, b.ratio);
    hi = std::max(hi, b.ratio);
  }
  const double dt = seconds_since(t0);
  out.ok = bad == 0 && dt < 1.0;
  out.detail = std::to_string(bad) + " violations, ratio in" + fmt(" [%.6f", lo) + fmt(", %.6f]", hi) +
               fmt(", %.3f s", dt);
  return out;
}

Outcome disk_oracle(const hypcap::HarnessConfig& cfg) {
  Outcome out;
  hypcap::detail::UnitRng rng(cfg.seed);
  double worst = 0.0;
  double slowest = 0.0;
  int n = 0;
  while (n < 20) {
    const hypcap::HypDisk d(rng.disk_point(0.7), rng.uniform(0.1, 2.5));
    const auto e = hypcap::hyp_disk_to_euclid(d);
    if (std::abs(e.center) + e.radius >= 0.999) continue;
    const auto t0 = Clock::now();
    const auto s = hypcap::cap_hyp_disk_numeric(d, cfg.smooth_tol, cfg.params);
    slowest = std::max(slowest, seconds_since(t0));
    const double exact = hypcap::cap_hyp_disk(d.radius);
    worst = std::max(worst, std::abs(s.capacity - exact) / exact);
    ++n;
  }
  out.ok = worst <= 1e-7 && slowest < 1.0;
  out.detail = fmt("max rel err %.2e", worst) + fmt(", slowest solve %.3f s", slowest);
  return out;
}

Outcome triangle_table(const std::vector<ExperimentRow>& rows, double dt) {
  Outcome out;
  if (!no_errors(rows, out)) return out;
  const double worst = worst_deviation(rows, {"T", "T0"});
  out.ok = rows.size() == 10 && worst >= 0.0 && worst <= kTableRel && dt < 120.0;
  out.detail = std::to_string(rows.size()) + " rows" + fmt(", max rel dev %.2e", worst) + fmt(", %.1f s", dt);
  return out;
}

Outcome regular_table(const std::vector<ExperimentRow>& rows, double dt) {
  Outcome out;
  if (!no_errors(rows, out)) return out;
  const double worst = worst_deviation(rows, {"P"});
  out.ok = rows.size() == 45 && worst >= 0.0 && worst <= kTableRel && dt < 300.0;
  out.detail = std::to_string(rows.size()) + " cells" + fmt(", max rel dev %.2e", worst) + fmt(", %.1f s", dt);
  return out;
}

Outcome polygon_table(const std::vector<ExperimentRow>& rows, double dt) {
  Outcome out;
  if (!no_errors(rows, out)) return out;
  const double worst = worst_deviation(rows, {"P", "P0"});
  const int fails = count_status(rows, "conjecture", "fail");
  const int inconclusive = count_status(rows, "conjecture", "inconclusive");
  out.ok = rows.size() == 7 && worst >= 0.0 && worst <= kTableRel && fails == 0;
  out.detail = std::to_string(rows.size()) + " rows" + fmt(", max rel dev %.2e", worst) + ", conjecture " +
               std::to_string(fails) + " fail / " + std::to_string(inconclusive) + " within residual" +
               fmt(", %.1f s", dt);
  return out;
}

Outcome triangle_conjecture(const std::vector<ExperimentRow>& rows) {
  Outcome out;
  if (!no_errors(rows, out)) return out;
  const int fails = count_status(rows, "conjecture", "fail");
  const int inconclusive = count_status(rows, "conjecture", "inconclusive");
  out.ok = fails == 0;
  out.detail = std::to_string(fails) + " fail, " + std::to_string(inconclusive) + " within residual, " +
               std::to_string(static_cast<int>(rows.size()) - fails - inconclusive) + " pass";
  return out;
}

Outcome disk_theorems(std::uint64_t seed) {
  Outcome out;
  const auto t0 = Clock::now();
  hypcap::detail::UnitRng rng(seed);
  int bad_perim = 0;
  int bad_area = 0;
  int bad_order = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> ls(static_cast<std::size_t>(rng.integer(2, 6)));
    for (double& l : ls) l = rng.uniform(0.05, 4.0);
    double total = 0.0;
    for (double l : ls) total += hypcap::cap_hyp_disk(l);
    const double lhat = hypcap::isoperim_radius(ls);
    const double l = hypcap::isoarea_radius(ls);
    if (!(hypcap::cap_hyp_disk(lhat) <= total)) ++bad_perim;
    if (!(hypcap::cap_hyp_disk(l) <= total)) ++bad_area;
    if (!(lhat > l)) ++bad_order;
  }
  const double dt = seconds_since(t0);
  out.ok = bad_perim == 0 && bad_area == 0 && bad_order == 0 && dt < 1.0;
  out.detail = "violations: perimeter " + std::to_string(bad_perim) + ", area " + std::to_string(bad_area) +
               ", radius order " + std::to_string(bad_order) + fmt(", %.3f s", dt);
  return out;
}

Outcome triangle_sandwich(const std::vector<ExperimentRow>& rows) {
  Outcome out;
  if (!no_errors(rows, out)) return out;
  int outside = 0;
  double form_err = 0.0;
  for (const auto& r : rows) {
    const double cap = r.get("cap_T");
    if (!(cap >= r.get("lower") && cap <= r.get("upper_s"))) ++outside;
    form_err = std::max({form_err, std::abs(r.get("upper_perim") - r.get("upper_s")),
                         std::abs(r.get("upper_area") - r.get("upper_s"))});
  }
  out.ok = rows.size() == 9 && outside == 0 && form_err <= 1e-10;
  out.detail = std::to_string(outside) + " of " + std::to_string(rows.size()) + " outside the bounds" +
               fmt(", upper-form err %.2e", form_err);
  return out;
}

Outcome sequences(const std::vector<ExperimentRow>& area, double dt_area, const std::vector<ExperimentRow>& perim,
                  double dt_perim) {
  Outcome out;
  if (!no_errors(area, out) || !no_errors(perim, out)) return out;
  int fails = 0;
  for (const auto* rows : {&area, &perim}) {
    fails += count_status(*rows, "monotone", "fail") + count_status(*rows, "bound", "fail");
  }
  const int inconclusive = count_status(area, "monotone", "inconclusive") +
                           count_status(perim, "monotone", "inconclusive") +
                           count_status(area, "bound", "inconclusive") + count_status(perim, "bound", "inconclusive");
  out.ok = area.size() == 6 && perim.size() == 6 && fails == 0 && dt_area < 180.0 && dt_perim < 180.0;
  out.detail = std::to_string(fails) + " fail, " + std::to_string(inconclusive) + " within residual" +
               fmt(", area %.1f s", dt_area) + fmt(", perimeter %.1f s", dt_perim);
  return out;
}

Outcome perimeter_bound() {
  Outcome out;
  int fails = 0;
  double worst = -1e300;
  for (const auto& [id, v] : g_perimeter_verdicts) {
    if (v.failed()) {
      ++fails;
      out.detail += " violated[" + id + "]";
    }
    worst = std::max(worst, v.lhs - v.rhs);
  }
  out.ok = fails == 0 && !g_perimeter_verdicts.empty();
  out.detail = std::to_string(g_perimeter_verdicts.size()) + " polygon solves checked, " + std::to_string(fails) +
               " above bound + 1e-6" + fmt(", max cap - bound %.3e", worst) + out.detail;
  return out;
}

template <class F>
auto timed(F&& f, double& dt) {
  const auto t0 = Clock::now();
  auto r = f();
  dt = seconds_since(t0);
  return r;
}

}  // namespace

int main() {
  const hypcap::HarnessConfig cfg;
  int failed = 0;
  const auto report = [&failed](int n, const char* name, const Outcome& o) {
    std::printf("[%s] %2d %s: %s\n", o.ok ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  };

  report(1, "special-function identities", specfun_identities());
  report(2, "two-sided mu bound", mu_bound());
  report(3, "disk solver oracle", disk_oracle(cfg));

  double dt_tri = 0.0;
  const auto tri = timed([&] { return hypcap::run_triangle_conjecture(hypcap::reference_triangle_inputs(), cfg); },
                         dt_tri);
  collect_perimeter_bounds(tri);
  report(4, "reference triangles", triangle_table(tri, dt_tri));

  double dt_reg = 0.0;
  const auto reg = timed([&] { return hypcap::run_regular_table(hypcap::table_ms(), hypcap::table_rs(), cfg); },
                         dt_reg);
  collect_perimeter_bounds(reg);
  report(5, "regular polygon grid", regular_table(reg, dt_reg));

  double dt_poly = 0.0;
  const auto poly = timed([&] { return hypcap::run_polygon_conjecture(hypcap::reference_polygon_inputs(), cfg); },
                          dt_poly);
  collect_perimeter_bounds(poly);
  report(6, "reference polygons", polygon_table(poly, dt_poly));

  report(7, "equal-area triangle inequality", triangle_conjecture(tri));
  report(8, "disk family inequalities", disk_theorems(cfg.seed));

  std::vector<double> ss;
  for (int i = 1; i <= 9; ++i) ss.push_back(i / 10.0);
  const auto bounds = hypcap::run_triangle_bounds(ss, cfg);
  collect_perimeter_bounds(bounds);
  report(9, "equilateral triangle bounds", triangle_sandwich(bounds));

  const std::vector<int> ms = {3, 4, 5, 6, 7, 8};
  double dt_area = 0.0;
  const auto area = timed([&] { return hypcap::run_sequence_area(3.0, ms, cfg); }, dt_area);
  double dt_perim = 0.0;
  const auto perim = timed([&] { return hypcap::run_sequence_perim(20.0, ms, cfg); }, dt_perim);
  collect_perimeter_bounds(area);
  collect_perimeter_bounds(perim);
  report(10, "regular polygon sequences", sequences(area, dt_area, perim, dt_perim));

  report(11, "perimeter upper bound", perimeter_bound());

  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
