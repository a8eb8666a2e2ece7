// hypcap: command-line front end for the capacity library.
//
// Exit codes: 0 when every verdict passes or is inconclusive, 1 when any
// verdict fails, 2 on usage, input, domain or geometry errors.

#include <CLI11.hpp>

#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcap/hypcap.hpp"

namespace {

using hypcap::Complex;
using hypcap::ExperimentRow;
using hypcap::Json;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 20240601;
  int max_refine = 3;
  unsigned threads = 0;
};

hypcap::HarnessConfig make_config(const Common& c) {
  hypcap::HarnessConfig cfg;
  if (c.tol) {
    cfg.polygon_tol = *c.tol;
    cfg.smooth_tol = *c.tol;
  }
  cfg.params.max_refine = c.max_refine;
  cfg.threads = c.threads;
  cfg.seed = c.seed;
  return cfg;
}

Complex parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw InputError("cannot parse complex number '" + s + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw InputError("cannot parse complex number '" + s + "'");
  }
  return {re, im};
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Complex> vertices_from_json(const Json& j) {
  const Json& list = j.is_object() ? j.at("vertices") : j;
  if (!list.is_array()) throw InputError("vertex list must be an array of [re, im] pairs");
  std::vector<Complex> v;
  for (const auto& p : list) {
    if (!p.is_array() || p.size() != 2) throw InputError("vertex must be a [re, im] pair");
    v.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return v;
}

std::vector<Complex> vertices_from_string(const std::string& s) {
  std::vector<Complex> v;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ';')) {
    if (!item.empty()) v.push_back(parse_complex(item));
  }
  return v;
}

void emit(const Common& c, const std::vector<ExperimentRow>& rows,
          const std::function<void(std::ostream&)>& csv_override = {}) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw InputError("cannot write " + c.out);
  }
  std::ostream& os = c.out.empty() ? std::cout : file;
  if (c.format == "csv") {
    if (csv_override) {
      csv_override(os);
    } else {
      hypcap::write_csv(os, rows);
    }
  } else {
    os << hypcap::to_json(rows).dump(2) << '\n';
  }
}

int verdict_code(const std::vector<ExperimentRow>& rows) {
  for (const auto& r : rows) {
    if (!r.error.empty()) std::cerr << "hypcap: " << r.id << ": " << r.error << '\n';
  }
  if (hypcap::any_error(rows)) return kExitError;
  return hypcap::any_fail(rows) ? kExitFail : 0;
}

std::vector<int> m_range(int lo, int hi) {
  if (lo < 3 || hi < lo) throw InputError("m range must satisfy 3 <= m-min <= m-max");
  std::vector<int> ms;
  for (int m = lo; m <= hi; ++m) ms.push_back(m);
  return ms;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condenser capacities of hyperbolic polygons and disks in the unit disk"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--tol", common.tol, "Check-grid residual tolerance (default 1e-6 smooth, 5e-4 polygon)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", common.out, "Write output to this file instead of stdout");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", common.seed, "Seed for property sampling");
  app.add_option("--max-refine", common.max_refine, "Retry ladder cap")->check(CLI::Range(0, 6));
  app.add_option("--threads", common.threads, "Worker threads (0 = hardware concurrency)");

  // mu
  std::vector<double> mu_args;
  bool mu_inverse = false;
  auto* mu_cmd = app.add_subcommand("mu", "Evaluate mu(r), K(r) and the Groetzsch capacity");
  mu_cmd->add_option("r", mu_args, "Arguments")->required();
  mu_cmd->add_flag("--inverse", mu_inverse, "Treat the arguments as values y and return mu^{-1}(y)");

  // cap-disk
  std::string disk_center = "0,0";
  double disk_radius = 0.0;
  auto* disk_cmd = app.add_subcommand("cap-disk", "Capacity of a hyperbolic disk, numeric and closed form");
  disk_cmd->add_option("--center", disk_center, "Hyperbolic centre as re,im");
  disk_cmd->add_option("--radius", disk_radius, "Hyperbolic radius")->required();

  // cap-polygon
  std::string poly_input;
  std::string poly_vertices;
  auto* poly_cmd = app.add_subcommand("cap-polygon", "Capacity of a hyperbolic polygon");
  auto* poly_in = poly_cmd->add_option("--input", poly_input, "JSON file {\"vertices\": [[re, im], ...]}");
  auto* poly_v = poly_cmd->add_option("--vertices", poly_vertices, "Vertices as 're,im;re,im;...'");
  poly_in->excludes(poly_v);

  // triangle-conjecture
  std::string tri_input;
  auto* tri_cmd = app.add_subcommand("triangle-conjecture", "cap(T) >= cap(T0) for equal h-area");
  tri_cmd->add_option("--input", tri_input, "JSON file {\"triangles\": [[[re, im] x3], ...]}; default: reference set");

  // polygon-conjecture
  std::string pc_input;
  auto* pc_cmd = app.add_subcommand("polygon-conjecture", "cap(P) <= cap(P0) for equal h-perimeter");
  pc_cmd->add_option("--input", pc_input, "JSON file {\"polygons\": [[[re, im], ...], ...]}; default: reference set");

  // regular-table
  std::vector<int> table_m = hypcap::table_ms();
  std::vector<double> table_r = hypcap::table_rs();
  auto* table_cmd = app.add_subcommand("regular-table", "Capacities of regular polygons over an (r, m) grid");
  table_cmd->add_option("--m", table_m, "Vertex counts")->delimiter(',');
  table_cmd->add_option("--r", table_r, "Vertex radii")->delimiter(',');

  // sequences
  double area_c = 3.0;
  double perim_c = 20.0;
  int seq_lo = 3;
  int seq_hi = 8;
  auto* area_cmd = app.add_subcommand("seq-area", "Regular m-gons of fixed h-area");
  area_cmd->add_option("--c", area_c, "h-area in (0, pi)");
  area_cmd->add_option("--m-min", seq_lo, "Smallest m");
  area_cmd->add_option("--m-max", seq_hi, "Largest m");
  auto* perim_cmd = app.add_subcommand("seq-perim", "Regular m-gons of fixed h-perimeter");
  perim_cmd->add_option("--c", perim_c, "h-perimeter");
  perim_cmd->add_option("--m-min", seq_lo, "Smallest m");
  perim_cmd->add_option("--m-max", seq_hi, "Largest m");

  // f1f2
  double c_min = 0.05;
  double c_max = 100.0;
  int c_n = 200;
  auto* f_cmd = app.add_subcommand("f1f2", "The two reference capacity functions on a geometric c grid");
  f_cmd->add_option("--c-min", c_min, "Smallest c")->check(CLI::PositiveNumber);
  f_cmd->add_option("--c-max", c_max, "Largest c")->check(CLI::PositiveNumber);
  f_cmd->add_option("--n", c_n, "Grid points")->check(CLI::Range(1, 100000));

  // triangle-bounds
  std::vector<double> bound_s = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  auto* tb_cmd = app.add_subcommand("triangle-bounds", "Lower bound, capacity and upper bound of equilateral triangles");
  tb_cmd->add_option("--s", bound_s, "Vertex radii")->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    const hypcap::HarnessConfig cfg = make_config(common);
    std::vector<ExperimentRow> rows;

    if (*mu_cmd) {
      for (double x : mu_args) {
        ExperimentRow row;
        if (mu_inverse) {
          row.id = "mu-inverse";
          row.inputs["y"] = x;
          const double r = hypcap::mu_inverse(x);
          row.set("r", r);
          row.set("mu", hypcap::mu(r));
        } else {
          row.id = "mu";
          row.inputs["r"] = x;
          row.set("mu", hypcap::mu(x));
          if (x < 1.0) {
            row.set("ellint_K", hypcap::ellint_K(x));
            row.set("grotzsch_cap", hypcap::grotzsch_cap(x));
          }
        }
        rows.push_back(std::move(row));
      }
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*disk_cmd) {
      rows.push_back(hypcap::run_cap_disk(hypcap::DiskPoint(parse_complex(disk_center)), disk_radius, cfg));
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*poly_cmd) {
      std::vector<Complex> v;
      if (!poly_input.empty()) {
        v = vertices_from_json(read_json(poly_input));
      } else if (!poly_vertices.empty()) {
        v = vertices_from_string(poly_vertices);
      } else {
        throw InputError("cap-polygon needs --input or --vertices");
      }
      rows.push_back(hypcap::run_cap_polygon(v, cfg));
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*tri_cmd) {
      std::vector<hypcap::TriangleInput> in;
      if (tri_input.empty()) {
        in = hypcap::reference_triangle_inputs();
      } else {
        const Json doc = read_json(tri_input);
        for (const auto& t : doc.at("triangles")) {
          const auto v = vertices_from_json(t);
          if (v.size() != 3) throw InputError("each triangle needs exactly 3 vertices");
          in.push_back({{v[0], v[1], v[2]}, std::nullopt, std::nullopt});
        }
      }
      rows = hypcap::run_triangle_conjecture(in, cfg);
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*pc_cmd) {
      std::vector<hypcap::PolygonInput> in;
      if (pc_input.empty()) {
        in = hypcap::reference_polygon_inputs();
      } else {
        const Json doc = read_json(pc_input);
        for (const auto& p : doc.at("polygons")) in.push_back({vertices_from_json(p), {}, {}});
      }
      rows = hypcap::run_polygon_conjecture(in, cfg);
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*table_cmd) {
      rows = hypcap::run_regular_table(table_m, table_r, cfg);
      emit(common, rows, [&](std::ostream& os) { hypcap::write_regular_table_csv(os, rows, table_m, table_r); });
      return verdict_code(rows);
    }
    if (*area_cmd) {
      rows = hypcap::run_sequence_area(area_c, m_range(seq_lo, seq_hi), cfg);
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*perim_cmd) {
      rows = hypcap::run_sequence_perim(perim_c, m_range(seq_lo, seq_hi), cfg);
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*f_cmd) {
      if (!(c_min <= c_max)) throw InputError("--c-min must not exceed --c-max");
      rows = hypcap::run_f1f2(hypcap::grid(c_min, c_max, c_n, true));
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*tb_cmd) {
      rows = hypcap::run_triangle_bounds(bound_s, cfg);
      emit(common, rows);
      return verdict_code(rows);
    }
    if (*verify_cmd) {
      rows = hypcap::run_verify(cfg);
      emit(common, rows);
      return verdict_code(rows);
    }
  } catch (const InputError& e) {
    std::cerr << "hypcap: " << e.what() << '\n';
    return kExitError;
  } catch (const Json::exception& e) {
    std::cerr << "hypcap: malformed input: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "hypcap: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
