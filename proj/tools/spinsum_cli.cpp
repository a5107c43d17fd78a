// spinsum: validate algebras, evaluate partition functions, solve crossings.
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 bad input.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinsum/closed_forms.hpp"
#include "spinsum/error.hpp"
#include "spinsum/io.hpp"

using namespace spinsum;
using io::json;

namespace {

struct Common {
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  std::string json_out;
};

struct Chosen {
  CrossingMap cr;
  std::string kind;  // canonical, bichar, solve, file
  int index = -1;
};

struct Failure {
  int code;
  std::string what;
};

std::string fmt(Scalar z) {
  char buf[80];
  if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z.real())))
    std::snprintf(buf, sizeof buf, "%.12g", z.real() == 0.0 ? 0.0 : z.real());
  else
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool close_to(Scalar a, Scalar b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

SolveOptions solve_options(const Common& c, int starts) {
  SolveOptions o;
  o.tol = c.tol;
  o.seed = c.seed;
  if (starts > 0) o.starts = starts;
  return o;
}

Chosen choose_crossing(const std::string& spec, const io::LoadedAlgebra& la, const Common& c) {
  const std::size_t d = la.algebra.dim;
  if (spec == "canonical") return {canonical_crossing(d), "canonical", -1};
  auto index_of = [&](const std::string& prefix) {
    try {
      return std::stoi(spec.substr(prefix.size()));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad crossing selector '" + spec + "'");
    }
  };
  if (spec.rfind("bichar:", 0) == 0) {
    const int k = index_of("bichar:");
    if (!la.grading) throw Error(ErrorKind::Parse, "algebra has no grading for '" + spec + "'");
    if (k < 0 || k >= static_cast<int>(la.bicharacters.size()))
      throw Error(ErrorKind::Parse, "algebra has " + std::to_string(la.bicharacters.size()) +
                                        " bicharacters; '" + spec + "' is out of range");
    return {crossing_from_bicharacter(*la.grading, la.bicharacters[k]), "bichar", k};
  }
  if (spec.rfind("solve:", 0) == 0) {
    const int k = index_of("solve:");
    const SolveResult res = solve_crossings(la.algebra, solve_options(c, 0));
    if (k < 0 || k >= static_cast<int>(res.solutions.size()))
      throw Error(ErrorKind::Parse, "solver found " + std::to_string(res.solutions.size()) + " crossings; '" + spec +
                                        "' is out of range");
    return {res.solutions[k], "solve", k};
  }
  return {io::crossing_from_json(io::read_json_file(spec)), "file", -1};
}

std::size_t spec_size(const json& spec, const char* key) {
  return spec.contains(key) ? spec.at(key).get<std::size_t>() : 0;
}

Ring spec_ring(const json& spec) {
  const std::string r = spec.at("ring").get<std::string>();
  if (r == "R") return Ring::R;
  if (r == "C_R") return Ring::C_R;
  if (r == "H_R") return Ring::H_R;
  return Ring::C;
}

// The closed form known for this constructor and crossing, if any.
std::optional<Scalar> closed_form(const io::LoadedAlgebra& la, const Chosen* ch, int genus, int parity,
                                  double tol) {
  const AlgebraData& alg = la.algebra;
  if (genus == 0) return alg.R * frobenius_form(alg, alg.unit);
  const json& spec = la.spec;
  const std::string kind = spec.value("kind", std::string{});
  const bool plain = !ch || ch->kind == "canonical";
  const Bicharacter* bc = (ch && ch->kind == "bichar") ? &la.bicharacters[ch->index] : nullptr;
  const Scalar R = spec.contains("R") ? io::scalar_from_json(spec.at("R")) : Scalar{1.0};

  if (kind == "matrix" && !spec.contains("x") && !spec.contains("x_diag")) {
    const Ring ring = spec_ring(spec);
    const bool pq = spec.contains("p") || spec.contains("q");
    const bool trivial = bc && (bc->table - Mat::Ones(bc->table.rows(), bc->table.cols())).cwiseAbs().maxCoeff() < 1e-12;
    if (!pq && (plain || trivial) && spec.value("grading", std::string{}) != "gamma")
      return fhk_closed_form(ring, spec_size(spec, "n"), R, genus);
    if (!bc || trivial) return std::nullopt;
    if (spec.value("grading", std::string{}) == "gamma") {
      const double n = static_cast<double>(spec_size(spec, "n"));
      return std::pow(R, 2.0 - 2.0 * genus) * n * n;
    }
    if (ring == Ring::H_R) {
      const Mat& t = bc->table;
      const int Lambda = static_cast<int>(std::lround((t(1, 2) + t(1, 3) + t(2, 3)).real()));
      return klein_closed_form(Lambda, spec_size(spec, "n"), R, genus, parity);
    }
    if (ring == Ring::C_R) {
      const double m = pq ? static_cast<double>(spec_size(spec, "p")) - static_cast<double>(spec_size(spec, "q"))
                          : static_cast<double>(spec_size(spec, "n"));
      return z2_complex_closed_form(m, R, genus, parity);
    }
    if (pq) return z2_matrix_closed_form(spec_size(spec, "p"), spec_size(spec, "q"), R, genus);
    return std::nullopt;
  }
  if (kind == "group_cyclic") {
    if (plain) return std::pow(R, 2.0 - 2.0 * genus) * static_cast<double>(spec_size(spec, "m"));
    const Classification cl = classify_solution(alg, ch->cr, tol);
    if (cl.family == Family::Unclassified) return std::nullopt;
    return commutative_closed_form(cl.weights, cl.signs, cl.form_weights, alg.R, genus, parity);
  }
  return std::nullopt;
}

SpinStructure representative(int genus, int parity) {
  std::vector<int> q(2 * genus, 0);
  if (parity < 0 && genus > 0) q[0] = q[1] = 1;
  return spin_structure(genus, q);
}

// One cell of a partition table.
json partition_cell(const io::LoadedAlgebra& la, const Chosen* ch, int genus, int parity, const Common& c,
                    bool& ok, std::string& line) {
  const AlgebraData& alg = la.algebra;
  json cell = {{"genus", genus}};
  Scalar Z;
  if (ch) {
    Z = spin_partition(alg, ch->cr, genus, parity, c.tol);
    const Scalar direct = spin_partition_direct(alg, ch->cr, representative(genus, parity), c.tol);
    const double diff = std::abs(Z - direct);
    cell["parity"] = parity;
    cell["Z_direct"] = io::to_json(direct);
    cell["residuals"] = {{"direct", diff}};
    if (!close_to(Z, direct, c.tol)) ok = false;
  } else {
    Z = naive_partition(alg, polygon_triangulation(genus))[0];
  }
  cell["Z"] = io::to_json(Z);
  line = "Z=" + fmt(Z);
  if (const auto cf = closed_form(la, ch, genus, parity, c.tol)) {
    const double diff = std::abs(Z - *cf);
    cell["closed_form"] = io::to_json(*cf);
    cell["difference"] = diff;
    line += " closed_form=" + fmt(*cf) + " diff=" + fmt(diff);
    if (!close_to(Z, *cf, c.tol)) ok = false;
  } else {
    cell["closed_form"] = nullptr;
  }
  return cell;
}

int parse_spin(const std::string& s) {
  if (s == "even") return 1;
  if (s == "odd") return -1;
  throw Error(ErrorKind::Parse, "--spin must be even or odd");
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int g = std::stoi(s);
      return {g, g};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad genus range '" + s + "'");
  }
}

void check_genus(int g) {
  if (g < 0 || g > 8) throw Error(ErrorKind::Parse, "genus must lie in 0..8");
}

bool flag_value(const json& report, const std::string& name, bool& found) {
  for (const auto* section : {"algebra", "crossing"}) {
    if (report.contains(section) && report[section].contains(name) && report[section][name].is_boolean()) {
      found = true;
      return report[section][name].get<bool>();
    }
  }
  found = false;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinsum: two-dimensional state sum models"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--tol", common.tol, "relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "solver seed");
  app.add_option("--json", common.json_out, "write the JSON report here");

  std::string path, crossing, spin, range = "0..3";
  std::vector<std::string> require;
  int genus = 1, starts = 0, moves = 10, max_solutions = 256;
  std::string field = "auto";

  auto* validate_cmd = app.add_subcommand("validate", "check algebra axioms and, optionally, a crossing");
  validate_cmd->add_option("algebra", path, "algebra or constructor JSON")->required();
  validate_cmd->add_option("--crossing", crossing, "canonical | bichar:<k> | solve:<k> | <file>");
  validate_cmd->add_option("--require", require, "extra flags that must hold")->delimiter(',');

  auto* partition_cmd = app.add_subcommand("partition", "partition function of a closed surface");
  partition_cmd->add_option("algebra", path)->required();
  partition_cmd->add_option("--genus", genus)->required();
  partition_cmd->add_option("--spin", spin, "even | odd");
  partition_cmd->add_option("--crossing", crossing, "canonical | bichar:<k> | solve:<k> | <file>");

  auto* table_cmd = app.add_subcommand("table", "partition functions over a genus range");
  table_cmd->add_option("algebra", path)->required();
  table_cmd->add_option("--genus-range", range, "a..b");
  table_cmd->add_option("--crossing", crossing, "adds even and odd columns");

  auto* solve_cmd = app.add_subcommand("solve", "all crossings on a small commutative algebra");
  solve_cmd->add_option("algebra", path)->required();
  solve_cmd->add_option("--starts", starts, "multi-start budget");
  solve_cmd->add_option("--max-solutions", max_solutions);
  solve_cmd->add_option("--field", field, "auto | real | complex");

  auto* pachner_cmd = app.add_subcommand("pachner-check", "partition function across retriangulations");
  pachner_cmd->add_option("algebra", path)->required();
  pachner_cmd->add_option("--genus", genus);
  pachner_cmd->add_option("--moves", moves, "number of random triangulations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
  json report = {{"command", echo}};
  bool ok = true;
  int code = 0;
  try {
    report["inputs_hash"] = fnv1a(slurp(path));
    const io::LoadedAlgebra la = io::load_algebra_file(path, common.tol);
    const AlgebraData& alg = la.algebra;
    json results;

    if (validate_cmd->parsed()) {
      const ValidationReport vr = validate(alg, common.tol);
      results["algebra"] = io::to_json(vr);
      std::vector<std::string> needed = {"nondegenerate_B", "nondegenerate_C", "compatible", "associative", "special"};
      if (la.spec.contains("require"))
        for (const auto& r : la.spec.at("require")) needed.push_back(r.get<std::string>());
      needed.insert(needed.end(), require.begin(), require.end());
      if (!crossing.empty()) {
        const Chosen ch = choose_crossing(crossing, la, common);
        results["crossing"] = io::to_json(check_axioms(alg, ch.cr, common.tol));
        for (const char* f : {"compat_B", "compat_C", "rII", "rIII", "ribbon"}) needed.push_back(f);
      }
      json flags = json::object();
      for (const auto& name : needed) {
        bool found = false;
        const bool v = flag_value(results, name, found);
        if (!found) throw Error(ErrorKind::Parse, "unknown flag '" + name + "'");
        flags[name] = v;
        ok = ok && v;
      }
      results["required"] = flags;
      for (const auto* section : {"algebra", "crossing"}) {
        if (!results.contains(section)) continue;
        for (const auto& [k, v] : results[section].items())
          if (v.is_boolean()) std::cout << section << "." << k << " = " << (v.get<bool>() ? "true" : "false") << "\n";
        std::cout << section << ".max_residual = " << fmt(results[section]["max_residual"].get<double>()) << "\n";
      }
    } else if (partition_cmd->parsed()) {
      check_genus(genus);
      std::optional<Chosen> ch;
      if (!crossing.empty()) ch = choose_crossing(crossing, la, common);
      if (!spin.empty() && !ch) throw Error(ErrorKind::Parse, "--spin needs --crossing");
      if (ch && spin.empty()) spin = "even";
      const int parity = spin.empty() ? 1 : parse_spin(spin);
      std::string line;
      results = partition_cell(la, ch ? &*ch : nullptr, genus, parity, common, ok, line);
      std::cout << "genus " << genus << (spin.empty() ? "" : " " + spin) << ": " << line << "\n";
    } else if (table_cmd->parsed()) {
      const auto [a, b] = parse_range(range);
      check_genus(a);
      check_genus(b);
      std::optional<Chosen> ch;
      if (!crossing.empty()) ch = choose_crossing(crossing, la, common);
      json rows = json::array();
      for (int g = a; g <= b; ++g) {
        json row = {{"genus", g}};
        std::string line, text = "g=" + std::to_string(g);
        if (ch) {
          row["even"] = partition_cell(la, &*ch, g, 1, common, ok, line);
          text += "  even " + line;
          if (g == 0) {
            row["odd"] = nullptr;
            row["differ"] = false;
          } else {
            row["odd"] = partition_cell(la, &*ch, g, -1, common, ok, line);
            text += "  odd " + line;
            row["differ"] = !close_to(io::scalar_from_json(row["even"]["Z"]), io::scalar_from_json(row["odd"]["Z"]),
                                      common.tol);
          }
        } else {
          row["Z"] = partition_cell(la, nullptr, g, 1, common, ok, line);
          text += "  " + line;
        }
        rows.push_back(row);
        std::cout << text << "\n";
      }
      results["rows"] = rows;
    } else if (solve_cmd->parsed()) {
      SolveOptions o = solve_options(common, starts);
      o.max_solutions = max_solutions;
      if (field == "real") o.field = SolveOptions::Field::Real;
      else if (field == "complex") o.field = SolveOptions::Field::Complex;
      else if (field != "auto") throw Error(ErrorKind::Parse, "--field must be auto, real or complex");
      const SolveResult res = solve_crossings(alg, o);
      results = io::solve_to_json(alg, res, common.tol);
      std::cout << "count = " << res.solutions.size() << " (field " << results["field"].get<std::string>()
                << ", starts " << res.starts_used << ", converged " << res.converged << ", seed " << res.seed << ")\n";
      for (std::size_t i = 0; i < res.solutions.size(); ++i) {
        const json& f = results["families"][i];
        std::cout << "  [" << i << "] " << f["family"].get<std::string>() << "  " << f["tag"].get<std::string>()
                  << "  residual " << fmt(res.residuals[i]) << "\n";
      }
      ok = res.complete;
    } else if (pachner_cmd->parsed()) {
      check_genus(genus);
      const Triangulation base = polygon_triangulation(genus);
      const Scalar Z0 = naive_partition(alg, base)[0];
      json rows = json::array();
      double worst = 0.0;
      auto record = [&](const std::string& name, const Triangulation& t) {
        const Scalar Z = naive_partition(alg, t)[0];
        const double diff = std::abs(Z - Z0) / std::max(1.0, std::abs(Z0));
        worst = std::max(worst, diff);
        rows.push_back({{"triangulation", name}, {"faces", t.face_count()}, {"Z", io::to_json(Z)}, {"difference", diff}});
      };
      if (genus == 1) record("two_triangle_torus", two_triangle_torus());
      for (int i = 0; i < moves; ++i)
        record("random_" + std::to_string(i), random_pachner_moves(base, 3 + i, common.seed + i));
      results = {{"genus", genus}, {"Z_polygon", io::to_json(Z0)}, {"moves", rows}, {"max_difference", worst}};
      ok = worst <= common.tol;
      std::cout << "genus " << genus << ": Z=" << fmt(Z0) << " over " << rows.size()
                << " retriangulations, max difference " << fmt(worst) << "\n";
    }
    report["results"] = results;
    code = ok ? 0 : 1;
  } catch (const Error& e) {
    const bool input = e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::ShapeMismatch ||
                       e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::LengthMismatch;
    code = input ? 2 : 1;
    report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    code = 2;
    report["error"] = {{"kind", "Parse"}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
  }
  report["exit_code"] = code;
  report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (code == 0 ? "PASS" : "FAIL") << "\n";
  if (!common.json_out.empty()) {
    std::ofstream out(common.json_out);
    out << report.dump(2) << "\n";
  }
  return code;
}
