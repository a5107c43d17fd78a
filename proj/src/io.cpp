#include "spinsum/io.hpp"

#include <fstream>
#include <sstream>

#include "spinsum/error.hpp"
#include "spinsum/grading.hpp"

namespace spinsum::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) parse_error(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

Scalar r_field(const json& j) { return j.contains("R") ? scalar_from_json(j.at("R")) : Scalar{1.0}; }

json tensor_level(const Tensor& t, std::size_t axis, std::size_t& flat) {
  json arr = json::array();
  for (std::size_t i = 0; i < t.extent(axis); ++i) {
    if (axis + 1 == t.rank())
      arr.push_back(to_json(t[flat++]));
    else
      arr.push_back(tensor_level(t, axis + 1, flat));
  }
  return arr;
}

void infer_shape(const json& j, std::size_t rank, std::vector<std::size_t>& shape) {
  const json* cur = &j;
  for (std::size_t a = 0; a < rank; ++a) {
    if (!cur->is_array()) parse_error("tensor nesting is shallower than its rank");
    shape.push_back(cur->size());
    if (cur->empty()) return;
    cur = &(*cur)[0];
  }
}

void fill_level(const json& j, const std::vector<std::size_t>& shape, std::size_t axis, Tensor& t, std::size_t& flat) {
  if (!j.is_array() || j.size() != shape[axis]) parse_error("ragged tensor");
  for (const auto& v : j) {
    if (axis + 1 == shape.size())
      t[flat++] = scalar_from_json(v);
    else
      fill_level(v, shape, axis + 1, t, flat);
  }
}

Ring ring_from_string(const std::string& s) {
  if (s == "C") return Ring::C;
  if (s == "R") return Ring::R;
  if (s == "C_R") return Ring::C_R;
  if (s == "H_R") return Ring::H_R;
  parse_error("unknown ring '" + s + "'");
}

RingMatrix ring_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) parse_error("'x' must be a square matrix");
  RingMatrix x;
  x.n = j.size();
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != x.n) parse_error("'x' must be a square matrix");
    for (const auto& e : row) {
      // number, [re, im] or quaternion [t, x, y, z]
      Quaternion q;
      if (e.is_number()) {
        q.t = e.get<double>();
      } else if (e.is_array() && (e.size() == 2 || e.size() == 4)) {
        q.t = e[0].get<double>();
        q.x = e[1].get<double>();
        if (e.size() == 4) {
          q.y = e[2].get<double>();
          q.z = e[3].get<double>();
        }
      } else {
        parse_error("bad entry in 'x'");
      }
      x.entries.push_back(q);
    }
  }
  return x;
}

Grading grading_from_json(const json& j, std::size_t dim) {
  Grading g;
  for (const auto& f : field(j, "group")) {
    if (!f.is_number_integer() || f.get<int>() < 1) parse_error("group factors must be positive integers");
    g.group.factors.push_back(f.get<int>());
  }
  for (const auto& b : field(j, "block_of_basis")) {
    if (!b.is_number_integer() || b.get<long long>() < 0 || b.get<std::size_t>() >= g.group.order())
      parse_error("block_of_basis entry out of range");
    g.block_of_basis.push_back(b.get<std::size_t>());
  }
  if (g.block_of_basis.size() != dim) parse_error("block_of_basis length differs from dim");
  return g;
}

LoadedAlgebra load_matrix(const json& j, double tol) {
  const Ring ring = ring_from_string(field(j, "ring").get<std::string>());
  LoadedAlgebra out;
  if (j.contains("p") || j.contains("q")) {
    const std::size_t p = size_field(j, "p"), q = size_field(j, "q");
    GradedAlgebra g;
    if (ring == Ring::C || ring == Ring::R)
      g = z2_matrix(p, q, ring, r_field(j));
    else if (ring == Ring::C_R)
      g = z2_complex(p, q, r_field(j));
    else
      parse_error("p, q forms are available for rings C, R and C_R");
    out.algebra = std::move(g.algebra);
    out.grading = std::move(g.grading);
    out.bicharacters = std::move(g.bicharacters);
    return out;
  }
  if (j.contains("x") || j.contains("x_diag")) {
    RingMatrix x;
    if (j.contains("x")) {
      x = ring_matrix_from_json(j.at("x"));
    } else {
      std::vector<double> diag;
      for (const auto& v : j.at("x_diag")) diag.push_back(v.get<double>());
      if (diag.empty()) parse_error("'x_diag' must be non-empty");
      x = RingMatrix::diagonal(diag);
    }
    std::optional<Scalar> R;
    if (j.contains("R")) R = scalar_from_json(j.at("R"));
    out.algebra = matrix_algebra(ring, x, R, tol);
    return out;
  }
  const std::size_t n = size_field(j, "n");
  const Scalar R = r_field(j);
  const std::string grading = j.value("grading", std::string{});
  GradedAlgebra g;
  if (ring == Ring::C && grading == "gamma") {
    g = gamma_n(n, R);
  } else if (ring == Ring::C_R) {
    g = z2_complex(n, R);
  } else if (ring == Ring::H_R) {
    g = klein_quaternionic(n, R);
  } else {
    if (!grading.empty()) parse_error("unknown grading '" + grading + "'");
    out.algebra = fhk_matrix_algebra(ring, n, R);
    return out;
  }
  out.algebra = std::move(g.algebra);
  out.grading = std::move(g.grading);
  out.bicharacters = std::move(g.bicharacters);
  return out;
}

}  // namespace

json to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  parse_error("expected a number or [re, im]");
}

json to_json(const Tensor& t) {
  if (t.rank() == 0) return to_json(t[0]);
  std::size_t flat = 0;
  return tensor_level(t, 0, flat);
}

Tensor tensor_from_json(const json& j, std::size_t rank) {
  std::vector<std::size_t> shape;
  infer_shape(j, rank, shape);
  if (shape.size() != rank) parse_error("empty tensor");
  Tensor t(shape);
  std::size_t flat = 0;
  fill_level(j, shape, 0, t, flat);
  return t;
}

json to_json(const Mat& m) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    arr.push_back(std::move(row));
  }
  return arr;
}

Mat mat_from_json(const json& j) {
  const Tensor t = tensor_from_json(j, 2);
  return t.to_matrix(t.extent(0), t.extent(1));
}

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
  return arr;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) parse_error("expected an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = scalar_from_json(j[i]);
  return v;
}

json grading_to_json(const Grading& g) {
  return {{"group", g.group.factors}, {"block_of_basis", g.block_of_basis}};
}

json bicharacter_to_json(const Bicharacter& b) {
  return {{"group", b.group.factors}, {"table", to_json(b.table)}};
}

json algebra_to_json(const AlgebraData& alg, const std::optional<Grading>& grading) {
  json j = {{"dim", alg.dim},
            {"C", to_json(alg.C)},
            {"B", to_json(alg.B)},
            {"R", to_json(alg.R)},
            {"labels", alg.labels}};
  if (grading) j["grading"] = grading_to_json(*grading);
  return j;
}

LoadedAlgebra load_algebra(const json& j, double tol) {
  if (!j.is_object()) parse_error("algebra document must be an object");
  LoadedAlgebra out;
  out.spec = j;
  if (j.contains("kind")) {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "matrix") {
      LoadedAlgebra m = load_matrix(j, tol);
      m.spec = j;
      return m;
    }
    if (kind == "group_cyclic") {
      GradedAlgebra g = group_algebra_cyclic(size_field(j, "m"), r_field(j));
      out.algebra = std::move(g.algebra);
      out.grading = std::move(g.grading);
      out.bicharacters = std::move(g.bicharacters);
      return out;
    }
    if (kind == "direct_sum") {
      std::vector<AlgebraData> parts;
      const json& ps = field(j, "parts");
      if (!ps.is_array() || ps.empty()) parse_error("'parts' must be a non-empty array");
      for (const auto& p : ps) parts.push_back(load_algebra(p, tol).algebra);
      out.algebra = direct_sum(parts, tol);
      return out;
    }
    parse_error("unknown constructor kind '" + kind + "'");
  }
  const std::size_t dim = size_field(j, "dim");
  Tensor C = tensor_from_json(field(j, "C"), 3);
  Mat B = mat_from_json(field(j, "B"));
  if (C.extent(0) != dim || C.extent(1) != dim || C.extent(2) != dim || static_cast<std::size_t>(B.rows()) != dim ||
      static_cast<std::size_t>(B.cols()) != dim)
    throw Error(ErrorKind::ShapeMismatch, "C and B must match dim");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  out.algebra = build_algebra(std::move(C), std::move(B), scalar_from_json(field(j, "R")), labels);
  if (j.contains("grading")) out.grading = grading_from_json(j.at("grading"), dim);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

LoadedAlgebra load_algebra_file(const std::string& path, double tol) {
  return load_algebra(read_json_file(path), tol);
}

json crossing_to_json(const CrossingMap& cr) {
  return {{"dim", cr.dim()}, {"index_order", "out1,out2,in1,in2"}, {"lambda", to_json(cr.lambda)}};
}

CrossingMap crossing_from_json(const json& j) {
  const std::size_t dim = size_field(j, "dim");
  Tensor t = tensor_from_json(field(j, "lambda"), 4);
  for (std::size_t a = 0; a < 4; ++a)
    if (t.extent(a) != dim) throw Error(ErrorKind::ShapeMismatch, "lambda must be dim^4");
  return {std::move(t)};
}

json triangulation_to_json(const Triangulation& tri) {
  json tris = json::array();
  for (const auto& t : tri.triangles()) tris.push_back({t[0], t[1], t[2]});
  json glue = json::array();
  for (const auto& [edge, inc] : tri.gluings())
    glue.push_back({{"edge", edge},
                    {"first", {inc.first.triangle, inc.first.slot}},
                    {"second", {inc.second.triangle, inc.second.slot}}});
  json boundary = json::array();
  for (const auto& b : tri.boundary()) boundary.push_back({{"edge", b.edge}, {"direction", b.direction}});
  return {{"triangles", tris}, {"orient", tri.orient()}, {"gluings", glue}, {"boundary", boundary},
          {"V", tri.vertex_count()}, {"E", tri.edge_count()}, {"F", tri.face_count()}, {"euler", tri.euler()}};
}

Triangulation triangulation_from_json(const json& j) {
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : field(j, "triangles")) {
    if (!t.is_array() || t.size() != 3) parse_error("each triangle needs three edge ids");
    tris.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  std::vector<int> orient;
  if (j.contains("orient")) orient = j.at("orient").get<std::vector<int>>();
  return Triangulation(std::move(tris), std::move(orient));
}

std::string to_string(Gen g) {
  switch (g) {
    case Gen::Id: return "Id";
    case Gen::CupB: return "CupB";
    case Gen::CapBinv: return "CapBinv";
    case Gen::Mult: return "Mult";
    case Gen::Unit: return "Unit";
    case Gen::Counit: return "Counit";
    case Gen::Cross: return "Cross";
    case Gen::CurlR: return "CurlR";
  }
  return "Id";
}

Gen gen_from_string(const std::string& s) {
  for (Gen g : {Gen::Id, Gen::CupB, Gen::CapBinv, Gen::Mult, Gen::Unit, Gen::Counit, Gen::Cross, Gen::CurlR})
    if (to_string(g) == s) return g;
  parse_error("unknown generator '" + s + "'");
}

json diagram_to_json(const Diagram& d) {
  json slices = json::array();
  for (const auto& slice : d.slices) {
    json s = json::array();
    for (const auto& p : slice) s.push_back({{"gen", to_string(p.gen)}, {"at", p.at}});
    slices.push_back(std::move(s));
  }
  return {{"inputs", d.inputs}, {"slices", slices}};
}

Diagram diagram_from_json(const json& j) {
  Diagram d;
  d.inputs = j.contains("inputs") ? size_field(j, "inputs") : 0;
  for (const auto& slice : field(j, "slices")) {
    if (!slice.is_array()) parse_error("each slice must be an array");
    std::vector<Placed> s;
    for (const auto& p : slice) s.push_back({gen_from_string(field(p, "gen").get<std::string>()), size_field(p, "at")});
    d.slices.push_back(std::move(s));
  }
  return d;
}

json to_json(const ValidationReport& r) {
  return {{"nondegenerate_B", r.nondegenerate_B}, {"nondegenerate_C", r.nondegenerate_C},
          {"compatible", r.compatible},           {"associative", r.associative},
          {"special", r.special},                 {"symmetric", r.symmetric},
          {"spherical", r.spherical},             {"separable_witness_ok", r.separable_witness_ok},
          {"max_residual", r.max_residual}};
}

json to_json(const AxiomReport& r) {
  const auto& x = r.residuals;
  return {{"compat_B", r.compat_B},
          {"compat_C", r.compat_C},
          {"rII", r.rII},
          {"rIII", r.rIII},
          {"ribbon", r.ribbon},
          {"rI", r.rI},
          {"phi_squared_id", r.phi_squared_id},
          {"spin_model", r.spin_model()},
          {"curl_free", r.curl_free()},
          {"max_residual", r.max_residual},
          {"residuals",
           {{"compat_B", x.compat_B},
            {"compat_C", x.compat_C},
            {"rII", x.rII},
            {"rIII", x.rIII},
            {"ribbon", x.ribbon},
            {"rI", x.rI},
            {"phi_squared", x.phi_squared}}}};
}

json to_json(const Classification& c) {
  return {{"eta", vec_to_json(c.eta)}, {"chi", vec_to_json(c.chi)}, {"family", to_string(c.family)},
          {"tag", c.tag},              {"weights", c.weights},       {"signs", c.signs}};
}

json solve_to_json(const AlgebraData& alg, const SolveResult& res, double tol) {
  json sols = json::array(), fams = json::array();
  for (const auto& s : res.solutions) {
    sols.push_back(crossing_to_json(s));
    fams.push_back(to_json(classify_solution(alg, s, tol)));
  }
  return {{"count", res.solutions.size()}, {"solutions", sols},          {"families", fams},
          {"seed", res.seed},              {"starts", res.starts_used},  {"converged", res.converged},
          {"complete", res.complete},      {"field", res.real ? "real" : "complex"},
          {"residuals", res.residuals},    {"hits", res.hits}};
}

}  // namespace spinsum::io
