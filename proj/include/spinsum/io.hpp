#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinsum/algebra.hpp"
#include "spinsum/constructors.hpp"
#include "spinsum/crossing.hpp"
#include "spinsum/evaluator.hpp"
#include "spinsum/solver.hpp"
#include "spinsum/surface.hpp"

namespace spinsum::io {

using json = nlohmann::json;

// Complex numbers are [re, im]; a bare number is read as real.
json to_json(Scalar z);
Scalar scalar_from_json(const json& j);

// Row-major nested arrays of [re, im].
json to_json(const Tensor& t);
Tensor tensor_from_json(const json& j, std::size_t rank);
json to_json(const Mat& m);
Mat mat_from_json(const json& j);
json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);

// An algebra together with what its constructor knows about it.
struct LoadedAlgebra {
  AlgebraData algebra;
  std::optional<Grading> grading;
  std::vector<Bicharacter> bicharacters;
  json spec;  // constructor spec as given, or the raw algebra document
};

// { "dim", "C", "B", "R", "labels", optional "grading": {"group", "block_of_basis"} }
json algebra_to_json(const AlgebraData& alg, const std::optional<Grading>& grading = std::nullopt);

// Accepts either the raw algebra document or a constructor spec:
//   {"kind": "matrix", "ring": "C"|"R"|"C_R"|"H_R", "n": n, "R": r}     FHK form
//   {"kind": "matrix", "ring": ..., "x": [[...]] | "x_diag": [...], "R"?: r}
//   {"kind": "matrix", "ring": ..., "p": p, "q": q, "R": r}             Z2-graded form
//   {"kind": "matrix", "ring": "C", "n": n, "grading": "gamma", "R": r}
//   {"kind": "group_cyclic", "m": m, "R": r}
//   {"kind": "direct_sum", "parts": [spec, ...]}
// R defaults to 1. Throws Error(Parse) on malformed input.
LoadedAlgebra load_algebra(const json& j, double tol = kDefaultTol);
LoadedAlgebra load_algebra_file(const std::string& path, double tol = kDefaultTol);

json crossing_to_json(const CrossingMap& cr);
CrossingMap crossing_from_json(const json& j);

json bicharacter_to_json(const Bicharacter& b);
json grading_to_json(const Grading& g);

// { "triangles": [[e,e,e],...], "orient": [...], "gluings": [...], "boundary": [...] }
json triangulation_to_json(const Triangulation& tri);
Triangulation triangulation_from_json(const json& j);

// { "inputs": n, "slices": [[{"gen": "Mult", "at": 0}, ...], ...] }
json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);
std::string to_string(Gen g);
Gen gen_from_string(const std::string& s);

json to_json(const ValidationReport& r);
json to_json(const AxiomReport& r);
json to_json(const Classification& c);
// { "count", "solutions", "families", "seed", ... }
json solve_to_json(const AlgebraData& alg, const SolveResult& res, double tol = kDefaultTol);

json read_json_file(const std::string& path);

}  // namespace spinsum::io
