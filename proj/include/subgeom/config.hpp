#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subgeom/expr.hpp"
#include "subgeom/report.hpp"
#include "subgeom/run.hpp"

namespace subgeom {

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path, const std::string& what) {
  throw GeometryError(ErrorKind::config, path + ": " + what);
}

inline std::string expr_text(const json& j, const std::string& path) {
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  if (j.is_string()) return j.get<std::string>();
  config_fail(path, "expected a number or an expression string");
}

inline Expr expr_at(const json& j, const std::string& path, const std::vector<std::string>& vars) {
  const std::string text = expr_text(j, path);
  try {
    return Expr::parse(text, vars);
  } catch (const GeometryError& e) {
    config_fail(path, e.what());
  }
}

inline std::vector<std::string> names_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) config_fail(path, "expected a non-empty array of coordinate names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) config_fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline Box box_at(const json& j, const std::string& path, std::size_t dim) {
  auto bound = [&](const char* key) {
    const std::string p = path + "." + key;
    if (!j.contains(key)) config_fail(p, "missing");
    const json& b = j[key];
    Vec v(static_cast<Eigen::Index>(dim));
    if (b.is_number()) {
      v.setConstant(b.get<double>());
    } else if (b.is_array() && b.size() == dim) {
      for (std::size_t i = 0; i < dim; ++i) {
        if (!b[i].is_number()) config_fail(p + "[" + std::to_string(i) + "]", "expected a number");
        v[static_cast<Eigen::Index>(i)] = b[i].get<double>();
      }
    } else {
      config_fail(p, "expected a number or an array of length " + std::to_string(dim));
    }
    return v;
  };
  Box box{bound("lo"), bound("hi")};
  if (!box.nonempty()) config_fail(path, "empty box");
  return box;
}

/// n×n array of expressions over `vars`, flattened row-major.
inline std::vector<Expr> matrix_at(const json& j, const std::string& path, std::size_t n,
                                   const std::vector<std::string>& vars) {
  if (!j.is_array() || j.size() != n) config_fail(path, "expected " + std::to_string(n) + " rows");
  std::vector<Expr> out;
  for (std::size_t r = 0; r < n; ++r) {
    const std::string pr = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != n) config_fail(pr, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) out.push_back(expr_at(j[r][c], pr + "[" + std::to_string(c) + "]", vars));
  }
  return out;
}

inline std::vector<Expr> vector_at(const json& j, const std::string& path, std::size_t n,
                                   const std::vector<std::string>& vars) {
  if (!j.is_array() || j.size() != n) config_fail(path, "expected " + std::to_string(n) + " entries");
  std::vector<Expr> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(expr_at(j[i], path + "[" + std::to_string(i) + "]", vars));
  return out;
}

inline Mapping mapping_of(std::size_t in, const std::vector<Expr>& es) {
  return Mapping::generic(in, es.size(), [es](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    std::vector<T> out;
    out.reserve(es.size());
    for (const Expr& e : es) out.push_back(e.eval(x));
    return out;
  });
}

/// {"coordinates": [...], "box": {"lo", "hi"}, "metric": [[...]] | "metric_diagonal": [...]}
inline ChartManifold chart_at(const json& j, const std::string& path) {
  if (!j.is_object()) config_fail(path, "expected an object");
  if (!j.contains("coordinates")) config_fail(path + ".coordinates", "missing");
  const std::vector<std::string> vars = names_at(j["coordinates"], path + ".coordinates");
  const std::size_t n = vars.size();
  if (!j.contains("box")) config_fail(path + ".box", "missing");
  const Box box = box_at(j["box"], path + ".box", n);
  std::vector<Expr> g;
  if (j.contains("metric")) {
    g = matrix_at(j["metric"], path + ".metric", n, vars);
  } else if (j.contains("metric_diagonal")) {
    const std::vector<Expr> d = vector_at(j["metric_diagonal"], path + ".metric_diagonal", n, vars);
    const Expr zero = Expr::parse("0", vars);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) g.push_back(r == c ? d[r] : zero);
  } else {
    config_fail(path + ".metric", "missing (give metric or metric_diagonal)");
  }
  try {
    return ChartManifold(n, box, MatrixField(mapping_of(n, g), n, n), j.value("label", path));
  } catch (const GeometryError& e) {
    config_fail(path, e.what());
  }
}

/// Optional "phi" (n×n), "xi" (n), "eta" (n) on a chart.
inline std::optional<AlmostContactStructure> structure_at(const json& j, const std::string& path,
                                                          const ChartManifold& m) {
  const bool any = j.contains("phi") || j.contains("xi") || j.contains("eta");
  if (!any) return std::nullopt;
  for (const char* k : {"phi", "xi", "eta"})
    if (!j.contains(k)) config_fail(path + "." + k, "missing (phi, xi and eta go together)");
  const std::vector<std::string> vars = names_at(j["coordinates"], path + ".coordinates");
  const std::size_t n = m.dim();
  const std::vector<Expr> phi = matrix_at(j["phi"], path + ".phi", n, vars);
  const std::vector<Expr> xi = vector_at(j["xi"], path + ".xi", n, vars);
  const std::vector<Expr> eta = vector_at(j["eta"], path + ".eta", n, vars);
  return AlmostContactStructure(m, MatrixField(mapping_of(n, phi), n, n), VectorField(mapping_of(n, xi)),
                                CovectorField(mapping_of(n, eta)));
}

}  // namespace detail

/// Built-in problems: example1, example2, example3, warped(<expression in t>).
inline Problem builtin_problem(const std::string& name, const Settings& s = {}) {
  if (name == "example1") return example1_problem();
  if (name == "example2") return example2_problem();
  if (name == "example3") return example3_problem();
  const std::string prefix = "warped(";
  if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size() && name.back() == ')') {
    const std::string body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    const Expr e = Expr::parse(body, {"t"});
    try {
      return warped_problem(e.field(1), body, s);
    } catch (const GeometryError& err) {
      if (err.kind() == ErrorKind::construction) throw GeometryError(ErrorKind::config, err.what());
      throw;
    }
  }
  throw GeometryError(ErrorKind::config,
                      "unknown built-in '" + name + "' (expected example1, example2, example3 or warped(<expr>))");
}

/// Problem from a JSON document:
/// {"source": "<builtin>" | chart+structure, "target": chart, "map": [exprs], "samples", "seed", "tolerances"}.
/// Top-level samples/seed/tolerances override `s`.
inline Problem problem_from_json(const json& j, Settings& s) {
  if (!j.is_object()) detail::config_fail("$", "expected an object");
  if (j.contains("samples")) {
    if (!j["samples"].is_number_unsigned() || j["samples"].get<std::size_t>() == 0)
      detail::config_fail("$.samples", "expected a positive integer");
    s.samples = j["samples"].get<std::size_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) detail::config_fail("$.seed", "expected a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    for (const auto& [key, field] : {std::pair<const char*, double*>{"algebraic", &s.algebraic},
                                     {"first_order", &s.first_order},
                                     {"second_order", &s.second_order},
                                     {"anti_invariance", &s.anti_invariance},
                                     {"conformal_spread", &s.conformal_spread}}) {
      if (!t.contains(key)) continue;
      if (!t[key].is_number() || !(t[key].get<double>() > 0.0))
        detail::config_fail(std::string("$.tolerances.") + key, "expected a positive number");
      *field = t[key].get<double>();
    }
  }
  if (!j.contains("source")) detail::config_fail("$.source", "missing");
  const json& src = j["source"];
  if (src.is_string()) return builtin_problem(src.get<std::string>(), s);

  Problem pr;
  pr.name = j.value("name", std::string("config"));
  const ChartManifold m = detail::chart_at(src, "$.source");
  pr.source_label = m.label();
  pr.structure = detail::structure_at(src, "$.source", m);
  if (j.contains("map")) {
    if (!j.contains("target")) detail::config_fail("$.target", "missing (required with map)");
    const ChartManifold n = detail::chart_at(j["target"], "$.target");
    const std::vector<std::string> vars = detail::names_at(src["coordinates"], "$.source.coordinates");
    const std::vector<Expr> f = detail::vector_at(j["map"], "$.map", n.dim(), vars);
    pr.map = SmoothMap(m, n, detail::mapping_of(m.dim(), f), j.value("map_label", std::string("config map")));
  }
  return pr;
}

/// A built-in name, or a path to a JSON config file.
inline Problem resolve_problem(const std::string& spec, Settings& s) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    std::ifstream in(spec);
    if (!in) throw GeometryError(ErrorKind::config, "cannot open config file '" + spec + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw GeometryError(ErrorKind::config, spec + ": " + e.what());
    }
    return problem_from_json(j, s);
  }
  return builtin_problem(spec, s);
}

}  // namespace subgeom
