#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "subgeom/check.hpp"
#include "subgeom/settings.hpp"

namespace subgeom {

using json = nlohmann::ordered_json;

namespace detail {

// JSON has no infinity; unbounded residuals are written as null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline double number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace detail

inline json to_json(const CheckRecord& r) {
  json j;
  j["name"] = r.name;
  j["paper_anchor"] = r.anchor;
  j["max_residual"] = detail::number(r.max_residual);
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.verdict();
  j["applicable"] = r.applicable;
  j["informational"] = r.informational;
  j["conformal_context"] = r.conformal_context;
  j["points_sampled"] = r.points_sampled;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.metrics.empty()) {
    json m = json::object();
    for (const auto& [k, v] : r.metrics) m[k] = detail::number(v);
    j["metrics"] = m;
  }
  return j;
}

inline json to_json(const VerificationReport& rep) {
  json j;
  j["source"] = rep.source;
  j["map"] = rep.map;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  json tol = json::object();
  for (const auto& [k, v] : rep.tolerances) tol[k] = v;
  j["tolerances"] = tol;
  json checks = json::array();
  for (const CheckRecord& r : rep.records) checks.push_back(to_json(r));
  j["checks"] = checks;
  j["summary"] = rep.passed() ? "pass" : "fail";
  return j;
}

inline CheckRecord record_from_json(const json& j) {
  CheckRecord r(j.at("name").get<std::string>(), j.at("paper_anchor").get<std::string>(), j.at("tolerance").get<double>());
  r.max_residual = detail::number(j.at("max_residual"));
  r.applicable = j.at("applicable").get<bool>();
  r.informational = j.value("informational", false);
  r.conformal_context = j.value("conformal_context", false);
  r.points_sampled = j.value("points_sampled", std::size_t{0});
  r.note = j.value("note", std::string());
  if (j.contains("metrics"))
    for (const auto& [k, v] : j["metrics"].items()) r.metrics[k] = detail::number(v);
  return r;
}

inline VerificationReport report_from_json(const json& j) {
  VerificationReport rep;
  rep.source = j.at("source").get<std::string>();
  rep.map = j.at("map").get<std::string>();
  rep.samples = j.at("samples").get<std::size_t>();
  rep.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("tolerances").items()) rep.tolerances[k] = v.get<double>();
  for (const json& c : j.at("checks")) rep.records.push_back(record_from_json(c));
  return rep;
}

namespace detail {

inline std::string sci(double v) {
  if (!std::isfinite(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace detail

/// One line per check, mirroring the JSON fields.
inline std::string to_text(const VerificationReport& rep) {
  std::ostringstream os;
  os << "source: " << rep.source << "\n";
  os << "map: " << rep.map << "\n";
  os << "samples: " << rep.samples << "  seed: " << rep.seed << "\n";
  for (const CheckRecord& r : rep.records) {
    std::string tag = r.verdict();
    if (r.informational && r.applicable) tag += ",info";
    os << "[" << tag << "] " << r.name << " (" << r.anchor << ") residual=" << detail::sci(r.max_residual)
       << " tol=" << detail::sci(r.tolerance);
    for (const auto& [k, v] : r.metrics) os << " " << k << "=" << detail::sci(v);
    if (!r.note.empty()) os << "  # " << r.note;
    os << "\n";
  }
  os << "summary: " << (rep.passed() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace subgeom
