#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace subgeom {

/// A named residual with its tolerance. Verdict is pass iff max_residual < tolerance.
struct CheckRecord {
  std::string name;
  std::string anchor;  ///< label of the identity or result this record tests
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t points_sampled = 0;
  bool applicable = true;
  bool informational = false;  ///< reported but excluded from the summary verdict
  bool conformal_context = false;
  std::string note;
  std::map<std::string, double> metrics;

  CheckRecord() = default;
  CheckRecord(std::string n, std::string a, double tol) : name(std::move(n)), anchor(std::move(a)), tolerance(tol) {}

  bool passed() const { return max_residual < tolerance; }

  /// Max-reduce; NaN poisons the record.
  void absorb(double r) {
    if (std::isnan(r)) {
      max_residual = std::numeric_limits<double>::infinity();
      return;
    }
    max_residual = std::max(max_residual, std::abs(r));
  }

  void merge(const CheckRecord& other) {
    absorb(other.max_residual);
    points_sampled += other.points_sampled;
  }

  CheckRecord& inapplicable(std::string why) {
    applicable = false;
    note = std::move(why);
    return *this;
  }

  /// "pass", "fail" or "inapplicable".
  std::string verdict() const {
    if (!applicable) return "inapplicable";
    return passed() ? "pass" : "fail";
  }

  bool counts() const { return applicable && !informational; }
};

/// All records of one run plus the context they were produced in.
struct VerificationReport {
  std::string source;
  std::string map;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void add(const std::vector<CheckRecord>& rs) { records.insert(records.end(), rs.begin(), rs.end()); }

  bool passed() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return !r.counts() || r.passed(); });
  }

  const CheckRecord* find(const std::string& name) const {
    for (const auto& r : records)
      if (r.name == name) return &r;
    return nullptr;
  }
};

}  // namespace subgeom
