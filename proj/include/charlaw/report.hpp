// Test reports and their JSON / CSV serializations.
//
// TestReport JSON:
//   { "test_id": str,
//     "functionals": [ {"name", "ks_statistic", "p_value", "pass"} ... ],
//     "moments":     [ {"name", "estimate", "standard_error", "target",
//                       "band", "verdict"} ... ],
//     "verdict": "pass" | "fail",
//     "metadata": { ... } }
// Scalar batches are CSV with header `index,re,im`; log-process paths are
// long-format CSV with header `path,t,re,im`.
#pragma once

#include <cstddef>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "charlaw/linalg.hpp"

namespace charlaw {

using json = nlohmann::ordered_json;

struct FunctionalResult {
  std::string name;
  double ks_statistic = 0.0;
  double p_value = 1.0;
  bool pass = false;
};

/// An estimated quantity checked against a target within +-band. Entries
/// without a target are informational and always pass.
struct MomentResult {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::optional<double> target;
  std::optional<double> band;
  bool verdict = false;
};

struct TestReport {
  std::string test_id;
  std::vector<FunctionalResult> functionals;
  std::vector<MomentResult> moments;
  bool pass = false;
  json metadata = json::object();

  void finalize() {
    pass = true;
    for (const auto& f : functionals) pass = pass && f.pass;
    for (const auto& m : moments) pass = pass && m.verdict;
  }

  const FunctionalResult* functional(const std::string& name) const {
    for (const auto& f : functionals)
      if (f.name == name) return &f;
    return nullptr;
  }

  const MomentResult* moment(const std::string& name) const {
    for (const auto& m : moments)
      if (m.name == name) return &m;
    return nullptr;
  }
};

inline void to_json(json& j, const FunctionalResult& f) {
  j = json{{"name", f.name}, {"ks_statistic", f.ks_statistic}, {"p_value", f.p_value}, {"pass", f.pass}};
}

inline void to_json(json& j, const MomentResult& m) {
  j = json{{"name", m.name}, {"estimate", m.estimate}, {"standard_error", m.standard_error}};
  j["target"] = m.target ? json(*m.target) : json(nullptr);
  j["band"] = m.band ? json(*m.band) : json(nullptr);
  j["verdict"] = m.verdict ? "pass" : "fail";
}

inline void to_json(json& j, const TestReport& r) {
  j = json{{"test_id", r.test_id},
           {"functionals", r.functionals},
           {"moments", r.moments},
           {"verdict", r.pass ? "pass" : "fail"},
           {"metadata", r.metadata}};
}

inline void write_batch_csv(std::ostream& os, std::span<const Complex> values) {
  os << "index,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i) os << i << ',' << values[i].real() << ',' << values[i].imag() << '\n';
}

}  // namespace charlaw
