// Copyright 2026 The privmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privmech/json_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace privmech {
namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorCode::kParseError, message);
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number_to_json(v(i)));
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

Json number_to_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  parse_fail("expected a number, got " + j.dump());
}

ToleranceConfig tolerance_from_json(const Json& j) {
  ToleranceConfig tol;
  if (!j.is_object() || !j.contains("tol")) return tol;
  const Json& t = j.at("tol");
  if (!t.is_object()) parse_fail("\"tol\" must be an object");
  if (t.contains("sum_tol")) tol.sum_tol = number_from_json(t.at("sum_tol"));
  if (t.contains("eq_tol")) tol.eq_tol = number_from_json(t.at("eq_tol"));
  if (t.contains("ineq_slack")) {
    tol.ineq_slack = number_from_json(t.at("ineq_slack"));
  }
  tol.validate();
  return tol;
}

Channel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows")) {
    parse_fail("channel JSON needs a \"rows\" array");
  }
  const Json& rows = j.at("rows");
  if (!rows.is_array()) parse_fail("\"rows\" must be an array");
  std::vector<std::vector<double>> m;
  m.reserve(rows.size());
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (!rows[x].is_array()) {
      parse_fail("row " + std::to_string(x) + " is not an array");
    }
    auto& row = m.emplace_back();
    for (const Json& v : rows[x]) {
      if (!v.is_number()) {
        parse_fail("row " + std::to_string(x) + " has a non-numeric entry");
      }
      row.push_back(v.get<double>());
    }
  }
  return validate_channel(m, tolerance_from_json(j));
}

Json channel_to_json(const Channel& w, const ToleranceConfig& tol) {
  Json rows = Json::array();
  for (Index x = 0; x < w.input_size(); ++x) {
    rows.push_back(vector_to_json(w.row(x).transpose()));
  }
  Json out;
  out["rows"] = std::move(rows);
  out["tol"] = {{"sum_tol", tol.sum_tol}};
  return out;
}

Distribution distribution_from_json(const Json& j, const ToleranceConfig& tol) {
  if (!j.is_object() || !j.contains("probs") || !j.at("probs").is_array()) {
    parse_fail("distribution JSON needs a \"probs\" array");
  }
  std::vector<double> p;
  for (const Json& v : j.at("probs")) {
    if (!v.is_number()) parse_fail("\"probs\" has a non-numeric entry");
    p.push_back(v.get<double>());
  }
  return validate_distribution(p, tol);
}

Json distribution_to_json(const Distribution& p) {
  Json out;
  out["probs"] = vector_to_json(p.probs());
  return out;
}

Json to_json(const PrivacyReport& r) {
  Json out;
  out["eta_tv"] = number_to_json(r.eta_tv);
  out["ldp_level_bits"] = number_to_json(r.ldp_level_bits);
  out["maxl_bits"] = number_to_json(r.maxl_bits);
  out["min_entry"] = number_to_json(r.min_entry);
  out["input_size"] = r.input_size;
  out["output_size"] = r.output_size;
  return out;
}

Json to_json(const BoundCheckResult& r) {
  Json out;
  out["name"] = r.name;
  out["lhs"] = number_to_json(r.lhs);
  out["rhs"] = number_to_json(r.rhs);
  out["margin"] = number_to_json(r.margin);
  out["passed"] = r.passed;
  out["applicable"] = r.applicable;
  out["skipped"] = r.skipped;
  return out;
}

Json to_json(const RiskEstimate& r) {
  Json out;
  out["mean_risk"] = number_to_json(r.mean_risk);
  out["std_error"] = number_to_json(r.std_error);
  out["replicates"] = r.replicates;
  out["closed_form"] = number_to_json(r.closed_form);
  out["upper_bound"] = number_to_json(r.upper_bound);
  out["lecam_lower"] = number_to_json(r.lecam_lower);
  return out;
}

Json to_json(const ContractionEstimate& e) {
  Json out;
  out["spec"] = std::string(e.spec.name());
  out["value"] = number_to_json(e.value);
  out["witness_p0"] =
      e.witness_p0 ? vector_to_json(e.witness_p0->probs()) : Json(nullptr);
  out["witness_p1"] =
      e.witness_p1 ? vector_to_json(e.witness_p1->probs()) : Json(nullptr);
  out["evaluations"] = e.evaluations;
  out["grid_resolution"] = e.grid_resolution;
  out["seed"] = e.seed;
  return out;
}

Json to_json(const SweepRow& r) {
  Json out;
  out["k"] = r.k;
  out["alpha_bits"] = number_to_json(r.alpha_bits);
  out["n"] = r.n;
  out["replicates"] = r.replicates;
  out["seed"] = r.seed;
  out["mean_risk"] = number_to_json(r.mean_risk);
  out["std_error"] = number_to_json(r.std_error);
  out["closed_form"] = number_to_json(r.closed_form);
  out["upper_bound"] = number_to_json(r.upper_bound);
  out["lecam_lower"] = number_to_json(r.lecam_lower);
  out["normalized_risk"] = number_to_json(r.normalized_risk);
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.k << ',' << format_double(r.alpha_bits) << ',' << r.n << ','
        << r.replicates << ',' << r.seed << ',' << format_double(r.mean_risk)
        << ',' << format_double(r.std_error) << ','
        << format_double(r.closed_form) << ','
        << format_double(r.upper_bound) << ','
        << format_double(r.lecam_lower) << ','
        << format_double(r.normalized_risk) << '\n';
  }
  return out.str();
}

}  // namespace privmech
