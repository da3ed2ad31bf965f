// Copyright 2026 The aarlcp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aarlcp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "aarlcp/error.hpp"
#include "json.hpp"

namespace aarlcp {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const json& field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_error(std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t read_size(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    parse_error(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double read_number(const json& v, const char* key) {
  if (!v.is_number()) parse_error(std::string("\"") + key + "\" must contain numbers");
  const double d = v.get<double>();
  if (!std::isfinite(d)) parse_error(std::string("\"") + key + "\" contains a non-finite number");
  return d;
}

Vector read_vector(const json& obj, const char* key, std::size_t len) {
  const json& v = field(obj, key);
  if (!v.is_array()) parse_error(std::string("\"") + key + "\" must be an array");
  if (v.size() != len) {
    throw Error(ErrorCode::kDimensionMismatch, std::string("\"") + key + "\" must have length " +
                                                   std::to_string(len));
  }
  Vector out;
  out.reserve(len);
  for (const json& e : v) out.push_back(read_number(e, key));
  return out;
}

Matrix read_matrix(const json& obj, const char* key, std::size_t rows, std::size_t cols) {
  const json& v = field(obj, key);
  if (!v.is_array()) parse_error(std::string("\"") + key + "\" must be an array of rows");
  const std::string shape = std::to_string(rows) + " x " + std::to_string(cols);
  if (v.size() != rows) {
    throw Error(ErrorCode::kDimensionMismatch, std::string("\"") + key + "\" must be " + shape);
  }
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array()) parse_error(std::string("\"") + key + "\" must be an array of rows");
    if (v[i].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, std::string("\"") + key + "\" must be " + shape);
    }
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = read_number(v[i][j], key);
  }
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    out.push_back(json(std::vector<double>(row.begin(), row.end())));
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) parse_error("top level must be a JSON object");
    return doc;
  } catch (const json::exception& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

// Rows of a matrix whose column count is implied by the first row.
Matrix read_ragged_matrix(const json& obj, const char* key, std::size_t rows) {
  const json& v = field(obj, key);
  if (!v.is_array() || v.size() != rows) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string("\"") + key + "\" must have " + std::to_string(rows) + " rows");
  }
  const std::size_t cols = rows == 0 || !v[0].is_array() ? 0 : v[0].size();
  return read_matrix(obj, key, rows, cols);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  const std::size_t n = read_size(doc, "n");
  const std::size_t k = read_size(doc, "k");
  const std::size_t g = read_size(doc, "g");
  Instance inst;
  inst.here_and_now = read_size(doc, "h");
  inst.matrix = read_matrix(doc, "M", n, n);
  inst.perturbation = read_matrix(doc, "T", n, k);
  inst.uncertainty.lhs = read_matrix(doc, "Theta", g, k);
  inst.offset = read_vector(doc, "q", n);
  inst.uncertainty.rhs = read_vector(doc, "zeta", g);
  if (const auto it = doc.find("mixed"); it != doc.end()) {
    const json& mx = *it;
    if (!mx.is_object()) parse_error("\"mixed\" must be an object");
    const std::size_t m = read_size(mx, "m");
    MixedExtension ext;
    ext.eq_z = read_matrix(mx, "V", m, n);
    ext.eq_y = read_matrix(mx, "W", m, m);
    ext.y_coupling = read_matrix(mx, "N", n, m);
    ext.eq_offset = read_vector(mx, "p", m);
    ext.eq_perturbation = read_matrix(mx, "P", m, k);
    const json& adj = field(mx, "y_adjustable");
    if (!adj.is_boolean()) parse_error("\"y_adjustable\" must be true or false");
    ext.y_adjustable = adj.get<bool>();
    inst.mixed = std::move(ext);
  }
  inst.check_dimensions();
  return inst;
}

std::string dump_instance(const Instance& inst) {
  json doc;
  doc["n"] = inst.n();
  doc["k"] = inst.k();
  doc["g"] = inst.g();
  doc["h"] = inst.here_and_now;
  doc["M"] = to_json(inst.matrix);
  doc["T"] = to_json(inst.perturbation);
  doc["Theta"] = to_json(inst.uncertainty.lhs);
  doc["q"] = inst.offset;
  doc["zeta"] = inst.uncertainty.rhs;
  if (inst.mixed) {
    const MixedExtension& mx = *inst.mixed;
    doc["mixed"] = {{"m", mx.m()},
                    {"V", to_json(mx.eq_z)},
                    {"W", to_json(mx.eq_y)},
                    {"N", to_json(mx.y_coupling)},
                    {"p", mx.eq_offset},
                    {"P", to_json(mx.eq_perturbation)},
                    {"y_adjustable", mx.y_adjustable}};
  }
  return doc.dump(2) + "\n";
}

PolicyFile to_policy_file(const SolveReport& report) {
  PolicyFile file;
  file.status = report.status;
  if (report.status == SolveStatus::kFeasible) file.policy = report.policy;
  file.nodes_explored = report.nodes_explored;
  file.lp_calls = report.lp_calls;
  file.tolerances = report.tolerances;
  return file;
}

PolicyFile parse_policy(std::string_view text) {
  const json doc = parse_json(text);
  PolicyFile file;
  const json& status = field(doc, "status");
  if (status == "feasible") {
    file.status = SolveStatus::kFeasible;
  } else if (status == "infeasible") {
    file.status = SolveStatus::kInfeasible;
  } else if (status == "numerical-failure") {
    file.status = SolveStatus::kNumericalFailure;
  } else {
    parse_error("\"status\" must be \"feasible\" or \"infeasible\"");
  }
  if (file.status == SolveStatus::kFeasible) {
    const json& r = field(doc, "r");
    if (!r.is_array()) parse_error("\"r\" must be an array");
    const std::size_t n = r.size();
    Policy policy;
    policy.intercept = read_vector(doc, "r", n);
    policy.slope = read_ragged_matrix(doc, "D", n);
    const Vector x = read_vector(doc, "x", n);
    for (std::size_t i = 0; i < n; ++i) {
      if (policy.intercept[i] < 0.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "policy intercept r" + std::to_string(i + 1) + " is negative");
      }
      if (x[i] != 0.0 && x[i] != 1.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "policy support x" + std::to_string(i + 1) + " is not 0 or 1");
      }
      policy.support.push_back(static_cast<std::uint8_t>(x[i]));
    }
    if (doc.contains("s")) {
      const json& s = field(doc, "s");
      if (!s.is_array()) parse_error("\"s\" must be an array");
      AffineRule rule;
      rule.intercept = read_vector(doc, "s", s.size());
      if (doc.contains("E")) {
        rule.slope = read_matrix(doc, "E", s.size(), policy.slope.cols());
      } else {
        rule.slope = Matrix(s.size(), policy.slope.cols());
      }
      policy.y = std::move(rule);
    }
    file.policy = std::move(policy);
  }
  if (const auto it = doc.find("diagnostics"); it != doc.end() && it->is_object()) {
    const json& diag = *it;
    if (diag.contains("nodes_explored")) file.nodes_explored = read_size(diag, "nodes_explored");
    if (diag.contains("lp_calls")) file.lp_calls = read_size(diag, "lp_calls");
    if (const auto t = diag.find("tolerances"); t != diag.end() && t->is_object()) {
      if (t->contains("zero")) file.tolerances.zero = read_number((*t)["zero"], "zero");
      if (t->contains("feas")) file.tolerances.feas = read_number((*t)["feas"], "feas");
      if (t->contains("lp")) file.tolerances.lp = read_number((*t)["lp"], "lp");
    }
  }
  return file;
}

std::string dump_policy(const PolicyFile& file) {
  json doc;
  doc["status"] = to_string(file.status);
  if (file.policy) {
    const Policy& p = *file.policy;
    doc["D"] = to_json(p.slope);
    doc["r"] = p.intercept;
    std::vector<int> x(p.support.begin(), p.support.end());
    doc["x"] = x;
    if (p.y) {
      doc["E"] = to_json(p.y->slope);
      doc["s"] = p.y->intercept;
    }
  }
  doc["diagnostics"] = {{"nodes_explored", file.nodes_explored},
                        {"lp_calls", file.lp_calls},
                        {"tolerances",
                         {{"zero", file.tolerances.zero},
                          {"feas", file.tolerances.feas},
                          {"lp", file.tolerances.lp}}}};
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kInvalidArgument, "failed writing " + path.string());
}

}  // namespace aarlcp
