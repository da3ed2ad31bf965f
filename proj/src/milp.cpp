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

#include "aarlcp/milp.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "aarlcp/error.hpp"
#include "model_rows.hpp"

namespace aarlcp {

const char* to_string(ConstraintTag tag) {
  switch (tag) {
    case ConstraintTag::kSupportBound:
      return "support-bound";
    case ConstraintTag::kNominalComplementarity:
      return "nominal-complementarity";
    case ConstraintTag::kSpanComplementarity:
      return "span-complementarity";
    case ConstraintTag::kDecisionDualObjective:
      return "decision-dual-objective";
    case ConstraintTag::kDecisionDualEquality:
      return "decision-dual-equality";
    case ConstraintTag::kSlackDualObjective:
      return "slack-dual-objective";
    case ConstraintTag::kSlackDualEquality:
      return "slack-dual-equality";
    case ConstraintTag::kHereAndNow:
      return "here-and-now";
    case ConstraintTag::kMixedEquality:
      return "mixed-eq";
    case ConstraintTag::kMixedSpan:
      return "mixed-lin";
  }
  return "?";
}

VariableLayout::VariableLayout(std::size_t n, std::size_t k, std::size_t g,
                               std::size_t m, bool adjustable_y)
    : n_(n), k_(k), g_(g), m_(m), adjustable_y_(adjustable_y && m > 0) {
  slope_ = n;
  intercept_ = slope_ + n * k;
  decision_dual_ = intercept_ + n;
  slack_dual_ = decision_dual_ + g * n;
  y_intercept_ = slack_dual_ + g * n;
  y_slope_ = y_intercept_ + m;
  total_ = y_slope_ + (adjustable_y_ ? m * k : 0);
}

std::string VariableLayout::name(std::size_t var) const {
  auto two = [](char prefix, std::size_t a, std::size_t b) {
    return prefix + std::to_string(a + 1) + "_" + std::to_string(b + 1);
  };
  if (var < slope_) return "x" + std::to_string(var + 1);
  if (var < intercept_) {
    const std::size_t off = var - slope_;
    return two('D', off / k_, off % k_);
  }
  if (var < decision_dual_) return "r" + std::to_string(var - intercept_ + 1);
  if (var < slack_dual_) {
    const std::size_t off = var - decision_dual_;
    return two('A', off / n_, off % n_);
  }
  if (var < y_intercept_) {
    const std::size_t off = var - slack_dual_;
    return two('C', off / n_, off % n_);
  }
  if (var < y_slope_) return "s" + std::to_string(var - y_intercept_ + 1);
  const std::size_t off = var - y_slope_;
  return two('E', off / k_, off % k_);
}

std::size_t MilpModel::num_binaries() const {
  return static_cast<std::size_t>(std::count_if(
      variables.begin(), variables.end(), [](const MilpVariable& v) { return v.binary; }));
}

std::size_t MilpModel::count(ConstraintTag tag) const {
  return static_cast<std::size_t>(std::count_if(
      constraints.begin(), constraints.end(),
      [tag](const MilpConstraint& c) { return c.tag == tag; }));
}

double default_big_m(const Instance& inst) {
  const double scale = std::max({1.0, norm_inf(inst.matrix), norm_inf(inst.offset),
                                 norm_inf(inst.perturbation),
                                 norm_inf(inst.uncertainty.rhs)});
  return 1e4 * scale;
}

namespace {

// Sparse terms of a dense row, continuous variables first and the support
// binaries last so rows read "r1 - 10 x1".
std::vector<LinearTerm> sparse_terms(const Vector& coeffs, std::size_t num_binaries) {
  std::vector<LinearTerm> terms;
  for (std::size_t v = num_binaries; v < coeffs.size(); ++v) {
    if (coeffs[v] != 0.0) terms.push_back({v, coeffs[v]});
  }
  for (std::size_t v = 0; v < num_binaries; ++v) {
    if (coeffs[v] != 0.0) terms.push_back({v, coeffs[v]});
  }
  return terms;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

MilpModel build_milp(const Instance& inst, const LinHullBasis& basis, double big_m) {
  inst.check_dimensions();
  if (!(big_m > 0.0) || !std::isfinite(big_m)) {
    throw Error(ErrorCode::kInvalidArgument, "big-M must be positive and finite");
  }
  if (!basis.vectors.empty() && basis.vectors.front().size() != inst.k()) {
    throw Error(ErrorCode::kDimensionMismatch, "basis vectors must have length k");
  }
  const std::size_t n = inst.n();
  const std::size_t k = inst.k();
  const std::size_t g = inst.g();
  const std::size_t m = inst.mixed ? inst.mixed->m() : 0;
  const bool adjustable = inst.mixed && inst.mixed->y_adjustable;

  MilpModel model;
  model.big_m = big_m;
  model.layout = VariableLayout(n, k, g, m, adjustable);
  const VariableLayout& lay = model.layout;
  model.variables.resize(lay.total());
  for (std::size_t v = 0; v < lay.total(); ++v) model.variables[v].name = lay.name(v);
  for (std::size_t i = 0; i < n; ++i) {
    MilpVariable& x = model.variables[lay.support(i)];
    x.binary = true;
    x.upper = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      model.variables[lay.slope(i, c)].lower = -kInfinity;
    }
  }
  for (std::size_t t = 0; t < m; ++t) {
    model.variables[lay.y_intercept(t)].lower = -kInfinity;
    if (adjustable) {
      for (std::size_t c = 0; c < k; ++c) {
        model.variables[lay.y_slope(t, c)].lower = -kInfinity;
      }
    }
  }

  const detail::ModelRows rows(inst, lay);
  auto add = [&](ConstraintTag tag, std::string name, detail::AffineRow row,
                 Relation rel, double rhs) {
    model.constraints.push_back(
        {tag, std::move(name), sparse_terms(row.coeffs, n), rel, rhs - row.constant});
  };
  auto idx = [](std::size_t i) { return std::to_string(i + 1); };

  for (std::size_t i = 0; i < n; ++i) {
    detail::AffineRow row{Vector(lay.total(), 0.0), 0.0};
    row.coeffs[lay.intercept(i)] = 1.0;
    row.coeffs[lay.support(i)] = -big_m;
    add(ConstraintTag::kSupportBound, "supp_" + idx(i), std::move(row),
        Relation::kLessEqual, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    detail::AffineRow row = rows.nominal(i);
    add(ConstraintTag::kNominalComplementarity, "nomlo_" + idx(i), row,
        Relation::kGreaterEqual, 0.0);
    row.coeffs[lay.support(i)] += big_m;
    add(ConstraintTag::kNominalComplementarity, "nomup_" + idx(i), std::move(row),
        Relation::kLessEqual, big_m);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      detail::AffineRow up = rows.span(i, basis.vectors[j]);
      detail::AffineRow lo = up;
      up.coeffs[lay.support(i)] += big_m;
      lo.coeffs[lay.support(i)] -= big_m;
      add(ConstraintTag::kSpanComplementarity, "spanup_" + idx(i) + "_" + idx(j),
          std::move(up), Relation::kLessEqual, big_m);
      add(ConstraintTag::kSpanComplementarity, "spanlo_" + idx(i) + "_" + idx(j),
          std::move(lo), Relation::kGreaterEqual, -big_m);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    add(ConstraintTag::kDecisionDualObjective, "zdobj_" + idx(i),
        rows.decision_dual_objective(i), Relation::kGreaterEqual, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      add(ConstraintTag::kDecisionDualEquality, "zdeq_" + idx(i) + "_" + idx(c),
          rows.decision_dual_equality(i, c), Relation::kEqual, 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    add(ConstraintTag::kSlackDualObjective, "wdobj_" + idx(i),
        rows.slack_dual_objective(i), Relation::kGreaterEqual, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      add(ConstraintTag::kSlackDualEquality, "wdeq_" + idx(i) + "_" + idx(c),
          rows.slack_dual_equality(i, c), Relation::kEqual, 0.0);
    }
  }
  for (std::size_t i = 0; i < inst.here_and_now; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      detail::AffineRow row{Vector(lay.total(), 0.0), 0.0};
      row.coeffs[lay.slope(i, c)] = 1.0;
      add(ConstraintTag::kHereAndNow, "hn_" + idx(i) + "_" + idx(c), std::move(row),
          Relation::kEqual, 0.0);
    }
  }
  for (std::size_t t = 0; t < m; ++t) {
    add(ConstraintTag::kMixedEquality, "yeq_" + idx(t), rows.mixed_equality(t),
        Relation::kEqual, 0.0);
  }
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      add(ConstraintTag::kMixedSpan, "yspan_" + idx(t) + "_" + idx(j),
          rows.mixed_span(t, basis.vectors[j]), Relation::kEqual, 0.0);
    }
  }
  return model;
}

ExportFormat parse_export_format(std::string_view tag) {
  if (tag == "lp") return ExportFormat::kLp;
  if (tag == "mps") return ExportFormat::kMps;
  throw Error(ErrorCode::kInvalidArgument,
              "unsupported export format '" + std::string(tag) + "' (expected lp or mps)");
}

namespace {

const char* relation_text(Relation rel) {
  switch (rel) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kEqual:
      return "=";
  }
  return "?";
}

void write_caveat(std::ostream& out, const MilpModel& model, const char* comment) {
  out << comment << " Affinely adjustable robust LCP feasibility model, big-M form\n";
  out << comment << " b = " << format_number(model.big_m) << "\n";
  out << comment << " Caveat: the rows M_i r + q_i <= b (1 - x_i) and\n";
  out << comment << " |(M_i D + T_i) v^j| <= b (1 - x_i) cut off genuine solutions\n";
  out << comment << " when b is too small. No safe value of b is known a priori.\n";
}

std::string export_lp(const MilpModel& model) {
  std::ostringstream out;
  write_caveat(out, model, "\\");
  const std::string& anchor = model.variables.front().name;
  out << "Minimize\n obj: 0 " << anchor << "\n";
  out << "Subject To\n";
  for (const MilpConstraint& con : model.constraints) {
    out << " " << con.name << ":";
    bool first = true;
    for (const LinearTerm& t : con.terms) {
      const double a = std::abs(t.coeff);
      const bool neg = t.coeff < 0.0;
      if (first) {
        out << (neg ? " - " : " ");
      } else {
        out << (neg ? " - " : " + ");
      }
      if (a != 1.0) out << format_number(a) << " ";
      out << model.variables[t.var].name;
      first = false;
    }
    if (first) out << " 0 " << anchor;
    out << " " << relation_text(con.relation) << " " << format_number(con.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const MilpVariable& v : model.variables) {
    if (v.binary) continue;
    const bool lo_inf = std::isinf(v.lower);
    const bool hi_inf = std::isinf(v.upper);
    if (lo_inf && hi_inf) {
      out << " " << v.name << " free\n";
    } else if (v.lower == 0.0 && hi_inf) {
      continue;
    } else if (lo_inf) {
      out << " -inf <= " << v.name << " <= " << format_number(v.upper) << "\n";
    } else if (hi_inf) {
      out << " " << v.name << " >= " << format_number(v.lower) << "\n";
    } else {
      out << " " << format_number(v.lower) << " <= " << v.name
          << " <= " << format_number(v.upper) << "\n";
    }
  }
  out << "Binaries\n";
  for (const MilpVariable& v : model.variables) {
    if (v.binary) out << " " << v.name << "\n";
  }
  out << "End\n";
  return out.str();
}

// Fixed-field layout: fields start in columns 2, 5, 15, 25, 40, 50.
std::string mps_line(std::string_view f1, std::string_view f2, std::string_view f3,
                     std::string_view f4) {
  std::string line = " ";
  line += f1;
  line.resize(4, ' ');
  line += f2;
  if (f3.empty() && f4.empty()) return line;
  line.resize(std::max<std::size_t>(line.size() + 2, 14), ' ');
  line += f3;
  if (f4.empty()) return line;
  line.resize(std::max<std::size_t>(line.size() + 2, 24), ' ');
  line += f4;
  return line;
}

std::string export_mps(const MilpModel& model) {
  std::ostringstream out;
  write_caveat(out, model, "*");
  out << "NAME          AARLCP\n";
  out << "ROWS\n";
  out << mps_line("N", "OBJ", "", "") << "\n";
  std::vector<std::string> row_names;
  row_names.reserve(model.constraints.size());
  std::size_t tag_seen = kNumConstraintTags;
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    const MilpConstraint& con = model.constraints[r];
    if (static_cast<std::size_t>(con.tag) != tag_seen) {
      tag_seen = static_cast<std::size_t>(con.tag);
      out << "* " << to_string(con.tag) << "\n";
    }
    row_names.push_back("R" + std::to_string(r + 1));
    const char* type = con.relation == Relation::kLessEqual      ? "L"
                       : con.relation == Relation::kGreaterEqual ? "G"
                                                                 : "E";
    out << mps_line(type, row_names.back(), "", "") << "\n";
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> columns(model.variables.size());
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    for (const LinearTerm& t : model.constraints[r].terms) {
      columns[t.var].push_back({r, t.coeff});
    }
  }
  out << "COLUMNS\n";
  for (std::size_t v = 0; v < model.variables.size(); ++v) {
    const std::string& name = model.variables[v].name;
    if (columns[v].empty()) {
      out << mps_line("", name, "OBJ", "0") << "\n";
      continue;
    }
    for (const auto& [r, a] : columns[v]) {
      out << mps_line("", name, row_names[r], format_number(a)) << "\n";
    }
  }
  out << "RHS\n";
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    const double rhs = model.constraints[r].rhs;
    if (rhs != 0.0) out << mps_line("", "RHS", row_names[r], format_number(rhs)) << "\n";
  }
  out << "BOUNDS\n";
  for (const MilpVariable& v : model.variables) {
    if (v.binary) {
      out << mps_line("BV", "BND", v.name, "") << "\n";
      continue;
    }
    const bool lo_inf = std::isinf(v.lower);
    const bool hi_inf = std::isinf(v.upper);
    if (lo_inf && hi_inf) {
      out << mps_line("FR", "BND", v.name, "") << "\n";
      continue;
    }
    if (lo_inf) {
      out << mps_line("MI", "BND", v.name, "") << "\n";
    } else if (v.lower != 0.0) {
      out << mps_line("LO", "BND", v.name, format_number(v.lower)) << "\n";
    }
    if (!hi_inf) out << mps_line("UP", "BND", v.name, format_number(v.upper)) << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace

std::string export_milp(const MilpModel& model, ExportFormat format) {
  if (model.variables.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot export an empty model");
  }
  switch (format) {
    case ExportFormat::kLp:
      return export_lp(model);
    case ExportFormat::kMps:
      return export_mps(model);
  }
  throw Error(ErrorCode::kInvalidArgument, "unsupported export format");
}

// ---------------------------------------------------------------------------
// Reading the text formats back.

std::size_t ParsedMilp::num_binaries() const {
  return static_cast<std::size_t>(std::count(binary.begin(), binary.end(), true));
}

LpModel ParsedMilp::fix_binaries(std::span<const std::uint8_t> values) const {
  LpModel lp(names.size());
  lp.lower = lower;
  lp.upper = upper;
  std::size_t b = 0;
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (!binary[v]) continue;
    if (b >= values.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "too few binary values");
    }
    lp.fix(v, values[b++]);
  }
  if (b != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "too many binary values");
  }
  for (const Row& row : rows) {
    Vector coeffs(names.size(), 0.0);
    for (const LinearTerm& t : row.terms) coeffs[t.var] += t.coeff;
    lp.add_row(std::move(coeffs), row.relation, row.rhs);
  }
  return lp;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

std::string lower_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  const std::string low = lower_case(s);
  if (low == "inf" || low == "+inf" || low == "infinity" || low == "+infinity") {
    out = kInfinity;
    return true;
  }
  if (low == "-inf" || low == "-infinity") {
    out = -kInfinity;
    return true;
  }
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

class ModelBuilder {
 public:
  std::size_t var(std::string_view name) {
    const std::string key(name);
    const auto it = model.index.find(key);
    if (it != model.index.end()) return it->second;
    const std::size_t id = model.names.size();
    model.names.push_back(key);
    model.index.emplace(key, id);
    model.lower.push_back(0.0);
    model.upper.push_back(kInfinity);
    model.binary.push_back(false);
    return id;
  }

  void mark_binary(std::string_view name) {
    const std::size_t v = var(name);
    model.binary[v] = true;
    model.lower[v] = 0.0;
    model.upper[v] = 1.0;
  }

  ParsedMilp model;
};

enum class TokenKind { kNumber, kName, kPlus, kMinus, kRelation, kColon };

struct Token {
  TokenKind kind;
  std::string_view text;
  double value = 0.0;
  Relation relation = Relation::kEqual;
};

std::vector<Token> tokenize(std::string_view s, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_delim = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '+' || c == '-' || c == '<' ||
           c == '>' || c == '=' || c == ':';
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '+') {
      out.push_back({TokenKind::kPlus, s.substr(i, 1)});
      ++i;
    } else if (c == '-') {
      out.push_back({TokenKind::kMinus, s.substr(i, 1)});
      ++i;
    } else if (c == ':') {
      out.push_back({TokenKind::kColon, s.substr(i, 1)});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::size_t j = i + 1;
      while (j < s.size() && (s[j] == '<' || s[j] == '>' || s[j] == '=')) ++j;
      const std::string_view op = s.substr(i, j - i);
      Token t{TokenKind::kRelation, op};
      if (op == "<=" || op == "=<" || op == "<") {
        t.relation = Relation::kLessEqual;
      } else if (op == ">=" || op == "=>" || op == ">") {
        t.relation = Relation::kGreaterEqual;
      } else if (op == "=") {
        t.relation = Relation::kEqual;
      } else {
        parse_fail(line, "bad relation '" + std::string(op) + "'");
      }
      out.push_back(t);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto res = std::from_chars(s.data() + i, s.data() + s.size(), v);
      if (res.ec != std::errc()) parse_fail(line, "bad number");
      const std::size_t len = static_cast<std::size_t>(res.ptr - (s.data() + i));
      out.push_back({TokenKind::kNumber, s.substr(i, len), v});
      i += len;
    } else {
      std::size_t j = i;
      while (j < s.size() && !is_delim(s[j])) ++j;
      const std::string_view word = s.substr(i, j - i);
      double v = 0.0;
      if (parse_double(word, v)) {
        out.push_back({TokenKind::kNumber, word, v});
      } else {
        out.push_back({TokenKind::kName, word});
      }
      i = j;
    }
  }
  return out;
}

void parse_constraint(ModelBuilder& mb, std::string_view text, std::size_t line) {
  std::vector<Token> toks = tokenize(text, line);
  ParsedMilp::Row row;
  std::size_t p = 0;
  if (toks.size() >= 2 && toks[0].kind == TokenKind::kName &&
      toks[1].kind == TokenKind::kColon) {
    row.name = std::string(toks[0].text);
    p = 2;
  }
  bool seen_relation = false;
  double sign = 1.0;
  double coeff = 1.0;
  bool have_coeff = false;
  bool dangling = false;  // sign or coefficient still waiting for its variable
  for (; p < toks.size(); ++p) {
    const Token& t = toks[p];
    if (t.kind == TokenKind::kRelation) {
      if (dangling) parse_fail(line, "sign or coefficient without a variable");
      seen_relation = true;
      row.relation = t.relation;
      ++p;
      break;
    }
    switch (t.kind) {
      case TokenKind::kPlus:
        dangling = true;
        break;
      case TokenKind::kMinus:
        sign = -sign;
        dangling = true;
        break;
      case TokenKind::kNumber:
        if (have_coeff) parse_fail(line, "two coefficients in a row");
        coeff = t.value;
        have_coeff = true;
        dangling = true;
        break;
      case TokenKind::kName: {
        dangling = false;
        const double a = sign * coeff;
        const std::size_t v = mb.var(t.text);
        if (a != 0.0) row.terms.push_back({v, a});
        sign = 1.0;
        coeff = 1.0;
        have_coeff = false;
        break;
      }
      default:
        parse_fail(line, "unexpected token '" + std::string(t.text) + "'");
    }
  }
  if (!seen_relation) parse_fail(line, "constraint without relation");
  double rhs_sign = 1.0;
  for (; p < toks.size() && toks[p].kind != TokenKind::kNumber; ++p) {
    if (toks[p].kind == TokenKind::kMinus) {
      rhs_sign = -rhs_sign;
    } else if (toks[p].kind != TokenKind::kPlus) {
      parse_fail(line, "right-hand side must be a number");
    }
  }
  if (p + 1 != toks.size()) parse_fail(line, "malformed right-hand side");
  row.rhs = rhs_sign * toks[p].value;
  if (row.name.empty()) row.name = "R" + std::to_string(mb.model.rows.size() + 1);
  mb.model.rows.push_back(std::move(row));
}

void parse_bound(ModelBuilder& mb, std::string_view text, std::size_t line) {
  const auto words = split_ws(text);
  if (words.size() == 2 && lower_case(words[1]) == "free") {
    const std::size_t v = mb.var(words[0]);
    mb.model.lower[v] = -kInfinity;
    mb.model.upper[v] = kInfinity;
    return;
  }
  // Collapse "- 5" style signs by re-tokenizing.
  std::vector<Token> toks = tokenize(text, line);
  std::vector<Token> merged;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if ((toks[i].kind == TokenKind::kMinus || toks[i].kind == TokenKind::kPlus) &&
        i + 1 < toks.size() && toks[i + 1].kind == TokenKind::kNumber) {
      Token t = toks[i + 1];
      if (toks[i].kind == TokenKind::kMinus) t.value = -t.value;
      merged.push_back(t);
      ++i;
    } else {
      merged.push_back(toks[i]);
    }
  }
  auto apply = [&](std::size_t v, Relation rel, double value) {
    switch (rel) {
      case Relation::kLessEqual:
        mb.model.upper[v] = value;
        break;
      case Relation::kGreaterEqual:
        mb.model.lower[v] = value;
        break;
      case Relation::kEqual:
        mb.model.lower[v] = value;
        mb.model.upper[v] = value;
        break;
    }
  };
  auto flip = [](Relation r) {
    return r == Relation::kLessEqual      ? Relation::kGreaterEqual
           : r == Relation::kGreaterEqual ? Relation::kLessEqual
                                          : r;
  };
  if (merged.size() == 3 && merged[0].kind == TokenKind::kName &&
      merged[1].kind == TokenKind::kRelation && merged[2].kind == TokenKind::kNumber) {
    apply(mb.var(merged[0].text), merged[1].relation, merged[2].value);
  } else if (merged.size() == 3 && merged[0].kind == TokenKind::kNumber &&
             merged[1].kind == TokenKind::kRelation && merged[2].kind == TokenKind::kName) {
    apply(mb.var(merged[2].text), flip(merged[1].relation), merged[0].value);
  } else if (merged.size() == 5 && merged[0].kind == TokenKind::kNumber &&
             merged[1].kind == TokenKind::kRelation && merged[2].kind == TokenKind::kName &&
             merged[3].kind == TokenKind::kRelation && merged[4].kind == TokenKind::kNumber) {
    const std::size_t v = mb.var(merged[2].text);
    apply(v, flip(merged[1].relation), merged[0].value);
    apply(v, merged[3].relation, merged[4].value);
  } else {
    parse_fail(line, "unrecognized bound '" + std::string(text) + "'");
  }
}

}  // namespace

ParsedMilp parse_lp_text(std::string_view text) {
  enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries, kEnd };
  Section section = Section::kNone;
  ModelBuilder mb;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (const auto cut = line.find('\\'); cut != std::string_view::npos) {
      line = line.substr(0, cut);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string key = lower_case(line);
    if (key == "minimize" || key == "minimum" || key == "min" || key == "maximize" ||
        key == "maximum" || key == "max") {
      section = Section::kObjective;
      continue;
    }
    if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") {
      section = Section::kConstraints;
      continue;
    }
    if (key == "bounds" || key == "bound") {
      section = Section::kBounds;
      continue;
    }
    if (key == "binaries" || key == "binary" || key == "bin") {
      section = Section::kBinaries;
      continue;
    }
    if (key == "end") {
      section = Section::kEnd;
      continue;
    }
    switch (section) {
      case Section::kNone:
        parse_fail(ln + 1, "content before the objective section");
      case Section::kObjective:
        break;  // feasibility model: the objective is ignored
      case Section::kConstraints:
        parse_constraint(mb, line, ln + 1);
        break;
      case Section::kBounds:
        parse_bound(mb, line, ln + 1);
        break;
      case Section::kBinaries:
        for (std::string_view w : split_ws(line)) mb.mark_binary(w);
        break;
      case Section::kEnd:
        parse_fail(ln + 1, "content after End");
    }
  }
  if (section != Section::kEnd) parse_fail(lines.size(), "missing End");
  return std::move(mb.model);
}

ParsedMilp parse_mps_text(std::string_view text) {
  enum class Section { kNone, kRows, kColumns, kRhs, kBounds, kEnd };
  Section section = Section::kNone;
  ModelBuilder mb;
  std::unordered_map<std::string, std::size_t> row_index;
  std::string objective_row;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view raw = lines[ln];
    if (trim(raw).empty() || raw.front() == '*') continue;
    const auto words = split_ws(raw);
    const bool header = raw.front() != ' ' && raw.front() != '\t';
    if (header) {
      const std::string key = lower_case(words[0]);
      if (key == "name") continue;
      if (key == "rows") {
        section = Section::kRows;
      } else if (key == "columns") {
        section = Section::kColumns;
      } else if (key == "rhs") {
        section = Section::kRhs;
      } else if (key == "bounds") {
        section = Section::kBounds;
      } else if (key == "endata") {
        section = Section::kEnd;
      } else {
        parse_fail(ln + 1, "unsupported MPS section '" + std::string(words[0]) + "'");
      }
      continue;
    }
    auto number = [&](std::string_view w) {
      double v = 0.0;
      if (!parse_double(w, v)) parse_fail(ln + 1, "bad number '" + std::string(w) + "'");
      return v;
    };
    auto row_of = [&](std::string_view name) -> std::ptrdiff_t {
      if (name == objective_row) return -1;
      const auto it = row_index.find(std::string(name));
      if (it == row_index.end()) parse_fail(ln + 1, "unknown row '" + std::string(name) + "'");
      return static_cast<std::ptrdiff_t>(it->second);
    };
    switch (section) {
      case Section::kRows: {
        if (words.size() != 2) parse_fail(ln + 1, "ROWS entry needs type and name");
        const std::string type = lower_case(words[0]);
        if (type == "n") {
          objective_row = std::string(words[1]);
          break;
        }
        ParsedMilp::Row row;
        row.name = std::string(words[1]);
        row.rhs = 0.0;
        if (type == "l") {
          row.relation = Relation::kLessEqual;
        } else if (type == "g") {
          row.relation = Relation::kGreaterEqual;
        } else if (type == "e") {
          row.relation = Relation::kEqual;
        } else {
          parse_fail(ln + 1, "bad row type");
        }
        row_index.emplace(row.name, mb.model.rows.size());
        mb.model.rows.push_back(std::move(row));
        break;
      }
      case Section::kColumns: {
        if (words.size() >= 3 && words[1] == "'MARKER'") break;
        if (words.size() != 3 && words.size() != 5) parse_fail(ln + 1, "bad COLUMNS entry");
        const std::size_t v = mb.var(words[0]);
        for (std::size_t w = 1; w + 1 < words.size(); w += 2) {
          const double a = number(words[w + 1]);
          const std::ptrdiff_t r = row_of(words[w]);
          if (r >= 0 && a != 0.0) mb.model.rows[static_cast<std::size_t>(r)].terms.push_back({v, a});
        }
        break;
      }
      case Section::kRhs: {
        if (words.size() != 3 && words.size() != 5) parse_fail(ln + 1, "bad RHS entry");
        for (std::size_t w = 1; w + 1 < words.size(); w += 2) {
          const std::ptrdiff_t r = row_of(words[w]);
          if (r >= 0) mb.model.rows[static_cast<std::size_t>(r)].rhs = number(words[w + 1]);
        }
        break;
      }
      case Section::kBounds: {
        if (words.size() < 3) parse_fail(ln + 1, "bad BOUNDS entry");
        const std::string type = lower_case(words[0]);
        const std::size_t v = mb.var(words[2]);
        const double val = words.size() > 3 ? number(words[3]) : 0.0;
        if (type == "bv") {
          mb.mark_binary(words[2]);
        } else if (type == "fr") {
          mb.model.lower[v] = -kInfinity;
          mb.model.upper[v] = kInfinity;
        } else if (type == "mi") {
          mb.model.lower[v] = -kInfinity;
        } else if (type == "pl") {
          mb.model.upper[v] = kInfinity;
        } else if (type == "lo") {
          mb.model.lower[v] = val;
        } else if (type == "up") {
          mb.model.upper[v] = val;
        } else if (type == "fx") {
          mb.model.lower[v] = val;
          mb.model.upper[v] = val;
        } else {
          parse_fail(ln + 1, "unsupported bound type '" + std::string(words[0]) + "'");
        }
        break;
      }
      case Section::kNone:
      case Section::kEnd:
        parse_fail(ln + 1, "data outside a section");
    }
  }
  if (section != Section::kEnd) parse_fail(lines.size(), "missing ENDATA");
  return std::move(mb.model);
}

}  // namespace aarlcp
