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

#include "aarlcp/cli.hpp"

#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aarlcp/core.hpp"
#include "aarlcp/error.hpp"
#include "aarlcp/io.hpp"
#include "aarlcp/linhull.hpp"
#include "aarlcp/milp.hpp"
#include "aarlcp/mixed.hpp"
#include "aarlcp/psd.hpp"
#include "aarlcp/verify.hpp"

namespace aarlcp {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string index_set(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(idx[i] + 1);
  }
  return s + "}";
}

std::string vec(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += num(v[i]);
  }
  return s + ")";
}

std::vector<std::size_t> ones(const std::vector<std::uint8_t>& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) out.push_back(i);
  }
  return out;
}

int status_exit(SolveStatus status) {
  switch (status) {
    case SolveStatus::kFeasible:
      return kExitOk;
    case SolveStatus::kInfeasible:
      return kExitNegative;
    case SolveStatus::kNumericalFailure:
      return kExitNumerical;
  }
  return kExitNumerical;
}

Instance load_instance(const std::string& path) { return parse_instance(read_text_file(path)); }

Tolerances tolerances_from(double feas) {
  if (!(feas > 0.0)) throw Error(ErrorCode::kInvalidArgument, "--tol must be positive");
  Tolerances tol;
  tol.feas = feas;
  return tol;
}

void print_policy_summary(const SolveReport& rep, std::ostream& out) {
  out << "status: " << to_string(rep.status) << "\n";
  if (rep.policy) {
    const Policy& p = *rep.policy;
    out << "support x = 1 on " << index_set(ones(p.support)) << "\n";
    out << "r = " << vec(p.intercept) << "\n";
    for (std::size_t i = 0; i < p.slope.rows(); ++i) {
      out << "D row " << i + 1 << " = " << vec(p.slope.row(i)) << "\n";
    }
    if (p.y) out << "s = " << vec(p.y->intercept) << "\n";
  }
  out << "nodes explored: " << rep.nodes_explored << "\n";
  out << "LP calls: " << rep.lp_calls << "\n";
  if (!rep.message.empty()) out << "note: " << rep.message << "\n";
}

void print_verify_report(const VerifyReport& rep, std::ostream& out) {
  out << "support I = " << index_set(rep.support) << "\n";
  out << "nominal residual: " << num(rep.nominal_residual) << "\n";
  out << "span residual: " << num(rep.span_residual) << "\n";
  if (rep.equality_residual > 0.0 || rep.equality_span_residual > 0.0) {
    out << "mixed equality residual: " << num(rep.equality_residual) << "\n";
    out << "mixed equality span residual: " << num(rep.equality_span_residual) << "\n";
  }
  out << "min z(u) over U: " << vec(rep.min_decision) << "\n";
  out << "min w(u) over U: " << vec(rep.min_slack) << "\n";
  if (rep.verified()) {
    out << "verified\n";
  } else {
    for (const std::string& v : rep.violations) out << "violation: " << v << "\n";
  }
}

int cmd_validate(const std::string& path, double tol, std::ostream& out) {
  const Instance inst = load_instance(path);
  const ValidationReport rep = validate(inst, tol);
  out << "compact: " << (rep.compact ? "yes" : "no, not compact") << "\n";
  out << "zero in relative interior: " << (rep.zero_in_relint ? "yes" : "no") << "\n";
  out << "T full column rank: " << (rep.perturbation_full_rank ? "yes" : "no") << "\n";
  out << "implicit equality rows: " << index_set(rep.implicit_equality_rows) << "\n";
  for (const std::string& w : rep.warnings) out << "warning: " << w << "\n";
  out << (rep.ok() ? "assumptions hold" : "assumptions violated") << "\n";
  return rep.ok() ? kExitOk : kExitNegative;
}

struct SolveFlags {
  std::string psd = "auto";
  double tol = 1e-8;
  std::string out_path;
  bool parallel = false;
  std::size_t node_limit = std::size_t{1} << 20;
};

int cmd_solve(const std::string& path, const SolveFlags& flags, std::ostream& out) {
  const Instance inst = load_instance(path);
  const Tolerances tol = tolerances_from(flags.tol);
  const LinHullBasis basis = compute_lin_hull(inst, tol.feas);
  BnbOptions opts;
  opts.tol = tol;
  opts.node_limit = flags.node_limit;
  opts.parallel = flags.parallel;

  SolveReport rep;
  std::string route = "branch-and-bound";
  if (inst.mixed) {
    if (flags.psd == "force") {
      throw Error(ErrorCode::kInvalidArgument, "--psd force does not apply to mixed instances");
    }
    rep = mixed_solve(inst, basis, opts);
  } else {
    const bool psd = flags.psd != "off" && check_psd(inst.matrix, tol.feas);
    if (flags.psd == "force" && !psd) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--psd force: symmetric part of M is not positive semidefinite");
    }
    if (psd) {
      route = "PSD single LP";
      rep = to_solve_report(psd_solve(inst, basis, tol), tol);
    } else {
      rep = bnb_solve(inst, basis, opts);
    }
  }
  const std::string policy_json = dump_policy(to_policy_file(rep));
  if (flags.out_path.empty()) {
    out << policy_json;
  } else {
    write_text_file(flags.out_path, policy_json);
    out << "route: " << route << "\n";
    print_policy_summary(rep, out);
    out << "policy written to " << flags.out_path << "\n";
  }
  return status_exit(rep.status);
}

int cmd_verify(const std::string& inst_path, const std::string& policy_path, double tol_feas,
               std::ostream& out) {
  const Instance inst = load_instance(inst_path);
  const PolicyFile file = parse_policy(read_text_file(policy_path));
  if (!file.policy) {
    throw Error(ErrorCode::kInvalidArgument, "policy file carries no policy (status " +
                                                 std::string(to_string(file.status)) + ")");
  }
  const Tolerances tol = tolerances_from(tol_feas);
  if (auto bad = policy_invariant_violation(*file.policy, inst.here_and_now, tol.zero)) {
    throw Error(ErrorCode::kInvalidArgument, "policy invariant violated: " + *bad);
  }
  const LinHullBasis basis = compute_lin_hull(inst, tol.feas);
  const VerifyReport rep = verify_policy(inst, basis, *file.policy, tol);
  print_verify_report(rep, out);
  return rep.verified() ? kExitOk : kExitNegative;
}

int cmd_oracle(const std::string& path, double tol_feas, std::size_t max_n, std::ostream& out) {
  const Instance inst = load_instance(path);
  OracleOptions opts;
  opts.tol = tolerances_from(tol_feas);
  opts.max_n = max_n;
  const LinHullBasis basis = compute_lin_hull(inst, opts.tol.feas);
  OracleTally tally;
  const SolveReport rep = oracle_enumerate(inst, basis, opts, &tally);
  out << "status: " << to_string(rep.status) << "\n";
  if (!tally.first_feasible.empty()) {
    out << "first feasible support: " << index_set(ones(tally.first_feasible)) << "\n";
  }
  const std::size_t failed = tally.equality_infeasible + tally.nonnegativity_infeasible;
  out << failed << "/" << tally.examined << " supports LP-infeasible, "
      << tally.equality_infeasible << " equality-infeasible, " << tally.nonnegativity_infeasible
      << " nonnegativity-infeasible\n";
  if (!rep.message.empty()) out << "note: " << rep.message << "\n";
  return status_exit(rep.status);
}

int cmd_linhull(const std::string& path, double tol, std::ostream& out) {
  const Instance inst = load_instance(path);
  const LinHullBasis basis = compute_lin_hull(inst, tol);
  out << "dimension: " << basis.dim() << "\n";
  for (std::size_t j = 0; j < basis.dim(); ++j) {
    out << "basis vector " << j + 1 << ": " << vec(basis.vectors[j]) << "\n";
  }
  out << "implicit equality rows: " << index_set(basis.equality_rows) << "\n";
  return kExitOk;
}

int cmd_export(const std::string& path, const std::string& format,
               std::optional<double> big_m, const std::string& out_path, double tol,
               std::ostream& out) {
  const ExportFormat fmt = parse_export_format(format);
  const Instance inst = load_instance(path);
  const double b = big_m ? *big_m : default_big_m(inst);
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidArgument, "--big-m must be positive and finite");
  }
  const LinHullBasis basis = compute_lin_hull(inst, tol);
  const std::string text = export_milp(build_milp(inst, basis, b), fmt);
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
    out << "wrote " << out_path << " (big-M " << num(b) << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affinely adjustable robust solutions of linear complementarity problems"};
  app.name("aarlcp");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string instance_path;
  std::string policy_path;
  double tol = 1e-8;

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check the uncertainty-set assumptions");
  validate_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  validate_cmd->add_option("--tol", tol, "Feasibility tolerance");

  SolveFlags solve_flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Find an affine robust solution");
  solve_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  solve_cmd->add_option("--psd", solve_flags.psd, "PSD routing: auto, force or off")
      ->check(CLI::IsMember({"auto", "force", "off"}));
  solve_cmd->add_option("--tol", solve_flags.tol, "Feasibility tolerance");
  solve_cmd->add_option("--out", solve_flags.out_path, "Write the policy JSON here");
  solve_cmd->add_flag("--parallel", solve_flags.parallel, "Explore subtrees concurrently");
  solve_cmd->add_option("--node-limit", solve_flags.node_limit, "Branch-and-bound node budget")
      ->check(CLI::PositiveNumber);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Certify a policy file");
  verify_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  verify_cmd->add_option("policy", policy_path, "Policy JSON")->required();
  verify_cmd->add_option("--tol", tol, "Feasibility tolerance");

  std::size_t max_n = 16;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Enumerate all supports");
  oracle_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  oracle_cmd->add_option("--tol", tol, "Feasibility tolerance");
  oracle_cmd->add_option("--max-n", max_n, "Largest n the enumeration accepts");

  CLI::App* linhull_cmd = app.add_subcommand("linhull", "Basis of the linear hull of U");
  linhull_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  linhull_cmd->add_option("--tol", tol, "Feasibility tolerance");

  std::string format = "lp";
  std::optional<double> big_m;
  std::string export_out;
  CLI::App* export_cmd = app.add_subcommand("export", "Write the big-M MILP as LP or MPS");
  export_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  export_cmd->add_option("--format", format, "lp or mps");
  export_cmd->add_option("--big-m", big_m, "Big-M constant (default scales with the data)");
  export_cmd->add_option("--out", export_out, "Output file (default stdout)");
  export_cmd->add_option("--tol", tol, "Feasibility tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*validate_cmd) return cmd_validate(instance_path, tol, out);
    if (*solve_cmd) return cmd_solve(instance_path, solve_flags, out);
    if (*verify_cmd) return cmd_verify(instance_path, policy_path, tol, out);
    if (*oracle_cmd) return cmd_oracle(instance_path, tol, max_n, out);
    if (*linhull_cmd) return cmd_linhull(instance_path, tol, out);
    if (*export_cmd) return cmd_export(instance_path, format, big_m, export_out, tol, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return e.is_input_error() ? kExitInputError : kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInputError;
}

}  // namespace aarlcp
