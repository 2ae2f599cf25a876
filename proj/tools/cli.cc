// Copyright 2026 The netbargain Authors
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


#include "cli.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "netbargain/balanced.h"
#include "netbargain/error.h"
#include "netbargain/generate.h"
#include "netbargain/io.h"
#include "netbargain/matching.h"
#include "netbargain/nucleolus.h"
#include "netbargain/oracle.h"
#include "netbargain/stable.h"

namespace netbargain::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string Hex(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

Rational ParseTolerance(const std::string& text) {
  auto value = ParseDecimalOrRational(text);
  if (!value || sgn(*value) < 0) {
    throw Error(ErrorCode::kInvalidParams, "tolerance '" + text + "' is not a nonnegative rational");
  }
  return *value;
}

Json Members(const Instance& inst, Coalition s) {
  Json ids = Json::array();
  for (AgentIndex a : s.Members()) ids.push_back(inst.id(a));
  return ids;
}

Json AllocationJson(const Instance& inst, const Allocation& x) {
  Json body = Json::object();
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) body[inst.id(a)] = FormatRational(x[a]);
  return body;
}

Json EdgeRef(const Instance& inst, EdgeIndex e) {
  const Edge& edge = inst.edge(e);
  return {{"u", inst.id(edge.u)}, {"v", inst.id(edge.v)}};
}

Json OutcomeJson(const Instance& inst, const Outcome& outcome) {
  Json contracts = Json::array();
  for (const Contract& c : outcome.contracts) {
    const Edge& e = inst.edge(c.edge);
    contracts.push_back({{"u", inst.id(e.u)},
                         {"v", inst.id(e.v)},
                         {"w", FormatRational(e.weight)},
                         {"share_u", FormatRational(c.share_u)},
                         {"share_v", FormatRational(c.share_v)}});
  }
  return {{"contracts", contracts}, {"earnings", AllocationJson(inst, Earnings(inst, outcome))}};
}

Json CertificateJson(const Instance& inst, const NonexistenceCertificate& cert) {
  Json witness = Json::array();
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (sgn(cert.fractional_witness[e]) == 0) continue;
    Json entry = EdgeRef(inst, e);
    entry["chi"] = FormatRational(cert.fractional_witness[e]);
    witness.push_back(entry);
  }
  return {{"lp_value", FormatRational(cert.lp_value)},
          {"ip_value", FormatRational(cert.ip_value)},
          {"fractional_witness", witness}};
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool timing = false;
};

class Report {
 public:
  Report(const std::string& command, const Instance* inst) {
    doc_["command"] = command;
    if (inst) {
      doc_["instance_hash"] = Hex(inst->Fingerprint());
      doc_["instance"] = Json::parse(SerializeInstance(*inst));
    }
  }
  Json& result() { return doc_["result"]; }
  Json& doc() { return doc_; }

  void Emit(const Context& ctx, std::chrono::steady_clock::time_point start) {
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    if (ctx.timing) doc_["wall_time_ms"] = elapsed.count();
    ctx.out << doc_.dump(2) << "\n";
    ctx.err << "netbargain " << doc_["command"].get<std::string>() << ": done in " << elapsed.count()
            << " ms\n";
  }

 private:
  Json doc_;
};

int RunStable(const Context& ctx, const std::string& file, int edge_limit) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = ParseInstance(ReadInput(file));
  Report report("stable", &inst);
  const StableResult found = FindStable(inst, edge_limit);
  int code = kExitOk;
  if (const auto* outcome = std::get_if<Outcome>(&found)) {
    report.result() = {{"status", "stable"}, {"outcome", OutcomeJson(inst, *outcome)}};
  } else {
    report.result() = {{"status", "nonexistent"},
                       {"certificate", CertificateJson(inst, std::get<NonexistenceCertificate>(found))}};
    code = kExitNonexistence;
  }
  report.Emit(ctx, start);
  return code;
}

int RunBalanced(const Context& ctx, const std::string& file, const DynamicsOptions& options,
                int edge_limit) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = ParseInstance(ReadInput(file));
  Report report("balanced", &inst);
  const StableResult found = FindStable(inst, edge_limit);
  if (const auto* cert = std::get_if<NonexistenceCertificate>(&found)) {
    report.result() = {{"status", "nonexistent"}, {"certificate", CertificateJson(inst, *cert)}};
    report.Emit(ctx, start);
    return kExitNonexistence;
  }
  const Outcome& initial = std::get<Outcome>(found);
  const DynamicsResult run = BalanceDynamics(inst, initial, options);
  Json trace = Json::array();
  for (const TransferRecord& t : run.trace) {
    Json step = {{"round", t.round}};
    step["edge"] = EdgeRef(inst, t.edge);
    step["from"] = inst.id(t.from);
    step["to"] = inst.id(t.to);
    step["amount"] = FormatRational(t.amount);
    step["epsilon"] = FormatRational(t.epsilon);
    trace.push_back(step);
  }
  const BalanceReport balance = IsBalanced(inst, run.outcome, options.tol);
  report.result() = {{"status", run.converged ? "converged" : "no_convergence"},
                     {"tol", FormatRational(options.tol)},
                     {"schedule", options.schedule == Schedule::kMaxImbalance ? "max" : "roundrobin"},
                     {"initial_outcome", OutcomeJson(inst, initial)},
                     {"initial_epsilon", FormatRational(run.initial_epsilon)},
                     {"outcome", OutcomeJson(inst, run.outcome)},
                     {"epsilon", FormatRational(balance.epsilon)},
                     {"rounds", run.trace.size()},
                     {"trace", trace}};
  report.Emit(ctx, start);
  return run.converged ? kExitOk : kExitNoConvergence;
}

int RunNucleolus(const Context& ctx, const std::string& file, std::string method) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = ParseInstance(ReadInput(file));
  Report report("nucleolus", &inst);
  if (method.empty()) method = inst.mode() == Mode::kConstrainedBipartite ? "pruned" : "brute";
  const NucleolusResult result =
      method == "pruned" ? NucleolusPruned(inst) : NucleolusBruteforceDetailed(inst);
  Json levels = Json::array();
  for (const Level& level : result.levels) {
    Json fixed = Json::array();
    for (Coalition s : level.fixed) fixed.push_back(Members(inst, s));
    levels.push_back({{"epsilon", FormatRational(level.epsilon)}, {"fixed", fixed}});
  }
  report.result() = {{"method", method},
                     {"allocation", AllocationJson(inst, result.allocation)},
                     {"levels", levels},
                     {"lp_solves", result.lp_solves},
                     {"rows_generated", result.rows_generated}};
  report.Emit(ctx, start);
  return kExitOk;
}

int RunCoreCheck(const Context& ctx, const std::string& file, const std::string& alloc) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = ParseInstance(ReadInput(file));
  const Allocation x = ParseAllocation(ReadInput(alloc), inst);
  Report report("core-check", &inst);
  const CoreReport core = CoreMembership(inst, x);
  Json& r = report.result();
  r["allocation"] = AllocationJson(inst, x);
  r["in_core"] = core.in_core;
  r["efficient"] = core.efficient;
  r["witness"] = core.witness ? Members(inst, *core.witness) : Json(nullptr);
  r["deficiency"] = FormatRational(core.deficiency);
  report.Emit(ctx, start);
  return kExitOk;
}

int RunPrekernelCheck(const Context& ctx, const std::string& file, const std::string& alloc,
                      const Rational& tol) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = ParseInstance(ReadInput(file));
  const Allocation x = ParseAllocation(ReadInput(alloc), inst);
  Report report("prekernel-check", &inst);
  const PrekernelReport pk = IsPrekernel(inst, x, tol);
  Json& r = report.result();
  r["allocation"] = AllocationJson(inst, x);
  r["tol"] = FormatRational(tol);
  r["in_prekernel"] = pk.in_prekernel;
  r["worst_pair"] = pk.worst_pair ? Json::array({inst.id(pk.worst_pair->first), inst.id(pk.worst_pair->second)})
                                  : Json(nullptr);
  r["worst_gap"] = FormatRational(pk.worst_gap);
  report.Emit(ctx, start);
  return kExitOk;
}

int RunOracle(const Context& ctx, const std::string& file, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = ParseInstance(ReadInput(file));
  Report report("oracle", &inst);
  const oracle::GameTable table = oracle::BuildGameTable(inst, jobs);
  Json coalitions = Json::array();
  for (std::uint64_t s = 0; s < table.values.size(); ++s) {
    coalitions.push_back({{"members", Members(inst, Coalition(s))},
                          {"value", FormatRational(table.values[s])}});
  }
  const oracle::CoreLpResult core = oracle::CoreLpFull(table);
  Json core_json = {{"empty", core.empty}, {"min_total", FormatRational(core.min_total)}};
  if (core.empty) {
    Json cert = Json::array();
    for (const auto& [s, weight] : core.certificate) {
      cert.push_back({{"members", Members(inst, s)}, {"weight", FormatRational(weight)}});
    }
    core_json["certificate"] = cert;
  } else {
    core_json["witness"] = AllocationJson(inst, core.witness);
  }
  Json& r = report.result();
  r["game_table"] = coalitions;
  r["core"] = core_json;
  r["nucleolus_reference"] = inst.num_agents() <= oracle::kReferenceNucleolusLimit
                                 ? AllocationJson(inst, oracle::NucleolusReference(table))
                                 : Json(nullptr);
  report.Emit(ctx, start);
  return kExitOk;
}

int RunGap(const Context& ctx, const std::string& file, int edge_limit) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = ParseInstance(ReadInput(file));
  Report report("gap", &inst);
  const IntegralityReport gap = ComputeIntegralityReport(inst, edge_limit);
  Json edges = Json::array();
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    Json entry = EdgeRef(inst, e);
    entry["chi"] = FormatRational(gap.lp_primal[e]);
    entry["z"] = FormatRational(gap.z[e]);
    edges.push_back(entry);
  }
  Json matching = Json::array();
  for (EdgeIndex e : gap.ip_matching) matching.push_back(EdgeRef(inst, e));
  report.result() = {{"lp_value", FormatRational(gap.lp_value)},
                     {"ip_value", FormatRational(gap.ip_value)},
                     {"integral", gap.integral},
                     {"edges", edges},
                     {"y", AllocationJson(inst, gap.y)},
                     {"ip_matching", matching}};
  report.Emit(ctx, start);
  return kExitOk;
}

int RunGen(const Context& ctx, const GenerateParams& params, const std::string& density) {
  const auto start = std::chrono::steady_clock::now();
  GenerateParams p = params;
  auto parsed = ParseDecimalOrRational(density);
  if (!parsed) throw Error(ErrorCode::kInvalidParams, "density '" + density + "' is not a number");
  p.density = *parsed;
  const Instance inst = Generate(p);
  Report report("gen", &inst);
  Json& r = report.result();
  r["prng"] = "splitmix64";
  r["seed"] = p.seed;
  r["params"] = {{"mode", std::string(ModeName(p.mode))},
                 {"na", p.num_a},
                 {"nb", p.num_b},
                 {"n", p.num_agents},
                 {"cap_min", p.capacity_min},
                 {"cap_max", p.capacity_max},
                 {"w_min", p.weight_min},
                 {"w_max", p.weight_max},
                 {"density", FormatRational(p.density)}};
  report.Emit(ctx, start);
  return kExitOk;
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Network bargaining solver: stable, balanced, core, prekernel and nucleolus"};
  app.name("netbargain");
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{out, err};
  app.add_flag("--timing", ctx.timing, "Include wall time in the report");

  std::string file;
  std::string alloc;
  std::string tol_text;
  int edge_limit = kDefaultExactEdgeLimit;
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "Instance JSON ('-' for stdin)")->required();
    sub->add_option("--edge-limit", edge_limit, "Exact b-matching search guard")
        ->check(CLI::PositiveNumber);
  };

  auto* stable = app.add_subcommand("stable", "Find a stable outcome or certify none exists");
  add_file(stable);

  auto* balanced = app.add_subcommand("balanced", "Stable outcome followed by balancing dynamics");
  add_file(balanced);
  DynamicsOptions dyn;
  std::string schedule = "max";
  balanced->add_option("--tol", tol_text, "Balance tolerance, p/q or decimal");
  balanced->add_option("--max-rounds", dyn.max_rounds, "Transfer limit")->check(CLI::NonNegativeNumber);
  balanced->add_option("--schedule", schedule, "Edge selection")
      ->check(CLI::IsMember({"max", "roundrobin"}));

  auto* nucleolus = app.add_subcommand("nucleolus", "Compute the nucleolus");
  add_file(nucleolus);
  std::string method;
  nucleolus->add_option("--method", method, "pruned (ConstrainedBipartite) or brute")
      ->check(CLI::IsMember({"pruned", "brute"}));

  auto* core_check = app.add_subcommand("core-check", "Test core membership of an allocation");
  add_file(core_check);
  core_check->add_option("--alloc", alloc, "Allocation JSON")->required();

  auto* pk_check = app.add_subcommand("prekernel-check", "Test prekernel membership of an allocation");
  add_file(pk_check);
  pk_check->add_option("--alloc", alloc, "Allocation JSON")->required();
  pk_check->add_option("--tol", tol_text, "Surplus tolerance, p/q or decimal");

  auto* oracle_cmd = app.add_subcommand("oracle", "Dump the game table and reference solutions");
  add_file(oracle_cmd);
  int jobs = 1;
  oracle_cmd->add_option("--jobs", jobs, "Threads for table construction")->check(CLI::PositiveNumber);

  auto* gap = app.add_subcommand("gap", "Integrality report of the b-matching relaxation");
  add_file(gap);

  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  GenerateParams params;
  std::string mode_text = "ConstrainedBipartite";
  std::string density = "1";
  gen->add_option("--mode", mode_text, "GeneralUnitCap, BipartiteCap or ConstrainedBipartite")
      ->check(CLI::IsMember({"GeneralUnitCap", "BipartiteCap", "ConstrainedBipartite"}));
  gen->add_option("--na", params.num_a, "A-side agents");
  gen->add_option("--nb", params.num_b, "B-side agents");
  gen->add_option("--n", params.num_agents, "Agents (GeneralUnitCap)");
  gen->add_option("--cap-min", params.capacity_min, "Minimum capacity");
  gen->add_option("--cap-max", params.capacity_max, "Maximum capacity");
  gen->add_option("--w-min", params.weight_min, "Minimum integer weight");
  gen->add_option("--w-max", params.weight_max, "Maximum integer weight");
  gen->add_option("--density", density, "Edge probability, p/q or decimal");
  gen->add_option("--seed", params.seed, "64-bit seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "netbargain: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (stable->parsed()) return RunStable(ctx, file, edge_limit);
    if (balanced->parsed()) {
      if (!tol_text.empty()) dyn.tol = ParseTolerance(tol_text);
      dyn.schedule = schedule == "max" ? Schedule::kMaxImbalance : Schedule::kRoundRobin;
      return RunBalanced(ctx, file, dyn, edge_limit);
    }
    if (nucleolus->parsed()) return RunNucleolus(ctx, file, method);
    if (core_check->parsed()) return RunCoreCheck(ctx, file, alloc);
    if (pk_check->parsed()) {
      return RunPrekernelCheck(ctx, file, alloc, tol_text.empty() ? Rational(0) : ParseTolerance(tol_text));
    }
    if (oracle_cmd->parsed()) return RunOracle(ctx, file, jobs);
    if (gap->parsed()) return RunGap(ctx, file, edge_limit);
    if (gen->parsed()) {
      params.mode = *ParseMode(mode_text);
      return RunGen(ctx, params, density);
    }
  } catch (const Error& e) {
    err << "netbargain: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "netbargain: internal error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace netbargain::cli
