// pa_mincsp: command-line front end.
//
// Exit codes: 0 yes / pass, 1 no / unsat / fail, 2 usage or format error,
// 3 oracle guard exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pamincsp/boolean.hpp"
#include "pamincsp/clique.hpp"
#include "pamincsp/dispatch.hpp"
#include "pamincsp/gadgets.hpp"
#include "pamincsp/graph_problem.hpp"
#include "pamincsp/instance_io.hpp"
#include "pamincsp/oracle.hpp"
#include "pamincsp/parallel.hpp"
#include "pamincsp/pipeline.hpp"
#include "pamincsp/random.hpp"
#include "pamincsp/reductions.hpp"
#include "pamincsp/satisfiability.hpp"
#include "pamincsp/suites.hpp"

using namespace pamincsp;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

class UsageError : public Error {
public:
  using Error::Error;
};

std::string read_file(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw UsageError("cannot write " + path);
  out << text;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty())
      out.push_back(cur);
  return out;
}

RelationSet parse_relation_list(const std::string &s) {
  RelationSet out;
  for (const auto &tok : split(s, ',')) {
    auto rel = relation_from_token(tok);
    if (!rel)
      throw UsageError("unknown relation token '" + tok + "'");
    out.insert(*rel);
  }
  return out;
}

void print_assignment(const Instance &inst, const Assignment &a) {
  for (std::size_t v = 0; v < inst.num_variables(); ++v)
    std::cout << "assign " << inst.variables[v] << ' ' << a.rank[v] << '\n';
}

enum class Format { Instance, Graph, Clique };

/// The first keyword that only one format uses decides.
Format detect_format(const std::string &text) {
  for (const auto &line : text::tokenize(text)) {
    const auto &kw = line.tokens[0];
    if (kw == "part" || (kw == "edge" && line.tokens.size() == 3))
      return Format::Clique;
    if (kw == "arc" || kw == "edge" || kw == "pair" || kw == "problem")
      return Format::Graph;
    if (relation_from_token(kw))
      return Format::Instance;
  }
  return Format::Instance;
}

// ---------------------------------------------------------------- commands

int cmd_sat(const std::string &file) {
  Instance inst = parse_instance(read_file(file));
  auto a = check_satisfiable(inst);
  if (!a) {
    std::cout << "UNSAT\n";
    return kExitNo;
  }
  std::cout << "SAT\n";
  print_assignment(inst, *a);
  return kExitYes;
}

int cmd_solve(const std::string &file, const std::string &engine_tok, bool rational) {
  auto engine = engine_from_token(engine_tok);
  if (!engine)
    throw UsageError("unknown engine '" + engine_tok + "'");
  Instance inst = parse_instance(read_file(file));
  DispatchResult r = dispatch_solve(inst, *engine);
  for (const auto &note : r.notices)
    std::cerr << "note: " << note << '\n';
  std::cerr << "route: " << r.route << " (language " << language_class_name(r.language) << ")\n";
  if (r.status == SolveStatus::UnsatCrisp) {
    std::cout << "UNSAT-CRISP\n";
    return kExitNo;
  }
  if (r.status == SolveStatus::No) {
    std::cout << "NO\n";
    return kExitNo;
  }
  std::cout << "YES cost=" << r.solution.cost << " weight=" << r.solution.weight << '\n';
  for (ConstraintId id : r.solution.deleted)
    std::cout << "delete " << id << '\n';
  print_assignment(inst, r.assignment);
  if (rational)
    for (std::size_t v = 0; v < inst.num_variables(); ++v)
      std::cout << "value " << inst.variables[v] << ' ' << r.values[v].to_string() << '\n';
  return kExitYes;
}

int cmd_classify(const std::string &file, const std::string &relations) {
  RelationSet rels;
  if (!relations.empty())
    rels = parse_relation_list(relations);
  else if (!file.empty())
    rels = parse_instance(read_file(file)).relations();
  else
    throw UsageError("classify needs an instance file or --relations");
  std::cout << language_class_name(classify_language(rels)) << ' ' << rels.to_string() << '\n';
  return kExitYes;
}

int cmd_reduce(const std::string &file, const std::string &target) {
  Instance inst = parse_instance(read_file(file));
  auto kind = graph_problem_from_token(target);
  if (!kind)
    throw UsageError("unknown reduction target '" + target + "'");
  GraphEncoding enc;
  switch (*kind) {
  case GraphProblemKind::DFAS:
    enc = to_dfas(inst);
    break;
  case GraphProblemKind::EdgeMulticut:
    enc = to_edge_multicut(inst);
    break;
  case GraphProblemKind::SubsetDFAS:
    enc = to_subset_dfas(inst);
    break;
  case GraphProblemKind::DSMC:
    enc = to_dsmc(inst);
    break;
  }
  std::cout << serialize_graph_problem(enc.graph);
  for (std::size_t id = 0; id < enc.back.source.size(); ++id)
    std::cout << "# object " << id << " <- constraint " << enc.back.source[id] << '\n';
  return kExitYes;
}

/// --anchors "x,y+z": classes in increasing order separated by commas, members of
/// one class joined by '+'.
int cmd_booleanize(const std::string &file, const std::string &anchors) {
  Instance inst = parse_instance(read_file(file));
  if (!check_satisfiable(inst))
    throw PreconditionError("booleanize needs a satisfiable base instance");
  CompressedInstance ci;
  ci.base = inst;
  ci.cost_budget = inst.cost_budget;
  ci.weight_budget = inst.weight_budget;
  std::vector<bool> used(inst.num_variables(), false);
  for (const auto &cls : split(anchors, ',')) {
    std::vector<VarId> members;
    for (const auto &name : split(cls, '+')) {
      auto it = std::find(inst.variables.begin(), inst.variables.end(), name);
      if (it == inst.variables.end())
        throw UsageError("anchor '" + name + "' is not a variable of the instance");
      auto v = static_cast<VarId>(it - inst.variables.begin());
      if (used[static_cast<std::size_t>(v)])
        throw UsageError("anchor '" + name + "' appears twice");
      used[static_cast<std::size_t>(v)] = true;
      members.push_back(v);
    }
    std::sort(members.begin(), members.end());
    ci.anchors.push_back(members);
  }
  Booleanized b = booleanize(ci);
  std::cout << serialize_boolean_instance(b.instance, inst.variables);
  return kExitYes;
}

int cmd_oracle(const std::string &file) {
  const std::string text = read_file(file);
  switch (detect_format(text)) {
  case Format::Clique: {
    CliqueInstance g = parse_clique_instance(text);
    auto z = brute_force_multicolored_clique(g);
    if (!z) {
      std::cout << "NO\n";
      return kExitNo;
    }
    std::cout << "YES\n";
    for (int v : *z)
      std::cout << "clique " << g.names[static_cast<std::size_t>(v)] << '\n';
    return kExitYes;
  }
  case Format::Graph: {
    GraphProblemInstance g = parse_graph_problem(text);
    auto s = brute_force_graph_problem(g);
    if (!s) {
      std::cout << "NO\n";
      return kExitNo;
    }
    std::cout << "YES cost=" << s->cost << " weight=" << s->weight << '\n';
    for (int id : s->deleted)
      std::cout << "delete " << id << '\n';
    return kExitYes;
  }
  case Format::Instance:
    break;
  }
  Instance inst = parse_instance(text);
  auto s = brute_force_mincsp(inst);
  if (!s) {
    std::cout << "NO\n";
    return kExitNo;
  }
  std::cout << "YES cost=" << s->first.cost << " weight=" << s->first.weight << '\n';
  for (ConstraintId id : s->first.deleted)
    std::cout << "delete " << id << '\n';
  print_assignment(inst, s->second);
  return kExitYes;
}

int cmd_gadget_build(const std::string &file, const std::string &out, std::string map_path) {
  CliqueInstance g = parse_clique_instance(read_file(file));
  DsmcGadget gd = build_dsmc_from_clique(g);
  if (map_path.empty())
    map_path = (out.empty() || out == "-" ? (file == "-" ? std::string("gadget") : file) : out) + ".map";
  write_file(out, serialize_graph_problem(gd.dsmc));
  write_file(map_path, serialize_gadget_map(gd.map, gd.dsmc, g));
  std::cerr << "map written to " << map_path << '\n';
  return kExitYes;
}

int cmd_gadget_verify(const std::string &file) {
  CliqueInstance g = parse_clique_instance(read_file(file));
  DsmcGadget gd = build_dsmc_from_clique(g);
  const auto deletable = gd.dsmc.deletable_objects().size();
  const bool within_guards = deletable <= static_cast<std::size_t>(kMaxOracleObjects) &&
                             gd.map.budget() <= kMaxOracleBudget;
  auto cliques = all_multicolored_cliques(g);
  bool ok = true;
  for (const auto &z : cliques) {
    auto cut = clique_to_cut(gd.map, z);
    if (!verify_dsmc_solution(gd.dsmc, cut)) {
      ok = false;
      std::cout << "forward: a clique maps to an invalid cut\n";
    }
  }
  std::cout << "forward: " << cliques.size() << " cliques, "
            << (ok ? "all cuts valid" : "invalid cuts found") << '\n';
  if (within_guards) {
    auto cut = brute_force_dsmc(gd.dsmc);
    const bool same = cliques.empty() != static_cast<bool>(cut);
    std::cout << "equivalence: clique " << (cliques.empty() ? "no" : "yes") << ", cut "
              << (cut ? "size " + std::to_string(cut->size()) : std::string("none")) << ", "
              << (same ? "agree" : "DISAGREE") << '\n';
    ok = ok && same;
  } else {
    std::cout << "equivalence: skipped, " << deletable << " deletable arcs and budget "
              << gd.map.budget() << " exceed the exhaustive search limits\n";
  }
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitYes : kExitNo;
}

struct GenOptions {
  std::string kind = "instance";
  int vars = 5;
  int constraints = 8;
  std::string relations = "lt,eq,neq";
  double crisp_prob = 0.0;
  Weight max_weight = 1;
  std::int64_t k = 1;
  std::string w = "inf";
  bool self_loops = false;
  int parts = 2;
  int part_size = 2;
  double edge_prob = 0.5;
};

int cmd_gen(std::uint64_t seed, const GenOptions &o) {
  if (o.kind == "clique") {
    if (o.parts < 1 || o.part_size < 1)
      throw UsageError("parts and part size must be positive");
    std::cout << serialize_clique_instance(gen_random_clique_instance(seed, o.parts, o.part_size, o.edge_prob));
    return kExitYes;
  }
  if (o.kind != "instance")
    throw UsageError("unknown gen kind '" + o.kind + "'");
  RandomInstanceParams p;
  p.num_variables = o.vars;
  p.num_constraints = o.constraints;
  p.relations = parse_relation_list(o.relations);
  p.crisp_probability = o.crisp_prob;
  p.max_weight = o.max_weight;
  p.cost_budget = o.k;
  if (o.w != "inf")
    p.weight_budget = text::parse_int(o.w, 0, "weight budget");
  p.allow_self_loops = o.self_loops;
  std::cout << serialize_instance(gen_random_instance(seed, p));
  return kExitYes;
}

int cmd_bench(const std::string &suite, std::uint64_t seed, std::size_t count, bool deterministic) {
  const unsigned workers = worker_count(deterministic);
  SuiteReport r;
  if (suite == "pipeline-vs-oracle")
    r = suite_pipeline_vs_oracle(seed, count, workers);
  else if (suite == "boolean-vs-subsets")
    r = suite_boolean_vs_subsets(seed, count, workers);
  else if (suite == "reductions-roundtrip")
    r = suite_reductions_roundtrip(seed, count, workers);
  else if (suite == "gadget-k2n2")
    r = suite_gadget_k2n2(workers);
  else
    throw UsageError("unknown suite '" + suite +
                     "' (pipeline-vs-oracle, boolean-vs-subsets, reductions-roundtrip, gadget-k2n2)");
  for (const auto &c : r.cases)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.label << ": " << c.detail << '\n';
  std::printf("%s: %zu/%zu passed in %.2fs\n", r.name.c_str(), r.passed(), r.cases.size(), r.seconds);
  return r.all_passed() ? kExitYes : kExitNo;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact MinCSP solver toolkit for the point algebra {<,<=,=,!=}"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  bool deterministic = false;
  std::string engine = "auto";
  bool rational = false;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_flag("--deterministic", deterministic, "single worker, reproducible ordering");

  std::string file;
  auto *sat = app.add_subcommand("sat", "decide satisfiability treating all constraints as crisp");
  sat->add_option("file", file, "instance file ('-' for stdin)")->required();

  auto *solve_cmd = app.add_subcommand("solve", "exact minimum-cost solution");
  solve_cmd->add_option("file", file, "instance file")->required();
  solve_cmd->add_option("--engine", engine, "auto, pipeline or oracle")->capture_default_str();
  solve_cmd->add_flag("--rational", rational, "also print exact rational values");

  std::string relations;
  auto *classify = app.add_subcommand("classify", "complexity class of a language");
  classify->add_option("file", file, "instance file");
  classify->add_option("--relations", relations, "comma-separated relation tokens");

  std::string target;
  auto *reduce = app.add_subcommand("reduce", "encode an instance as a graph problem");
  reduce->add_option("file", file, "instance file")->required();
  reduce->add_option("--to", target, "dfas, multicut, subset-dfas or dsmc")->required();

  std::string anchors;
  auto *booleanize_cmd = app.add_subcommand("booleanize", "print the Boolean encoding of a compressed instance");
  booleanize_cmd->add_option("file", file, "satisfiable instance over {lt,eq,neq}")->required();
  booleanize_cmd->add_option("--anchors", anchors, "anchor classes in increasing order, e.g. x,y+z");

  auto *oracle = app.add_subcommand("oracle", "exhaustive solver for any of the three formats");
  oracle->add_option("file", file, "instance, graph problem or clique file")->required();

  std::string out_path, map_path;
  auto *gadget = app.add_subcommand("gadget", "clique to directed symmetric multicut");
  gadget->require_subcommand(1);
  auto *gbuild = gadget->add_subcommand("build", "emit the DSMC instance and its map file");
  gbuild->add_option("file", file, "clique file")->required();
  gbuild->add_option("-o,--out", out_path, "DSMC output path (default stdout)");
  gbuild->add_option("--map", map_path, "map output path (default <out or input>.map)");
  auto *gverify = gadget->add_subcommand("verify", "check the reduction on one clique instance");
  gverify->add_option("file", file, "clique file")->required();

  GenOptions gen_opts;
  auto *gen = app.add_subcommand("gen", "seeded random instance");
  gen->add_option("--kind", gen_opts.kind, "instance or clique")->capture_default_str();
  gen->add_option("--vars", gen_opts.vars)->capture_default_str();
  gen->add_option("--constraints", gen_opts.constraints)->capture_default_str();
  gen->add_option("--relations", gen_opts.relations)->capture_default_str();
  gen->add_option("--crisp-prob", gen_opts.crisp_prob)->capture_default_str();
  gen->add_option("--max-weight", gen_opts.max_weight)->capture_default_str();
  gen->add_option("--k", gen_opts.k)->capture_default_str();
  gen->add_option("--w", gen_opts.w, "weight budget or inf")->capture_default_str();
  gen->add_flag("--self-loops", gen_opts.self_loops);
  gen->add_option("--parts", gen_opts.parts)->capture_default_str();
  gen->add_option("--part-size", gen_opts.part_size)->capture_default_str();
  gen->add_option("--edge-prob", gen_opts.edge_prob)->capture_default_str();

  std::string suite;
  std::size_t count = 100;
  auto *bench = app.add_subcommand("bench", "run a randomized verification suite");
  bench->add_option("suite", suite,
                    "pipeline-vs-oracle, boolean-vs-subsets, reductions-roundtrip or gadget-k2n2")
      ->required();
  bench->add_option("--count", count, "cases (per reduction for reductions-roundtrip)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sat)
      return cmd_sat(file);
    if (*solve_cmd)
      return cmd_solve(file, engine, rational);
    if (*classify)
      return cmd_classify(file, relations);
    if (*reduce)
      return cmd_reduce(file, target);
    if (*booleanize_cmd)
      return cmd_booleanize(file, anchors);
    if (*oracle)
      return cmd_oracle(file);
    if (*gbuild)
      return cmd_gadget_build(file, out_path, map_path);
    if (*gverify)
      return cmd_gadget_verify(file);
    if (*gen)
      return cmd_gen(seed, gen_opts);
    if (*bench)
      return cmd_bench(suite, seed, count, deterministic);
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GuardExceeded &e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
