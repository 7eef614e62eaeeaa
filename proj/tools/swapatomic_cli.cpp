// Command-line front end. Exit codes: 0 yes/valid/true, 1 no/invalid/false,
// 2 inconclusive, 3 an honest party ended unacceptable, 64 input error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "swapatomic/atomicity.hpp"
#include "swapatomic/fixtures.hpp"
#include "swapatomic/protocol.hpp"
#include "swapatomic/reductions.hpp"
#include "swapatomic/report.hpp"

namespace fs = std::filesystem;
using namespace swapatomic;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUnsafe = 3;
constexpr int kExitInput = 64;

struct InputError : Error {
  using Error::Error;
};

struct Loaded {
  SwapSystem system;
  FrozenArcs hints;
};

Loaded load(const std::string& path, unsigned max_degree) {
  if (!fs::exists(path)) throw InputError("no such file: " + path);
  const auto text = read_text_file(path);
  ParseOptions options;
  options.limits.max_total_degree = max_degree;
  Loaded l{parse_swap_system(text, options), {}};
  l.hints = parse_search_hints(text, l.system.digraph());
  return l;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

int exit_for(Decision d) {
  switch (d) {
    case Decision::kYes: return kExitYes;
    case Decision::kNo: return kExitNo;
    case Decision::kInconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

struct DecideFlags {
  bool no_hints = false;
  bool exhaustive = false;
  bool literal = false;
  bool full_h_scope = false;
  double time_budget = 0;
  unsigned jobs = 1;
};

void add_decide_flags(CLI::App* cmd, DecideFlags& f) {
  cmd->add_flag("--no-hints", f.no_hints, "ignore search_hints stored in the file");
  cmd->add_flag("--exhaustive", f.exhaustive, "naive double enumeration, no pruning (small systems only)");
  cmd->add_flag("--literal", f.literal, "decide on the first G passing connectivity and domination of D");
  cmd->add_flag("--full-h-scope", f.full_h_scope, "let H contain vertices without arcs");
  cmd->add_option("--time-budget", f.time_budget, "seconds before giving up as inconclusive (0 = none)");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
}

SearchConfig config_from(const DecideFlags& f, const FrozenArcs& hints) {
  SearchConfig c;
  if (!f.no_hints) c.frozen = hints;
  if (f.exhaustive) c.mode = SearchMode::kExhaustive;
  if (f.literal) c.mode = SearchMode::kLiteral;
  if (f.full_h_scope) c.h_scope = HScope::kFull;
  if (f.time_budget > 0) c.time_budget_seconds = f.time_budget;
  c.jobs = f.jobs;
  return c;
}

std::string arcs_text(const SwapDigraph& d, const std::vector<ArcIndex>& arcs) {
  std::string out;
  for (auto a : arcs) out += (out.empty() ? "" : " ") + ("(" + d.id(d.arc(a).from) + "," + d.id(d.arc(a).to) + ")");
  return out.empty() ? "(none)" : out;
}

// witness | full | file:PATH with {"arcs": [[from, to], ...]}.
Subgraph resolve_subgraph(const Loaded& l, const std::string& spec, const DecideFlags& flags) {
  const auto& d = l.system.digraph();
  if (spec == "full") return Subgraph::full(d);
  if (spec == "witness") {
    const auto verdict = decide_atomic(l.system, config_from(flags, l.hints));
    if (verdict.decision != Decision::kYes) {
      throw InputError("no witness: the system decides " + to_string(verdict.decision));
    }
    return *verdict.witness;
  }
  if (spec.rfind("file:", 0) == 0) {
    const auto path = spec.substr(5);
    if (!fs::exists(path)) throw InputError("no such file: " + path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    std::vector<std::pair<std::string, std::string>> arcs;
    try {
      for (const auto& pair : doc.at("arcs")) arcs.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": expected {\"arcs\": [[from, to], ...]}: " + e.what());
    }
    return arcs_by_name(l.system, arcs, true);
  }
  throw InputError("--subgraph must be witness, full or file:PATH");
}

int cmd_decide(const std::string& path, const DecideFlags& flags, unsigned max_degree, bool json,
               const std::string& out_path, bool verify) {
  const auto l = load(path, max_degree);
  const auto verdict = decide_atomic(l.system, config_from(flags, l.hints));
  const auto& d = l.system.digraph();
  const auto report = serialize_verdict(l.system, verdict);
  if (!out_path.empty()) write_file(out_path, report);
  if (json) {
    std::cout << report << '\n';
  } else {
    std::cout << "decision: " << to_string(verdict.decision) << '\n'
              << "arcs: " << d.arc_count() << "  generators: " << l.system.generator_count() << '\n';
    if (verdict.witness) {
      std::cout << "witness: " << arcs_text(d, verdict.witness->arc_list()) << '\n' << "sccs:";
      for (const auto& comp : component_ids(d, verdict.sccs)) {
        std::cout << " {";
        for (std::size_t i = 0; i < comp.size(); ++i) std::cout << (i ? "," : "") << comp[i];
        std::cout << '}';
      }
      std::cout << '\n';
    }
    std::cout << "G candidates: " << verdict.stats.g_candidates << "  passing c.1+c.2: " << verdict.stats.g_passing
              << "  H candidates: " << verdict.stats.h_candidates << '\n'
              << "time: " << std::fixed << std::setprecision(3) << verdict.stats.elapsed_seconds << " s\n";
  }
  if (verify && verdict.witness) {
    const auto check = verify_witness(l.system, *verdict.witness);
    std::cerr << "verify_witness: " << (check.ok() ? "ok" : "FAILED") << (check.exhaustive_h ? " (listed every H)" : "")
              << '\n';
    if (!check.ok()) return kExitInconclusive;
  }
  return exit_for(verdict.decision);
}

int cmd_simulate(const std::string& path, const std::string& subgraph, const std::string& strategy,
                 std::uint64_t seed, int rounds, int delta, bool stop_when_paid, const std::string& out_path,
                 bool json, const DecideFlags& flags) {
  const auto l = load(path, 0);
  const auto g = resolve_subgraph(l, subgraph, flags);
  SimConfig config;
  config.seed = seed;
  config.max_rounds = rounds;
  config.delta = delta;
  config.keep_propagating = !stop_when_paid;
  const auto report = run_protocol(l.system, g, parse_strategy_spec(l.system.digraph(), strategy), config);
  const auto doc = serialize_sim_report(l.system, report);
  if (!out_path.empty()) write_file(out_path, doc);
  std::cout << (json ? doc + "\n" : render_sim_report(l.system, report));
  for (VertexIndex v = 0; v < l.system.digraph().vertex_count(); ++v) {
    if (report.honest(v) && !report.acceptable[v]) {
      std::cerr << "safety alarm: honest party " << l.system.digraph().id(v) << " ended unacceptable\n";
      return kExitUnsafe;
    }
  }
  return 0;
}

int cmd_reduce(const std::string& kind, const std::string& path, std::string out_path, std::string gadget_path,
               bool normalize, bool keep_unused_arcs, bool printed_s_pair, bool no_pad, bool a_to_z) {
  if (!fs::exists(path)) throw InputError("no such file: " + path);
  const auto text = read_text_file(path);
  Reduction r;
  if (kind == "cnf") {
    CnfReductionOptions o;
    o.detach_unused_literals = !keep_unused_arcs;
    o.printed_s_pair = printed_s_pair;
    r = cnf_to_swap(parse_dimacs(text), o);
  } else if (kind == "eadnf") {
    auto f = parse_eadnf(text);
    if (normalize) f = dnf1x_normalize(f);
    EadnfReductionOptions o;
    o.pad_unused_x_literals = !no_pad;
    o.arcs_from_a_to_z = a_to_z;
    r = eadnf1x_to_swap(f, o);
  } else {
    throw InputError("reduce: kind must be cnf or eadnf");
  }
  if (out_path.empty()) out_path = fs::path(path).replace_extension(".json").string();
  if (gadget_path.empty()) gadget_path = fs::path(out_path).replace_extension(".gadgets.json").string();
  write_file(out_path, serialize_swap_system(r.system, r.gadgets.hints));
  write_file(gadget_path, serialize_gadget_map(r.system.digraph(), r.gadgets));
  std::cout << "wrote " << out_path << ": " << r.system.digraph().vertex_count() << " vertices, "
            << r.system.digraph().arc_count() << " arcs, " << r.system.generator_count() << " generators, "
            << r.gadgets.hints.in.size() << " arcs frozen in, " << r.gadgets.hints.out.size() << " frozen out\n"
            << "wrote " << gadget_path << '\n';
  for (const auto& note : r.gadgets.notes) std::cout << "note: " << note << '\n';
  return 0;
}

const char* const kExpected[] = {"yes", "no", "yes", "no", "no"};

int cmd_bench(const std::string& dir, int repeats, const DecideFlags& flags) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  if (repeats < 1) throw InputError("--repeats must be at least 1");
  std::cout << std::left << std::setw(8) << "system" << std::setw(14) << "runtime (s)" << std::setw(6) << "arcs"
            << std::setw(13) << "preferences" << std::setw(11) << "protocol?" << "expected\n";
  bool all_match = true;
  for (int i = 1; i <= 5; ++i) {
    const auto path = (fs::path(dir) / ("s" + std::to_string(i) + ".json")).string();
    if (!fs::exists(path)) throw InputError("missing fixture " + path);
    const auto l = load(path, 0);
    double total = 0;
    Decision decision = Decision::kNo;
    for (int r = 0; r < repeats; ++r) {
      const auto verdict = decide_atomic(l.system, config_from(flags, l.hints));
      total += verdict.stats.elapsed_seconds;
      decision = verdict.decision;
    }
    const bool match = to_string(decision) == kExpected[i - 1];
    all_match = all_match && match;
    std::ostringstream time;
    time << std::fixed << std::setprecision(4) << total / repeats;
    std::cout << std::setw(8) << ("S" + std::to_string(i)) << std::setw(14) << time.str() << std::setw(6)
              << l.system.digraph().arc_count() << std::setw(13) << l.system.generator_count() << std::setw(11)
              << to_string(decision) << kExpected[i - 1] << (match ? "" : "  MISMATCH") << '\n';
  }
  return all_match ? 0 : kExitNo;
}

int cmd_fixtures(const std::string& dir) {
  fs::create_directories(dir);
  for (int i = 1; i <= 5; ++i) {
    write_file((fs::path(dir) / ("s" + std::to_string(i) + ".json")).string(), serialize_swap_system(fixture(i)));
  }
  write_file((fs::path(dir) / "fig4.json").string(), serialize_swap_system(figure4_h_swap()));
  std::cout << "wrote s1..s5 and fig4 to " << dir << '\n';
  return 0;
}

int cmd_validate(const std::string& path, unsigned max_degree) {
  const auto l = load(path, max_degree);
  const auto violations = validate_system(l.system);
  for (const auto& v : violations) std::cout << (v.vertex.empty() ? "digraph" : v.vertex) << ": " << v.message << '\n';
  if (violations.empty()) std::cout << "valid\n";
  return violations.empty() ? 0 : kExitNo;
}

int cmd_oracle(const std::string& kind, const std::string& path) {
  if (!fs::exists(path)) throw InputError("no such file: " + path);
  const auto text = read_text_file(path);
  bool value = false;
  if (kind == "cnf") {
    value = sat_bruteforce(parse_dimacs(text));
    std::cout << (value ? "satisfiable" : "unsatisfiable") << '\n';
  } else if (kind == "eadnf") {
    value = eadnf_bruteforce(parse_eadnf(text));
    std::cout << (value ? "true" : "false") << '\n';
  } else {
    throw InputError("oracle: kind must be cnf or eadnf");
  }
  return value ? 0 : kExitNo;
}

int cmd_coalition(const std::string& path, const std::string& subgraph, const std::string& members,
                  const std::string& side_deal, const DecideFlags& flags) {
  const auto l = load(path, 0);
  const auto& d = l.system.digraph();
  const auto g = resolve_subgraph(l, subgraph, flags);
  std::vector<VertexIndex> coalition;
  std::stringstream items(members);
  for (std::string id; std::getline(items, id, ',');) {
    const auto v = d.find(id);
    if (!v) throw InputError("unknown vertex '" + id + "'");
    coalition.push_back(*v);
  }
  std::vector<CoalitionReport> reports;
  if (side_deal == "all") {
    reports = coalition_deviation_search(l.system, g, coalition);
  } else {
    std::vector<ArcIndex> arcs;
    std::stringstream pairs(side_deal);
    for (std::string pair; std::getline(pairs, pair, ',');) {
      const auto colon = pair.find(':');
      const auto from = d.find(pair.substr(0, colon));
      const auto to = colon == std::string::npos ? std::nullopt : d.find(pair.substr(colon + 1));
      const auto a = from && to ? d.find_arc(*from, *to) : std::nullopt;
      if (!a) throw InputError("side deal item '" + pair + "' is not an arc from:to");
      arcs.push_back(*a);
    }
    reports.push_back(coalition_deviation_demo(l.system, g, coalition, arcs));
  }
  bool any = false;
  for (const auto& r : reports) {
    std::cout << "side deal " << arcs_text(d, r.side_deal) << (r.strict_improvement ? "  STRICT IMPROVEMENT" : "")
              << '\n';
    for (const auto& m : r.members) {
      std::cout << "  " << std::left << std::setw(8) << d.id(m.vertex) << "honest " << std::setw(16)
                << format_outcome(d, m.baseline) << "achieved " << std::setw(16) << format_outcome(d, m.achieved)
                << "honest vs achieved: " << to_string(m.vs_baseline) << '\n';
    }
    any = any || r.strict_improvement;
  }
  return any ? 0 : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide, simulate and reduce generalized cross-chain swap systems"};
  app.require_subcommand(1);
  unsigned max_degree = 0;
  DecideFlags flags;

  auto* decide = app.add_subcommand("decide", "decide whether a system has an atomic swap protocol");
  std::string decide_path, decide_out;
  bool decide_json = false, decide_verify = false;
  decide->add_option("system", decide_path, "system file")->required();
  add_decide_flags(decide, flags);
  decide->add_option("--max-degree", max_degree, "reject vertices with din+dout above this");
  decide->add_flag("--json", decide_json, "print the verdict report document");
  decide->add_option("-o,--out", decide_out, "also write the verdict report here");
  decide->add_flag("--verify", decide_verify, "recheck a yes verdict with verify_witness");

  auto* simulate = app.add_subcommand("simulate", "run the hashed-timelock protocol on a subgraph");
  std::string sim_path, sim_subgraph = "witness", sim_strategy = "all-honest", sim_out;
  std::uint64_t sim_seed = 1;
  int sim_rounds = 0, sim_delta = 1;
  bool sim_stop = false, sim_json = false;
  simulate->add_option("system", sim_path, "system file")->required();
  simulate->add_option("--subgraph", sim_subgraph, "witness, full or file:PATH");
  simulate->add_option("--strategy", sim_strategy, "all-honest or id=honest|silent|random[:p],...");
  simulate->add_option("--seed", sim_seed, "seed for secrets and random strategies");
  simulate->add_option("--rounds", sim_rounds, "stop after this many rounds (0 = until locks resolve)");
  simulate->add_option("--delta", sim_delta, "rounds per protocol step")->check(CLI::PositiveNumber);
  simulate->add_flag("--stop-when-paid", sim_stop, "honest parties stop forwarding once all assets arrived");
  simulate->add_flag("--json", sim_json, "print the report document instead of the table");
  simulate->add_option("-o,--out", sim_out, "write the report document here");
  add_decide_flags(simulate, flags);

  auto* reduce = app.add_subcommand("reduce", "build a swap system from a formula");
  std::string red_kind, red_path, red_out, red_gadgets;
  bool red_normalize = false, red_keep = false, red_printed = false, red_no_pad = false, red_a_to_z = false;
  reduce->add_option("kind", red_kind, "cnf or eadnf")->required()->check(CLI::IsMember({"cnf", "eadnf"}));
  reduce->add_option("formula", red_path, "DIMACS or exists/forall DNF file")->required();
  reduce->add_option("-o,--out", red_out, "system file to write");
  reduce->add_option("--gadgets", red_gadgets, "gadget map file to write");
  reduce->add_flag("--normalize", red_normalize, "eadnf: rewrite into one-x-literal form first");
  reduce->add_flag("--keep-unused-literal-arcs", red_keep, "cnf: keep (s_i, literal) for literals in no clause");
  reduce->add_flag("--printed-s-pair", red_printed, "cnf: use <b,t|t,nx> in s_i's first pair");
  reduce->add_flag("--no-pad", red_no_pad, "eadnf: do not pad x-literals that occur in no term");
  reduce->add_flag("--a-to-z-arcs", red_a_to_z, "eadnf: add arcs from a to the z vertices");

  auto* bench = app.add_subcommand("bench", "time the five benchmark systems");
  std::string bench_dir;
  int bench_repeats = 10;
  bench->add_option("dir", bench_dir, "directory holding s1.json .. s5.json")->required();
  bench->add_option("--repeats", bench_repeats, "runs per system");
  add_decide_flags(bench, flags);

  auto* fixtures = app.add_subcommand("fixtures", "write the benchmark systems");
  std::string fixtures_dir;
  fixtures->add_option("dir", fixtures_dir, "output directory")->required();

  auto* validate = app.add_subcommand("validate", "check digraph assumptions and preference cycles");
  std::string validate_path;
  validate->add_option("system", validate_path, "system file")->required();
  validate->add_option("--max-degree", max_degree, "reject vertices with din+dout above this");

  auto* oracle = app.add_subcommand("oracle", "brute-force truth value of a formula");
  std::string oracle_kind, oracle_path;
  oracle->add_option("kind", oracle_kind, "cnf or eadnf")->required()->check(CLI::IsMember({"cnf", "eadnf"}));
  oracle->add_option("formula", oracle_path, "formula file")->required();

  auto* coalition = app.add_subcommand("coalition", "compare a coalition's side deal with the honest run");
  std::string co_path, co_subgraph = "full", co_members, co_deal = "all";
  coalition->add_option("system", co_path, "system file")->required();
  coalition->add_option("--subgraph", co_subgraph, "witness, full or file:PATH");
  coalition->add_option("--members", co_members, "comma-separated vertex ids")->required();
  coalition->add_option("--side-deal", co_deal, "from:to,... or all");
  add_decide_flags(coalition, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*decide) return cmd_decide(decide_path, flags, max_degree, decide_json, decide_out, decide_verify);
    if (*simulate) {
      return cmd_simulate(sim_path, sim_subgraph, sim_strategy, sim_seed, sim_rounds, sim_delta, sim_stop, sim_out,
                          sim_json, flags);
    }
    if (*reduce) {
      return cmd_reduce(red_kind, red_path, red_out, red_gadgets, red_normalize, red_keep, red_printed, red_no_pad,
                        red_a_to_z);
    }
    if (*bench) return cmd_bench(bench_dir, bench_repeats, flags);
    if (*fixtures) return cmd_fixtures(fixtures_dir);
    if (*validate) return cmd_validate(validate_path, max_degree);
    if (*oracle) return cmd_oracle(oracle_kind, oracle_path);
    if (*coalition) return cmd_coalition(co_path, co_subgraph, co_members, co_deal, flags);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
