// Command-line front end: compute, verify, graph info.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "edgereg/betti.hpp"
#include "edgereg/constructions.hpp"
#include "edgereg/corpus.hpp"
#include "edgereg/errors.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/monomial.hpp"
#include "edgereg/verify.hpp"

namespace {

using namespace edgereg;

enum Exit : int { kOk = 0, kVerifyFail = 1, kInputError = 2, kBudget = 3 };

struct Config {
  unsigned characteristic = kDefaultCharacteristic;
  unsigned threads = default_thread_count();
  std::size_t max_lattice = Budgets{}.max_lattice;
  std::size_t max_lp = Budgets{}.max_lp_calls;
  std::size_t max_gens = Budgets{}.max_generators;
  double max_seconds = 0;

  Budgets budgets() const { return Budgets{max_lattice, max_lp, max_gens, max_seconds}; }
  BettiOptions betti() const { return BettiOptions{FieldChar(characteristic), budgets(), threads}; }
};

void add_common(CLI::App* app, Config& cfg) {
  app->add_option("--char", cfg.characteristic, "field characteristic, a prime below 2^16 or 0 for the rationals");
  app->add_option("--threads", cfg.threads, "worker threads (default from EDGEREG_THREADS)")->check(CLI::PositiveNumber);
  app->add_option("--max-lattice", cfg.max_lattice, "lcm-lattice element cap, 0 for none");
  app->add_option("--max-lp", cfg.max_lp, "linear program cap for closure membership, 0 for none");
  app->add_option("--max-gens", cfg.max_gens, "generator cap for symbolic powers, 0 for none");
  app->add_option("--time-limit", cfg.max_seconds, "wall-clock cap in seconds for Betti computations, 0 for none")
      ->check(CLI::NonNegativeNumber);
}

std::string reg_text(const std::optional<std::int64_t>& r) { return r ? std::to_string(*r) : "-inf"; }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::string what;
  std::string graph_file;
  std::string ideal_file;
  unsigned power = 1;
  std::string kind = "ordinary";
  std::string method;
  bool json = false;
};

int run_compute(const ComputeArgs& a, const Config& cfg) {
  if (a.graph_file.empty() == a.ideal_file.empty()) throw InputError("give exactly one of --graph or --ideal");
  std::optional<Graph> g;
  MonomialIdeal I = a.graph_file.empty() ? parse_ideal(read_file(a.ideal_file)) : MonomialIdeal(RingContext::standard(1));
  if (!a.graph_file.empty()) {
    g = parse_graph(read_file(a.graph_file));
    I = edge_ideal(*g);
  }
  const Budgets budgets = cfg.budgets();
  const unsigned s = a.power;

  std::optional<MonomialIdeal> formula;
  if (g && a.kind == "symbolic") formula = symbolic_power_formula(*g, s);
  if (g && a.kind == "closure") formula = closure_formula(*g, s);

  std::optional<MonomialIdeal> result;
  std::string cross_check = "none";
  if (a.kind == "ordinary") {
    result = power(I, s);
  } else if (a.method == "formula") {
    if (!g) throw InputError("--method formula needs --graph");
    if (!formula) throw InputError("no generator formula covers this graph at s = " + std::to_string(s));
    result = *formula;
  } else {
    if (a.kind == "symbolic") {
      if (!is_squarefree(I)) throw InputError("symbolic powers are computed for squarefree ideals only");
      result = symbolic_power_oracle(I, s, budgets);
    } else {
      if (I.is_zero()) throw InputError("integral closure of the zero ideal");
      result = closure_oracle(I, s, budgets);
    }
    if (a.method.empty() && formula) {
      cross_check = *formula == *result ? "agree" : "disagree";
    } else if (a.method.empty()) {
      cross_check = "not covered";
    }
  }

  nlohmann::json out{{"kind", a.kind}, {"power", s}, {"method", a.kind == "ordinary" ? "direct" : (a.method.empty() ? "oracle" : a.method)},
                     {"cross_check", cross_check}};
  std::string text;
  if (a.what == "gens") {
    out["generators"] = nlohmann::json::array();
    for (const auto& m : result->gens()) out["generators"].push_back(m.to_string());
    text = emit_ideal(*result);
  } else {
    const BettiTable table = graded_betti(*result, cfg.betti());
    out["betti"] = to_json(table);
    out["regularity"] = table.regularity() ? nlohmann::json(*table.regularity()) : nlohmann::json(nullptr);
    text = reg_text(table.regularity()) + "\n";
  }
  if (a.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text;
    if (cross_check == "disagree") std::cerr << "formula and oracle disagree\n";
  }
  return cross_check == "disagree" ? kVerifyFail : kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string corpus;
  unsigned smax = 3;
  unsigned reg_smax = 0;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::string json_out;
  std::string format = "text";
  bool timings = false;
};

int run_verify(const VerifyArgs& a, const Config& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), a.suite) == names.end()) throw InputError("unknown suite '" + a.suite + "'");
  const auto items = load_corpus(a.corpus);
  SuiteOptions opt;
  opt.smax = a.smax;
  opt.reg_smax = a.reg_smax;
  opt.seed = a.seed;
  opt.trials = a.trials;
  opt.field = FieldChar(cfg.characteristic);
  opt.budget = cfg.budgets();
  opt.threads = cfg.threads;
  opt.timings = a.timings;
  const VerificationReport report = run_suite(a.suite, items, opt);
  if (!a.json_out.empty()) write_output(a.json_out, emit_report(report, "json"));
  if (a.json_out != "-") std::cout << emit_report(report, a.format);
  return report.passed() ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------------------

int run_graph_info(const std::string& file, bool json) {
  const Graph g = parse_graph(read_file(file));
  const auto girth = odd_girth(g);
  const auto bows = enumerate_bows(g);
  const int nu = induced_matching_number(g);
  const int tau = vertex_cover_number(g);
  if (json) {
    nlohmann::json jb = nlohmann::json::array();
    for (const auto& b : bows) jb.push_back({{"cycles", b.to_string()}, {"size", b.size}, {"induced", b.induced}});
    nlohmann::json out{{"n", g.order()},
                       {"edges", g.edge_count()},
                       {"bipartite", !girth},
                       {"odd_girth", girth ? nlohmann::json(*girth) : nlohmann::json(nullptr)},
                       {"nu", nu},
                       {"tau", tau},
                       {"bows", jb},
                       {"normal", bows.empty()}};
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "n: " << g.order() << "\n";
  std::cout << "edges: " << g.edge_count() << "\n";
  std::cout << "bipartite: " << (girth ? "no" : "yes") << "\n";
  std::cout << "odd girth: " << (girth ? std::to_string(*girth) : "none") << "\n";
  std::cout << "nu: " << nu << "\n";
  std::cout << "tau: " << tau << "\n";
  if (bows.empty()) {
    std::cout << "bows: none\n";
  } else {
    std::cout << "bows: " << bows.size() << " (size";
    std::size_t printed = 0;
    for (std::size_t i = 0; i < bows.size(); ++i) {
      if (i && bows[i].size == bows[i - 1].size) continue;
      std::cout << (printed++ ? ", " : " ") << bows[i].size;
    }
    std::cout << ")\n";
    for (const auto& b : bows) std::cout << "  " << b.to_string() << " size " << b.size << "\n";
  }
  std::cout << "normal: " << (bows.empty() ? "yes" : "no") << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularity of symbolic powers and integral closures of edge ideals"};
  app.require_subcommand(1);
  Config cfg;

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "regularity or generators of a power");
  compute->add_option("what", ca.what, "reg or gens")->required()->check(CLI::IsMember({"reg", "gens"}));
  compute->add_option("--graph", ca.graph_file, "edge-list file");
  compute->add_option("--ideal", ca.ideal_file, "monomial ideal file");
  compute->add_option("--power", ca.power, "exponent s")->check(CLI::NonNegativeNumber);
  compute->add_option("--kind", ca.kind, "ordinary, symbolic or closure")->check(CLI::IsMember({"ordinary", "symbolic", "closure"}));
  compute->add_option("--method", ca.method, "formula or oracle (default: oracle checked against the formula)")
      ->check(CLI::IsMember({"formula", "oracle"}));
  compute->add_flag("--json", ca.json, "JSON output");
  add_common(compute, cfg);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite over a corpus");
  verify->add_option("--suite", va.suite, "symbolic, closure, colon, theorem-gen or bounds")->required();
  verify->add_option("--corpus", va.corpus, "builtin:NAME(args) or a directory")->required();
  verify->add_option("--smax", va.smax, "largest power checked")->check(CLI::PositiveNumber);
  verify->add_option("--reg-smax", va.reg_smax, "largest power whose regularity is computed (default: smax)");
  verify->add_option("--seed", va.seed, "seed for random trials");
  verify->add_option("--trials", va.trials, "random colon trials");
  verify->add_option("--json", va.json_out, "write the JSON report to this file ('-' for stdout)");
  verify->add_option("--format", va.format, "console format")->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_flag("--timings", va.timings, "record wall times (reports are then not byte-identical)");
  add_common(verify, cfg);

  std::string graph_file;
  bool graph_json = false;
  auto* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  auto* info = graph->add_subcommand("info", "invariants of a graph");
  info->add_option("--graph", graph_file, "edge-list file")->required();
  info->add_flag("--json", graph_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*compute) return run_compute(ca, cfg);
    if (*verify) return run_verify(va, cfg);
    if (*info) return run_graph_info(graph_file, graph_json);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
