#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgereg/betti.hpp"
#include "edgereg/constructions.hpp"
#include "edgereg/corpus.hpp"
#include "edgereg/errors.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/monomial.hpp"
#include "edgereg/parallel.hpp"

namespace edgereg {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Reports

enum class Status { pass, fail, na, clipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::na: return "na";
    case Status::clipped: return "clipped";
  }
  return "na";
}

inline Status parse_status(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "na") return Status::na;
  if (s == "clipped") return Status::clipped;
  throw InputError("unknown instance status '" + s + "'");
}

/// One checked (graph, s, claim) triple. `witness` carries the computed
/// values; on failure it also carries the offending object and the input.
struct InstanceRecord {
  std::string graph;
  int s = 0;
  std::string claim;
  Status status = Status::na;
  Json witness;
  std::int64_t ms = 0;
};

struct ReportSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t na = 0;
  std::size_t clipped = 0;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  unsigned characteristic = kDefaultCharacteristic;
  bool timings = false;  // emit wall times; off keeps reports byte-identical
  std::vector<InstanceRecord> instances;

  ReportSummary summary() const {
    ReportSummary out;
    for (const auto& r : instances) {
      switch (r.status) {
        case Status::pass: ++out.pass; break;
        case Status::fail: ++out.fail; break;
        case Status::na: ++out.na; break;
        case Status::clipped: ++out.clipped; break;
      }
    }
    return out;
  }

  bool passed() const { return summary().fail == 0; }

  void canonicalize() {
    std::stable_sort(instances.begin(), instances.end(), [](const InstanceRecord& a, const InstanceRecord& b) {
      return std::tie(a.graph, a.s, a.claim) < std::tie(b.graph, b.s, b.claim);
    });
  }
};

inline Json to_json(const VerificationReport& r) {
  Json instances = Json::array();
  for (const auto& i : r.instances)
    instances.push_back(Json{{"graph", i.graph},
                             {"s", i.s},
                             {"claim", i.claim},
                             {"status", status_name(i.status)},
                             {"witness", i.witness},
                             {"ms", r.timings ? i.ms : 0}});
  const auto sum = r.summary();
  return Json{{"suite", r.suite},
              {"seed", r.seed},
              {"char", r.characteristic},
              {"instances", std::move(instances)},
              {"summary", {{"pass", sum.pass}, {"fail", sum.fail}, {"na", sum.na}, {"clipped", sum.clipped}}}};
}

inline VerificationReport report_from_json(const Json& j) {
  try {
    VerificationReport r;
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.characteristic = j.at("char").get<unsigned>();
    for (const auto& i : j.at("instances")) {
      InstanceRecord rec;
      rec.graph = i.at("graph").get<std::string>();
      rec.s = i.at("s").get<int>();
      rec.claim = i.at("claim").get<std::string>();
      rec.status = parse_status(i.at("status").get<std::string>());
      rec.witness = i.at("witness");
      rec.ms = i.at("ms").get<std::int64_t>();
      if (rec.ms) r.timings = true;
      r.instances.push_back(std::move(rec));
    }
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Canonical serialization: sorted keys, instances in (graph, s, claim) order.
inline std::string emit_report(VerificationReport report, const std::string& format) {
  report.canonicalize();
  if (format == "json") return to_json(report).dump(2) + "\n";
  if (format == "csv") {
    std::string out = "graph,s,claim,status,ms,witness\n";
    for (const auto& i : report.instances)
      out += csv_field(i.graph) + "," + std::to_string(i.s) + "," + csv_field(i.claim) + "," + status_name(i.status) + "," +
             std::to_string(report.timings ? i.ms : 0) + "," + csv_field(i.witness.dump()) + "\n";
    return out;
  }
  if (format == "text") {
    std::ostringstream os;
    os << "suite " << report.suite << "  seed " << report.seed << "  char " << report.characteristic << "\n";
    for (const auto& i : report.instances) {
      os << status_name(i.status) << "\t" << i.graph << "\ts=" << i.s << "\t" << i.claim;
      if (report.timings) os << "\t" << i.ms << "ms";
      if (i.status != Status::pass && !i.witness.is_null()) os << "\t" << i.witness.dump();
      os << "\n";
    }
    const auto sum = report.summary();
    os << "summary: pass " << sum.pass << ", fail " << sum.fail << ", na " << sum.na << ", clipped " << sum.clipped << "\n";
    return os.str();
  }
  throw InputError("unknown report format '" + format + "' (json, csv or text)");
}

inline Json to_json(const BettiTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries())
    entries.push_back(Json{{"i", e.i}, {"degree", e.degree}, {"multidegree", e.multidegree}, {"rank", e.rank}});
  const auto reg = t.regularity();
  return Json{{"char", t.characteristic()}, {"entries", std::move(entries)}, {"regularity", reg ? Json(*reg) : Json(nullptr)}};
}

// ---------------------------------------------------------------------------
// Suite plumbing

struct SuiteOptions {
  unsigned smax = 3;
  unsigned reg_smax = 0;  // powers whose regularity is computed; 0 means smax
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  FieldChar field{};
  Budgets budget{};
  unsigned threads = default_thread_count();
  bool timings = false;

  unsigned reg_limit() const { return reg_smax ? reg_smax : smax; }
};

namespace detail {

struct Outcome {
  Status status = Status::na;
  Json witness;
};

inline Outcome pass_with(Json w = nullptr) { return {Status::pass, std::move(w)}; }
inline Outcome fail_with(Json w) { return {Status::fail, std::move(w)}; }
inline Outcome not_applicable(const std::string& reason, Json extra = nullptr) {
  Json w{{"reason", reason}};
  if (!extra.is_null()) w["detail"] = std::move(extra);
  return {Status::na, std::move(w)};
}
inline Outcome clipped(const std::string& reason) { return {Status::clipped, Json{{"reason", reason}}}; }
inline Outcome verdict(bool ok, Json w) { return {ok ? Status::pass : Status::fail, std::move(w)}; }

inline Json reg_json(const std::optional<std::int64_t>& r) { return r ? Json(*r) : Json(nullptr); }

/// Generators present on one side only, at most `limit` per side.
inline Json diff_witness(const MonomialIdeal& a, const MonomialIdeal& b, const std::string& a_name,
                         const std::string& b_name, std::size_t limit = 8) {
  auto only = [&](const MonomialIdeal& x, const MonomialIdeal& y) {
    Json out = Json::array();
    for (const auto& g : x.gens()) {
      if (std::find(y.gens().begin(), y.gens().end(), g) != y.gens().end()) continue;
      if (out.size() >= limit) break;
      out.push_back(g.to_string());
    }
    return out;
  };
  return Json{{"only_" + a_name, only(a, b)}, {"only_" + b_name, only(b, a)},
              {a_name + "_generators", a.size()}, {b_name + "_generators", b.size()}};
}

/// reg(I) memoized by generator list. Budget failures are remembered too.
class RegCache {
 public:
  explicit RegCache(BettiOptions opt) : opt_(std::move(opt)) {}

  std::optional<std::int64_t> operator()(const MonomialIdeal& I) {
    std::string key = std::to_string(I.context()->size()) + I.to_string();
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (it->second.clipped) throw BudgetExceeded("regularity: " + it->second.reason, it->second.size);
      return it->second.value;
    }
    try {
      auto r = regularity(I, opt_);
      memo_.emplace(std::move(key), Entry{r, false, {}, 0});
      return r;
    } catch (const BudgetExceeded& e) {
      memo_.emplace(std::move(key), Entry{std::nullopt, true, e.what(), e.size()});
      throw;
    }
  }

 private:
  struct Entry {
    std::optional<std::int64_t> value;
    bool clipped = false;
    std::string reason;
    std::size_t size = 0;
  };
  BettiOptions opt_;
  std::map<std::string, Entry> memo_;
};

/// Lazily computed per-power ideals (cl(I^s), I^(s)) with remembered budget failures.
class PowerMemo {
 public:
  explicit PowerMemo(std::function<MonomialIdeal(unsigned)> make) : make_(std::move(make)) {}

  const MonomialIdeal& operator()(unsigned s) {
    if (auto it = done_.find(s); it != done_.end()) return it->second;
    if (auto it = failed_.find(s); it != failed_.end()) throw BudgetExceeded(it->second.first, it->second.second);
    try {
      return done_.emplace(s, make_(s)).first->second;
    } catch (const BudgetExceeded& e) {
      failed_.emplace(s, std::make_pair(std::string(e.what()), e.size()));
      throw;
    }
  }

 private:
  std::function<MonomialIdeal(unsigned)> make_;
  std::map<unsigned, MonomialIdeal> done_;
  std::map<unsigned, std::pair<std::string, std::size_t>> failed_;
};

inline std::string input_text(const CorpusItem& item) {
  if (item.graph) return emit_graph(*item.graph);
  if (item.ideal) return emit_ideal(*item.ideal);
  return {};
}

/// Records for one corpus item. Budget overruns become `clipped` and
/// hypothesis violations `na`; failures get the input text attached.
class Recorder {
 public:
  Recorder(const CorpusItem& item, std::vector<InstanceRecord>& out) : item_(item), out_(out) {}

  template <typename F>
  void run(int s, std::string claim, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const BudgetExceeded& e) {
      o = clipped(e.what());
    } catch (const HypothesisViolation& e) {
      o = not_applicable(e.what(), Json(e.witness()));
    }
    if (o.status == Status::fail) {
      if (!o.witness.is_object()) o.witness = Json{{"value", o.witness}};
      o.witness["input"] = input_text(item_);
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out_.push_back(InstanceRecord{item_.id, s, std::move(claim), o.status, std::move(o.witness), static_cast<std::int64_t>(ms)});
  }

 private:
  const CorpusItem& item_;
  std::vector<InstanceRecord>& out_;
};

inline BettiOptions betti_options(const SuiteOptions& opt, std::size_t parallel_items) {
  return BettiOptions{opt.field, opt.budget, parallel_items > 1 ? 1u : opt.threads};
}

/// Runs `per_item` on every corpus item in parallel and assembles the report.
template <typename F>
VerificationReport run_items(const std::string& suite, const std::vector<CorpusItem>& items, const SuiteOptions& opt,
                             F&& per_item) {
  std::vector<std::vector<InstanceRecord>> per(items.size());
  parallel_for(items.size(), opt.threads, [&](std::size_t k) { per_item(items[k], per[k]); });
  VerificationReport report{suite, opt.seed, opt.field.value(), opt.timings, {}};
  for (auto& v : per)
    for (auto& r : v) report.instances.push_back(std::move(r));
  report.canonicalize();
  return report;
}

inline std::string set_label(VertexSet s) { return format_set(s); }

inline std::vector<VertexSet> distinct_sets(const std::vector<VertexSet>& sets) {
  std::vector<VertexSet> out = sets;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline int max_one(const std::optional<std::int64_t>& r) { return r ? std::max<int>(1, static_cast<int>(*r)) : 1; }

inline int nu_of(const Graph& g, VertexSet s) { return induced_matching_number(induced_subgraph(g, s)); }

inline std::string pad3(std::size_t k) {
  std::string s = std::to_string(k);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Symbolic powers: generator formula and regularity equality

inline VerificationReport suite_symbolic(const std::vector<CorpusItem>& items, const SuiteOptions& opt) {
  const auto bopt = detail::betti_options(opt, items.size());
  return detail::run_items("symbolic", items, opt, [&](const CorpusItem& item, std::vector<InstanceRecord>& out) {
    detail::Recorder rec(item, out);
    if (!item.graph) {
      rec.run(0, "symbolic-gens", [] { return detail::not_applicable("edge ideal required"); });
      return;
    }
    const Graph& g = *item.graph;
    const auto ctx = graph_ring(g);
    const MonomialIdeal I = edge_ideal(g, ctx);
    const auto girth = odd_girth(g);
    const unsigned limit = girth ? static_cast<unsigned>((*girth - 1) / 2) + 1 : opt.smax;
    detail::RegCache reg(bopt);
    detail::PowerMemo symbolic([&](unsigned s) { return symbolic_power_oracle(I, s, opt.budget); });
    for (unsigned s = 1; s <= opt.smax; ++s) {
      const int si = static_cast<int>(s);
      if (s > limit) {
        const std::string why = "s exceeds n+1 for odd girth " + std::to_string(*girth);
        rec.run(si, "symbolic-gens", [&] { return detail::clipped(why); });
        rec.run(si, "symbolic-reg", [&] { return detail::clipped(why); });
        continue;
      }
      rec.run(si, "symbolic-gens", [&] {
        const auto formula = symbolic_power_formula(g, s);
        if (!formula) return detail::not_applicable("no generator formula");
        const auto& oracle = symbolic(s);
        if (*formula == oracle) return detail::pass_with(Json{{"generators", oracle.size()}});
        return detail::fail_with(detail::diff_witness(*formula, oracle, "formula", "oracle"));
      });
      rec.run(si, "symbolic-reg", [&] {
        if (s > opt.reg_limit()) return detail::clipped("regularity computed only for s <= " + std::to_string(opt.reg_limit()));
        const auto rs = reg(symbolic(s));
        const auto ro = reg(power(I, s));
        return detail::verdict(rs == ro, Json{{"reg_symbolic", detail::reg_json(rs)}, {"reg_ordinary", detail::reg_json(ro)}});
      });
    }
  });
}

// ---------------------------------------------------------------------------
// Integral closures: generator formula, regularity equality, ∂* inclusion

inline VerificationReport suite_closure(const std::vector<CorpusItem>& items, const SuiteOptions& opt) {
  const auto bopt = detail::betti_options(opt, items.size());
  return detail::run_items("closure", items, opt, [&](const CorpusItem& item, std::vector<InstanceRecord>& out) {
    detail::Recorder rec(item, out);
    const MonomialIdeal I = item.graph ? edge_ideal(*item.graph) : *item.ideal;
    if (I.is_zero() || I.is_unit()) {
      rec.run(0, "closure-gens", [] { return detail::not_applicable("zero or unit ideal"); });
      return;
    }
    std::vector<Bow> bows;
    bool bicyclic = false;
    if (item.graph) {
      bows = enumerate_bows(*item.graph);
      bicyclic = is_odd_bicyclic(*item.graph);
    }
    const unsigned k1 = bows.empty() ? 0 : static_cast<unsigned>(bows.front().size);
    detail::RegCache reg(bopt);
    detail::PowerMemo closure([&](unsigned s) { return closure_oracle(I, s, opt.budget); });
    for (unsigned s = 1; s <= opt.smax; ++s) {
      const int si = static_cast<int>(s);
      rec.run(si, "closure-gens", [&] {
        if (!item.graph) return detail::not_applicable("generator formula needs an edge ideal");
        const auto formula = closure_formula(*item.graph, s);
        if (!formula) return detail::not_applicable("no generator formula beyond the smallest bow size");
        const auto& oracle = closure(s);
        if (*formula == oracle) return detail::pass_with(Json{{"generators", oracle.size()}});
        return detail::fail_with(detail::diff_witness(*formula, oracle, "formula", "oracle"));
      });
      rec.run(si, "closure-reg", [&] {
        if (!item.graph) return detail::not_applicable("regularity equality is stated for edge ideals");
        if (!bows.empty() && !bicyclic && s > k1)
          return detail::not_applicable("several odd cycles and s beyond the smallest bow size");
        if (s > opt.reg_limit()) return detail::clipped("regularity computed only for s <= " + std::to_string(opt.reg_limit()));
        const auto rc = reg(closure(s));
        const auto ro = reg(power(I, s));
        return detail::verdict(rc == ro, Json{{"reg_closure", detail::reg_json(rc)}, {"reg_ordinary", detail::reg_json(ro)}});
      });
      if (s < 2) continue;
      rec.run(si, "dstar-inclusion", [&] {
        const auto& upper = closure(s);
        const auto& lower = closure(s - 1);
        const auto d = partial_star(upper);
        for (const auto& m : d.gens())
          if (!contains(lower, m)) return detail::fail_with(Json{{"monomial", m.to_string()}});
        return detail::pass_with(Json{{"generators", d.size()}});
      });
    }
  });
}

// ---------------------------------------------------------------------------
// Colon ideals

namespace detail {

/// Splits a product of q edges into edges, H-edges first when possible.
inline std::optional<std::vector<VertexPair>> edge_factorization(const Graph& g, const Graph& h, const Monomial& u) {
  ExponentVector rem = u.vec();
  std::vector<VertexPair> out;
  auto rec = [&](auto&& self) -> bool {
    std::size_t v = 0;
    while (v < rem.size() && rem[v] == 0) ++v;
    if (v == rem.size()) return true;
    const Vertex x = static_cast<Vertex>(v);
    std::vector<Vertex> order;
    for (Vertex w : to_vector(g.neighbors(x)))
      if (h.has_vertex(x) && h.has_vertex(w) && h.adjacent(x, w)) order.push_back(w);
    for (Vertex w : to_vector(g.neighbors(x)))
      if (std::find(order.begin(), order.end(), w) == order.end()) order.push_back(w);
    for (Vertex w : order) {
      if (rem[static_cast<std::size_t>(w)] == 0) continue;
      --rem[v];
      --rem[static_cast<std::size_t>(w)];
      out.emplace_back(std::min(x, w), std::max(x, w));
      if (self(self)) return true;
      out.pop_back();
      ++rem[v];
      ++rem[static_cast<std::size_t>(w)];
    }
    return false;
  };
  if (!rec(rec)) return std::nullopt;
  std::stable_partition(out.begin(), out.end(), [&](const VertexPair& e) {
    return h.has_vertex(e.first) && h.has_vertex(e.second) && h.adjacent(e.first, e.second);
  });
  return out;
}

/// Checks colon = L + J with L the variables among the generators of colon,
/// (w : w ∈ W) ⊆ L, and J = I(H)^{t+1} : f_1⋯f_t.
inline Outcome check_colon_shape(const MonomialIdeal& colon_ideal, const Graph& g, const Graph& h, VertexSet w,
                                 const Monomial& uj, const ContextPtr& ctx) {
  const auto factors = edge_factorization(g, h, uj);
  if (!factors) return fail_with(Json{{"reason", "generator is not a product of edges"}, {"u", uj.to_string()}});
  std::size_t t = 0;
  for (const auto& e : *factors)
    if (h.has_vertex(e.first) && h.has_vertex(e.second) && h.adjacent(e.first, e.second)) ++t;
  MonomialIdeal j(ctx);
  if (!h.is_empty_graph()) {
    const MonomialIdeal ih = edge_ideal(h, ctx);
    std::vector<VertexPair> first(factors->begin(), factors->begin() + static_cast<std::ptrdiff_t>(t));
    j = t == 0 ? ih : colon(power(ih, static_cast<unsigned>(t + 1)), edge_product(ctx, first));
  }
  std::vector<Monomial> vars;
  VertexSet lset = 0;
  for (const auto& m : colon_ideal.gens())
    if (m.degree() == 1) {
      vars.push_back(m);
      lset |= m.support_bits();
    }
  Json info{{"t", t}, {"variables", format_set(lset)}, {"generators", colon_ideal.size()}};
  if (w & ~lset) {
    info["missing_neighbours"] = format_set(w & ~lset);
    return fail_with(std::move(info));
  }
  std::vector<Monomial> all = vars;
  for (const auto& m : j.gens()) all.push_back(m);
  const MonomialIdeal expected = MonomialIdeal::minimalize(ctx, std::move(all));
  if (expected == colon_ideal) return pass_with(std::move(info));
  info["diff"] = diff_witness(expected, colon_ideal, "expected", "colon");
  return fail_with(std::move(info));
}

/// The pairwise ordering condition on u_1, …, u_j: for i < j either
/// (u_i : u_j) ⊆ I^{q+1} : u_j, or some (u_k : u_j) with k < j is a
/// variable dividing (u_i : u_j). Returns the first i where it fails.
inline std::optional<std::size_t> ordering_violation(const std::vector<Monomial>& u, std::size_t j,
                                                     const MonomialIdeal& next_power) {
  std::vector<Monomial> quot;
  for (std::size_t i = 0; i < j; ++i) quot.push_back(strip(u[i], u[j]));
  for (std::size_t i = 0; i < j; ++i) {
    if (contains(next_power, quot[i] * u[j])) continue;
    bool covered = false;
    for (std::size_t k = 0; k < j && !covered; ++k) covered = quot[k].degree() == 1 && divides(quot[k], quot[i]);
    if (!covered) return i;
  }
  return std::nullopt;
}

}  // namespace detail

struct ColonTrial {
  std::size_t item = 0;
  unsigned s = 0;
  std::vector<VertexPair> edges;
};

/// Seeded (graph, s, edge multiset) draws over the corpus graphs with edges.
inline std::vector<ColonTrial> colon_trials(const std::vector<CorpusItem>& items, const SuiteOptions& opt) {
  std::vector<std::size_t> graphs;
  for (std::size_t k = 0; k < items.size(); ++k)
    if (items[k].graph && items[k].graph->edge_count() > 0) graphs.push_back(k);
  std::vector<ColonTrial> out;
  if (graphs.empty()) return out;
  std::mt19937_64 rng(derive_seed(opt.seed, 0x636f6c6f6eull));
  const unsigned smax = std::max(opt.smax, 2u);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    ColonTrial trial;
    trial.item = graphs[uniform_below(rng, graphs.size())];
    trial.s = 2 + static_cast<unsigned>(uniform_below(rng, smax - 1));
    const auto edges = items[trial.item].graph->edges();
    for (unsigned k = 0; k + 1 < trial.s; ++k) trial.edges.push_back(edges[uniform_below(rng, edges.size())]);
    out.push_back(std::move(trial));
  }
  return out;
}

inline VerificationReport suite_colon(const std::vector<CorpusItem>& items, const SuiteOptions& opt) {
  const auto trials = colon_trials(items, opt);
  std::vector<std::vector<InstanceRecord>> trial_records(trials.size());
  parallel_for(trials.size(), opt.threads, [&](std::size_t t) {
    const auto& trial = trials[t];
    const CorpusItem& item = items[trial.item];
    detail::Recorder rec(item, trial_records[t]);
    std::string label;
    for (auto [u, v] : trial.edges) label += (label.empty() ? "" : " ") + std::to_string(u + 1) + "-" + std::to_string(v + 1);
    rec.run(static_cast<int>(trial.s), "even-connection-colon#" + detail::pad3(t) + " [" + label + "]", [&] {
      const Graph& g = *item.graph;
      const auto ctx = graph_ring(g);
      const MonomialIdeal brute = colon(power(edge_ideal(g, ctx), trial.s), edge_product(ctx, trial.edges));
      const MonomialIdeal fast = banerjee_colon(g, trial.s, trial.edges, ctx);
      if (fast == brute) return detail::pass_with(Json{{"generators", brute.size()}});
      return detail::fail_with(detail::diff_witness(fast, brute, "even_connection", "brute_force"));
    });
  });

  auto report = detail::run_items("colon", items, opt, [&](const CorpusItem& item, std::vector<InstanceRecord>& out) {
    detail::Recorder rec(item, out);
    if (!item.graph) {
      rec.run(0, "t-colon", [] { return detail::not_applicable("edge ideal required"); });
      return;
    }
    const Graph& g = *item.graph;
    const auto ctx = graph_ring(g);
    const MonomialIdeal I = edge_ideal(g, ctx);

    auto t_colon = [&](VertexSet t, unsigned k, const std::string& what) {
      rec.run(static_cast<int>(k), "t-colon[" + what + "]", [&] {
        const MonomialIdeal expected = t_colon_structure(g, k, t);
        const MonomialIdeal brute = colon(power(I, k), vertex_product(ctx, t));
        if (expected == brute) return detail::pass_with(Json{{"generators", brute.size()}});
        return detail::fail_with(detail::diff_witness(expected, brute, "structure", "brute_force"));
      });
    };
    for (const auto& c : enumerate_cycles(g, true, true))
      t_colon(c.set(), static_cast<unsigned>((c.length() + 1) / 2), "cycle " + c.to_string());
    const auto bows = enumerate_bows(g);
    for (const auto& b : bows)
      if (b.size == bows.front().size) t_colon(b.set(), static_cast<unsigned>(b.size), "bow " + b.to_string());

    if (bows.size() != 1 || !is_odd_bicyclic(g)) return;
    const Bow& bow = bows.front();
    const TContext tc = t_context(g, bow.set(), ctx);
    const unsigned size = static_cast<unsigned>(bow.size);
    for (unsigned s = size + 1; s <= size + 2; ++s) {
      const unsigned q = s - size;
      const MonomialIdeal Is = power(I, s);
      const MonomialIdeal Iq = power(I, q);
      const MonomialIdeal Iq1 = power(I, q + 1);
      const auto& u = Iq.gens();
      for (std::size_t j = 0; j < u.size(); ++j) {
        const Monomial prod = tc.m * u[j];
        const std::string tag = "[u" + detail::pad3(j + 1) + "=" + u[j].to_string() + "]";
        const int si = static_cast<int>(s);
        if (contains(Is, prod)) {
          rec.run(si, "quadratic-colon" + tag, [] { return detail::not_applicable("m_B u_j lies in I^s"); });
          continue;
        }
        const MonomialIdeal c = colon(Is, prod);
        rec.run(si, "quadratic-colon" + tag, [&] {
          std::int64_t top = 0;
          for (const auto& m : c.gens()) top = std::max(top, m.degree());
          return detail::verdict(top <= 2, Json{{"max_degree", top}, {"generators", c.size()}});
        });
        rec.run(si, "bow-colon-shape" + tag, [&] { return detail::check_colon_shape(c, g, tc.h, tc.w, u[j], ctx); });
        if (j == 0) continue;
        rec.run(si, "ordered-colon-shape" + tag, [&] {
          if (auto bad = detail::ordering_violation(u, j, Iq1))
            return detail::not_applicable("grlex order violates the ordering condition",
                                          Json{{"i", *bad + 1}, {"u_i", u[*bad].to_string()}});
          std::vector<Monomial> earlier(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(j));
          const MonomialIdeal prev = Is + multiply(MonomialIdeal::minimalize(ctx, std::move(earlier)), tc.m);
          return detail::check_colon_shape(colon(prev, prod), g, tc.h, tc.w, u[j], ctx);
        });
      }
    }
  });
  for (auto& v : trial_records)
    for (auto& r : v) report.instances.push_back(std::move(r));
  report.canonicalize();
  return report;
}

// ---------------------------------------------------------------------------
// The general criterion reg(I^k + (m_T1, …, m_Tr)) = reg(I^k)

inline VerificationReport suite_theorem_gen(const std::vector<CorpusItem>& items, const SuiteOptions& opt) {
  const auto bopt = detail::betti_options(opt, items.size());
  return detail::run_items("theorem-gen", items, opt, [&](const CorpusItem& item, std::vector<InstanceRecord>& out) {
    detail::Recorder rec(item, out);
    if (!item.graph || item.graph->is_empty_graph()) {
      rec.run(0, "theorem-gen", [] { return detail::not_applicable("graph with at least one edge required"); });
      return;
    }
    const Graph& g = *item.graph;
    const auto ctx = graph_ring(g);
    const MonomialIdeal I = edge_ideal(g, ctx);
    detail::RegCache reg(bopt);

    struct Family {
      std::string name;
      unsigned k;
      std::vector<VertexSet> sets;
    };
    std::vector<Family> families;
    if (const auto girth = odd_girth(g)) {
      std::vector<VertexSet> sets;
      for (const auto& c : enumerate_cycles(g, true, true))
        if (c.length() == static_cast<std::size_t>(*girth)) sets.push_back(c.set());
      families.push_back({"odd-cycles", static_cast<unsigned>((*girth + 1) / 2), detail::distinct_sets(sets)});
    }
    const auto bows = enumerate_bows(g);
    if (!bows.empty()) {
      std::vector<VertexSet> sets;
      for (const auto& b : bows)
        if (b.size == bows.front().size) sets.push_back(b.set());
      families.push_back({"bows", static_cast<unsigned>(bows.front().size), detail::distinct_sets(sets)});
    }
    const auto first = g.edges().front();
    families.push_back({"edge", 1, {bit(first.first) | bit(first.second)}});

    for (const auto& fam : families) {
      rec.run(static_cast<int>(fam.k), "theorem-gen[" + fam.name + "]", [&] {
        const MonomialIdeal Ik = power(I, fam.k);
        Json hyps = Json::array();
        std::vector<Monomial> ms;
        std::vector<int> lhs4;
        bool ok123 = true;
        for (VertexSet t : fam.sets) {
          const TContext tc = t_context(g, t, ctx);
          bool h1 = g.edges_within(t) > 0;
          for_each_vertex(t, [&](Vertex v) { h1 = h1 && (g.neighbors(v) & t) != 0; });
          bool h2 = !contains(Ik, tc.m);
          for_each_vertex(tc.w, [&](Vertex x) {
            h2 = h2 && contains(Ik, Monomial::variable(ctx, static_cast<std::size_t>(x)) * tc.m);
          });
          const int nu = detail::nu_of(g, t);
          const bool h3 = popcount(t) <= static_cast<int>(2 * fam.k) + nu - 2;
          hyps.push_back(Json{{"T", format_set(t)}, {"h1", h1}, {"h2", h2}, {"h3", h3}});
          ok123 = ok123 && h1 && h2 && h3;
          ms.push_back(tc.m);
          if (h1 && h2 && h3) lhs4.push_back(static_cast<int>(2 * fam.k) + nu - 2 + detail::max_one(reg(edge_ideal(tc.h, ctx))));
        }
        if (!ok123) return detail::not_applicable("hypotheses (1)-(3) fail", std::move(hyps));
        const MonomialIdeal sum = Ik + MonomialIdeal::minimalize(ctx, ms);
        const auto rsum = reg(sum);
        for (std::size_t i = 0; i < lhs4.size(); ++i) {
          hyps[i]["h4_bound"] = lhs4[i];
          if (!rsum || lhs4[i] > *rsum)
            return detail::not_applicable("hypothesis (4) fails", Json{{"T", hyps[i]}, {"reg_sum", detail::reg_json(rsum)}});
        }
        const auto r0 = reg(Ik);
        return detail::verdict(rsum == r0, Json{{"reg_sum", detail::reg_json(rsum)}, {"reg_power", detail::reg_json(r0)},
                                                {"sets", fam.sets.size()}});
      });
    }
  });
}

// ---------------------------------------------------------------------------
// Lower bounds and the closure-of-sum formula

inline VerificationReport suite_bounds(const std::vector<CorpusItem>& items, const SuiteOptions& opt) {
  const auto bopt = detail::betti_options(opt, items.size());
  return detail::run_items("bounds", items, opt, [&](const CorpusItem& item, std::vector<InstanceRecord>& out) {
    detail::Recorder rec(item, out);
    if (!item.graph || item.graph->is_empty_graph()) {
      rec.run(0, "reg-lower", [] { return detail::not_applicable("graph with at least one edge required"); });
      return;
    }
    const Graph& g = *item.graph;
    const auto ctx = graph_ring(g);
    const MonomialIdeal I = edge_ideal(g, ctx);
    detail::RegCache reg(bopt);
    detail::PowerMemo symbolic([&](unsigned s) { return symbolic_power_oracle(I, s, opt.budget); });
    detail::PowerMemo closure([&](unsigned s) { return closure_oracle(I, s, opt.budget); });
    const int nu = induced_matching_number(g);

    auto h_reg = [&](VertexSet t) { return detail::max_one(reg(edge_ideal(t_context(g, t, ctx).h, ctx))); };

    // max over T with G[T] non-empty of ν(G[T]) + max{reg I(H_T), 1}
    constexpr int kSubsetLimit = 12;
    std::optional<std::pair<int, VertexSet>> best;
    if (g.order() <= kSubsetLimit) {
      const auto verts = to_vector(g.vertices());
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << verts.size()); ++mask) {
        VertexSet t = 0;
        for (std::size_t i = 0; i < verts.size(); ++i)
          if (mask >> i & 1) t |= bit(verts[i]);
        if (!g.edges_within(t)) continue;
        const int val = detail::nu_of(g, t) + h_reg(t);
        if (!best || val > best->first) best = std::make_pair(val, t);
      }
    }

    std::vector<Cycle> cycles;
    {
      std::vector<VertexSet> seen;
      for (const auto& c : enumerate_cycles(g, true, true))
        if (std::find(seen.begin(), seen.end(), c.set()) == seen.end()) {
          seen.push_back(c.set());
          cycles.push_back(c);
        }
    }
    std::vector<Bow> bows;
    {
      std::vector<VertexSet> seen;
      for (const auto& b : enumerate_bows(g))
        if (std::find(seen.begin(), seen.end(), b.set()) == seen.end()) {
          seen.push_back(b.set());
          bows.push_back(b);
        }
    }

    for (unsigned s = 1; s <= opt.smax; ++s) {
      const int si = static_cast<int>(s);
      const bool reg_ok = s <= opt.reg_limit();
      const std::string clip = "regularity computed only for s <= " + std::to_string(opt.reg_limit());
      rec.run(si, "reg-lower-matching", [&] {
        if (!reg_ok) return detail::clipped(clip);
        const auto r = reg(power(I, s));
        const int bound = 2 * si + nu - 1;
        return detail::verdict(r && *r >= bound, Json{{"reg", detail::reg_json(r)}, {"bound", bound}});
      });
      rec.run(si, "reg-lower-subsets", [&] {
        if (!best) return detail::not_applicable("more than " + std::to_string(kSubsetLimit) + " vertices");
        if (!reg_ok) return detail::clipped(clip);
        const auto r = reg(power(I, s));
        const int bound = 2 * si + best->first - 2;
        return detail::verdict(r && *r >= bound,
                               Json{{"reg", detail::reg_json(r)}, {"bound", bound}, {"T", format_set(best->second)}});
      });
      for (const auto& c : cycles) {
        rec.run(si, "symbolic-reg-lower[" + c.to_string() + "]", [&] {
          if (!reg_ok) return detail::clipped(clip);
          const auto r = reg(symbolic(s));
          const int bound = 2 * si + detail::nu_of(g, c.set()) + h_reg(c.set()) - 2;
          return detail::verdict(r && *r >= bound, Json{{"reg", detail::reg_json(r)}, {"bound", bound}});
        });
      }
      for (const auto& b : bows) {
        rec.run(si, "closure-reg-lower[" + b.to_string() + "]", [&] {
          if (!reg_ok) return detail::clipped(clip);
          const auto r = reg(closure(s));
          const int bound = 2 * si + detail::nu_of(g, b.set()) + h_reg(b.set()) - 2;
          return detail::verdict(r && *r >= bound, Json{{"reg", detail::reg_json(r)}, {"bound", bound}});
        });
        const TContext tc = t_context(g, b.set(), ctx);
        if (tc.h.is_empty_graph()) continue;
        rec.run(si, "closure-sum-formula[" + b.to_string() + "]", [&] {
          if (!reg_ok) return detail::clipped(clip);
          // H_B ⊔ M for a largest induced matching M of G[B]
          const auto matching = maximum_induced_matching(induced_subgraph(g, b.set()));
          Graph mg(g.label_count());
          VertexSet mv = 0;
          for (auto [x, y] : matching) {
            mg.add_edge(x, y);
            mv |= bit(x) | bit(y);
          }
          const Graph sub = induced_subgraph(g, tc.h.vertices() | mv);
          const MonomialIdeal M = edge_ideal(mg, ctx);
          const MonomialIdeal J = edge_ideal(tc.h, ctx);
          const auto lhs = reg(closure_oracle(edge_ideal(sub, ctx), s, opt.budget));
          std::optional<std::int64_t> rhs;
          auto take = [&](std::optional<std::int64_t> a, std::optional<std::int64_t> c, int shift) {
            if (a && c && (!rhs || *a + *c + shift > *rhs)) rhs = *a + *c + shift;
          };
          for (unsigned i = 1; i + 1 <= s; ++i) take(reg(power(M, s - i)), reg(closure_oracle(J, i, opt.budget)), 0);
          for (unsigned j = 1; j <= s; ++j) take(reg(power(M, s - j + 1)), reg(closure_oracle(J, j, opt.budget)), -1);
          return detail::verdict(lhs == rhs, Json{{"reg_closure", detail::reg_json(lhs)}, {"formula", detail::reg_json(rhs)},
                                                  {"matching", matching.size()}});
        });
      }
    }
  });
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"symbolic", "closure", "colon", "theorem-gen", "bounds"};
  return names;
}

inline VerificationReport run_suite(const std::string& name, const std::vector<CorpusItem>& items, const SuiteOptions& opt) {
  if (name == "symbolic") return suite_symbolic(items, opt);
  if (name == "closure") return suite_closure(items, opt);
  if (name == "colon") return suite_colon(items, opt);
  if (name == "theorem-gen") return suite_theorem_gen(items, opt);
  if (name == "bounds") return suite_bounds(items, opt);
  throw InputError("unknown suite '" + name + "' (symbolic, closure, colon, theorem-gen, bounds)");
}

}  // namespace edgereg
