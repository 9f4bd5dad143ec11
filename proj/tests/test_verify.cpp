#include <gtest/gtest.h>

#include "edgereg/corpus.hpp"
#include "edgereg/verify.hpp"

using namespace edgereg;

namespace {

SuiteOptions small_options(unsigned smax) {
  SuiteOptions opt;
  opt.smax = smax;
  opt.trials = 20;
  opt.seed = 3;
  opt.threads = 2;
  opt.budget.max_lattice = 0;
  return opt;
}

std::size_t count_claim(const VerificationReport& r, const std::string& prefix, Status st) {
  std::size_t n = 0;
  for (const auto& i : r.instances)
    if (i.claim.rfind(prefix, 0) == 0 && i.status == st) ++n;
  return n;
}

}  // namespace

TEST(Corpus, Families) {
  auto b = load_corpus("builtin:bicyclic(1,1,2)");
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].graph->order(), 7u);
  EXPECT_EQ(b[0].graph->edge_count(), 8u);
  auto c = load_corpus("builtin:cycles(5..9)");
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(c.front().id, "C5");
  EXPECT_EQ(c.back().graph->edge_count(), 9u);
  auto f = load_corpus("builtin:fixtures");
  bool has_clutter = false;
  for (const auto& it : f) has_clutter |= it.ideal && *it.ideal == detail::clutter_fixture();
  EXPECT_TRUE(has_clutter);
  EXPECT_EQ(load_corpus("builtin:bicyclic").size(), 4u);
  EXPECT_THROW(load_corpus("builtin:nosuch"), InputError);
  EXPECT_THROW(load_corpus("builtin:cycles(2..4)"), InputError);
  EXPECT_THROW(load_corpus("/does/not/exist"), InputError);
}

TEST(Corpus, SmallFamilyShape) {
  auto items = load_corpus("builtin:small");
  EXPECT_GE(items.size(), 30u);
  for (const auto& it : items) {
    ASSERT_TRUE(it.graph.has_value());
    EXPECT_LE(it.graph->order(), 8u);
    EXPECT_TRUE(is_connected(*it.graph)) << it.id;
    EXPECT_FALSE(is_bipartite(*it.graph)) << it.id;
  }
}

TEST(Corpus, RandomIsReproducible) {
  auto a = load_corpus("builtin:random(8,0.4,11,5)");
  auto b = load_corpus("builtin:random(8,0.4,11,5)");
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(*a[k].graph, *b[k].graph);
  auto c = load_corpus("builtin:random(8,0.4,12,5)");
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) differs |= !(*a[k].graph == *c[k].graph);
  EXPECT_TRUE(differs);
}

TEST(Report, EmptyCorpus) {
  auto r = run_suite("symbolic", {}, small_options(2));
  EXPECT_TRUE(r.instances.empty());
  EXPECT_TRUE(r.passed());
  auto j = to_json(r);
  EXPECT_EQ(j["summary"]["pass"], 0);
  EXPECT_EQ(j["instances"].size(), 0u);
}

TEST(Report, FailureCarriesWitnessAndInput) {
  CorpusItem item{"C5", cycle_graph(5), {}};
  std::vector<InstanceRecord> out;
  detail::Recorder rec(item, out);
  rec.run(2, "always-false", [] { return detail::fail_with(Json{{"reason", "forced"}}); });
  rec.run(2, "budget", []() -> detail::Outcome { throw BudgetExceeded("cap", 1); });
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].status, Status::fail);
  EXPECT_EQ(out[0].witness["reason"], "forced");
  EXPECT_EQ(out[0].witness["input"], emit_graph(cycle_graph(5)));
  EXPECT_EQ(out[1].status, Status::clipped);
}

TEST(Report, JsonRoundTripAndFormats) {
  auto r = run_suite("symbolic", load_corpus("builtin:fixtures"), small_options(2));
  auto text = emit_report(r, "json");
  auto back = report_from_json(Json::parse(text));
  EXPECT_EQ(emit_report(back, "json"), text);
  EXPECT_NE(emit_report(r, "csv").find("graph,s,claim,status,ms,witness"), std::string::npos);
  EXPECT_NE(emit_report(r, "text").find("summary: pass"), std::string::npos);
  EXPECT_THROW(emit_report(r, "yaml"), InputError);
  EXPECT_THROW(report_from_json(Json::parse("{\"suite\": 1}")), InputError);
}

TEST(Report, RerunsAreByteIdentical) {
  auto items = load_corpus("builtin:random(7,0.4,5,4)");
  for (const auto& suite : suite_names()) {
    auto a = emit_report(run_suite(suite, items, small_options(2)), "json");
    auto opt = small_options(2);
    opt.threads = 1;
    auto b = emit_report(run_suite(suite, items, opt), "json");
    EXPECT_EQ(a, b) << suite;
  }
}

TEST(Suites, UnknownNameThrows) { EXPECT_THROW(run_suite("nosuch", {}, small_options(2)), InputError); }

TEST(Suites, SymbolicOnCycles) {
  auto r = run_suite("symbolic", load_corpus("builtin:cycles(3..7)"), small_options(3));
  EXPECT_TRUE(r.passed()) << emit_report(r, "text");
  EXPECT_EQ(count_claim(r, "symbolic-gens", Status::pass), 14u);
  // C3 stops at s = 2.
  EXPECT_EQ(count_claim(r, "symbolic-gens", Status::clipped), 1u);
}

TEST(Suites, ClosureOnBicyclic) {
  auto opt = small_options(4);
  opt.reg_smax = 3;
  auto r = run_suite("closure", load_corpus("builtin:bicyclic(1,1,2)"), opt);
  EXPECT_TRUE(r.passed()) << emit_report(r, "text");
  EXPECT_EQ(count_claim(r, "closure-gens", Status::pass), 4u);
  EXPECT_EQ(count_claim(r, "closure-reg", Status::pass), 3u);
  EXPECT_EQ(count_claim(r, "dstar-inclusion", Status::pass), 3u);
}

TEST(Suites, ColonAndCriterionOnFixtures) {
  auto items = load_corpus("builtin:fixtures");
  auto colon = run_suite("colon", items, small_options(3));
  EXPECT_TRUE(colon.passed()) << emit_report(colon, "text");
  EXPECT_EQ(count_claim(colon, "even-connection-colon", Status::pass) + count_claim(colon, "even-connection-colon", Status::na), 20u);
  auto thm = run_suite("theorem-gen", items, small_options(3));
  EXPECT_TRUE(thm.passed()) << emit_report(thm, "text");
  EXPECT_GT(thm.summary().pass, 0u);
}

TEST(Suites, BoundsOnFixtures) {
  auto r = run_suite("bounds", load_corpus("builtin:fixtures"), small_options(3));
  EXPECT_TRUE(r.passed()) << emit_report(r, "text");
  EXPECT_GT(count_claim(r, "reg-lower-matching", Status::pass), 0u);
}
