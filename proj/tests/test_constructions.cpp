#include <gtest/gtest.h>

#include <random>

#include "edgereg/constructions.hpp"
#include "edgereg/corpus.hpp"

using namespace edgereg;

namespace {

Graph bow_graph() { return Graph(7, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 5}}); }

MonomialIdeal ideal(const ContextPtr& ctx, std::initializer_list<const char*> gens) {
  std::vector<Monomial> v;
  for (const char* g : gens) v.push_back(parse_monomial(ctx, g));
  return MonomialIdeal::minimalize(ctx, std::move(v));
}

Monomial random_monomial(const ContextPtr& ctx, std::mt19937_64& rng, Exponent maxexp) {
  std::uniform_int_distribution<Exponent> d(0, maxexp);
  ExponentVector e(ctx->size());
  for (auto& x : e) x = d(rng);
  return Monomial(ctx, std::move(e));
}

// Connected graphs on few vertices with at least one odd cycle.
std::vector<Graph> small_nonbipartite(std::uint64_t seed, int count) {
  std::vector<Graph> out;
  std::mt19937_64 rng(seed);
  while (static_cast<int>(out.size()) < count) {
    auto g = random_graph(5 + uniform_below(rng, 2), 0.45, rng());
    if (is_connected(g) && !is_bipartite(g)) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST(EdgeIdeal, Generators) {
  auto I = edge_ideal(cycle_graph(5));
  EXPECT_EQ(I.to_string(), "(x1*x2, x1*x5, x2*x3, x3*x4, x4*x5)");
  EXPECT_TRUE(edge_ideal(Graph(3)).is_zero());
  EXPECT_TRUE(is_squarefree(I));
}

TEST(VertexCovers, Examples) {
  auto covers = minimal_vertex_covers(cycle_graph(5));
  EXPECT_EQ(covers.size(), 5u);
  for (auto c : covers) EXPECT_EQ(popcount(c), 3);
  EXPECT_EQ(minimal_vertex_covers(complete_graph(4)).size(), 4u);
  auto p3 = minimal_vertex_covers(path_graph(3));
  EXPECT_EQ(p3.size(), 2u);
  auto ctx = RingContext::make({"x", "y"});
  EXPECT_THROW(minimal_primes(ideal(ctx, {"x^2"})), std::invalid_argument);
}

TEST(Symbolic, Membership) {
  auto c5 = cycle_graph(5);
  auto ctx = graph_ring(c5);
  EXPECT_TRUE(symbolic_membership(c5, 3, parse_monomial(ctx, "x1*x2*x3*x4*x5")));
  EXPECT_FALSE(symbolic_membership(c5, 4, parse_monomial(ctx, "x1*x2*x3*x4*x5")));
  EXPECT_TRUE(symbolic_membership(c5, 2, parse_monomial(ctx, "x1*x2*x3*x4")));
  EXPECT_FALSE(symbolic_membership(c5, 2, parse_monomial(ctx, "x1*x2*x3")));
}

TEST(Symbolic, OddCycleExamples) {
  auto c5 = cycle_graph(5);
  auto I = edge_ideal(c5);
  EXPECT_EQ(symbolic_power_oracle(c5, 2), power(I, 2));
  auto s3 = symbolic_power_oracle(c5, 3);
  EXPECT_EQ(s3, power(I, 3) + ideal(I.context(), {"x1*x2*x3*x4*x5"}));
  EXPECT_EQ(symbolic_power_formula(c5, 3), s3);
  EXPECT_FALSE(symbolic_power_formula(c5, 4).has_value());

  auto c7 = cycle_graph(7);
  EXPECT_EQ(symbolic_power_oracle(c7, 3), power(edge_ideal(c7), 3));
  EXPECT_EQ(symbolic_power_formula(c7, 4), symbolic_power_oracle(c7, 4));

  Graph pendant(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {5, 6}});
  for (unsigned s = 1; s <= 3; ++s) EXPECT_EQ(symbolic_power_formula(pendant, s), symbolic_power_oracle(pendant, s)) << s;

  // Bipartite graphs: symbolic and ordinary powers coincide.
  for (unsigned s = 1; s <= 3; ++s) EXPECT_EQ(symbolic_power_oracle(cycle_graph(6), s), power(edge_ideal(cycle_graph(6)), s));
}

TEST(Symbolic, GeneratorBudget) {
  Budgets b;
  b.max_generators = 5;
  EXPECT_THROW(symbolic_power_oracle(cycle_graph(7), 3, b), BudgetExceeded);
}

TEST(Newton, Membership) {
  auto ctx = RingContext::make({"x", "y"});
  auto I = ideal(ctx, {"x^2", "y^2"});
  EXPECT_TRUE(newton_membership(I, parse_monomial(ctx, "x*y").exponents()));
  EXPECT_FALSE(newton_membership(I, parse_monomial(ctx, "x").exponents()));
  EXPECT_TRUE(newton_membership(I, parse_monomial(ctx, "x^2*y^2").exponents(), 2));
  EXPECT_FALSE(newton_membership(I, parse_monomial(ctx, "x^2*y").exponents(), 2));
  NewtonPolyhedron np(I, 1, 1);
  np.contains(parse_monomial(ctx, "x*y"));
  EXPECT_THROW(np.contains(parse_monomial(ctx, "x")), BudgetExceeded);
  EXPECT_THROW(NewtonPolyhedron(MonomialIdeal(ctx)), std::invalid_argument);
}

TEST(Closure, Examples) {
  auto ctx = RingContext::make({"x", "y"});
  EXPECT_EQ(closure_oracle(ideal(ctx, {"x^2", "y^2"})), ideal(ctx, {"x^2", "x*y", "y^2"}));
  EXPECT_EQ(closure_oracle(ideal(ctx, {"x^2", "y^2"}), 2), power(ideal(ctx, {"x", "y"}), 4));
  auto c5 = edge_ideal(cycle_graph(5));
  EXPECT_EQ(closure_oracle(c5), c5);
  auto c6 = cycle_graph(6);
  for (unsigned s = 1; s <= 3; ++s) EXPECT_EQ(closure_oracle(edge_ideal(c6), s), power(edge_ideal(c6), s));
}

TEST(Closure, DegreeCapRegression) {
  auto ctx = RingContext::make({"x", "y"});
  auto I = ideal(ctx, {"x", "y^3"});
  EXPECT_EQ(closure_oracle(I), I);
  EXPECT_EQ(closure_oracle(I, 2), ideal(ctx, {"x^2", "x*y^3", "y^6"}));
  auto J = ideal(ctx, {"x^3", "y^5"});
  auto cl = closure_oracle(J);
  // x^a y^b with a/3 + b/5 >= 1.
  std::vector<Monomial> expected;
  for (Exponent b = 0; b <= 5; ++b) {
    Exponent a = 0;
    while (5 * a + 3 * b < 15) ++a;
    expected.push_back(Monomial(ctx, {a, b}));
  }
  EXPECT_EQ(cl, MonomialIdeal::minimalize(ctx, expected));
}

TEST(Closure, BowGraph) {
  auto g = bow_graph();
  auto I = edge_ideal(g);
  auto mb = parse_monomial(I.context(), "x1*x2*x3*x5*x6*x7");
  EXPECT_EQ(closure_oracle(I, 2), power(I, 2));
  auto cl3 = closure_oracle(I, 3);
  EXPECT_EQ(cl3, power(I, 3) + MonomialIdeal::from_generators(I.context(), {mb}));
  EXPECT_EQ(closure_formula(g, 3), cl3);
  EXPECT_EQ(closure_formula(g, 5), closure_oracle(I, 5));
  EXPECT_EQ(closure_formula(g, 5), power(I, 5) + multiply(power(I, 2), mb));
}

TEST(Closure, NormalGraphsNeedNoFormulaTerms) {
  for (const auto& g : {cycle_graph(5), cycle_graph(6), complete_graph(4)}) {
    ASSERT_TRUE(is_normal_edge_ideal(g));
    for (unsigned s = 1; s <= 3; ++s) EXPECT_EQ(closure_formula(g, s), power(edge_ideal(g), s));
  }
}

TEST(PowerMembership, Examples) {
  auto ctx = RingContext::make({"x", "y"});
  auto I = ideal(ctx, {"x^2", "y^2"});
  auto k = power_membership_oracle(I, parse_monomial(ctx, "x*y"), 4);
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(*k, 2u);
  EXPECT_FALSE(power_membership_oracle(I, parse_monomial(ctx, "x"), 6).has_value());
}

TEST(EvenConnection, CycleExample) {
  auto c5 = cycle_graph(5);
  auto q = even_connected_pairs(c5, {{1, 2}});
  EXPECT_TRUE(std::find(q.pairs.begin(), q.pairs.end(), VertexPair{0, 3}) != q.pairs.end());
  std::vector<VertexPair> beyond;
  for (auto p : q.pairs)
    if (!c5.adjacent(p.first, p.second)) beyond.push_back(p);
  EXPECT_EQ(beyond, (std::vector<VertexPair>{{0, 3}}));
  const auto& w = q.witness.at({0, 3});
  EXPECT_EQ(w.size(), 4u);
  EXPECT_THROW(even_connected_pairs(c5, {{0, 2}}), InputError);
}

TEST(EvenConnection, BanerjeeColonExample) {
  auto c5 = cycle_graph(5);
  auto ctx = graph_ring(c5);
  auto I = edge_ideal(c5, ctx);
  auto expected = I + ideal(ctx, {"x1*x4"});
  EXPECT_EQ(banerjee_colon(c5, 2, {{1, 2}}, ctx), expected);
  EXPECT_EQ(colon(power(I, 2), edge_product(ctx, {{1, 2}})), expected);
  EXPECT_THROW(banerjee_colon(c5, 3, {{1, 2}}), std::invalid_argument);
}

TEST(TColon, Examples) {
  auto c5 = cycle_graph(5);
  auto ctx = graph_ring(c5);
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  EXPECT_EQ(t_colon_structure(c5, 3, c5.vertices()), variable_ideal(ctx, all));
  EXPECT_THROW(t_colon_structure(c5, 1, bit(0) | bit(1)), HypothesisViolation);

  auto g = bow_graph();
  auto bowset = enumerate_bows(g).front().set();
  auto tc = t_colon_structure(g, 3, bowset);
  auto direct = colon(power(edge_ideal(g), 3), vertex_product(graph_ring(g), bowset));
  EXPECT_EQ(tc, direct);
}

// Property: the even-connection description of I^s : e_1...e_{s-1}.
TEST(Property, BanerjeeColonMatchesDirectColon) {
  std::mt19937_64 rng(31337);
  for (const auto& g : small_nonbipartite(5, 25)) {
    const auto edges = g.edges();
    const auto ctx = graph_ring(g);
    for (unsigned s = 2; s <= 3; ++s) {
      std::vector<VertexPair> pick;
      for (unsigned k = 1; k < s; ++k) pick.push_back(edges[uniform_below(rng, edges.size())]);
      auto direct = colon(power(edge_ideal(g, ctx), s), edge_product(ctx, pick));
      EXPECT_EQ(banerjee_colon(g, s, pick, ctx), direct) << emit_graph(g);
    }
  }
}

// Property: I^s ⊆ cl(I^s) ⊆ I^(s), and the closure generators lie in the
// Newton polyhedron while the symbolic oracle agrees with prime membership.
TEST(Property, Sandwich) {
  std::mt19937_64 rng(4242);
  for (const auto& g : small_nonbipartite(9, 12)) {
    const auto I = edge_ideal(g);
    for (unsigned s = 1; s <= 3; ++s) {
      auto Is = power(I, s);
      auto cl = closure_oracle(I, s);
      auto sym = symbolic_power_oracle(I, s);
      EXPECT_TRUE(contains(cl, Is));
      EXPECT_TRUE(contains(sym, cl));
      NewtonPolyhedron np(I, s);
      for (const auto& m : cl.gens()) EXPECT_TRUE(np.contains(m));
      for (int t = 0; t < 30; ++t) {
        auto m = random_monomial(I.context(), rng, 2);
        EXPECT_EQ(contains(sym, m), symbolic_membership(g, s, m));
      }
    }
  }
}

// Property: closure generators are integral over I^s in the sense
// m^k ∈ I^{sk} for some small k; an independent check of the LP.
TEST(Property, ClosureGeneratorsAreIntegral) {
  auto g = bow_graph();
  auto I = edge_ideal(g);
  for (unsigned s = 1; s <= 3; ++s) {
    auto Is = power(I, s);
    const auto cl = closure_oracle(I, s);
    for (const auto& m : cl.gens()) EXPECT_TRUE(power_membership_oracle(Is, m, 2).has_value()) << m.to_string();
  }
  auto ctx = RingContext::make({"x", "y", "z"});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Monomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_monomial(ctx, rng, 3));
    auto J = MonomialIdeal::minimalize(ctx, gens);
    if (J.is_unit()) continue;
    const auto cl = closure_oracle(J);
    for (const auto& m : cl.gens()) EXPECT_TRUE(power_membership_oracle(J, m, 30).has_value()) << J.to_string() << " " << m.to_string();
  }
}
