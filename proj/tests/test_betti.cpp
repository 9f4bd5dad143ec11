#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "edgereg/betti.hpp"
#include "edgereg/constructions.hpp"

using namespace edgereg;

namespace {

MonomialIdeal ideal(const ContextPtr& ctx, std::initializer_list<const char*> gens) {
  std::vector<Monomial> v;
  for (const char* g : gens) v.push_back(parse_monomial(ctx, g));
  return MonomialIdeal::minimalize(ctx, std::move(v));
}

MonomialIdeal random_ideal(const ContextPtr& ctx, std::mt19937_64& rng, int gens, Exponent maxexp) {
  std::uniform_int_distribution<Exponent> d(0, maxexp);
  std::vector<Monomial> v;
  for (int k = 0; k < gens; ++k) {
    ExponentVector e(ctx->size());
    for (auto& x : e) x = d(rng);
    v.emplace_back(ctx, e);
  }
  auto I = MonomialIdeal::minimalize(ctx, std::move(v));
  return I.is_unit() ? MonomialIdeal::from_generators(ctx, {Monomial::variable(ctx, 0)}) : I;
}

using Multigraded = std::map<std::pair<int, ExponentVector>, std::size_t>;

Multigraded table_map(const BettiTable& t) {
  Multigraded out;
  for (const auto& e : t.entries())
    if (e.rank) out[{e.i, e.multidegree}] += e.rank;
  return out;
}

std::size_t rank_gf(std::vector<std::vector<long>> m, long p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    long inv = 1;
    for (long b = ((m[rank][c] % p) + p) % p, e = p - 2; e; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank) continue;
      long f = ((m[r][c] % p) + p) % p * inv % p;
      if (!f) continue;
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Betti numbers from the Taylor complex: in multidegree a the basis is the
// generator subsets with lcm a, and the differential keeps only faces whose
// lcm is still a.
Multigraded taylor_betti(const MonomialIdeal& I, long p) {
  const auto& g = I.gens();
  const std::size_t n = I.context()->size();
  std::map<ExponentVector, std::vector<std::uint32_t>> by_lcm;
  for (std::uint32_t s = 1; s < (1u << g.size()); ++s) {
    ExponentVector a(n, 0);
    for (std::size_t j = 0; j < g.size(); ++j)
      if (s >> j & 1)
        for (std::size_t i = 0; i < n; ++i) a[i] = std::max(a[i], g[j][i]);
    by_lcm[a].push_back(s);
  }
  Multigraded out;
  for (const auto& [a, faces] : by_lcm) {
    std::map<int, std::vector<std::uint32_t>> by_dim;
    for (auto f : faces) by_dim[std::popcount(f) - 1].push_back(f);
    auto boundary_rank = [&](int i) -> std::size_t {
      if (!by_dim.count(i) || !by_dim.count(i - 1)) return 0;
      const auto& up = by_dim[i];
      const auto& down = by_dim[i - 1];
      std::vector<std::vector<long>> m(up.size(), std::vector<long>(down.size(), 0));
      for (std::size_t r = 0; r < up.size(); ++r) {
        int sign = 1;
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (!(up[r] >> j & 1)) continue;
          auto it = std::find(down.begin(), down.end(), up[r] & ~(1u << j));
          if (it != down.end()) m[r][static_cast<std::size_t>(it - down.begin())] = sign;
          sign = -sign;
        }
      }
      return rank_gf(std::move(m), p);
    };
    for (const auto& [i, f] : by_dim) {
      std::size_t b = f.size() - boundary_rank(i) - boundary_rank(i + 1);
      if (b) out[{i, a}] = b;
    }
  }
  return out;
}

// Stanley-Reisner ideal of the six-vertex real projective plane: the ten
// triangles that are not faces.
MonomialIdeal projective_plane_ideal() {
  const std::vector<std::array<int, 3>> faces = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                                 {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}};
  auto ctx = RingContext::standard(6);
  std::vector<Monomial> gens;
  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b)
      for (int c = b + 1; c <= 6; ++c)
        if (std::find(faces.begin(), faces.end(), std::array<int, 3>{a, b, c}) == faces.end())
          gens.push_back(Monomial::squarefree(ctx, std::vector<std::size_t>{std::size_t(a - 1), std::size_t(b - 1), std::size_t(c - 1)}));
  return MonomialIdeal::minimalize(ctx, gens);
}

SimplicialComplex projective_plane() {
  SimplicialComplex k;
  for (auto [a, b, c] : std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                                        {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}})
    k.facets.push_back(bit(a - 1) | bit(b - 1) | bit(c - 1));
  return k;
}

BettiOptions opts(unsigned p) { return BettiOptions{FieldChar(p), Budgets{0, 0, 0, 0}, 2}; }

}  // namespace

TEST(Lattice, Examples) {
  auto ctx = RingContext::make({"x", "y"});
  auto L = lcm_lattice(ideal(ctx, {"x^2", "y^2"}));
  EXPECT_EQ(L.elements, (std::vector<ExponentVector>{{0, 2}, {2, 0}, {2, 2}}));
  auto m = ideal(RingContext::make({"x", "y", "z"}), {"x", "y", "z"});
  EXPECT_EQ(lcm_lattice(m).elements.size(), 7u);
  EXPECT_THROW(lcm_lattice(power(edge_ideal(cycle_graph(7)), 3), 10), BudgetExceeded);
}

TEST(UpperKoszul, Examples) {
  auto ctx = RingContext::make({"x", "y"});
  auto I = ideal(ctx, {"x^2", "y^2"});
  ExponentVector a{2, 2};
  auto k = upper_koszul(I, a).complex;
  EXPECT_EQ(k.facets.size(), 2u);
  EXPECT_EQ(betti_at(I, a), (std::vector<std::size_t>{0, 1}));
  ExponentVector b{2, 0};
  EXPECT_EQ(betti_at(I, b), (std::vector<std::size_t>{1}));
  ExponentVector c{3, 0};
  EXPECT_TRUE(betti_at(I, c).empty());
  ExponentVector d{1, 1};
  EXPECT_TRUE(upper_koszul(I, d).complex.is_void());
}

TEST(Homology, SmallComplexes) {
  SimplicialComplex points{{bit(0), bit(1)}};
  EXPECT_EQ(homology_ranks(points), (std::vector<std::size_t>{0, 1}));
  SimplicialComplex circle{{bit(0) | bit(1), bit(1) | bit(2), bit(0) | bit(2)}};
  EXPECT_EQ(homology_ranks(circle), (std::vector<std::size_t>{0, 0, 1}));
  SimplicialComplex empty_face{{0}};
  EXPECT_EQ(homology_ranks(empty_face), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(homology_ranks(SimplicialComplex{}).empty());
  SimplicialComplex simplex{{bit(0) | bit(1) | bit(2)}};
  EXPECT_TRUE(homology_ranks(simplex).empty());
  // Two hollow triangles sharing a vertex.
  SimplicialComplex wedge{{bit(0) | bit(1), bit(1) | bit(2), bit(0) | bit(2), bit(2) | bit(3), bit(3) | bit(4), bit(2) | bit(4)}};
  EXPECT_EQ(homology_ranks(wedge), (std::vector<std::size_t>{0, 0, 2}));
}

TEST(Homology, CharacteristicMatters) {
  auto rp2 = projective_plane();
  EXPECT_EQ(homology_ranks(rp2, FieldChar(2)), (std::vector<std::size_t>{0, 0, 1, 1}));
  EXPECT_TRUE(homology_ranks(rp2, FieldChar(0)).empty());
  EXPECT_TRUE(homology_ranks(rp2, FieldChar(32003)).empty());
  EXPECT_THROW(FieldChar(4), InputError);
}

TEST(Betti, KoszulTable) {
  auto ctx = RingContext::standard(6);
  auto m = variable_ideal(ctx, std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  auto coarse = graded_betti(m, opts(32003)).coarse();
  const std::size_t binom[] = {6, 15, 20, 15, 6, 1};
  EXPECT_EQ(coarse.size(), 6u);
  for (int i = 0; i < 6; ++i) EXPECT_EQ((coarse[{i, i + 1}]), binom[i]) << i;
  EXPECT_EQ(regularity(m), 1);
}

TEST(Betti, SquaresTable) {
  auto ctx = RingContext::make({"x", "y"});
  auto coarse = graded_betti(ideal(ctx, {"x^2", "y^2"})).coarse();
  std::map<std::pair<int, std::int64_t>, std::size_t> expected{{{0, 2}, 2}, {{1, 4}, 1}};
  EXPECT_EQ(coarse, expected);
  EXPECT_EQ(regularity(ideal(ctx, {"x^2", "y^2"})), 3);
}

TEST(Betti, Regularities) {
  EXPECT_EQ(regularity(edge_ideal(cycle_graph(5))), 3);
  EXPECT_EQ(regularity(edge_ideal(cycle_graph(6))), 3);
  EXPECT_EQ(regularity(edge_ideal(Graph(6, {{1, 2}, {3, 4}, {5, 6}}))), 4);
  EXPECT_EQ(regularity(edge_ideal(complete_graph(5))), 2);
  auto ctx = RingContext::make({"x"});
  EXPECT_FALSE(regularity(MonomialIdeal(ctx)).has_value());
  EXPECT_EQ(regularity(MonomialIdeal::unit(ctx)), 0);
}

TEST(Betti, ClutterSquare) {
  auto I = parse_ideal(
      "vars: x1 x2 x3 x4 x5 x6\n"
      "x1*x4*x5\nx1*x3*x6\nx2*x3*x4\nx2*x5*x6\nx3*x4*x5\nx3*x4*x6\nx3*x5*x6\nx4*x5*x6\n");
  EXPECT_EQ(regularity(power(I, 2), opts(32003)), 7);
}

TEST(Betti, ProjectivePlaneDependsOnCharacteristic) {
  auto I = projective_plane_ideal();
  ASSERT_EQ(I.size(), 10u);
  auto t2 = graded_betti(I, opts(2));
  auto t0 = graded_betti(I, opts(0));
  EXPECT_EQ(table_map(t2), taylor_betti(I, 2));
  EXPECT_EQ(table_map(t0), taylor_betti(I, 32003));
  EXPECT_NE(table_map(t2), table_map(t0));
  EXPECT_EQ(t2.regularity(), 4);
  EXPECT_EQ(t0.regularity(), 3);
}

TEST(Betti, BudgetsAreEnforced) {
  BettiOptions o = opts(32003);
  o.budget.max_lattice = 10;
  EXPECT_THROW(graded_betti(power(edge_ideal(cycle_graph(5)), 2), o), BudgetExceeded);
}

// Property: the walker and the pairwise-lcm fixpoint give the same lattice.
TEST(Property, LatticeConstructionsAgree) {
  auto ctx = RingContext::make({"a", "b", "c", "d"});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto I = random_ideal(ctx, rng, 6, 3);
    EXPECT_EQ(lcm_lattice(I, 0).elements, lcm_lattice_fixpoint(I, 0).elements) << I.to_string();
  }
}

// Property: K^a from facets equals K^a from face-by-face membership, and the
// collapsed homology equals the homology of the complex as given.
TEST(Property, KoszulComplexesAndCollapse) {
  auto ctx = RingContext::make({"a", "b", "c", "d"});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto I = random_ideal(ctx, rng, 6, 2);
    for (const auto& a : lcm_lattice(I, 0).elements) {
      auto facet = upper_koszul(I, a).complex;
      auto faces = upper_koszul_by_faces(I, a);
      facet.reduce();
      EXPECT_EQ(facet.facets, faces.facets);
      EXPECT_EQ(homology_ranks(facet), homology_ranks_direct(facet));
    }
  }
}

// Property: Betti tables match the Taylor-complex oracle, and the
// alternating sum of Betti numbers in each multidegree matches it too.
TEST(Property, TaylorOracle) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 30; ++trial) {
    auto ctx = RingContext::standard(3 + trial % 2);
    auto I = random_ideal(ctx, rng, 4 + trial % 4, 3);
    for (unsigned p : {2u, 32003u}) {
      auto t = graded_betti(I, opts(p));
      EXPECT_EQ(table_map(t), taylor_betti(I, p)) << I.to_string() << " char " << p;
    }
  }
}

// Property: characteristic 2 and a large prime agree on edge ideals of small
// graphs (their complexes have no torsion at this size).
TEST(Property, CharacteristicAgreementOnEdgeIdeals) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 5 + trial % 3;
    Graph g(n);
    std::bernoulli_distribution coin(0.45);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (coin(rng)) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (g.is_empty_graph()) continue;
    auto I = power(edge_ideal(g), 2);
    EXPECT_EQ(table_map(graded_betti(I, opts(2))), table_map(graded_betti(I, opts(32003)))) << emit_graph(g);
  }
}

// Property: β_{0,a} is 1 at each generator and 0 elsewhere, and in every
// multidegree the alternating sum of Betti numbers is minus the reduced
// Euler characteristic of K^a.
TEST(Property, GeneratorsAndEulerCharacteristic) {
  auto ctx = RingContext::make({"a", "b", "c", "d"});
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    auto I = random_ideal(ctx, rng, 6, 2);
    Multigraded t = table_map(graded_betti(I, opts(32003)));
    std::set<ExponentVector> gens;
    for (const auto& g : I.gens()) gens.insert(g.vec());
    for (const auto& [key, rank] : t)
      if (key.first == 0) {
        EXPECT_TRUE(gens.count(key.second));
        EXPECT_EQ(rank, 1u);
      }
    for (const auto& g : gens) EXPECT_EQ((t[{0, g}]), 1u);
    for (const auto& a : lcm_lattice(I, 0).elements) {
      long alternating = 0;
      for (const auto& [key, rank] : t)
        if (key.second == a) alternating += (key.first % 2 ? -1 : 1) * static_cast<long>(rank);
      auto k = upper_koszul(I, a).complex;
      long euler = 0;
      if (!k.is_void()) {
        const auto faces = k.faces_by_size();
        for (std::size_t sz = 0; sz < faces.size(); ++sz) euler += (sz % 2 ? 1 : -1) * static_cast<long>(faces[sz].size());
      }
      EXPECT_EQ(alternating, -euler) << I.to_string();
    }
  }
}

// Property: regularity of powers does not increase on induced subgraphs.
TEST(Property, InducedSubgraphMonotonicity) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g(7);
    std::bernoulli_distribution coin(0.4);
    for (Vertex u = 0; u < 7; ++u)
      for (Vertex v = u + 1; v < 7; ++v)
        if (coin(rng)) g.add_edge(u, v);
    if (g.is_empty_graph()) continue;
    const VertexSet keep = g.vertices() & ~bit(static_cast<Vertex>(rng() % 7)) & ~bit(static_cast<Vertex>(rng() % 7));
    const Graph h = induced_subgraph(g, keep);
    if (h.is_empty_graph()) continue;
    for (unsigned s = 1; s <= 2; ++s) {
      auto rg = regularity(power(edge_ideal(g), s), opts(32003));
      auto rh = regularity(power(edge_ideal(h, graph_ring(g)), s), opts(32003));
      EXPECT_LE(*rh, *rg) << emit_graph(g);
    }
  }
}
