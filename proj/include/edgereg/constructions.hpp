#pragma once

// Ideals attached to a graph: edge ideals and their ordinary powers,
// symbolic powers (cover formula and intersection oracle), integral closures
// of powers (bow formula and Newton-polyhedron oracle), and colon ideals of
// powers described through even-connected vertex pairs.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "edgereg/errors.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/lp.hpp"
#include "edgereg/monomial.hpp"

namespace edgereg {

inline ContextPtr graph_ring(const Graph& g) { return RingContext::standard(std::max<std::size_t>(g.label_count(), 1)); }

inline Monomial vertex_product(const ContextPtr& ctx, VertexSet s) { return Monomial::squarefree(ctx, to_vector(s)); }

/// I(G) = (x_u x_v : uv ∈ E(G)).
inline MonomialIdeal edge_ideal(const Graph& g, const ContextPtr& ctx) {
  if (ctx->size() < g.label_count()) throw InputError("edge_ideal: ring is smaller than the graph");
  std::vector<Monomial> gens;
  for (auto [u, v] : g.edges()) gens.push_back(vertex_product(ctx, bit(u) | bit(v)));
  return MonomialIdeal::minimalize(ctx, std::move(gens));
}

inline MonomialIdeal edge_ideal(const Graph& g) { return edge_ideal(g, graph_ring(g)); }

// ---------------------------------------------------------------------------
// Minimal primes of squarefree ideals

/// Inclusion-minimal transversals of a family of vertex sets.
inline std::vector<VertexSet> minimal_transversals(const std::vector<VertexSet>& family) {
  std::set<VertexSet> found;
  auto minimal = [&](VertexSet c) {
    // Every chosen vertex must be the only hit of some member.
    for (Vertex v : to_vector(c)) {
      bool priv = false;
      for (VertexSet e : family)
        if ((e & c) == bit(v)) {
          priv = true;
          break;
        }
      if (!priv) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, VertexSet chosen, VertexSet banned) -> void {
    const VertexSet* open = nullptr;
    for (const auto& e : family)
      if (!(e & chosen)) {
        open = &e;
        break;
      }
    if (!open) {
      if (minimal(chosen)) found.insert(chosen);
      return;
    }
    VertexSet options = *open & ~banned;
    // Branch on each vertex of the first unhit member; vertices tried earlier
    // are banned in later branches to avoid revisiting the same transversal.
    for (Vertex v : to_vector(options)) {
      self(self, chosen | bit(v), banned);
      banned |= bit(v);
    }
  };
  search(search, 0, 0);
  return {found.begin(), found.end()};
}

inline std::vector<VertexSet> minimal_vertex_covers(const Graph& g) {
  std::vector<VertexSet> family;
  for (auto [u, v] : g.edges()) family.push_back(bit(u) | bit(v));
  return minimal_transversals(family);
}

inline bool is_squarefree(const MonomialIdeal& I) {
  for (const auto& g : I.gens())
    for (Exponent e : g.exponents())
      if (e > 1) return false;
  return true;
}

/// Minimal primes of a squarefree monomial ideal, as variable sets.
inline std::vector<VertexSet> minimal_primes(const MonomialIdeal& I) {
  if (!is_squarefree(I)) throw std::invalid_argument("minimal_primes: ideal is not squarefree");
  if (I.context()->size() > kMaxVertices) throw InputError("minimal_primes: too many variables");
  std::vector<VertexSet> family;
  for (const auto& g : I.gens()) {
    VertexSet s = 0;
    for (auto i : g.support()) s |= bit(static_cast<Vertex>(i));
    family.push_back(s);
  }
  return minimal_transversals(family);
}

// ---------------------------------------------------------------------------
// Symbolic powers

/// m ∈ I^(s) iff every minimal prime P_C sees at least s factors of m.
inline bool symbolic_membership(const std::vector<VertexSet>& primes, unsigned s, const Monomial& m) {
  for (VertexSet c : primes) {
    std::int64_t sum = 0;
    for_each_vertex(c, [&](Vertex v) { sum += m[static_cast<std::size_t>(v)]; });
    if (sum < static_cast<std::int64_t>(s)) return false;
  }
  return true;
}

inline bool symbolic_membership(const Graph& g, unsigned s, const Monomial& m) {
  if (m.size() != g.label_count()) throw ContextMismatch();
  return symbolic_membership(minimal_vertex_covers(g), s, m);
}

/// I^(s) = ∩_P P^s over the minimal primes of a squarefree ideal.
inline MonomialIdeal symbolic_power_oracle(const MonomialIdeal& I, unsigned s, const Budgets& budget = {}) {
  if (s == 0) return MonomialIdeal::unit(I.context());
  if (I.is_zero()) return I;
  const auto primes = minimal_primes(I);
  MonomialIdeal acc = MonomialIdeal::unit(I.context());
  for (VertexSet c : primes) {
    acc = intersect(acc, power(variable_ideal(I.context(), to_vector(c)), s));
    if (budget.max_generators && acc.size() > budget.max_generators)
      throw BudgetExceeded("symbolic power oracle generator budget exceeded", acc.size());
  }
  return acc;
}

inline MonomialIdeal symbolic_power_oracle(const Graph& g, unsigned s, const Budgets& budget = {}) {
  return symbolic_power_oracle(edge_ideal(g), s, budget);
}

/// Generators of I(G)^(s) from the smallest induced odd cycles: I^s below
/// s = n+1, I^{n+1} + (m_C) at s = n+1 (2n+1 the odd girth), and I^s for all s
/// on bipartite graphs. nullopt where no closed form is known.
inline std::optional<MonomialIdeal> symbolic_power_formula(const Graph& g, unsigned s) {
  const auto ctx = graph_ring(g);
  const MonomialIdeal I = edge_ideal(g, ctx);
  const auto girth = odd_girth(g);
  if (!girth) return power(I, s);
  const unsigned n = static_cast<unsigned>((*girth - 1) / 2);
  if (s <= n) return power(I, s);
  if (s > n + 1) return std::nullopt;
  std::vector<Monomial> extra;
  for (const auto& c : enumerate_cycles(g, true, true))
    if (c.length() == static_cast<std::size_t>(*girth)) extra.push_back(vertex_product(ctx, c.set()));
  return power(I, s) + MonomialIdeal::minimalize(ctx, std::move(extra));
}

// ---------------------------------------------------------------------------
// Integral closure

/// scale·conv(generators of I) + R^n_{≥0}, i.e. the Newton polyhedron of
/// I^scale. Membership is exact; separating cuts from failed LPs are cached
/// and points dominating a known member are accepted without an LP.
class NewtonPolyhedron {
 public:
  NewtonPolyhedron(const MonomialIdeal& I, unsigned scale = 1, std::size_t lp_cap = 0)
      : n_(I.context()->size()), scale_(scale), lp_cap_(lp_cap) {
    if (I.is_zero()) throw std::invalid_argument("Newton polyhedron of the zero ideal is empty");
    if (scale == 0) throw std::invalid_argument("Newton polyhedron scale must be positive");
    for (const auto& g : I.gens()) points_.push_back(g.vec());
  }

  const std::vector<ExponentVector>& points() const noexcept { return points_; }
  unsigned scale() const noexcept { return scale_; }
  std::size_t lp_calls() const noexcept { return lp_calls_; }
  std::size_t cut_count() const noexcept { return cuts_.size(); }

  void add_member(const ExponentVector& p) {
    members_.push_back(p);
    member_bits_.push_back(detail::support_bits(p));
  }

  bool contains(std::span<const Exponent> a) {
    if (a.size() != n_) throw ContextMismatch();
    for (const auto& cut : cuts_) {
      long long lhs = 0;
      for (std::size_t i = 0; i < n_; ++i) lhs += cut.w[i] * a[i];
      if (lhs < cut.c) return false;
    }
    const auto bits = detail::support_bits(a);
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (member_bits_[k] & ~bits) continue;
      bool dom = true;
      for (std::size_t i = 0; i < n_ && dom; ++i) dom = members_[k][i] <= a[i];
      if (dom) return true;
    }
    if (lp_cap_ && lp_calls_ >= lp_cap_) throw BudgetExceeded("Newton polyhedron LP budget exceeded", lp_calls_);
    ++lp_calls_;
    auto res = solve_newton_lp(points_, scale_, a);
    if (!res.feasible) remember_cut(res);
    return res.feasible;
  }

  bool contains(const Monomial& m) { return contains(m.exponents()); }

 private:
  struct Cut {
    std::vector<long long> w;
    long long c;
  };

  void remember_cut(const NewtonLpResult& res) {
    mpz_class den = res.cut_c.get_den();
    for (const auto& w : res.cut_w) den = lcm(den, mpz_class(w.get_den()));
    Cut cut;
    for (const auto& w : res.cut_w) {
      mpz_class v = w.get_num() * (den / w.get_den());
      if (!v.fits_slong_p()) return;
      cut.w.push_back(v.get_si());
    }
    // w·x ≥ c with integer w and x: round c up.
    mpq_class c = res.cut_c * den;
    mpz_class ci = c.get_num() / c.get_den();
    if (ci * c.get_den() < c.get_num()) ci += 1;
    if (!ci.fits_slong_p()) return;
    cut.c = ci.get_si();
    cuts_.push_back(std::move(cut));
  }

  std::size_t n_;
  unsigned scale_;
  std::size_t lp_cap_;
  std::size_t lp_calls_ = 0;
  std::vector<ExponentVector> points_;
  std::vector<ExponentVector> members_;
  std::vector<std::uint64_t> member_bits_;
  std::vector<Cut> cuts_;
};

inline bool newton_membership(const MonomialIdeal& I, std::span<const Exponent> a, unsigned scale = 1) {
  NewtonPolyhedron np(I, scale);
  return np.contains(a);
}

struct ClosureSearchStats {
  std::size_t lp_calls = 0;
  std::size_t nodes = 0;
  std::int64_t degree_cap = 0;
  std::int64_t max_generator_degree = 0;
};

/// Minimal generators of cl(I^scale), enumerated as the divisibility-minimal
/// integer points of the Newton polyhedron.
///
/// A minimal point a equals ⌈q⌉ for some q in scale·conv(gens), so
/// a_i ≤ scale·max_g g_i and deg a ≤ scale·maxdeg + n - 1. The search assigns
/// coordinates in order and prunes a prefix when (prefix, box maxima) is
/// outside the polyhedron, or when lowering the newest coordinate by one with
/// zeros after it is still inside (no completion can then be minimal).
inline MonomialIdeal closure_oracle(const MonomialIdeal& I, unsigned scale = 1, const Budgets& budget = {},
                                    ClosureSearchStats* stats = nullptr) {
  if (I.is_zero()) throw std::invalid_argument("closure_oracle: zero ideal");
  const auto& ctx = I.context();
  if (I.is_unit() || scale == 0) return MonomialIdeal::unit(ctx);
  const std::size_t n = ctx->size();
  NewtonPolyhedron np(I, scale, budget.max_lp_calls);
  const MonomialIdeal base = power(I, scale);
  for (const auto& g : base.gens()) np.add_member(g.vec());

  ExponentVector box(n, 0);
  for (const auto& g : I.gens())
    for (std::size_t i = 0; i < n; ++i) box[i] = std::max<Exponent>(box[i], g[i]);
  for (auto& b : box) b = static_cast<Exponent>(b * static_cast<std::int64_t>(scale));
  const std::int64_t cap = static_cast<std::int64_t>(scale) * I.max_degree() + static_cast<std::int64_t>(n) - 1;

  Deadline deadline(budget.max_seconds);
  std::vector<Monomial> found;
  ExponentVector a(n, 0), probe(n, 0);
  std::size_t nodes = 0;

  auto search = [&](auto&& self, std::size_t k, std::int64_t deg) -> void {
    if ((++nodes & 0xfff) == 0) deadline.check("closure_oracle", nodes);
    if (k == n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        --a[i];
        const bool lower = np.contains(a);
        ++a[i];
        if (lower) return;
      }
      found.emplace_back(ctx, a);
      if (budget.max_generators && found.size() > budget.max_generators)
        throw BudgetExceeded("closure_oracle generator budget exceeded", found.size());
      return;
    }
    for (Exponent v = 0; v <= box[k] && deg + v <= cap; ++v) {
      a[k] = v;
      std::copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k) + 1, probe.begin());
      std::copy(box.begin() + static_cast<std::ptrdiff_t>(k) + 1, box.end(), probe.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      if (!np.contains(probe)) continue;
      if (v > 0) {
        std::fill(probe.begin() + static_cast<std::ptrdiff_t>(k) + 1, probe.end(), 0);
        --probe[k];
        if (np.contains(probe)) break;
      }
      self(self, k + 1, deg + v);
    }
    a[k] = 0;
  };
  search(search, 0, 0);

  MonomialIdeal result = MonomialIdeal::minimalize(ctx, std::move(found));
  if (stats) {
    stats->lp_calls = np.lp_calls();
    stats->nodes = nodes;
    stats->degree_cap = cap;
    stats->max_generator_degree = result.max_degree();
  }
  return result;
}

/// Sound but incomplete: true when m^k ∈ I^k for some k ≤ kmax.
inline std::optional<unsigned> power_membership_oracle(const MonomialIdeal& I, const Monomial& m, unsigned kmax) {
  if (kmax == 0) throw std::invalid_argument("power_membership_oracle: kmax must be positive");
  MonomialIdeal Ik = I;
  for (unsigned k = 1; k <= kmax; ++k) {
    if (k > 1) Ik = multiply(Ik, I);
    if (contains(Ik, pow(m, k))) return k;
  }
  return std::nullopt;
}

/// cl(I(G)^s) from the bows of G. Bow-free graphs are normal. With smallest
/// bow size k+1: I^s for s ≤ k and I^s + (m_B : |B|/2 = k+1) at s = k+1. Odd
/// bicyclic graphs (one bow, cycles of sizes 2m+1 and 2n+1) get
/// I^s + m_B I^{s-m-n-1} for every s ≥ m+n+1. nullopt otherwise.
inline std::optional<MonomialIdeal> closure_formula(const Graph& g, unsigned s) {
  const auto ctx = graph_ring(g);
  const MonomialIdeal I = edge_ideal(g, ctx);
  const MonomialIdeal Is = power(I, s);
  const auto bows = enumerate_bows(g);
  if (bows.empty()) return Is;
  const unsigned k1 = static_cast<unsigned>(bows.front().size);
  if (s < k1) return Is;
  if (is_odd_bicyclic(g)) {
    const Monomial mb = vertex_product(ctx, bows.front().set());
    return Is + multiply(power(I, s - k1), mb);
  }
  if (s > k1) return std::nullopt;
  std::vector<Monomial> extra;
  for (const auto& b : bows)
    if (static_cast<unsigned>(b.size) == k1) extra.push_back(vertex_product(ctx, b.set()));
  return Is + MonomialIdeal::minimalize(ctx, std::move(extra));
}

// ---------------------------------------------------------------------------
// Even-connection and colon ideals of powers

using VertexPair = std::pair<Vertex, Vertex>;

/// Vertex pairs (u ≤ v) joined by a walk p_0 … p_{2k+1} (k ≥ 1) whose edges
/// p_{2l-1}p_{2l} are drawn from the multiset without exceeding any
/// multiplicity. One witness walk is kept per pair.
struct EvenConnectionQuery {
  Graph graph;
  std::vector<VertexPair> edges;  // the multiset, each edge with u < v
  std::vector<VertexPair> pairs;
  std::map<VertexPair, std::vector<Vertex>> witness;
};

inline EvenConnectionQuery even_connected_pairs(const Graph& g, std::vector<VertexPair> edges) {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (!g.has_vertex(e.first) || !g.has_vertex(e.second) || !g.adjacent(e.first, e.second))
      throw InputError("even_connected_pairs: " + std::to_string(e.first + 1) + " " + std::to_string(e.second + 1) + " is not an edge");
  }
  std::vector<VertexPair> distinct = edges;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> remaining(distinct.size(), 0);
  for (const auto& e : edges)
    ++remaining[static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), e) - distinct.begin())];

  EvenConnectionQuery q{g, edges, {}, {}};
  std::set<std::pair<Vertex, std::vector<int>>> visited;
  std::vector<Vertex> walk;

  // At an even position after at least one multiset edge: any neighbour may
  // close the walk, or the walk continues through another multiset edge.
  auto extend = [&](auto&& self, Vertex at) -> void {
    if (!visited.insert({at, remaining}).second) return;
    for (Vertex v : to_vector(g.neighbors(at))) {
      VertexPair p{std::min(walk.front(), v), std::max(walk.front(), v)};
      if (!q.witness.count(p)) {
        auto w = walk;
        w.push_back(v);
        q.witness.emplace(p, std::move(w));
      }
    }
    for (Vertex odd : to_vector(g.neighbors(at))) {
      for (std::size_t k = 0; k < distinct.size(); ++k) {
        if (!remaining[k]) continue;
        auto [x, y] = distinct[k];
        Vertex next;
        if (x == odd) next = y;
        else if (y == odd) next = x;
        else continue;
        --remaining[k];
        walk.push_back(odd);
        walk.push_back(next);
        self(self, next);
        walk.pop_back();
        walk.pop_back();
        ++remaining[k];
      }
    }
  };

  for (Vertex start : to_vector(g.vertices())) {
    visited.clear();
    for (Vertex odd : to_vector(g.neighbors(start))) {
      for (std::size_t k = 0; k < distinct.size(); ++k) {
        auto [x, y] = distinct[k];
        Vertex next;
        if (x == odd) next = y;
        else if (y == odd) next = x;
        else continue;
        --remaining[k];
        walk = {start, odd, next};
        extend(extend, next);
        ++remaining[k];
      }
    }
  }
  for (const auto& [p, w] : q.witness) q.pairs.push_back(p);
  return q;
}

/// I(G)^s : e_1⋯e_{s-1} = I(G) + (x_u x_v : u, v even-connected).
inline MonomialIdeal banerjee_colon(const Graph& g, unsigned s, const std::vector<VertexPair>& edges,
                                    const ContextPtr& ctx) {
  if (s < 2) throw std::invalid_argument("banerjee_colon needs s >= 2");
  if (edges.size() + 1 != s) throw std::invalid_argument("banerjee_colon needs exactly s-1 edges");
  const auto q = even_connected_pairs(g, edges);
  std::vector<Monomial> gens = edge_ideal(g, ctx).gens();
  for (auto [u, v] : q.pairs) {
    ExponentVector e(ctx->size(), 0);
    ++e[static_cast<std::size_t>(u)];
    ++e[static_cast<std::size_t>(v)];
    gens.emplace_back(ctx, std::move(e));
  }
  return MonomialIdeal::minimalize(ctx, std::move(gens));
}

inline MonomialIdeal banerjee_colon(const Graph& g, unsigned s, const std::vector<VertexPair>& edges) {
  return banerjee_colon(g, s, edges, graph_ring(g));
}

inline Monomial edge_product(const ContextPtr& ctx, const std::vector<VertexPair>& edges) {
  Monomial m(ctx);
  for (auto [u, v] : edges) m = m * vertex_product(ctx, bit(u) | bit(v));
  return m;
}

/// I(G)^k : m_T = (x_w : w ∈ W_T) + I(H_T), valid when m_T ∉ I(G)^k and
/// x·m_T ∈ I(G)^k for every x ∈ W_T. Throws HypothesisViolation otherwise.
inline MonomialIdeal t_colon_structure(const Graph& g, unsigned k, VertexSet t) {
  const auto ctx = graph_ring(g);
  const auto tc = t_context(g, t, ctx);
  const MonomialIdeal Ik = power(edge_ideal(g, ctx), k);
  if (contains(Ik, tc.m)) throw HypothesisViolation("m_T lies in I(G)^k", tc.m.to_string());
  for (Vertex x : to_vector(tc.w)) {
    Monomial xm = Monomial::variable(ctx, static_cast<std::size_t>(x)) * tc.m;
    if (!contains(Ik, xm)) throw HypothesisViolation("x * m_T is not in I(G)^k", xm.to_string());
  }
  return variable_ideal(ctx, to_vector(tc.w)) + edge_ideal(tc.h, ctx);
}

}  // namespace edgereg
