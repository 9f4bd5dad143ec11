#pragma once

// Finite simple graphs on labelled vertices 0..n-1 (printed 1-based) and the
// combinatorial invariants needed to describe edge ideals: neighbourhoods,
// odd cycles, bows, induced matchings, vertex covers and parallelizations.
//
// Vertex sets are 64-bit masks, so graphs have at most 64 labels. Desk-scale
// corpora stay far below that.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "edgereg/errors.hpp"
#include "edgereg/monomial.hpp"

namespace edgereg {

using VertexSet = std::uint64_t;
using Vertex = int;

inline constexpr std::size_t kMaxVertices = 64;
inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

inline VertexSet bit(Vertex v) { return VertexSet{1} << v; }
inline int popcount(VertexSet s) { return std::popcount(s); }

template <typename F>
void for_each_vertex(VertexSet s, F&& f) {
  while (s) {
    Vertex v = std::countr_zero(s);
    s &= s - 1;
    f(v);
  }
}

inline std::vector<Vertex> to_vector(VertexSet s) {
  std::vector<Vertex> out;
  for_each_vertex(s, [&](Vertex v) { out.push_back(v); });
  return out;
}

inline std::string format_set(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for_each_vertex(s, [&](Vertex v) {
    if (!first) out += ',';
    out += std::to_string(v + 1);
    first = false;
  });
  return out + "}";
}

/// A simple graph. Labels 0..n-1 exist in the label space; `vertices()` marks
/// which of them belong to the graph. Induced subgraphs keep the label space
/// so their edge ideals live in the same ring as the parent's.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : n_(n), adj_(n, 0) {
    if (n > kMaxVertices) throw InputError("graphs are limited to " + std::to_string(kMaxVertices) + " vertices");
    present_ = n == 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
  }

  Graph(std::size_t n, std::initializer_list<std::pair<int, int>> one_based_edges) : Graph(n) {
    for (auto [u, v] : one_based_edges) add_edge(u - 1, v - 1);
  }

  void add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw InputError("loop at vertex " + std::to_string(u + 1));
    if (adj_[u] & bit(v)) throw InputError("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    if (!(present_ & bit(u)) || !(present_ & bit(v))) throw InputError("edge endpoint is not a vertex of the graph");
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }

  std::size_t label_count() const noexcept { return n_; }
  VertexSet vertices() const noexcept { return present_; }
  std::size_t order() const noexcept { return static_cast<std::size_t>(popcount(present_)); }
  bool has_vertex(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < n_ && (present_ & bit(v)); }

  VertexSet neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  bool adjacent(Vertex u, Vertex v) const { return (adj_.at(static_cast<std::size_t>(u)) & bit(v)) != 0; }
  int degree(Vertex v) const { return popcount(neighbors(v)); }

  /// N(S): every vertex with a neighbour in S.
  VertexSet neighborhood(VertexSet s) const {
    VertexSet out = 0;
    for_each_vertex(s, [&](Vertex v) { out |= adj_[v]; });
    return out;
  }

  VertexSet closed_neighborhood(VertexSet s) const { return neighborhood(s) | s; }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (auto a : adj_) c += static_cast<std::size_t>(popcount(a));
    return c / 2;
  }

  /// Edges (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for_each_vertex(adj_[u] & ~((bit(static_cast<Vertex>(u)) << 1) - 1),
                      [&](Vertex v) { out.emplace_back(static_cast<Vertex>(u), v); });
    return out;
  }

  /// Number of edges with both ends in S.
  std::size_t edges_within(VertexSet s) const {
    std::size_t c = 0;
    for_each_vertex(s, [&](Vertex v) { c += static_cast<std::size_t>(popcount(adj_[v] & s)); });
    return c / 2;
  }

  bool is_empty_graph() const { return edge_count() == 0; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.present_ == b.present_ && a.adj_ == b.adj_;
  }

  // Used by induced_subgraph and parallelization.
  void restrict_to(VertexSet s) {
    present_ &= s;
    for (std::size_t v = 0; v < n_; ++v) adj_[v] = (present_ & bit(static_cast<Vertex>(v))) ? adj_[v] & present_ : 0;
  }

 private:
  void check(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= n_) throw InputError("unknown vertex " + std::to_string(v + 1));
  }

  std::size_t n_ = 0;
  VertexSet present_ = 0;
  std::vector<VertexSet> adj_;
};

// ---------------------------------------------------------------------------
// Edge-list format
//
//   # comment
//   vertices: 7
//   1 2
//   2 3
//
// The vertex count is the larger of the header value and the largest label.

inline Graph parse_graph(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  std::size_t n = 0;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) { throw InputError("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("vertices:", 0) == 0) {
      std::istringstream hs(line.substr(9));
      long long k;
      std::string extra;
      if (!(hs >> k) || (hs >> extra) || k < 0) fail("bad 'vertices:' header");
      n = std::max(n, static_cast<std::size_t>(k));
      continue;
    }
    std::istringstream ls(line);
    long long u, v;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) fail("expected 'u v'");
    if (u < 1 || v < 1) fail("vertex labels must be positive");
    if (u > static_cast<long long>(kMaxVertices) || v > static_cast<long long>(kMaxVertices))
      fail("vertex label exceeds " + std::to_string(kMaxVertices));
    if (u == v) fail("loop at vertex " + std::to_string(u));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(u, v)));
  }
  if (n > kMaxVertices) throw InputError("too many vertices");
  Graph g(n);
  lineno = 0;
  for (auto [u, v] : edges) {
    ++lineno;
    if (g.adjacent(u - 1, v - 1)) throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    g.add_edge(u - 1, v - 1);
  }
  return g;
}

inline std::string emit_graph(const Graph& g) {
  std::string out = "vertices: " + std::to_string(g.label_count()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Basic constructions

inline Graph induced_subgraph(const Graph& g, VertexSet s) {
  if (s & ~g.vertices()) throw InputError("induced_subgraph: " + format_set(s & ~g.vertices()) + " not in graph");
  Graph h = g;
  h.restrict_to(s);
  return h;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return g;
}

/// Vertex-disjoint union; the labels of `b` are shifted past those of `a`.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.label_count() + b.label_count());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  const auto shift = static_cast<Vertex>(a.label_count());
  for (auto [u, v] : b.edges()) g.add_edge(u + shift, v + shift);
  g.restrict_to(a.vertices() | (b.vertices() << shift));
  return g;
}

/// Minimum number of edges between the two vertex sets; kInfiniteDistance
/// when no path exists.
inline int distance(const Graph& g, VertexSet s1, VertexSet s2) {
  if (!s1 || !s2) throw InputError("distance: empty vertex set");
  if ((s1 | s2) & ~g.vertices()) throw InputError("distance: unknown vertex");
  if (s1 & s2) return 0;
  VertexSet seen = s1, frontier = s1;
  for (int d = 1; frontier; ++d) {
    VertexSet next = g.neighborhood(frontier) & ~seen;
    if (next & s2) return d;
    seen |= next;
    frontier = next;
  }
  return kInfiniteDistance;
}

/// T, W_T = N(T), H_T = G[V \ W_T] and m_T = product of the variables in T.
struct TContext {
  VertexSet t = 0;
  VertexSet w = 0;
  Graph h;
  Monomial m;
};

inline TContext t_context(const Graph& g, VertexSet t, const ContextPtr& ctx) {
  if (t & ~g.vertices()) throw InputError("t_context: T is not a subset of V(G)");
  if (ctx->size() != g.label_count()) throw InputError("t_context: ring size differs from graph label count");
  VertexSet w = g.neighborhood(t);
  return TContext{t, w, induced_subgraph(g, g.vertices() & ~w), Monomial::squarefree(ctx, to_vector(t))};
}

// ---------------------------------------------------------------------------
// Bipartiteness and odd cycles

struct BipartiteCheck {
  bool bipartite = true;
  std::vector<Vertex> odd_cycle;  // witness when not bipartite
};

inline BipartiteCheck check_bipartite(const Graph& g) {
  const std::size_t n = g.label_count();
  std::vector<int> color(n, -1), parent(n, -1), depth(n, 0);
  for (Vertex root : to_vector(g.vertices())) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : to_vector(g.neighbors(x))) {
        if (color[y] < 0) {
          color[y] = 1 - color[x];
          parent[y] = x;
          depth[y] = depth[x] + 1;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          // Same BFS layer parity: climb both tree paths to the common ancestor.
          std::vector<Vertex> left{x}, right{y};
          Vertex a = x, b = y;
          while (a != b) {
            if (depth[a] >= depth[b]) {
              a = parent[a];
              left.push_back(a);
            } else {
              b = parent[b];
              right.push_back(b);
            }
          }
          right.pop_back();
          std::reverse(right.begin(), right.end());
          left.insert(left.end(), right.begin(), right.end());
          return {false, left};
        }
      }
    }
  }
  return {};
}

inline bool is_bipartite(const Graph& g) { return check_bipartite(g).bipartite; }

/// Length of a shortest odd cycle, or nullopt for bipartite graphs. A
/// shortest odd cycle has no chord, so this is also the smallest induced odd
/// cycle length.
inline std::optional<int> odd_girth(const Graph& g) {
  const std::size_t n = g.label_count();
  std::optional<int> best;
  for (Vertex root : to_vector(g.vertices())) {
    std::vector<int> dist(n, -1);
    dist[root] = 0;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : to_vector(g.neighbors(x))) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        } else if (dist[y] == dist[x]) {
          int len = 2 * dist[x] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

inline std::optional<int> smallest_induced_odd_cycle(const Graph& g) { return odd_girth(g); }

/// A simple cycle as a vertex sequence: least vertex first, then the
/// direction whose second vertex is smaller.
struct Cycle {
  std::vector<Vertex> vertices;

  VertexSet set() const {
    VertexSet s = 0;
    for (Vertex v : vertices) s |= bit(v);
    return s;
  }
  std::size_t length() const { return vertices.size(); }
  bool odd() const { return vertices.size() % 2 == 1; }

  std::string to_string() const {
    std::string out;
    for (Vertex v : vertices) out += (out.empty() ? "" : "-") + std::to_string(v + 1);
    return out;
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

inline bool is_induced_cycle(const Graph& g, const Cycle& c) { return g.edges_within(c.set()) == c.length(); }

inline constexpr std::size_t kDefaultCycleBudget = 1'000'000;

/// All simple cycles by backtracking from each least vertex. Throws
/// BudgetExceeded once more than `budget` cycles have been seen.
inline std::vector<Cycle> enumerate_cycles(const Graph& g, bool induced_only, bool odd_only,
                                           std::size_t budget = kDefaultCycleBudget) {
  std::vector<Cycle> out;
  std::size_t seen = 0;
  std::vector<Vertex> path;
  for (Vertex start : to_vector(g.vertices())) {
    const VertexSet allowed = g.vertices() & ~((bit(start) << 1) - 1);
    path.assign(1, start);
    auto dfs = [&](auto&& self, Vertex v, VertexSet used) -> void {
      if (path.size() >= 3 && g.adjacent(v, start) && path[1] < path.back()) {
        if (++seen > budget) throw BudgetExceeded("cycle enumeration budget exceeded", seen);
        Cycle c{path};
        if ((!odd_only || c.odd()) && (!induced_only || is_induced_cycle(g, c))) out.push_back(std::move(c));
      }
      for_each_vertex(g.neighbors(v) & allowed & ~used, [&](Vertex w) {
        path.push_back(w);
        self(self, w, used | bit(w));
        path.pop_back();
      });
    };
    dfs(dfs, start, bit(start));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Bows

/// Two vertex-disjoint odd cycles with no edge between them.
struct Bow {
  Cycle a;
  Cycle b;
  int size = 0;  // (|A| + |B|) / 2
  bool induced = false;  // both cycles are induced

  VertexSet set() const { return a.set() | b.set(); }
  std::string to_string() const { return "[" + a.to_string() + " | " + b.to_string() + "]"; }
};

/// Every bow built from simple odd cycles, induced or not, sorted by size.
inline std::vector<Bow> enumerate_bows(const Graph& g, std::size_t budget = kDefaultCycleBudget) {
  auto odd = enumerate_cycles(g, false, true, budget);
  std::vector<VertexSet> sets, reach;
  for (const auto& c : odd) {
    sets.push_back(c.set());
    reach.push_back(g.closed_neighborhood(c.set()));
  }
  std::vector<Bow> bows;
  for (std::size_t i = 0; i < odd.size(); ++i) {
    for (std::size_t j = i + 1; j < odd.size(); ++j) {
      if (reach[i] & sets[j]) continue;
      bool induced = is_induced_cycle(g, odd[i]) && is_induced_cycle(g, odd[j]);
      bows.push_back(Bow{odd[i], odd[j], static_cast<int>((odd[i].length() + odd[j].length()) / 2), induced});
      if (bows.size() > budget) throw BudgetExceeded("bow enumeration budget exceeded", bows.size());
    }
  }
  std::stable_sort(bows.begin(), bows.end(), [](const Bow& x, const Bow& y) { return x.size < y.size; });
  return bows;
}

inline std::optional<int> smallest_bow_size(const Graph& g) {
  auto bows = enumerate_bows(g);
  if (bows.empty()) return std::nullopt;
  return bows.front().size;
}

/// Edge ideals are normal exactly when the graph has no bow.
inline bool is_normal_edge_ideal(const Graph& g) { return enumerate_bows(g).empty(); }

/// Exactly two simple odd cycles.
inline bool is_odd_bicyclic(const Graph& g) { return enumerate_cycles(g, false, true).size() == 2; }

// ---------------------------------------------------------------------------
// Induced matching and vertex cover numbers

/// A largest induced matching, by branch and bound over the edge list.
inline std::vector<std::pair<Vertex, Vertex>> maximum_induced_matching(const Graph& g) {
  const auto edges = g.edges();
  std::vector<std::pair<Vertex, Vertex>> best, chosen;
  auto search = [&](auto&& self, std::size_t from, VertexSet blocked) -> void {
    if (chosen.size() > best.size()) best = chosen;
    int open_edges = 0;
    for (std::size_t k = from; k < edges.size(); ++k)
      if (!(blocked & (bit(edges[k].first) | bit(edges[k].second)))) ++open_edges;
    const int open_vertices = popcount(g.vertices() & ~blocked);
    if (chosen.size() + static_cast<std::size_t>(std::min(open_edges, open_vertices / 2)) <= best.size()) return;
    for (std::size_t k = from; k < edges.size(); ++k) {
      auto [u, v] = edges[k];
      if (blocked & (bit(u) | bit(v))) continue;
      chosen.push_back(edges[k]);
      self(self, k + 1, blocked | g.closed_neighborhood(bit(u) | bit(v)));
      chosen.pop_back();
    }
  };
  search(search, 0, 0);
  return best;
}

/// ν(G).
inline int induced_matching_number(const Graph& g) { return static_cast<int>(maximum_induced_matching(g).size()); }

/// τ(G): branch on a maximum-degree vertex v (take v, or take all of N(v)).
inline int vertex_cover_number(const Graph& g) {
  int best = static_cast<int>(g.order());
  auto search = [&](auto&& self, VertexSet live, int used) -> void {
    if (used >= best) return;
    Vertex pick = -1;
    int deg = 0;
    for_each_vertex(live, [&](Vertex v) {
      int d = popcount(g.neighbors(v) & live);
      if (d > deg) {
        deg = d;
        pick = v;
      }
    });
    if (pick < 0) {
      best = used;
      return;
    }
    self(self, live & ~bit(pick), used + 1);
    VertexSet nb = g.neighbors(pick) & live;
    self(self, live & ~nb & ~bit(pick), used + popcount(nb));
  };
  search(search, g.vertices(), 0);
  return best;
}

inline bool is_vertex_cover(const Graph& g, VertexSet c) {
  for (auto [u, v] : g.edges())
    if (!(c & (bit(u) | bit(v)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parallelization

/// G^v together with the original vertex behind every new label. Original
/// labels are kept in place (absent when v_i = 0); copies follow them.
struct Parallelization {
  Graph graph;
  std::vector<Vertex> origin;
};

inline Parallelization parallelization(const Graph& g, const std::vector<int>& v) {
  const std::size_t n = g.label_count();
  if (v.size() != n) throw InputError("parallelization vector has length " + std::to_string(v.size()) + ", graph has " + std::to_string(n) + " labels");
  std::vector<Vertex> origin;
  for (std::size_t i = 0; i < n; ++i) origin.push_back(static_cast<Vertex>(i));
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] < 0) throw InputError("parallelization vector must be non-negative");
    if (v[i] >= 1 && !g.has_vertex(static_cast<Vertex>(i))) throw InputError("parallelization of an absent vertex");
    for (int c = 1; c < v[i]; ++c) origin.push_back(static_cast<Vertex>(i));
  }
  Graph out(origin.size());
  VertexSet keep = 0;
  for (std::size_t a = 0; a < origin.size(); ++a) {
    const bool alive = a >= n || v[a] >= 1;
    if (alive) keep |= bit(static_cast<Vertex>(a));
  }
  for (std::size_t a = 0; a < origin.size(); ++a)
    for (std::size_t b = a + 1; b < origin.size(); ++b)
      if ((keep & bit(static_cast<Vertex>(a))) && (keep & bit(static_cast<Vertex>(b))) && g.adjacent(origin[a], origin[b]))
        out.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  out.restrict_to(keep);
  return {out, origin};
}

/// Adds one copy x' of x adjacent to N(x).
inline Graph duplication(const Graph& g, Vertex x) {
  std::vector<int> v(g.label_count(), 0);
  for_each_vertex(g.vertices(), [&](Vertex u) { v[u] = 1; });
  if (!g.has_vertex(x)) throw InputError("duplication: unknown vertex");
  v[x] = 2;
  return parallelization(g, v).graph;
}

}  // namespace edgereg
