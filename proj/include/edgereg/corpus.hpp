#pragma once

// Graph corpora for the verification suites: built-in families expanded
// deterministically from their parameters, or a directory of edge-list and
// ideal files.
//
//   builtin:cycles(3..9)         C_3, ..., C_9
//   builtin:bicyclic(1,2,3)      odd cycles C_3, C_5 joined by a path of length 3
//   builtin:bicyclic             (m,n) in {(1,1),(1,2)}, path lengths 2 and 3
//   builtin:bow-joined           graphs with several bows
//   builtin:random(7,0.4,11,10)  10 Erdős–Rényi graphs G(7, 0.4) from seed 11
//   builtin:fixtures             small named graphs and two fixture ideals
//   builtin:small                connected non-bipartite graphs, at most 8 vertices
//   builtin:acceptance           small followed by bicyclic
//   dir:PATH or PATH             *.edges graphs and *.ideal ideals in PATH

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "edgereg/errors.hpp"
#include "edgereg/graph.hpp"
#include "edgereg/monomial.hpp"

namespace edgereg {

/// One corpus member: a graph, or a raw monomial ideal.
struct CorpusItem {
  std::string id;
  std::optional<Graph> graph;
  std::optional<MonomialIdeal> ideal;
};

struct CorpusSpec {
  std::string source;         // family name, or a directory
  std::vector<double> params;  // family parameters in order
  bool directory = false;
};

// ---------------------------------------------------------------------------
// Seeded randomness

/// splitmix64 step; used to derive independent per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives the seed of stream `stream` from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (stream * 0xd1b54a32d192ed03ull);
  return splitmix64(s);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by rejection; identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

// ---------------------------------------------------------------------------
// Graph helpers and families

inline bool is_connected(const Graph& g) {
  const VertexSet all = g.vertices();
  if (!all) return true;
  VertexSet seen = all & (~all + 1), frontier = seen;
  while (frontier) {
    VertexSet next = g.neighborhood(frontier) & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == all;
}

/// Edge list as "1-2 2-3 ..."; used in witnesses so failures can be replayed.
inline std::string edge_string(const Graph& g) {
  std::string out;
  for (auto [u, v] : g.edges()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(u + 1) + "-" + std::to_string(v + 1);
  }
  return out;
}

/// Odd cycles C_{2m+1} on 1..2m+1 and C_{2n+1} on the last 2n+1 labels, joined
/// by a path of length ℓ from vertex 2m+1 to the first vertex of the second
/// cycle through ℓ-1 new vertices.
inline Graph bicyclic_graph(int m, int n, int ell) {
  if (m < 1 || n < 1) throw InputError("bicyclic(m,n,l) needs m, n >= 1");
  if (ell < 1) throw InputError("bicyclic(m,n,l) needs a path length l >= 1");
  const int a = 2 * m + 1, b = 2 * n + 1;
  const int total = a + (ell - 1) + b;
  Graph g(static_cast<std::size_t>(total));
  for (int i = 0; i < a; ++i) g.add_edge(i, (i + 1) % a);
  const int start = a + ell - 1;
  for (int i = 0; i < b; ++i) g.add_edge(start + i, start + (i + 1) % b);
  for (int i = a - 1; i < start; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph graph_from_edges(std::size_t n, const std::vector<std::pair<int, int>>& one_based) {
  Graph g(n);
  for (auto [u, v] : one_based) g.add_edge(u - 1, v - 1);
  return g;
}

/// G(n, p) with every pair decided by one draw, in lexicographic pair order.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0 || n > kMaxVertices) throw InputError("random graph needs 1..64 vertices");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("random graph edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (unit_interval(rng) < p) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return g;
}

namespace detail {

inline std::string format_param(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline std::vector<CorpusItem> cycles_family(int lo, int hi) {
  if (lo < 3 || hi < lo || hi > 64) throw InputError("cycles(a..b) needs 3 <= a <= b <= 64");
  std::vector<CorpusItem> out;
  for (int k = lo; k <= hi; ++k) out.push_back({"C" + std::to_string(k), cycle_graph(static_cast<std::size_t>(k)), {}});
  return out;
}

inline CorpusItem bicyclic_item(int m, int n, int ell) {
  return {"bicyclic(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(ell) + ")",
          bicyclic_graph(m, n, ell), {}};
}

inline std::vector<CorpusItem> bicyclic_default() {
  std::vector<CorpusItem> out;
  for (auto [m, n] : {std::pair{1, 1}, std::pair{1, 2}})
    for (int ell : {2, 3}) out.push_back(bicyclic_item(m, n, ell));
  return out;
}

inline std::vector<CorpusItem> bow_joined_family() {
  return {
      {"triangle-chain(3)", graph_from_edges(11, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7},
                                                  {7, 8}, {8, 9}, {9, 10}, {10, 11}, {9, 11}}),
       {}},
      {"bow-with-pendants", graph_from_edges(9, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7},
                                                 {4, 8}, {1, 9}}),
       {}},
      {"double-bridge-bow", graph_from_edges(8, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7},
                                                 {3, 8}, {8, 5}}),
       {}},
      {"triangle-pentagon-bow", bicyclic_graph(1, 2, 2), {}},
  };
}

inline std::vector<CorpusItem> random_family(std::size_t n, double p, std::uint64_t seed, std::size_t count) {
  std::vector<CorpusItem> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t s = derive_seed(seed, k);
    out.push_back({"random(" + std::to_string(n) + "," + format_param(p) + "," + std::to_string(seed) + ")#" +
                       std::to_string(k),
                   random_graph(n, p, s), {}});
  }
  return out;
}

inline MonomialIdeal clutter_fixture() {
  return parse_ideal(
      "vars: x1 x2 x3 x4 x5 x6\n"
      "x1*x4*x5\nx1*x3*x6\nx2*x3*x4\nx2*x5*x6\nx3*x4*x5\nx3*x4*x6\nx3*x5*x6\nx4*x5*x6\n");
}

inline std::vector<CorpusItem> fixtures_family() {
  return {
      {"C4", cycle_graph(4), {}},
      {"C5", cycle_graph(5), {}},
      {"bow(1,1,2)", bicyclic_graph(1, 1, 2), {}},
      {"P3", path_graph(3), {}},
      {"clutter-6", {}, clutter_fixture()},
      {"squares-xy", {}, parse_ideal("vars: x y\nx^2\ny^2\n")},
  };
}

/// Named connected non-bipartite graphs with at most 8 vertices, topped up
/// with seeded random ones.
inline std::vector<CorpusItem> small_family() {
  std::vector<CorpusItem> out = {
      {"C3", cycle_graph(3), {}},
      {"C5", cycle_graph(5), {}},
      {"C7", cycle_graph(7), {}},
      {"K4", complete_graph(4), {}},
      {"K5", complete_graph(5), {}},
      {"paw", graph_from_edges(4, {{1, 2}, {2, 3}, {1, 3}, {3, 4}}), {}},
      {"diamond", graph_from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}}), {}},
      {"bull", graph_from_edges(5, {{1, 2}, {2, 3}, {1, 3}, {1, 4}, {2, 5}}), {}},
      {"butterfly", graph_from_edges(5, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {3, 5}}), {}},
      {"house", graph_from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {2, 5}}), {}},
      {"C5+pendant", graph_from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}}), {}},
      {"C5+P3-tail", graph_from_edges(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}, {6, 7}}), {}},
      {"C3+P4-tail", graph_from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}}), {}},
      {"C7+pendant", graph_from_edges(8, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 7}, {4, 8}}), {}},
      {"C7+chord", graph_from_edges(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 7}, {1, 4}}), {}},
      {"wheel-5", graph_from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {1, 6}, {2, 6}, {3, 6}, {4, 6}, {5, 6}}), {}},
      {"prism", graph_from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {1, 4}, {2, 5}, {3, 6}}), {}},
      {"octahedron", graph_from_edges(6, {{1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
                                          {3, 5}, {3, 6}, {4, 5}, {4, 6}}),
       {}},
      {"triangles-edge", graph_from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {3, 4}}), {}},
      {"triangle-pentagon-edge", graph_from_edges(8, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {6, 7}, {7, 8},
                                                      {4, 8}, {3, 4}}),
       {}},
      {"bicyclic(1,1,2)", bicyclic_graph(1, 1, 2), {}},
      {"bicyclic(1,1,3)", bicyclic_graph(1, 1, 3), {}},
      {"C5-square", graph_from_edges(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {3, 6}, {6, 7}, {7, 4}}), {}},
      {"theta-odd", graph_from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {1, 5}, {5, 4}, {1, 6}, {6, 4}, {2, 6}}), {}},
  };
  std::set<std::vector<std::pair<Vertex, Vertex>>> seen;
  for (const auto& it : out) seen.insert(it.graph->edges());
  std::uint64_t stream = 0;
  std::size_t added = 0;
  const std::uint64_t master = 20240601;
  while (added < 12) {
    const std::size_t n = 6 + static_cast<std::size_t>(stream % 3);
    const Graph g = random_graph(n, 0.35, derive_seed(master, stream));
    ++stream;
    if (!is_connected(g) || is_bipartite(g) || !seen.insert(g.edges()).second) continue;
    out.push_back({"sample-" + std::to_string(n) + "-" + std::to_string(added), g, {}});
    ++added;
  }
  return out;
}

inline std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

inline double parse_number(const std::string& tok, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad parameter '" + tok + "' in " + where);
  }
}

inline int as_int(double x, const std::string& where) {
  if (x != static_cast<double>(static_cast<long long>(x))) throw InputError("integer parameter expected in " + where);
  return static_cast<int>(x);
}

}  // namespace detail

/// Parses "builtin:NAME(args)", "dir:PATH" or a bare directory path.
inline CorpusSpec parse_corpus_spec(const std::string& text) {
  CorpusSpec spec;
  std::string body = detail::trim(text);
  if (body.rfind("dir:", 0) == 0) {
    spec.directory = true;
    spec.source = body.substr(4);
    return spec;
  }
  if (body.rfind("builtin:", 0) != 0) {
    spec.directory = true;
    spec.source = body;
    return spec;
  }
  body = body.substr(8);
  const auto open = body.find('(');
  if (open == std::string::npos) {
    spec.source = body;
    return spec;
  }
  if (body.back() != ')') throw InputError("corpus spec missing ')': " + text);
  spec.source = body.substr(0, open);
  std::string args = body.substr(open + 1, body.size() - open - 2);
  const auto range = args.find("..");
  if (range != std::string::npos) {
    spec.params.push_back(detail::parse_number(detail::trim(args.substr(0, range)), text));
    spec.params.push_back(detail::parse_number(detail::trim(args.substr(range + 2)), text));
    return spec;
  }
  for (const auto& a : detail::split_args(args)) spec.params.push_back(detail::parse_number(a, text));
  return spec;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<CorpusItem> expand_corpus(const CorpusSpec& spec) {
  const auto& p = spec.params;
  const std::string where = spec.source;
  if (spec.directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(spec.source)) throw InputError("corpus directory not found: " + spec.source);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(spec.source))
      if (e.is_regular_file() && (e.path().extension() == ".edges" || e.path().extension() == ".ideal"))
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<CorpusItem> out;
    for (const auto& f : files) {
      const std::string text = read_file(f);
      if (f.extension() == ".edges") out.push_back({f.stem().string(), parse_graph(text), {}});
      else out.push_back({f.stem().string(), {}, parse_ideal(text)});
    }
    return out;
  }
  if (spec.source == "cycles") {
    if (p.empty()) return detail::cycles_family(3, 9);
    if (p.size() != 2) throw InputError("cycles(a..b) takes a range");
    return detail::cycles_family(detail::as_int(p[0], where), detail::as_int(p[1], where));
  }
  if (spec.source == "bicyclic") {
    if (p.empty()) return detail::bicyclic_default();
    if (p.size() != 3) throw InputError("bicyclic(m,n,l) takes three parameters");
    return {detail::bicyclic_item(detail::as_int(p[0], where), detail::as_int(p[1], where), detail::as_int(p[2], where))};
  }
  if (spec.source == "bow-joined") {
    if (!p.empty()) throw InputError("bow-joined takes no parameters");
    return detail::bow_joined_family();
  }
  if (spec.source == "random") {
    const int n = p.size() > 0 ? detail::as_int(p[0], where) : 7;
    const double prob = p.size() > 1 ? p[1] : 0.4;
    const int seed = p.size() > 2 ? detail::as_int(p[2], where) : 7;
    const int count = p.size() > 3 ? detail::as_int(p[3], where) : 10;
    if (p.size() > 4 || n < 1 || seed < 0 || count < 0) throw InputError("random(n,p,seed,count) has bad parameters");
    return detail::random_family(static_cast<std::size_t>(n), prob, static_cast<std::uint64_t>(seed),
                                 static_cast<std::size_t>(count));
  }
  if (spec.source == "fixtures") {
    if (!p.empty()) throw InputError("fixtures takes no parameters");
    return detail::fixtures_family();
  }
  if (spec.source == "small") {
    if (!p.empty()) throw InputError("small takes no parameters");
    return detail::small_family();
  }
  if (spec.source == "acceptance") {
    if (!p.empty()) throw InputError("acceptance takes no parameters");
    auto out = detail::small_family();
    std::set<std::string> ids;
    for (const auto& it : out) ids.insert(it.id);
    for (auto& it : detail::bicyclic_default())
      if (!ids.count(it.id)) out.push_back(std::move(it));
    return out;
  }
  throw InputError("unknown corpus family '" + spec.source + "'");
}

inline std::vector<CorpusItem> load_corpus(const std::string& text) { return expand_corpus(parse_corpus_spec(text)); }

}  // namespace edgereg
