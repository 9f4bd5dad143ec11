#pragma once

// Multigraded Betti numbers of monomial ideals and their regularity.
//
// β_{i,a}(I) = dim H̃_{i-1}(K^a(I); k) where the upper Koszul complex K^a(I)
// has faces S ⊆ supp(a) with x^a / x_S ∈ I. Nonzero Betti numbers only occur
// at multidegrees in the lcm lattice of the minimal generators, so only those
// are visited. Homology is computed from boundary-matrix ranks over GF(p), or
// over Q when p = 0, after shrinking the complex by strong collapses.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "edgereg/errors.hpp"
#include "edgereg/monomial.hpp"
#include "edgereg/parallel.hpp"

namespace edgereg {

inline constexpr unsigned kDefaultCharacteristic = 32003;

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Characteristic of the coefficient field: a prime, or 0 for the rationals.
class FieldChar {
 public:
  explicit FieldChar(unsigned p = kDefaultCharacteristic) : p_(p) {
    if (p != 0 && !is_prime(p)) throw InputError("characteristic must be prime or 0, got " + std::to_string(p));
    if (p > 65521) throw InputError("characteristic must be below 2^16");
  }
  unsigned value() const noexcept { return p_; }

 private:
  unsigned p_;
};

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Exponent x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

inline std::int64_t total_degree(std::span<const Exponent> a) {
  return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

// ---------------------------------------------------------------------------
// lcm lattice

/// The generators of I closed under lcm.
struct LcmLattice {
  std::vector<ExponentVector> elements;  // sorted by degree, then lex
};

namespace detail {

inline void sort_graded(std::vector<ExponentVector>& v) {
  std::sort(v.begin(), v.end(), [](const ExponentVector& x, const ExponentVector& y) {
    auto dx = total_degree(x), dy = total_degree(y);
    return dx != dy ? dx < dy : x < y;
  });
}

inline bool any_and(const std::uint64_t* x, const std::uint64_t* y, std::size_t words) {
  for (std::size_t k = 0; k < words; ++k)
    if (x[k] & y[k]) return true;
  return false;
}

template <typename F>
void for_each_bit(const std::uint64_t* x, std::size_t words, F&& f) {
  for (std::size_t k = 0; k < words; ++k) {
    std::uint64_t w = x[k];
    while (w) {
      f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
}

}  // namespace detail

/// Walks the lcm lattice of I. The lattice consists of the a with
/// a = lcm{g ∈ gens : g | a}; coordinates are assigned in order while the set
/// of generators still dividing the prefix is tracked as a bitset, and a
/// prefix is abandoned once some assigned coordinate can no longer be attained
/// by a remaining generator. The visitor receives each element together with
/// the bitset of generators dividing it. Elements are visited in lex order.
class LatticeWalker {
 public:
  using Visitor = std::function<void(std::span<const Exponent> a, const std::uint64_t* divisors)>;

  explicit LatticeWalker(const MonomialIdeal& I) : n_(I.context()->size()), gens_(I.size()) {
    if (I.is_zero()) throw std::invalid_argument("lcm lattice of the zero ideal");
    words_ = (gens_ + 63) / 64;
    max_.assign(n_, 0);
    for (const auto& g : I.gens())
      for (std::size_t j = 0; j < n_; ++j) max_[j] = std::max(max_[j], g[j]);
    offset_.assign(n_ + 1, 0);
    for (std::size_t j = 0; j < n_; ++j) offset_[j + 1] = offset_[j] + static_cast<std::size_t>(max_[j]) + 1;
    le_.assign(offset_[n_] * words_, 0);
    eq_.assign(offset_[n_] * words_, 0);
    for (std::size_t gi = 0; gi < gens_; ++gi) {
      const std::uint64_t b = std::uint64_t{1} << (gi % 64);
      for (std::size_t j = 0; j < n_; ++j) {
        const Exponent e = I.gens()[gi][j];
        eq_[slot(j, e) + gi / 64] |= b;
        for (Exponent v = e; v <= max_[j]; ++v) le_[slot(j, v) + gi / 64] |= b;
      }
    }
  }

  std::size_t words() const noexcept { return words_; }
  const ExponentVector& box() const noexcept { return max_; }

  /// Generators whose j-th exponent equals v.
  const std::uint64_t* exactly(std::size_t j, Exponent v) const { return eq_.data() + slot(j, v); }

  /// Visits every lattice element whose first coordinate equals `first`
  /// (all elements when `first` is empty). Returns the number visited.
  std::size_t walk(const Visitor& visit, std::optional<Exponent> first = std::nullopt) const {
    std::vector<std::uint64_t> stack((n_ + 1) * words_, 0);
    for (std::size_t gi = 0; gi < gens_; ++gi) stack[gi / 64] |= std::uint64_t{1} << (gi % 64);
    ExponentVector a(n_, 0);
    std::size_t count = 0;
    descend(0, stack, a, visit, first, count);
    return count;
  }

 private:
  std::size_t slot(std::size_t j, Exponent v) const { return (offset_[j] + static_cast<std::size_t>(v)) * words_; }

  void descend(std::size_t k, std::vector<std::uint64_t>& stack, ExponentVector& a, const Visitor& visit,
               std::optional<Exponent> first, std::size_t& count) const {
    const std::uint64_t* cur = stack.data() + k * words_;
    if (k == n_) {
      ++count;
      visit(a, cur);
      return;
    }
    std::uint64_t* next = stack.data() + (k + 1) * words_;
    Exponent lo = 0, hi = max_[k];
    if (k == 0 && first) {
      if (*first < 0 || *first > max_[0]) return;
      lo = hi = *first;
    }
    for (Exponent v = lo; v <= hi; ++v) {
      const std::uint64_t* le = le_.data() + slot(k, v);
      bool nonempty = false;
      for (std::size_t w = 0; w < words_; ++w) {
        next[w] = cur[w] & le[w];
        nonempty |= next[w] != 0;
      }
      if (!nonempty) continue;
      a[k] = v;
      bool ok = true;
      for (std::size_t j = 0; j <= k && ok; ++j)
        if (a[j] > 0) ok = detail::any_and(next, exactly(j, a[j]), words_);
      if (ok) descend(k + 1, stack, a, visit, first, count);
    }
    a[k] = 0;
  }

  std::size_t n_, gens_, words_ = 0;
  ExponentVector max_;
  std::vector<std::size_t> offset_;
  std::vector<std::uint64_t> le_, eq_;
};

inline LcmLattice lcm_lattice(const MonomialIdeal& I, std::size_t cap = Budgets{}.max_lattice) {
  LatticeWalker walker(I);
  LcmLattice out;
  walker.walk([&](std::span<const Exponent> a, const std::uint64_t*) {
    out.elements.emplace_back(a.begin(), a.end());
    if (cap && out.elements.size() > cap) throw BudgetExceeded("lcm lattice budget exceeded", out.elements.size());
  });
  detail::sort_graded(out.elements);
  return out;
}

/// Reference construction: pairwise-lcm fixpoint starting from the generators.
inline LcmLattice lcm_lattice_fixpoint(const MonomialIdeal& I, std::size_t cap = Budgets{}.max_lattice) {
  if (I.is_zero()) throw std::invalid_argument("lcm lattice of the zero ideal");
  std::unordered_set<ExponentVector, ExponentVectorHash> seen;
  std::vector<ExponentVector> order;
  const std::size_t n = I.context()->size();
  ExponentVector tmp(n);
  for (const auto& g : I.gens()) {
    const std::size_t existing = order.size();
    for (std::size_t k = 0; k < existing; ++k) {
      for (std::size_t i = 0; i < n; ++i) tmp[i] = std::max(order[k][i], g[i]);
      if (seen.insert(tmp).second) {
        order.push_back(tmp);
        if (cap && order.size() > cap) throw BudgetExceeded("lcm lattice budget exceeded", order.size());
      }
    }
    if (seen.insert(g.vec()).second) order.push_back(g.vec());
  }
  detail::sort_graded(order);
  return {std::move(order)};
}

// ---------------------------------------------------------------------------
// Simplicial homology

/// A simplicial complex on vertices 0..63 held by its facets. No facets means
/// the void complex; a single empty facet is {∅}.
struct SimplicialComplex {
  std::vector<std::uint64_t> facets;

  bool is_void() const { return facets.empty(); }

  std::uint64_t vertices() const {
    std::uint64_t v = 0;
    for (auto f : facets) v |= f;
    return v;
  }

  /// Drops facets contained in other facets.
  void reduce() {
    std::sort(facets.begin(), facets.end(), [](auto a, auto b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa > pb : a < b;
    });
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    std::vector<std::uint64_t> kept;
    for (auto f : facets) {
      bool covered = false;
      for (auto k : kept)
        if ((f & ~k) == 0) {
          covered = true;
          break;
        }
      if (!covered) kept.push_back(f);
    }
    facets = std::move(kept);
  }

  bool contains(std::uint64_t face) const {
    return std::any_of(facets.begin(), facets.end(), [&](auto f) { return (face & ~f) == 0; });
  }

  /// A vertex lying in every facet makes the complex a cone.
  bool is_cone() const {
    if (facets.empty()) return false;
    std::uint64_t common = ~std::uint64_t{0};
    for (auto f : facets) common &= f;
    return common != 0;
  }

  /// Repeatedly deletes a vertex v whose link is a cone, i.e. every facet
  /// through v also contains some fixed w ≠ v. Each deletion preserves the
  /// homotopy type. Expects reduced facets.
  void strong_collapse() {
    bool changed = true;
    while (changed && facets.size() > 1) {
      changed = false;
      std::uint64_t verts = vertices();
      while (verts) {
        const std::uint64_t v = verts & (~verts + 1);
        verts &= verts - 1;
        std::uint64_t common = ~std::uint64_t{0};
        for (auto f : facets)
          if (f & v) common &= f;
        if (common & ~v) {
          for (auto& f : facets) f &= ~v;
          reduce();
          changed = true;
          break;
        }
      }
    }
  }

  /// All faces grouped by size (index 0 holds the empty face).
  std::vector<std::vector<std::uint64_t>> faces_by_size() const {
    std::unordered_set<std::uint64_t> all;
    for (auto f : facets) {
      std::uint64_t sub = f;
      for (;;) {
        all.insert(sub);
        if (sub == 0) break;
        sub = (sub - 1) & f;
      }
    }
    int top = 0;
    for (auto f : all) top = std::max(top, std::popcount(f));
    std::vector<std::vector<std::uint64_t>> by(static_cast<std::size_t>(top) + 1);
    for (auto f : all) by[static_cast<std::size_t>(std::popcount(f))].push_back(f);
    for (auto& v : by) std::sort(v.begin(), v.end());
    return by;
  }
};

namespace detail {

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

/// Rank of a dense matrix over GF(p); consumes the matrix.
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>>& m, std::uint32_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = inv_mod(m[rank][c], p);
    for (std::size_t j = c; j < cols; ++j) m[rank][j] = static_cast<std::uint32_t>(m[rank][j] * inv % p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t f = m[r][c];
      if (!f) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (!m[rank][j]) continue;
        m[r][j] = static_cast<std::uint32_t>((m[r][j] + (p - f) * m[rank][j]) % p);
      }
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_rational(std::vector<std::vector<mpq_class>>& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank of the simplicial boundary map from faces of size k (`upper`) to
/// faces of size k-1 (`lower`).
inline std::size_t boundary_rank(const std::vector<std::uint64_t>& lower, const std::vector<std::uint64_t>& upper,
                                 unsigned p) {
  if (lower.empty() || upper.empty()) return 0;
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < lower.size(); ++i) index[lower[i]] = i;
  auto for_each_term = [&](std::uint64_t face, auto&& emit) {
    int pos = 0;
    std::uint64_t rest = face;
    while (rest) {
      const std::uint64_t low = rest & (~rest + 1);
      rest &= rest - 1;
      emit(index.at(face & ~low), pos % 2 == 0);
      ++pos;
    }
  };
  if (p == 0) {
    std::vector<std::vector<mpq_class>> m(upper.size(), std::vector<mpq_class>(lower.size(), 0));
    for (std::size_t r = 0; r < upper.size(); ++r)
      for_each_term(upper[r], [&](std::size_t c, bool plus) { m[r][c] = plus ? 1 : -1; });
    return detail::rank_rational(m);
  }
  std::vector<std::vector<std::uint32_t>> m(upper.size(), std::vector<std::uint32_t>(lower.size(), 0));
  for (std::size_t r = 0; r < upper.size(); ++r)
    for_each_term(upper[r], [&](std::size_t c, bool plus) { m[r][c] = plus ? 1u : p - 1; });
  return detail::rank_mod_p(m, p);
}

/// Reduced homology ranks of the complex exactly as given; entry d+1 is
/// dim H̃_d for d = -1, 0, 1, ... (trailing zeros trimmed).
inline std::vector<std::size_t> homology_ranks_direct(const SimplicialComplex& k, FieldChar field = FieldChar{}) {
  if (k.is_void()) return {};
  const auto by = k.faces_by_size();
  const unsigned p = field.value();
  std::vector<std::size_t> rk(by.size() + 1, 0);  // rk[s]: rank of ∂ from size s to size s-1
  for (std::size_t s = 1; s < by.size(); ++s) rk[s] = boundary_rank(by[s - 1], by[s], p);
  std::vector<std::size_t> h(by.size(), 0);
  for (std::size_t s = 0; s < by.size(); ++s) h[s] = by[s].size() - rk[s] - rk[s + 1];
  while (!h.empty() && h.back() == 0) h.pop_back();
  return h;
}

/// Reduced homology ranks after strong collapses; same convention as
/// homology_ranks_direct.
inline std::vector<std::size_t> homology_ranks(SimplicialComplex k, FieldChar field = FieldChar{}) {
  if (k.is_void()) return {};
  k.reduce();
  if (k.is_cone()) return {};
  k.strong_collapse();
  if (k.facets.size() == 1 && k.facets[0] != 0) return {};
  return homology_ranks_direct(k, field);
}

// ---------------------------------------------------------------------------
// Upper Koszul complexes

/// K^a(I) is generated by the slack sets {i : g_i < a_i} of the generators
/// g dividing x^a: x^a / x_S ∈ I exactly when S fits inside one of them.
struct UpperKoszulComplex {
  ExponentVector multidegree;
  SimplicialComplex complex;
};

inline UpperKoszulComplex upper_koszul(const MonomialIdeal& I, std::span<const Exponent> a) {
  const std::size_t n = I.context()->size();
  if (a.size() != n) throw ContextMismatch();
  if (n > 64) throw InputError("upper Koszul complexes support at most 64 variables");
  UpperKoszulComplex out{ExponentVector(a.begin(), a.end()), {}};
  const auto abits = detail::support_bits(a);
  const std::int64_t adeg = total_degree(a);
  for (const auto& g : I.gens()) {
    if (g.degree() > adeg) break;
    if (g.support_bits() & ~abits) continue;
    std::uint64_t slack = 0;
    bool divides = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] > a[i]) {
        divides = false;
        break;
      }
      if (g[i] < a[i]) slack |= std::uint64_t{1} << i;
    }
    if (divides) out.complex.facets.push_back(slack);
  }
  out.complex.reduce();
  return out;
}

/// K^a(I) built face by face: every S ⊆ supp(a) tested with ideal membership.
inline SimplicialComplex upper_koszul_by_faces(const MonomialIdeal& I, std::span<const Exponent> a) {
  if (a.size() != I.context()->size()) throw ContextMismatch();
  const std::uint64_t supp = detail::support_bits(a);
  SimplicialComplex k;
  ExponentVector b(a.begin(), a.end());
  std::uint64_t sub = supp;
  for (;;) {
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = a[i] - static_cast<Exponent>((sub >> i) & 1);
    if (contains(I, Monomial(I.context(), b))) k.facets.push_back(sub);
    if (sub == 0) break;
    sub = (sub - 1) & supp;
  }
  k.reduce();
  return k;
}

// ---------------------------------------------------------------------------
// Betti tables

struct BettiEntry {
  int i = 0;
  std::int64_t degree = 0;
  ExponentVector multidegree;
  std::size_t rank = 0;
};

class BettiTable {
 public:
  BettiTable(unsigned characteristic, std::vector<BettiEntry> entries)
      : char_(characteristic), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const BettiEntry& x, const BettiEntry& y) {
      if (x.i != y.i) return x.i < y.i;
      if (x.degree != y.degree) return x.degree < y.degree;
      return x.multidegree < y.multidegree;
    });
  }

  unsigned characteristic() const noexcept { return char_; }
  const std::vector<BettiEntry>& entries() const noexcept { return entries_; }

  /// β_{i,j} summed over multidegrees of total degree j.
  std::map<std::pair<int, std::int64_t>, std::size_t> coarse() const {
    std::map<std::pair<int, std::int64_t>, std::size_t> out;
    for (const auto& e : entries_) out[{e.i, e.degree}] += e.rank;
    return out;
  }

  /// β_i summed over all degrees.
  std::size_t total(int i) const {
    std::size_t t = 0;
    for (const auto& e : entries_)
      if (e.i == i) t += e.rank;
    return t;
  }

  /// max{j - i : β_{i,j} ≠ 0}; nullopt (−∞) for the zero ideal.
  std::optional<std::int64_t> regularity() const {
    std::optional<std::int64_t> r;
    for (const auto& e : entries_)
      if (e.rank && (!r || e.degree - e.i > *r)) r = e.degree - e.i;
    return r;
  }

 private:
  unsigned char_;
  std::vector<BettiEntry> entries_;
};

/// Betti numbers β_{i,a}(I) for i = 0, 1, ... (trailing zeros trimmed).
inline std::vector<std::size_t> betti_at(const MonomialIdeal& I, std::span<const Exponent> a,
                                         FieldChar field = FieldChar{}) {
  return homology_ranks(upper_koszul(I, a).complex, field);
}

struct BettiOptions {
  FieldChar field{};
  Budgets budget{};
  unsigned threads = default_thread_count();
};

inline BettiTable graded_betti(const MonomialIdeal& I, const BettiOptions& opt = {}) {
  const unsigned p = opt.field.value();
  if (I.is_zero()) return BettiTable(p, {});
  const std::size_t n = I.context()->size();
  if (I.is_unit()) return BettiTable(p, {BettiEntry{0, 0, ExponentVector(n, 0), 1}});
  if (n > 64) throw InputError("Betti numbers support at most 64 variables");

  const LatticeWalker walker(I);
  const std::size_t words = walker.words();
  const std::size_t branches = static_cast<std::size_t>(walker.box()[0]) + 1;
  std::vector<std::vector<BettiEntry>> per(branches);
  std::atomic<std::size_t> visited{0};
  const Deadline deadline(opt.budget.max_seconds);

  parallel_for(branches, opt.threads, [&](std::size_t branch) {
    std::vector<std::uint64_t> tight(I.size(), 0);
    auto visit = [&](std::span<const Exponent> a, const std::uint64_t* div) {
      const std::size_t seen = ++visited;
      if (opt.budget.max_lattice && seen > opt.budget.max_lattice)
        throw BudgetExceeded("lcm lattice budget exceeded", seen);
      if ((seen & 0x3ff) == 0) deadline.check("graded_betti", seen);
      // Tight set of each dividing generator: the coordinates where it reaches a.
      detail::for_each_bit(div, words, [&](std::size_t g) { tight[g] = 0; });
      for (std::size_t j = 0; j < n; ++j) {
        if (a[j] == 0) continue;
        const std::uint64_t b = std::uint64_t{1} << j;
        const std::uint64_t* eq = walker.exactly(j, a[j]);
        for (std::size_t w = 0; w < words; ++w) {
          std::uint64_t x = div[w] & eq[w];
          while (x) {
            tight[w * 64 + static_cast<std::size_t>(std::countr_zero(x))] |= b;
            x &= x - 1;
          }
        }
      }
      const std::uint64_t supp = detail::support_bits(a);
      SimplicialComplex k;
      bool whole = false;
      detail::for_each_bit(div, words, [&](std::size_t g) {
        whole |= tight[g] == 0;
        k.facets.push_back(supp & ~tight[g]);
      });
      if (whole && supp != 0) return;
      const auto ranks = homology_ranks(std::move(k), opt.field);
      const std::int64_t deg = total_degree(a);
      for (std::size_t s = 0; s < ranks.size(); ++s)
        if (ranks[s])
          per[branch].push_back(BettiEntry{static_cast<int>(s), deg, ExponentVector(a.begin(), a.end()), ranks[s]});
    };
    walker.walk(visit, static_cast<Exponent>(branch));
  });

  std::vector<BettiEntry> all;
  for (auto& v : per)
    for (auto& e : v) all.push_back(std::move(e));
  return BettiTable(p, std::move(all));
}

/// reg(I); nullopt stands for −∞ (zero ideal), 0 for the unit ideal.
inline std::optional<std::int64_t> regularity(const MonomialIdeal& I, const BettiOptions& opt = {}) {
  return graded_betti(I, opt).regularity();
}

}  // namespace edgereg
