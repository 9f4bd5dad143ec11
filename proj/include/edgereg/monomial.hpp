#pragma once

// Monomials and monomial ideals over a polynomial ring k[x_1, ..., x_n].
//
// Ideals are always kept in canonical form: the divisibility-minimal
// generators sorted in graded lexicographic order. Equality of ideals is
// therefore plain sequence equality.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "edgereg/errors.hpp"

namespace edgereg {

using Exponent = std::int32_t;
using ExponentVector = std::vector<Exponent>;

class RingContext;
using ContextPtr = std::shared_ptr<const RingContext>;

/// The variable set of a polynomial ring. The coefficient field is not part
/// of the context; homology routines take a characteristic separately.
class RingContext {
 public:
  explicit RingContext(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InputError("ring context needs at least one variable");
    std::unordered_set<std::string> seen;
    for (const auto& nm : names_) {
      if (nm.empty()) throw InputError("empty variable name");
      if (!seen.insert(nm).second) throw InputError("duplicate variable name '" + nm + "'");
    }
  }

  static ContextPtr make(std::vector<std::string> names) {
    return std::make_shared<const RingContext>(std::move(names));
  }

  /// x1, ..., xn
  static ContextPtr standard(std::size_t n, const std::string& prefix = "x") {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    return make(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view nm) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == nm) return i;
    return std::nullopt;
  }

  friend bool operator==(const RingContext& a, const RingContext& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (!same_context(a, b)) throw ContextMismatch();
}

namespace detail {

inline Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("monomial exponent overflow");
  return r;
}

inline std::uint64_t support_bits(std::span<const Exponent> e) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) bits |= std::uint64_t{1} << (i % 64);
  return bits;
}

}  // namespace detail

/// x^a for a non-negative exponent vector a.
class Monomial {
 public:
  /// The constant monomial 1.
  explicit Monomial(ContextPtr ctx) : ctx_(std::move(ctx)), exps_(ctx_->size(), 0) {}

  Monomial(ContextPtr ctx, ExponentVector exps) : ctx_(std::move(ctx)), exps_(std::move(exps)) {
    if (exps_.size() != ctx_->size())
      throw InputError("exponent vector has length " + std::to_string(exps_.size()) + ", ring has " +
                       std::to_string(ctx_->size()) + " variables");
    for (Exponent x : exps_) {
      if (x < 0) throw InputError("negative exponent");
      degree_ += x;
    }
    support_ = detail::support_bits(exps_);
  }

  static Monomial variable(ContextPtr ctx, std::size_t i) {
    ExponentVector e(ctx->size(), 0);
    e.at(i) = 1;
    return Monomial(std::move(ctx), std::move(e));
  }

  /// Squarefree product of the listed variables.
  template <typename Range>
  static Monomial squarefree(ContextPtr ctx, const Range& indices) {
    ExponentVector e(ctx->size(), 0);
    for (auto i : indices) e.at(static_cast<std::size_t>(i)) = 1;
    return Monomial(std::move(ctx), std::move(e));
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  std::size_t size() const noexcept { return exps_.size(); }
  std::span<const Exponent> exponents() const noexcept { return exps_; }
  const ExponentVector& vec() const noexcept { return exps_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::int64_t degree() const noexcept { return degree_; }
  std::uint64_t support_bits() const noexcept { return support_; }
  bool is_one() const noexcept { return degree_ == 0; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > 0) s.push_back(i);
    return s;
  }

  std::string to_string() const {
    if (is_one()) return "1";
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += ctx_->name(i);
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  /// Graded lexicographic: lower degree first, then larger exponent of the
  /// earliest variable first.
  friend bool grlex_less(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.exps_ > b.exps_;
  }

 private:
  ContextPtr ctx_;
  ExponentVector exps_;
  std::int64_t degree_ = 0;
  std::uint64_t support_ = 0;
};

bool grlex_less(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Exponent x : m.exponents()) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

inline bool divides(const Monomial& a, const Monomial& b) {
  require_same_context(a.context(), b.context());
  if ((a.support_bits() & ~b.support_bits()) != 0 || a.degree() > b.degree()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  require_same_context(a.context(), b.context());
  ExponentVector e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(a.context(), std::move(e));
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  require_same_context(a.context(), b.context());
  ExponentVector e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(a[i], b[i]);
  return Monomial(a.context(), std::move(e));
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  require_same_context(a.context(), b.context());
  ExponentVector e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = detail::checked_add(a[i], b[i]);
  return Monomial(a.context(), std::move(e));
}

/// a / gcd(a, b): the part of a not cancelled by b.
inline Monomial strip(const Monomial& a, const Monomial& b) {
  require_same_context(a.context(), b.context());
  ExponentVector e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i] - b[i], 0);
  return Monomial(a.context(), std::move(e));
}

/// Exact quotient b / a; requires a | b.
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  if (!divides(a, b)) throw std::invalid_argument(a.to_string() + " does not divide " + b.to_string());
  return strip(b, a);
}

inline Monomial pow(const Monomial& m, unsigned k) {
  ExponentVector e(m.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::int64_t v = std::int64_t{m[i]} * k;
    if (v > std::numeric_limits<Exponent>::max()) throw std::overflow_error("monomial exponent overflow");
    e[i] = static_cast<Exponent>(v);
  }
  return Monomial(m.context(), std::move(e));
}

/// A monomial ideal held by its minimal generators in grlex order. The zero
/// ideal has no generators; the unit ideal is generated by 1.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static MonomialIdeal unit(ContextPtr ctx) {
    MonomialIdeal I(ctx);
    I.gens_.emplace_back(ctx);
    return I;
  }

  static MonomialIdeal minimalize(ContextPtr ctx, std::vector<Monomial> cands) {
    for (const auto& m : cands) require_same_context(ctx, m.context());
    std::sort(cands.begin(), cands.end(), grlex_less);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    MonomialIdeal I(std::move(ctx));
    for (auto& m : cands) {
      bool redundant = false;
      for (const auto& g : I.gens_) {
        if (g.degree() >= m.degree()) break;
        if (divides(g, m)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) I.gens_.push_back(std::move(m));
    }
    // The early break above relies on gens_ staying degree-sorted, which
    // holds because candidates were visited in grlex order.
    return I;
  }

  static MonomialIdeal from_generators(ContextPtr ctx, std::vector<Monomial> gens) {
    return minimalize(std::move(ctx), std::move(gens));
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<Monomial>& gens() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit() const noexcept { return gens_.size() == 1 && gens_.front().is_one(); }

  std::int64_t min_degree() const {
    if (gens_.empty()) throw std::logic_error("zero ideal has no generators");
    return gens_.front().degree();
  }

  std::int64_t max_degree() const {
    std::int64_t d = 0;
    for (const auto& g : gens_) d = std::max(d, g.degree());
    return d;
  }

  std::string to_string() const {
    if (gens_.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) out += ", ";
      out += gens_[i].to_string();
    }
    return out + ")";
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return same_context(a.ctx_, b.ctx_) && a.gens_ == b.gens_;
  }

 private:
  ContextPtr ctx_;
  std::vector<Monomial> gens_;
};

inline bool contains(const MonomialIdeal& I, const Monomial& m) {
  require_same_context(I.context(), m.context());
  for (const auto& g : I.gens()) {
    if (g.degree() > m.degree()) break;
    if (divides(g, m)) return true;
  }
  return false;
}

/// J ⊆ I
inline bool contains(const MonomialIdeal& I, const MonomialIdeal& J) {
  return std::all_of(J.gens().begin(), J.gens().end(), [&](const Monomial& g) { return contains(I, g); });
}

inline MonomialIdeal operator+(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_same_context(I.context(), J.context());
  std::vector<Monomial> all(I.gens());
  all.insert(all.end(), J.gens().begin(), J.gens().end());
  return MonomialIdeal::minimalize(I.context(), std::move(all));
}

inline MonomialIdeal multiply(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_same_context(I.context(), J.context());
  std::vector<Monomial> prods;
  prods.reserve(I.size() * J.size());
  for (const auto& a : I.gens())
    for (const auto& b : J.gens()) prods.push_back(a * b);
  return MonomialIdeal::minimalize(I.context(), std::move(prods));
}

inline MonomialIdeal operator*(const MonomialIdeal& I, const MonomialIdeal& J) { return multiply(I, J); }

/// I * (m)
inline MonomialIdeal multiply(const MonomialIdeal& I, const Monomial& m) {
  require_same_context(I.context(), m.context());
  std::vector<Monomial> prods;
  prods.reserve(I.size());
  for (const auto& a : I.gens()) prods.push_back(a * m);
  return MonomialIdeal::minimalize(I.context(), std::move(prods));
}

/// Repeated squaring, minimalizing after every product.
inline MonomialIdeal power(const MonomialIdeal& I, unsigned s) {
  MonomialIdeal result = MonomialIdeal::unit(I.context());
  MonomialIdeal base = I;
  while (s > 0) {
    if (s & 1u) result = multiply(result, base);
    s >>= 1u;
    if (s > 0) base = multiply(base, base);
  }
  return result;
}

inline MonomialIdeal colon(const MonomialIdeal& I, const Monomial& m) {
  require_same_context(I.context(), m.context());
  std::vector<Monomial> q;
  q.reserve(I.size());
  for (const auto& u : I.gens()) q.push_back(strip(u, m));
  return MonomialIdeal::minimalize(I.context(), std::move(q));
}

inline MonomialIdeal intersect(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_same_context(I.context(), J.context());
  std::vector<Monomial> l;
  l.reserve(I.size() * J.size());
  for (const auto& a : I.gens())
    for (const auto& b : J.gens()) l.push_back(lcm(a, b));
  return MonomialIdeal::minimalize(I.context(), std::move(l));
}

inline MonomialIdeal colon(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_same_context(I.context(), J.context());
  if (J.is_zero()) throw std::invalid_argument("colon by the zero ideal");
  MonomialIdeal result = colon(I, J.gens().front());
  for (std::size_t k = 1; k < J.size(); ++k) result = intersect(result, colon(I, J.gens()[k]));
  return result;
}

/// ∂*(I): generated by u/x for minimal generators u and variables x | u.
inline MonomialIdeal partial_star(const MonomialIdeal& I) {
  if (I.is_zero() || I.is_unit()) throw std::invalid_argument("partial_star needs a nonzero proper ideal");
  std::vector<Monomial> out;
  for (const auto& u : I.gens()) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      ExponentVector e = u.vec();
      --e[i];
      out.emplace_back(I.context(), std::move(e));
    }
  }
  return MonomialIdeal::minimalize(I.context(), std::move(out));
}

/// The ideal generated by the listed variables.
template <typename Range>
MonomialIdeal variable_ideal(const ContextPtr& ctx, const Range& indices) {
  std::vector<Monomial> g;
  for (auto i : indices) g.push_back(Monomial::variable(ctx, static_cast<std::size_t>(i)));
  return MonomialIdeal::minimalize(ctx, std::move(g));
}

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   vars: x1 x2 x3
//   x1^2*x3
//   0 1 1
//
// Token lines and exponent-vector lines may be mixed once the context is fixed.
// Without a header the context is inferred: from the vector length for
// exponent lines, or from x<i> names (n = largest i) for token lines.

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline bool looks_numeric(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == ' ' || c == '\t'; });
}

inline Exponent parse_exponent(const std::string& tok, std::size_t lineno) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InputError("line " + std::to_string(lineno) + ": bad exponent '" + tok + "'");
  long long v = std::stoll(tok);
  if (v > std::numeric_limits<Exponent>::max()) throw InputError("line " + std::to_string(lineno) + ": exponent too large");
  return static_cast<Exponent>(v);
}

}  // namespace detail

inline Monomial parse_monomial(const ContextPtr& ctx, const std::string& text, std::size_t lineno = 0) {
  std::string line = detail::trim(text);
  ExponentVector e(ctx->size(), 0);
  if (line == "1") return Monomial(ctx);
  if (detail::looks_numeric(line)) {
    std::istringstream in(line);
    std::string tok;
    std::size_t i = 0;
    while (in >> tok) {
      if (i >= e.size()) throw InputError("line " + std::to_string(lineno) + ": too many exponents");
      e[i++] = detail::parse_exponent(tok, lineno);
    }
    if (i != e.size()) throw InputError("line " + std::to_string(lineno) + ": too few exponents");
    return Monomial(ctx, std::move(e));
  }
  std::size_t pos = 0;
  while (pos <= line.size()) {
    auto star = line.find('*', pos);
    std::string factor = detail::trim(line.substr(pos, star == std::string::npos ? std::string::npos : star - pos));
    if (factor.empty()) throw InputError("line " + std::to_string(lineno) + ": empty factor");
    std::string name = factor;
    Exponent k = 1;
    if (auto caret = factor.find('^'); caret != std::string::npos) {
      name = detail::trim(factor.substr(0, caret));
      k = detail::parse_exponent(detail::trim(factor.substr(caret + 1)), lineno);
    }
    auto idx = ctx->index_of(name);
    if (!idx) throw InputError("line " + std::to_string(lineno) + ": unknown variable '" + name + "'");
    e[*idx] = detail::checked_add(e[*idx], k);
    if (star == std::string::npos) break;
    pos = star + 1;
  }
  return Monomial(ctx, std::move(e));
}

inline MonomialIdeal parse_ideal(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> body;
  ContextPtr ctx;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("vars:", 0) == 0) {
      if (ctx || !body.empty()) throw InputError("line " + std::to_string(lineno) + ": 'vars:' header must come first");
      std::istringstream names(line.substr(5));
      std::vector<std::string> vs;
      std::string v;
      while (names >> v) vs.push_back(v);
      ctx = RingContext::make(std::move(vs));
      continue;
    }
    body.emplace_back(lineno, line);
  }
  if (!ctx) {
    std::size_t n = 0;
    for (const auto& [ln, line] : body) {
      if (detail::looks_numeric(line) && line != "1") {
        std::istringstream ls(line);
        std::size_t k = 0;
        std::string tok;
        while (ls >> tok) ++k;
        n = std::max(n, k);
      } else if (line != "1") {
        for (std::size_t p = 0; p < line.size();) {
          if (line[p] == 'x') {
            std::size_t q = p + 1;
            while (q < line.size() && std::isdigit(static_cast<unsigned char>(line[q]))) ++q;
            if (q == p + 1) throw InputError("line " + std::to_string(ln) + ": cannot infer variables without a 'vars:' header");
            n = std::max<std::size_t>(n, std::stoul(line.substr(p + 1, q - p - 1)));
            p = q;
          } else {
            ++p;
          }
        }
      }
    }
    if (n == 0) throw InputError("ideal file declares no variables");
    ctx = RingContext::standard(n);
  }
  std::vector<Monomial> gens;
  for (const auto& [ln, line] : body) gens.push_back(parse_monomial(ctx, line, ln));
  return MonomialIdeal::minimalize(ctx, std::move(gens));
}

inline std::string emit_ideal(const MonomialIdeal& I) {
  std::string out = "vars:";
  for (const auto& nm : I.context()->names()) out += ' ' + nm;
  out += '\n';
  for (const auto& g : I.gens()) out += g.to_string() + '\n';
  return out;
}

}  // namespace edgereg
