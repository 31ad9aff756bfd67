#ifndef FORGE_POLYNOMIAL_HPP
#define FORGE_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"
#include "rng.hpp"

namespace forge {

/// k[z0..z_{nvars-1}] over GF(p) with degrevlex. Projective dimension is nvars-1.
struct Ring {
  int nvars = 4;
  PrimeField field{32003};

  Ring() = default;
  Ring(std::uint32_t p, int nvars_) : nvars(nvars_), field(p) {
    if (nvars < 1 || nvars > kMaxVars)
      throw UsageError("variable count must be in 1.." + std::to_string(kMaxVars));
  }

  /// Ring of P^n, i.e. n+1 variables.
  static Ring projective(std::uint32_t p, int n) { return Ring(p, n + 1); }

  int projective_dim() const { return nvars - 1; }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.nvars == b.nvars && a.field == b.field;
  }
};

struct Term {
  Monomial mono;
  Coeff coeff;
};

/// Exact polynomial over GF(p): terms strictly descending in degrevlex,
/// no zero coefficients. The zero polynomial has no terms.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(ring) {}

  static Polynomial constant(Ring ring, std::int64_t c) {
    Polynomial p(ring);
    Coeff v = ring.field.from_int(c);
    if (v) p.terms_.push_back({Monomial::one(), v});
    return p;
  }

  static Polynomial variable(Ring ring, int i) {
    if (i < 0 || i >= ring.nvars) throw UsageError("variable index out of range");
    Polynomial p(ring);
    p.terms_.push_back({Monomial::variable(i), 1});
    return p;
  }

  static Polynomial monomial(Ring ring, const Monomial& m, Coeff c = 1) {
    Polynomial p(ring);
    if (c) p.terms_.push_back({m, c});
    return p;
  }

  /// Build from arbitrary (possibly unsorted, repeated) terms.
  static Polynomial from_terms(Ring ring, std::vector<Term> terms) {
    Polynomial p(ring);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return degrevlex(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = ring.field.add(p.terms_.back().coeff, t.coeff);
        if (p.terms_.back().coeff == 0) p.terms_.pop_back();
      } else if (t.coeff != 0) {
        p.terms_.push_back(t);
      }
    }
    return p;
  }

  /// Trusted constructor: terms already sorted and nonzero.
  static Polynomial from_sorted(Ring ring, std::vector<Term> terms) {
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    return p;
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0); }

  /// Maximal total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (auto& t : terms_) d = std::max<int>(d, t.mono.degree);
    return d;
  }

  /// Homogeneity test. The zero polynomial is homogeneous of every degree;
  /// this is reported as {true, nullopt}.
  std::pair<bool, std::optional<int>> homogeneity() const {
    if (terms_.empty()) return {true, std::nullopt};
    int d = terms_.front().mono.degree;
    for (auto& t : terms_)
      if (t.mono.degree != d) return {false, std::nullopt};
    return {true, d};
  }

  bool is_homogeneous() const { return homogeneity().first; }

  Polynomial scaled(Coeff c) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono, ring_.field.mul(t.coeff, c)});
    return r;
  }

  Polynomial times_monomial(const Monomial& m, Coeff c = 1) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono * m, ring_.field.mul(t.coeff, c)});
    return r;
  }

  /// Leading coefficient scaled to one.
  Polynomial monic() const {
    if (terms_.empty()) return *this;
    return scaled(ring_.field.inv(terms_.front().coeff));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.ring_ == b.ring_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  /// a + c*b, merged in one pass.
  static Polynomial axpy(const Polynomial& a, Coeff c, const Polynomial& b) {
    check_same_ring(a, b);
    const PrimeField& F = a.ring_.field;
    Polynomial r(a.ring_);
    if (c == 0) return a;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
      auto cmp = degrevlex(a.terms_[i].mono, b.terms_[j].mono);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back({b.terms_[j].mono, F.mul(c, b.terms_[j].coeff)});
        ++j;
      } else {
        Coeff s = F.add(a.terms_[i].coeff, F.mul(c, b.terms_[j].coeff));
        if (s) r.terms_.push_back({a.terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back({b.terms_[j].mono, F.mul(c, b.terms_[j].coeff)});
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return axpy(a, 1, b); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return axpy(a, a.ring_.field.neg(1), b);
  }
  Polynomial operator-() const { return scaled(ring_.field.neg(1)); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    const PrimeField& F = a.ring_.field;
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    std::unordered_map<Monomial, Coeff, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (auto& s : a.terms_)
      for (auto& t : b.terms_) {
        Coeff& slot = acc[s.mono * t.mono];
        slot = F.add(slot, F.mul(s.coeff, t.coeff));
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c) terms.push_back({m, c});
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return degrevlex(x.mono, y.mono) > 0; });
    return from_sorted(a.ring_, std::move(terms));
  }

  Polynomial pow(int e) const {
    Polynomial r = constant(ring_, 1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Substitute variables by a permutation: z_i -> z_{perm[i]}.
  Polynomial permuted(const std::vector<int>& perm) const {
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (auto& t : terms_) {
      Monomial m;
      for (int i = 0; i < ring_.nvars; ++i) m.exp[perm[i]] = t.mono.exp[i];
      m.degree = t.mono.degree;
      terms.push_back({m, t.coeff});
    }
    return from_terms(ring_, std::move(terms));
  }

  std::string to_string() const;

  static void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (!(a.ring_ == b.ring_)) throw UsageError("polynomial ring mismatch");
  }

private:
  Ring ring_;
  std::vector<Term> terms_;
};

inline std::string monomial_to_string(const Monomial& m) {
  std::string s;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!m.exp[i]) continue;
    if (!s.empty()) s += '*';
    s += 'z' + std::to_string(i);
    if (m.exp[i] > 1) s += '^' + std::to_string(m.exp[i]);
  }
  return s;
}

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : terms_) {
    std::int64_t c = ring_.field.to_signed(t.coeff);
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_to_string(t.mono);
    if (mono.empty()) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + '*';
      out += mono;
    }
  }
  return out;
}

namespace detail {

/// Recursive-descent parser for the polynomial grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ['^' integer]
///   atom   := integer | 'z' integer | '(' expr ')'
class PolyParser {
public:
  PolyParser(Ring ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UsageError("polynomial parse error at position " + std::to_string(pos_) + ": " + why +
                     " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (1ULL << 60)) fail("integer too large");
      ++pos_;
    }
    return v;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    Polynomial t = term();
    acc = neg ? -t : t;
    while (true) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      std::uint64_t e = integer();
      if (e > 255) fail("exponent too large");
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (accept('(')) {
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < s_.size() && s_[pos_] == 'z') {
      ++pos_;
      std::uint64_t i = integer();
      if (i >= static_cast<std::uint64_t>(ring_.nvars)) fail("variable z" + std::to_string(i) + " not in ring");
      return Polynomial::variable(ring_, static_cast<int>(i));
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::uint64_t v = integer();
      return Polynomial::constant(ring_, static_cast<std::int64_t>(v % ring_.field.characteristic()));
    }
    fail("expected number, variable or '('");
  }

  Ring ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(const Ring& ring, std::string_view text) {
  return detail::PolyParser(ring, text).parse();
}

/// All monomials of total degree d in nvars variables, in descending degrevlex order.
inline std::vector<Monomial> monomials_of_degree(int nvars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur;
  // Enumerate compositions recursively.
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      cur.exp[var] = static_cast<std::uint8_t>(left);
      Monomial m = cur;
      m.recompute_degree();
      out.push_back(m);
      cur.exp[var] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.exp[var] = static_cast<std::uint8_t>(e);
      self(self, var + 1, left - e);
    }
    cur.exp[var] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return degrevlex(a, b) > 0; });
  return out;
}

/// Homogeneous form of degree d whose every monomial gets an independent
/// coefficient next() mod p, taken in descending degrevlex order.
inline Polynomial random_form(const Ring& ring, int d, Rng& rng) {
  if (d < 0) throw UsageError("random_form: negative degree");
  std::vector<Term> terms;
  for (const Monomial& m : monomials_of_degree(ring.nvars, d)) {
    Coeff c = static_cast<Coeff>(rng.below(ring.field.characteristic()));
    if (c) terms.push_back({m, c});
  }
  return Polynomial::from_sorted(ring, std::move(terms));
}

}  // namespace forge

#endif  // FORGE_POLYNOMIAL_HPP
