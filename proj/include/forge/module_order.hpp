#ifndef FORGE_MODULE_ORDER_HPP
#define FORGE_MODULE_ORDER_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

#include "monomial.hpp"
#include "polynomial.hpp"

namespace forge {

/// One term m*e_c of a graded free module.
struct MTerm {
  Monomial mono;
  std::uint32_t comp = 0;
  Coeff coeff = 0;
};

/// Module element: terms strictly descending in some ModuleOrder.
using ModPoly = std::vector<MTerm>;

/// Monomial order on a graded free module  sum_c R e_c,  deg(m e_c) = deg m + twist_c.
///
/// Terms compare by, in turn:
///   1. block (smaller block id is larger; used for elimination),
///   2. weighted degree,
///   3. degrevlex of m * shift_c (shift is 1 except for Schreyer components),
///   4. tiebreak_c, then c itself (smaller is larger).
///
/// With every shift equal to 1 and one block this is term-over-position with
/// twists. Setting shift_c = lead monomial of a column g_c, twist_c = deg g_c
/// and tiebreak_c = lead component of g_c gives the Schreyer order induced by
/// the columns.
class ModuleOrder {
public:
  ModuleOrder() = default;

  /// Rank-1 ring order (degrevlex).
  static ModuleOrder ring() { return top({0}); }

  /// Term-over-position with the given twists.
  static ModuleOrder top(const std::vector<int>& twists) {
    ModuleOrder o;
    for (std::size_t c = 0; c < twists.size(); ++c) o.add_component(0, twists[c], Monomial::one(), static_cast<int>(c));
    return o;
  }

  void add_component(int block, int twist, const Monomial& shift, int tiebreak) {
    block_.push_back(block);
    twist_.push_back(twist);
    shift_.push_back(shift);
    tiebreak_.push_back(tiebreak);
    if (!(shift == Monomial::one())) shifted_ = true;
  }

  std::size_t rank() const { return twist_.size(); }
  int twist(std::uint32_t c) const { return twist_[c]; }
  int block(std::uint32_t c) const { return block_[c]; }
  const Monomial& shift(std::uint32_t c) const { return shift_[c]; }

  int degree(const Monomial& m, std::uint32_t c) const { return m.degree + twist_[c]; }
  int degree(const MTerm& t) const { return degree(t.mono, t.comp); }

  std::strong_ordering compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    if (block_[ca] != block_[cb]) return block_[cb] <=> block_[ca];
    int da = a.degree + twist_[ca], db = b.degree + twist_[cb];
    if (da != db) return da <=> db;
    if (shifted_) {
      auto c = degrevlex(a * shift_[ca], b * shift_[cb]);
      if (c != 0) return c;
    } else {
      auto c = degrevlex(a, b);
      if (c != 0) return c;
    }
    if (tiebreak_[ca] != tiebreak_[cb]) return tiebreak_[cb] <=> tiebreak_[ca];
    return cb <=> ca;
  }

  std::strong_ordering compare(const MTerm& a, const MTerm& b) const {
    return compare(a.mono, a.comp, b.mono, b.comp);
  }

  bool greater(const MTerm& a, const MTerm& b) const { return compare(a, b) > 0; }

  void sort(ModPoly& p) const {
    std::sort(p.begin(), p.end(), [this](const MTerm& a, const MTerm& b) { return greater(a, b); });
  }

private:
  std::vector<int> block_;
  std::vector<int> twist_;
  std::vector<Monomial> shift_;
  std::vector<int> tiebreak_;
  bool shifted_ = false;
};

/// Sort and combine like terms.
inline ModPoly normalize(ModPoly p, const ModuleOrder& order, const PrimeField& F) {
  order.sort(p);
  ModPoly out;
  out.reserve(p.size());
  for (auto& t : p) {
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff) {
      out.push_back(t);
    }
  }
  return out;
}

/// a + c*b for module elements sorted in the same order.
inline ModPoly axpy(const ModPoly& a, Coeff c, const ModPoly& b, const ModuleOrder& order, const PrimeField& F) {
  ModPoly r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto cmp = order.compare(a[i], b[j]);
    if (cmp > 0) {
      r.push_back(a[i++]);
    } else if (cmp < 0) {
      r.push_back({b[j].mono, b[j].comp, F.mul(c, b[j].coeff)});
      ++j;
    } else {
      Coeff s = F.add(a[i].coeff, F.mul(c, b[j].coeff));
      if (s) r.push_back({a[i].mono, a[i].comp, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back({b[j].mono, b[j].comp, F.mul(c, b[j].coeff)});
  return r;
}

inline ModPoly times(const ModPoly& p, const Monomial& m, Coeff c, const PrimeField& F) {
  ModPoly r;
  r.reserve(p.size());
  for (auto& t : p) r.push_back({t.mono * m, t.comp, F.mul(t.coeff, c)});
  return r;
}

inline ModPoly make_monic(ModPoly p, const PrimeField& F) {
  if (p.empty() || p.front().coeff == 1) return p;
  Coeff inv = F.inv(p.front().coeff);
  for (auto& t : p) t.coeff = F.mul(t.coeff, inv);
  return p;
}

/// Embed a polynomial as f * e_comp.
inline ModPoly embed(const Polynomial& f, std::uint32_t comp) {
  ModPoly r;
  r.reserve(f.size());
  for (auto& t : f.terms()) r.push_back({t.mono, comp, t.coeff});
  return r;
}

/// Component `comp` of a module element, as a polynomial.
inline Polynomial extract(const ModPoly& p, std::uint32_t comp, const Ring& ring) {
  std::vector<Term> terms;
  for (auto& t : p)
    if (t.comp == comp) terms.push_back({t.mono, t.coeff});
  return Polynomial::from_terms(ring, std::move(terms));
}

}  // namespace forge

#endif  // FORGE_MODULE_ORDER_HPP
