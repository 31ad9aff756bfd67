#ifndef FORGE_HILBERT_HPP
#define FORGE_HILBERT_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "monomial.hpp"

namespace forge {

/// Integer polynomial in t as a coefficient list (index = power).
using Series = std::vector<std::int64_t>;

inline void trim(Series& s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
}

inline Series series_mul(const Series& a, const Series& b) {
  if (a.empty() || b.empty()) return {};
  Series r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline Series series_add(Series a, const Series& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

/// Divide by (1 - t) once; returns false if the division is not exact.
inline bool divide_one_minus_t(Series& s) {
  if (s.empty()) return true;
  Series q(s.size() - 1, 0);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    acc += s[i];
    q[i] = acc;
  }
  if (acc + s.back() != 0) return false;
  trim(q);
  s = std::move(q);
  return true;
}

/// Remove generators divisible by another generator (and duplicates).
inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree < b.degree; });
  std::vector<Monomial> out;
  for (auto& g : gens) {
    bool redundant = false;
    for (auto& h : out)
      if (divides(h, g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  return out;
}

namespace detail {

inline Series numerator_rec(std::vector<Monomial> gens, int nvars) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  bool pairwise_coprime = true;
  for (std::size_t i = 0; i < gens.size() && pairwise_coprime; ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!coprime(gens[i], gens[j])) {
        pairwise_coprime = false;
        break;
      }
  if (pairwise_coprime) {
    Series r{1};
    for (auto& g : gens) {
      Series f(g.degree + 1, 0);
      f[0] = 1;
      f[g.degree] -= 1;
      r = series_mul(r, f);
    }
    return r;
  }
  // Pivot on the variable occurring in the most generators.
  int best = -1, best_count = 0;
  for (int v = 0; v < nvars; ++v) {
    int count = 0;
    for (auto& g : gens)
      if (g.exp[v]) ++count;
    if (count > best_count) {
      best = v;
      best_count = count;
    }
  }
  Monomial x = Monomial::variable(best);
  std::vector<Monomial> plus = gens;
  plus.push_back(x);
  std::vector<Monomial> colon;
  colon.reserve(gens.size());
  for (auto& g : gens) {
    Monomial q = g;
    if (q.exp[best]) {
      --q.exp[best];
      --q.degree;
    }
    colon.push_back(q);
  }
  Series a = numerator_rec(std::move(plus), nvars);
  Series b = numerator_rec(std::move(colon), nvars);
  b.insert(b.begin(), 0);
  return series_add(std::move(a), b);
}

}  // namespace detail

/// Numerator Q(t) of the Hilbert series Q(t)/(1-t)^nvars of k[z]/M for a
/// monomial ideal M, by the pivot recursion N(M) = N(M + x) + t N(M : x).
inline Series hilbert_numerator(const std::vector<Monomial>& gens, int nvars) {
  return detail::numerator_rec(gens, nvars);
}

/// Krull dimension of k[z]/M: the size of a largest set of variables that
/// contains the support of no generator. -1 if M is the unit ideal.
inline int independent_set_dimension(const std::vector<Monomial>& gens, int nvars) {
  std::vector<std::uint32_t> supports;
  for (auto& g : gens) {
    std::uint32_t s = 0;
    for (int v = 0; v < nvars; ++v)
      if (g.exp[v]) s |= 1u << v;
    if (s == 0) return -1;
    supports.push_back(s);
  }
  int best = 0;
  const std::uint32_t full = nvars >= 32 ? ~0u : (1u << nvars);
  for (std::uint32_t set = 0; set < full; ++set) {
    int size = __builtin_popcount(set);
    if (size <= best) continue;
    bool ok = true;
    for (auto s : supports)
      if ((s & set) == s) {
        ok = false;
        break;
      }
    if (ok) best = size;
  }
  return best;
}

}  // namespace forge

#endif  // FORGE_HILBERT_HPP
