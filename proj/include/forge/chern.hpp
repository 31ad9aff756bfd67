#ifndef FORGE_CHERN_HPP
#define FORGE_CHERN_HPP

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "field.hpp"
#include "resolution.hpp"

namespace forge {

using BigInt = boost::multiprecision::cpp_int;

/// Twist data of  F = sum O(a_i) -> G = sum O(b_j)  and a decomposable P = sum O(p_k).
struct TwistSpec {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> p{0};
  int n = 3;

  int f() const { return static_cast<int>(a.size()); }
  int g() const { return static_cast<int>(b.size()); }
  int q() const { return static_cast<int>(p.size()); }
  int r() const { return f() - g(); }

  void validate() const {
    if (g() < 1 || f() <= g()) throw UsageError("twist spec needs rank F > rank G >= 1");
    if (q() < 1 || q() >= r()) throw UsageError("twist spec needs 1 <= rank P < rank F - rank G");
    if (n < 1) throw UsageError("twist spec needs n >= 1");
  }
};

struct ChernReport {
  std::vector<BigInt> c;  // c_0 .. c_n
  BigInt c1;
  BigInt expected_degree;  // c_r
};

/// Generated-by-twists shape of a resolution: steps[i] maps a twist t
/// (summand R(t)) to its multiplicity; step 0 holds the generators.
struct ExpectedShape {
  std::vector<std::map<int, long long>> steps;

  BettiTable betti() const {
    BettiTable b;
    for (std::size_t i = 0; i < steps.size(); ++i)
      for (auto [t, m] : steps[i])
        if (m) b.ranks[{static_cast<int>(i), -t}] += static_cast<int>(m);
    return b;
  }

  std::string to_text() const { return betti().to_text(); }
};

/// Elementary symmetric function s_i of the values; s_0 = 1.
inline BigInt elementary_symmetric(const std::vector<int>& values, int i) {
  if (i < 0 || i > static_cast<int>(values.size())) throw UsageError("elementary_symmetric: index out of range");
  std::vector<BigInt> e(values.size() + 1, 0);
  e[0] = 1;
  for (std::size_t k = 0; k < values.size(); ++k)
    for (std::size_t j = k + 1; j >= 1; --j) e[j] += e[j - 1] * values[k];
  return e[i];
}

/// Coefficients of prod(1 + a_i w) / prod(1 + b_j w) up to w^n.
inline std::vector<BigInt> chern_series(const std::vector<int>& a, const std::vector<int>& b, int n) {
  std::vector<BigInt> num(n + 1, 0);
  num[0] = 1;
  for (int x : a)
    for (int k = n; k >= 1; --k) num[k] += num[k - 1] * x;
  // Divide by each (1 + b w): c_k = num_k - b c_{k-1}.
  for (int y : b)
    for (int k = 1; k <= n; ++k) num[k] -= num[k - 1] * y;
  return num;
}

inline ChernReport chern_coefficients(const TwistSpec& spec) {
  if (spec.g() < 1 || spec.f() <= spec.g()) throw UsageError("twist spec needs rank F > rank G >= 1");
  ChernReport rep;
  auto full = chern_series(spec.a, spec.b, std::max(spec.n, spec.r()));
  rep.c.assign(full.begin(), full.begin() + spec.n + 1);
  rep.c1 = full[1];
  rep.expected_degree = full[spec.r()];
  return rep;
}

/// Closed degree formula for rank-3 kernels (len a = len b + 3), by t = len b.
inline BigInt degree_formula_r3(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() + 3 || b.empty()) throw UsageError("degree_formula_r3 needs len(a) = len(b) + 3, len(b) >= 1");
  BigInt s1 = elementary_symmetric(a, 1), s2 = elementary_symmetric(a, 2), s3 = elementary_symmetric(a, 3);
  if (b.size() == 1) {
    BigInt b1 = b[0];
    return s3 - b1 * s2 + b1 * b1 * s1 - b1 * b1 * b1;
  }
  if (b.size() == 2) {
    BigInt b1 = b[0], b2 = b[1];
    return s3 - (b1 + b2) * s2 + (b1 * b1 + b1 * b2 + b2 * b2) * s1 -
           (b1 * b1 * b1 + b1 * b1 * b2 + b1 * b2 * b2 + b2 * b2 * b2);
  }
  BigInt e1 = elementary_symmetric(b, 1), e2 = elementary_symmetric(b, 2), e3 = elementary_symmetric(b, 3);
  return s3 - e3 - s1 * e2 - s2 * e1 + 2 * e1 * e2 + e1 * e1 * s1 - e1 * e1 * e1;
}

namespace detail {

using Multiset = std::map<int, long long>;  // twist -> multiplicity

inline Multiset tensor(const Multiset& x, const Multiset& y) {
  Multiset r;
  for (auto [s, m] : x)
    for (auto [t, k] : y) r[s + t] += m * k;
  return r;
}

inline Multiset shift(const Multiset& x, int by) {
  Multiset r;
  for (auto [s, m] : x) r[s + by] += m;
  return r;
}

inline void add_into(Multiset& acc, const Multiset& x) {
  for (auto [s, m] : x) acc[s] += m;
}

/// Twists of the i-th exterior power of sum R(v): sums over i-subsets.
inline Multiset wedge(const std::vector<int>& v, int i) {
  if (i < 0 || i > static_cast<int>(v.size())) return {};
  std::vector<Multiset> dp(i + 1);
  dp[0][0] = 1;
  for (int x : v)
    for (int k = i; k >= 1; --k) add_into(dp[k], shift(dp[k - 1], x));
  return dp[i];
}

/// Twists of the j-th symmetric power of sum R(v): sums over j-multisubsets.
inline Multiset sym(const std::vector<int>& v, int j) {
  if (j < 0) return {};
  std::vector<Multiset> dp(j + 1);
  dp[0][0] = 1;
  for (int x : v)
    for (int k = 1; k <= j; ++k) add_into(dp[k], shift(dp[k - 1], x));
  return dp[j];
}

inline std::vector<int> negated(const std::vector<int>& v) {
  std::vector<int> r;
  for (int x : v) r.push_back(-x);
  return r;
}

inline int sum(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

}  // namespace detail

/// Rank-3 kernel on P^3:  R(-c1) -> F(-c1) + G* -> G(-c1) + F* -> I_X.
inline ExpectedShape expected_resolution_rank3(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() + 3) throw UsageError("rank-3 shape needs len(a) = len(b) + 3");
  int c1 = detail::sum(a) - detail::sum(b);
  ExpectedShape s;
  s.steps.resize(3);
  for (int y : b) s.steps[0][y - c1] += 1;
  for (int x : a) s.steps[0][-x] += 1;
  for (int x : a) s.steps[1][x - c1] += 1;
  for (int y : b) s.steps[1][-y] += 1;
  s.steps[2][-c1] += 1;
  return s;
}

/// Modules A_k + C_k (k = 1..r) of the resolution of I_X (wedge(q) P^* untwisted):
///   A_k = sum over i + 2j = k+q-1, q <= i+j <= (r+q-1)/2 of  wedge^i F* (x) S^j(G)* (x) S^{i+j-q} P
///   C_k = sum over i + 2j = r+1-q-k, i+j <= (r-q)/2     of  wedge^i F (x) S^j G (x) S^{r-q-i-j} P
///         (x) wedge^f F* (x) wedge^g G.
inline ExpectedShape expected_resolution_general(const TwistSpec& spec) {
  spec.validate();
  using namespace detail;
  const int r = spec.r(), q = spec.q();
  const int global = -sum(spec.a) + sum(spec.b);
  const int untwist = sum(spec.p);
  auto Fd = negated(spec.a), Gd = negated(spec.b);
  ExpectedShape s;
  for (int k = 1; k <= r; ++k) {
    Multiset step;
    for (int j = 0; 2 * j <= k + q - 1; ++j) {
      int i = k + q - 1 - 2 * j;
      if (i + j < q || 2 * (i + j) > r + q - 1) continue;
      add_into(step, tensor(tensor(wedge(Fd, i), sym(Gd, j)), sym(spec.p, i + j - q)));
    }
    for (int j = 0; 2 * j <= r + 1 - q - k; ++j) {
      int i = r + 1 - q - k - 2 * j;
      if (2 * (i + j) > r - q) continue;
      Multiset m = tensor(tensor(wedge(spec.a, i), sym(spec.b, j)), sym(spec.p, r - q - i - j));
      add_into(step, shift(m, global));
    }
    Multiset clean;
    for (auto [t, m] : step)
      if (m) clean[t + untwist] = m;
    s.steps.push_back(clean);
  }
  while (!s.steps.empty() && s.steps.back().empty()) s.steps.pop_back();
  return s;
}

/// Data of a generalized kernel: E_1, E_2 twists, complete intersection
/// degrees d_1..d_3, the twist l of the Gorenstein scheme and the degree d.
struct GenBRSpec {
  std::vector<int> e1, e2;
  int d1 = 0, d2 = 0, d3 = 0;
  int l = 0;
  int d = 0;
  int n = 3;

  int alpha() const { return d1 + d2 + d3; }
  int b() const { return 2 * d - alpha() - l + 4; }

  void validate() const {
    if (e1.size() != e2.size()) throw UsageError("E1 and E2 must have the same rank");
    if (d <= std::max({d1, d2, d3})) throw UsageError("need d > max(d_i)");
    if (d1 < 1 || d2 < 1 || d3 < 1) throw UsageError("complete intersection degrees must be positive");
  }

  bool verified_setting() const { return n == 3; }
};

/// R(a-d-b) + E1*(-b) -> sum R(d_i - b) + R(-d) + E2*(-b) -> sum R(d_i - d) + R(d - b) -> I_Z(s).
inline ExpectedShape expected_resolution_generalized_kernel(const GenBRSpec& g) {
  g.validate();
  const int b = g.b(), d = g.d;
  ExpectedShape s;
  s.steps.resize(3);
  for (int di : {g.d1, g.d2, g.d3}) s.steps[0][di - d] += 1;
  s.steps[0][d - b] += 1;
  for (int di : {g.d1, g.d2, g.d3}) s.steps[1][di - b] += 1;
  s.steps[1][-d] += 1;
  for (int e : g.e2) s.steps[1][-e - b] += 1;
  s.steps[2][g.alpha() - d - b] += 1;
  for (int e : g.e1) s.steps[2][-e - b] += 1;
  return s;
}

struct HVectorReport {
  bool symmetric = false;
  long long sum = 0;
};

inline HVectorReport h_vector_checks(const std::vector<long long>& h) {
  HVectorReport r;
  r.symmetric = !h.empty();
  for (std::size_t i = 0; i < h.size(); ++i) {
    r.sum += h[i];
    if (h[i] != h[h.size() - 1 - i]) r.symmetric = false;
  }
  return r;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace forge

#endif  // FORGE_CHERN_HPP
