#ifndef FORGE_MONOMIAL_HPP
#define FORGE_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>

#include "field.hpp"

namespace forge {

inline constexpr int kMaxVars = 16;

/// Dense exponent vector over z0..z15 with a cached total degree.
/// Unused trailing variables stay at exponent zero.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};
  std::uint16_t degree = 0;

  static Monomial one() { return {}; }

  static Monomial variable(int i, int power = 1) {
    Monomial m;
    m.exp[i] = static_cast<std::uint8_t>(power);
    m.degree = static_cast<std::uint16_t>(power);
    return m;
  }

  int operator[](int i) const { return exp[i]; }

  void recompute_degree() {
    int d = 0;
    for (auto e : exp) d += e;
    degree = static_cast<std::uint16_t>(d);
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exp == b.exp;
  }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  unsigned overflow = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.exp[i]) + b.exp[i];
    overflow |= s;
    m.exp[i] = static_cast<std::uint8_t>(s);
  }
  if (overflow > 255) throw MathError("monomial exponent overflow (> 255)");
  m.degree = static_cast<std::uint16_t>(a.degree + b.degree);
  return m;
}

/// True iff a divides b.
inline bool divides(const Monomial& a, const Monomial& b) {
  if (a.degree > b.degree) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

/// b / a; requires divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint8_t>(b.exp[i] - a.exp[i]);
  m.degree = static_cast<std::uint16_t>(b.degree - a.degree);
  return m;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = std::max(a.exp[i], b.exp[i]);
  m.recompute_degree();
  return m;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(a.exp[i], b.exp[i]);
  m.recompute_degree();
  return m;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

/// Degree reverse lexicographic comparison with z0 > z1 > ... > z15.
/// Higher total degree wins; on ties the monomial with the smaller
/// exponent in the last differing variable is larger.
inline std::strong_ordering degrevlex(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree <=> b.degree;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.exp[i] != b.exp[i]) return b.exp[i] <=> a.exp[i];
  return std::strong_ordering::equal;
}

/// Checked comparison for monomials living in rings with `nvars` variables.
inline std::strong_ordering compare(const Monomial& a, const Monomial& b, int nvars_a, int nvars_b) {
  if (nvars_a != nvars_b) throw UsageError("monomial comparison across different variable counts");
  return degrevlex(a, b);
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t lo, hi;
    static_assert(kMaxVars == 16);
    std::memcpy(&lo, m.exp.data(), 8);
    std::memcpy(&hi, m.exp.data() + 8, 8);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace forge

#endif  // FORGE_MONOMIAL_HPP
