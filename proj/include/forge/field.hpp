#ifndef FORGE_FIELD_HPP
#define FORGE_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace forge {

using Coeff = std::uint32_t;

/// Raised for malformed input: bad arguments, parse errors, ring mismatches.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation is well-posed but the mathematics fails
/// (wrong codimension, irregular section, no regular sequence found, ...).
class MathError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// GF(p) for an odd prime 2 < p < 2^31. Elements are canonical
/// representatives in [0, p).
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p = 32003) : p_(p) {
    if (p <= 2 || p >= (1u << 31) || !is_prime(p))
      throw UsageError("characteristic must be a prime with 2 < p < 2^31, got " +
                       std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % p_);
  }

  Coeff inv(Coeff a) const {
    if (a == 0) throw MathError("division by zero in GF(p)");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Coeff>(t);
  }

  Coeff from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Coeff>(r);
  }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t to_signed(Coeff a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
  std::uint32_t p_;
};

}  // namespace forge

#endif  // FORGE_FIELD_HPP
