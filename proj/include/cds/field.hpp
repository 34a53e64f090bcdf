#pragma once

#include <cstdint>

namespace cds {

/// Arithmetic context for the prime field F_p.
///
/// The modulus is validated by trial division at construction and capped at
/// 2^31 - 1 so every product fits a 64-bit intermediate. Element values are
/// plain uint32_t, kept reduced to [0, p) by all operations.
class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is prime and p <= 2^31 - 1.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return static_cast<std::uint32_t>(s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(a + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : static_cast<std::uint32_t>(p_ - a); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
  }

  /// Multiplicative inverse by extended Euclid; throws on 0.
  std::uint32_t inv(std::uint32_t a) const;

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// Reduce an arbitrary signed value into [0, p).
  std::uint32_t reduce_signed(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(m);
  }

  static bool is_prime(std::uint64_t n);
  /// Smallest prime >= n (n <= 2^31 - 1 assumed; result validated).
  static std::uint64_t next_prime_at_least(std::uint64_t n);

 private:
  std::uint64_t p_;
};

}  // namespace cds
