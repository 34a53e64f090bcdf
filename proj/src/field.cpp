#include "cds/field.hpp"

#include <stdexcept>
#include <string>

namespace cds {

namespace {
constexpr std::uint64_t kMaxModulus = (std::uint64_t(1) << 31) - 1;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p > kMaxModulus)
    throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " exceeds 2^31-1");
  if (!is_prime(p))
    throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw std::invalid_argument("PrimeField: inverse of zero");
  // extended Euclid on (a, p); coefficients stay within int64
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_), new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(t);
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t acc = 1 % p_;
  std::uint32_t base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

bool PrimeField::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

std::uint64_t PrimeField::next_prime_at_least(std::uint64_t n) {
  if (n < 2) return 2;
  std::uint64_t c = n;
  while (!is_prime(c)) ++c;
  if (c > kMaxModulus) throw std::invalid_argument("next_prime_at_least: exceeds 2^31-1");
  return c;
}

}  // namespace cds
