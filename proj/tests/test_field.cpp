#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cds/errors.hpp"
#include "cds/field.hpp"
#include "cds/rational.hpp"

using cds::PrimeField;
using cds::Rational;

TEST_CASE("prime validation") {
  CHECK_NOTHROW(PrimeField(2));
  CHECK_NOTHROW(PrimeField(3));
  CHECK_NOTHROW(PrimeField(2147483647));  // 2^31 - 1, Mersenne
  CHECK_THROWS_AS(PrimeField(0), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(91), std::invalid_argument);  // 7 * 13
  CHECK_THROWS_AS(PrimeField(2147483649ull), std::invalid_argument);
}

TEST_CASE("is_prime matches trial division on small range") {
  auto slow = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d < n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n <= 500; ++n) CHECK(PrimeField::is_prime(n) == slow(n));
}

TEST_CASE("next_prime_at_least") {
  CHECK(PrimeField::next_prime_at_least(0) == 2);
  CHECK(PrimeField::next_prime_at_least(2) == 2);
  CHECK(PrimeField::next_prime_at_least(3) == 3);
  CHECK(PrimeField::next_prime_at_least(4) == 5);
  CHECK(PrimeField::next_prime_at_least(5) == 5);
  CHECK(PrimeField::next_prime_at_least(8) == 11);
  CHECK(PrimeField::next_prime_at_least(90) == 97);
}

TEST_CASE("arithmetic in F_7") {
  PrimeField f(7);
  CHECK(f.add(3, 5) == 1);
  CHECK(f.sub(3, 5) == 5);
  CHECK(f.neg(0) == 0);
  CHECK(f.neg(2) == 5);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.pow(3, 0) == 1);
  CHECK(f.pow(3, 6) == 1);  // Fermat
  CHECK(f.inv(3) == 5);
}

TEST_CASE("inverses across several primes") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 101ull, 65537ull, 2147483647ull}) {
    PrimeField f(p);
    std::uint64_t upto = std::min<std::uint64_t>(p - 1, 200);
    for (std::uint32_t a = 1; a <= upto; ++a) {
      CHECK(f.mul(a, f.inv(a)) == 1);
    }
    CHECK_THROWS_AS(f.inv(0), std::invalid_argument);
  }
}

TEST_CASE("pow agrees with repeated multiplication") {
  PrimeField f(31);
  for (std::uint32_t b = 0; b < 31; ++b) {
    std::uint32_t acc = 1;
    for (std::uint64_t e = 0; e <= 12; ++e) {
      CHECK(f.pow(b, e) == acc);
      acc = f.mul(acc, b);
    }
  }
}

TEST_CASE("reduce_signed") {
  PrimeField f(5);
  CHECK(f.reduce_signed(0) == 0);
  CHECK(f.reduce_signed(7) == 2);
  CHECK(f.reduce_signed(-1) == 4);
  CHECK(f.reduce_signed(-13) == 2);
}

TEST_CASE("rational normalization and printing") {
  CHECK(Rational(4, 7).str() == "4/7");
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, -4).str() == "1/2");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0, 9).str() == "0");
  CHECK(Rational(6, 3).str() == "2");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic and order") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(b < a);
  CHECK(a <= Rational(2, 6) * Rational(1));
  CHECK(Rational(2, 3) > Rational(4, 7));
  // cross-multiplication must not overflow for large components
  Rational big1(1000000007, 1000000009), big2(1000000009, 1000000021);
  CHECK(big1 > big2);
}

TEST_CASE("rational parse round trip") {
  for (const char* s : {"0", "1", "4/7", "-4/7", "2/3", "123456789/987654321"}) {
    Rational r = Rational::parse(s);
    CHECK(Rational::parse(r.str()) == r);
  }
  CHECK(Rational::parse("4/8") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
}
