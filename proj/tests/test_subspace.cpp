#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cds/subspace.hpp"
#include "test_util.hpp"

using cds::FMatrix;
using cds::PrimeField;
using cds::Subspace;

TEST_CASE("canonical basis makes equality structural") {
  PrimeField f(5);
  auto s1 = Subspace::from_rows(f, FMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}, 3));
  auto s2 = Subspace::from_rows(f, FMatrix::from_rows({{2, 2, 0}, {1, 2, 1}, {3, 3, 0}}, 3));
  CHECK(s1 == s2);
  CHECK(s1.dim() == 2);
  auto s3 = Subspace::from_rows(f, FMatrix::from_rows({{1, 0, 0}}, 3));
  CHECK(!(s1 == s3));
}

TEST_CASE("contains") {
  PrimeField f(5);
  auto s = Subspace::from_rows(f, FMatrix::from_rows({{1, 2, 0}, {0, 0, 1}}, 3));
  CHECK(s.contains(f, {1, 2, 0}));
  CHECK(s.contains(f, {2, 4, 3}));
  CHECK(s.contains(f, {0, 0, 0}));
  CHECK(!s.contains(f, {1, 0, 0}));
}

TEST_CASE("intersection examples") {
  PrimeField f(5);
  auto zero = Subspace::intersect(f, Subspace::from_rows(f, FMatrix::from_rows({{1, 0}}, 2)),
                                  Subspace::from_rows(f, FMatrix::from_rows({{0, 1}}, 2)));
  CHECK(zero.dim() == 0);

  auto plane = Subspace::from_rows(f, FMatrix::identity(2));
  auto line = Subspace::from_rows(f, FMatrix::from_rows({{1, 1}}, 2));
  auto meet = Subspace::intersect(f, plane, line);
  CHECK(meet == line);

  // {(1,2,0),(0,0,1)} meets {(2,4,1)} in exactly the multiples of (2,4,1)
  auto a = Subspace::from_rows(f, FMatrix::from_rows({{1, 2, 0}, {0, 0, 1}}, 3));
  auto b = Subspace::from_rows(f, FMatrix::from_rows({{2, 4, 1}}, 3));
  auto m = Subspace::intersect(f, a, b);
  CHECK(m.dim() == 1);
  for (std::uint32_t k = 0; k < 5; ++k) {
    std::vector<std::uint32_t> mult = {f.mul(k, 2), f.mul(k, 4), f.mul(k, 1)};
    CHECK(m.contains(f, mult));
  }
  CHECK(!m.contains(f, {1, 2, 0}));
}

TEST_CASE("intersection symmetry and dimension formula") {
  std::mt19937_64 rng(21);
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    PrimeField f(p);
    for (int trial = 0; trial < 80; ++trial) {
      std::size_t amb = 2 + rng() % 3;
      auto rand_space = [&]() {
        std::size_t r = 1 + rng() % 3;
        FMatrix m(r, amb);
        for (auto& x : m.a) x = static_cast<std::uint32_t>(rng() % p);
        return Subspace::from_rows(f, m);
      };
      Subspace x = rand_space(), y = rand_space();
      Subspace meet = Subspace::intersect(f, x, y);
      CHECK(meet == Subspace::intersect(f, y, x));
      // dim(x) + dim(y) = dim(x+y) + dim(x ∩ y)
      Subspace join = Subspace::from_rows(f, cds::vstack(x.basis(), y.basis()));
      CHECK(x.dim() + y.dim() == join.dim() + meet.dim());
      // every basis vector of the meet lies in both inputs
      for (std::size_t i = 0; i < meet.dim(); ++i) {
        CHECK(x.contains(f, meet.basis().row(i)));
        CHECK(y.contains(f, meet.basis().row(i)));
      }
    }
  }
}

TEST_CASE("intersection against exhaustive membership over F_2") {
  // small enough to enumerate every vector of both spaces
  PrimeField f(2);
  std::mt19937_64 rng(22);
  auto span_set = [&](const Subspace& s) {
    std::set<std::vector<std::uint32_t>> out;
    std::size_t d = s.dim();
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      std::vector<std::uint32_t> v(s.ambient(), 0);
      for (std::size_t i = 0; i < d; ++i)
        if (mask & (1u << i))
          for (std::size_t j = 0; j < s.ambient(); ++j)
            v[j] = f.add(v[j], s.basis().at(i, j));
      out.insert(v);
    }
    return out;
  };
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t amb = 3 + rng() % 2;
    auto rand_space = [&]() {
      FMatrix m(1 + rng() % 3, amb);
      for (auto& x : m.a) x = static_cast<std::uint32_t>(rng() % 2);
      return Subspace::from_rows(f, m);
    };
    Subspace x = rand_space(), y = rand_space();
    auto sx = span_set(x), sy = span_set(y);
    std::set<std::vector<std::uint32_t>> both;
    for (const auto& v : sx)
      if (sy.count(v)) both.insert(v);
    Subspace meet = Subspace::intersect(f, x, y);
    CHECK((1u << meet.dim()) == both.size());
    for (const auto& v : both) CHECK(meet.contains(f, v));
  }
}
