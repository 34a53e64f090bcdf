#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cds/matrix.hpp"
#include "test_util.hpp"

using cds::FMatrix;
using cds::PrimeField;

TEST_CASE("rref of a rank-1 matrix") {
  PrimeField f(5);
  FMatrix m = FMatrix::from_rows({{1, 2}, {2, 4}}, 2);
  auto r = cds::rref(f, m);
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.mat == FMatrix::from_rows({{1, 2}, {0, 0}}, 2));
}

TEST_CASE("rref basics") {
  PrimeField f(5);
  CHECK(cds::rank_of(f, FMatrix::identity(3)) == 3);
  CHECK(cds::rank_of(f, FMatrix(3, 4)) == 0);
  // frozen: this is the d=3, p=5 share matrix; independently ranked by minors
  FMatrix c = FMatrix::from_rows({{3, 1}, {2, 3}, {4, 2}}, 2);
  CHECK(cds::rank_of(f, c) == 2);
  CHECK(testutil::brute_rank(f, c) == 2);
}

TEST_CASE("rref is idempotent and rank matches minor enumeration") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    PrimeField f(p);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      FMatrix m(r, c);
      for (auto& x : m.a) x = static_cast<std::uint32_t>(rng() % p);
      auto rr = cds::rref(f, m);
      CHECK(cds::rref(f, rr.mat).mat == rr.mat);
      CHECK(rr.rank == testutil::brute_rank(f, m));
      // row space is preserved: every original row solves against the rref
      for (std::size_t i = 0; i < r; ++i) {
        CHECK(cds::solve_left(f, m.row(i), rr.mat).has_value());
      }
    }
  }
}

TEST_CASE("solve_left examples") {
  PrimeField f(5);
  auto c = cds::solve_left(f, {1, 2, 3}, FMatrix::identity(3));
  REQUIRE(c.has_value());
  CHECK(*c == std::vector<std::uint32_t>{1, 2, 3});

  // {2,2} = 2 * {1,1}
  auto c2 = cds::solve_left(f, {2, 2}, FMatrix::from_rows({{1, 1}}, 2));
  REQUIRE(c2.has_value());
  CHECK(*c2 == std::vector<std::uint32_t>{2});

  // {1,3} is not a multiple of {1,2}
  CHECK(!cds::solve_left(f, {1, 3}, FMatrix::from_rows({{1, 2}}, 2)).has_value());

  // zero target always solvable, even against a zero matrix
  auto c3 = cds::solve_left(f, {0, 0}, FMatrix(2, 2));
  REQUIRE(c3.has_value());
}

TEST_CASE("solve_left round trip on random combinations") {
  std::mt19937_64 rng(12);
  for (std::uint64_t p : {2ull, 3ull, 7ull}) {
    PrimeField f(p);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      FMatrix m(r, c);
      for (auto& x : m.a) x = static_cast<std::uint32_t>(rng() % p);
      std::vector<std::uint32_t> coeff(r);
      for (auto& x : coeff) x = static_cast<std::uint32_t>(rng() % p);
      std::vector<std::uint32_t> target(c, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          target[j] = f.add(target[j], f.mul(coeff[i], m.at(i, j)));
      auto back = cds::solve_left(f, target, m);
      REQUIRE(back.has_value());
      // the returned coefficients must reproduce the target exactly
      std::vector<std::uint32_t> redo(c, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          redo[j] = f.add(redo[j], f.mul((*back)[i], m.at(i, j)));
      CHECK(redo == target);
    }
  }
}

TEST_CASE("stacking and products") {
  PrimeField f(7);
  FMatrix x = FMatrix::from_rows({{1, 2}, {3, 4}}, 2);
  FMatrix y = FMatrix::from_rows({{5, 6}}, 2);
  CHECK(cds::vstack(x, y) == FMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}}, 2));
  FMatrix z = FMatrix::from_rows({{1}, {0}}, 1);
  CHECK(cds::hstack(x, z) == FMatrix::from_rows({{1, 2, 1}, {3, 4, 0}}, 3));
  CHECK(cds::mat_mul(f, x, z) == FMatrix::from_rows({{1}, {3}}, 1));
  CHECK(cds::mat_sub(f, x, x) == FMatrix(2, 2));
  CHECK(cds::mat_vec(f, x, {1, 1}) == std::vector<std::uint32_t>{3, 0});
  CHECK_THROWS_AS(cds::vstack(x, z), std::invalid_argument);
  CHECK_THROWS_AS(cds::mat_mul(f, x, y), std::invalid_argument);
}

TEST_CASE("cauchy matrix frozen values") {
  // d=3 over F_5 with xs=0,1,2 and ys=3,4: entry (i,j) = 1/(xs[i]-ys[j])
  PrimeField f5(5);
  FMatrix c3 = cds::cauchy_matrix(f5, 3, {0, 1, 2}, {3, 4});
  CHECK(c3 == FMatrix::from_rows({{3, 1}, {2, 3}, {4, 2}}, 2));

  PrimeField f3(3);
  FMatrix c2 = cds::cauchy_matrix(f3, 2, {0, 1}, {2});
  CHECK(c2 == FMatrix::from_rows({{1}, {2}}, 1));
}

TEST_CASE("cauchy matrix rejects bad parameters") {
  PrimeField f5(5);
  CHECK_THROWS_AS(cds::cauchy_matrix(f5, 3, {0, 1, 1}, {3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(cds::cauchy_matrix(f5, 3, {0, 1, 2}, {3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(cds::cauchy_matrix(f5, 3, {0, 1, 2}, {3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(cds::cauchy_matrix(f5, 1, {0}, {}), std::invalid_argument);
  PrimeField f3(3);
  // 2d-1 = 5 distinct values do not fit in F_3
  CHECK_THROWS_AS(cds::cauchy_matrix(f3, 3, {0, 1, 2}, {3, 4}), std::invalid_argument);
}

TEST_CASE("every square cauchy submatrix is invertible") {
  // the property the secret encoding depends on: any d-1 shares determine S
  struct Case {
    std::uint64_t p;
    std::size_t d;
  };
  for (Case cs : {Case{11, 5}, Case{13, 7}, Case{5, 3}}) {
    PrimeField f(cs.p);
    std::vector<std::uint32_t> xs(cs.d), ys(cs.d - 1);
    for (std::size_t i = 0; i < cs.d; ++i) xs[i] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j + 1 < cs.d; ++j) ys[j] = static_cast<std::uint32_t>(cs.d + j);
    FMatrix c = cds::cauchy_matrix(f, cs.d, xs, ys);
    CHECK(testutil::brute_rank(f, c) == cs.d - 1);
    // all (d-1)x(d-1) row selections nonsingular
    for (std::size_t skip = 0; skip < cs.d; ++skip) {
      FMatrix sub(cs.d - 1, cs.d - 1);
      std::size_t rr = 0;
      for (std::size_t i = 0; i < cs.d; ++i) {
        if (i == skip) continue;
        for (std::size_t j = 0; j + 1 < cs.d; ++j) sub.at(rr, j) = c.at(i, j);
        ++rr;
      }
      CHECK(testutil::brute_det(f, sub) != 0);
    }
    // exhaustive minor check at every size for the smaller cases
    if (cs.d <= 5) {
      std::function<void(std::size_t, std::vector<std::size_t>&, std::size_t,
                         std::function<void(const std::vector<std::size_t>&)>)>
          each_combo = [&](std::size_t n, std::vector<std::size_t>& idx, std::size_t k2,
                           std::function<void(const std::vector<std::size_t>&)> fn) {
            std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                                    std::size_t depth) {
              if (depth == k2) {
                fn(idx);
                return;
              }
              for (std::size_t i = start; i < n; ++i) {
                idx[depth] = i;
                rec(i + 1, depth + 1);
              }
            };
            rec(0, 0);
          };
      for (std::size_t k2 = 1; k2 < cs.d; ++k2) {
        std::vector<std::size_t> ridx(k2), cidx(k2);
        each_combo(cs.d, ridx, k2, [&](const std::vector<std::size_t>& rsel) {
          std::vector<std::size_t> rs = rsel;
          each_combo(cs.d - 1, cidx, k2, [&](const std::vector<std::size_t>& csel) {
            FMatrix sub(k2, k2);
            for (std::size_t i = 0; i < k2; ++i)
              for (std::size_t j = 0; j < k2; ++j) sub.at(i, j) = c.at(rs[i], csel[j]);
            CHECK(testutil::brute_det(f, sub) != 0);
          });
        });
      }
    }
  }
}
