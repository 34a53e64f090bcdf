#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cds/field.hpp"

namespace cds {

/// Dense row-major matrix over F_p. The field context travels separately;
/// entries are assumed reduced. A 0 x c or r x 0 matrix is legal and shows
/// up naturally (empty projection blocks, schemes with no overlap).
struct FMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> a;  // rows * cols entries

  FMatrix() = default;
  FMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  std::uint32_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  std::vector<std::uint32_t> row(std::size_t r) const {
    return {a.begin() + static_cast<std::ptrdiff_t>(r * cols),
            a.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)};
  }
  void set_row(std::size_t r, const std::vector<std::uint32_t>& v) {
    for (std::size_t c = 0; c < cols; ++c) at(r, c) = v[c];
  }

  static FMatrix identity(std::size_t n) {
    FMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static FMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows_in,
                           std::size_t cols);

  friend bool operator==(const FMatrix& x, const FMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

struct RrefResult {
  FMatrix mat;                      // reduced row echelon form
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

/// Gauss-Jordan reduction; canonical (unit pivots, zeros above and below).
RrefResult rref(const PrimeField& f, FMatrix m);

std::size_t rank_of(const PrimeField& f, const FMatrix& m);

/// Solve c * m = target for a row vector c (length m.rows).
/// Returns std::nullopt when target is outside the row span.
std::optional<std::vector<std::uint32_t>> solve_left(const PrimeField& f,
                                                     const std::vector<std::uint32_t>& target,
                                                     const FMatrix& m);

FMatrix mat_mul(const PrimeField& f, const FMatrix& x, const FMatrix& y);
FMatrix mat_sub(const PrimeField& f, const FMatrix& x, const FMatrix& y);
/// [x; y] — stack on top of each other (column counts must agree).
FMatrix vstack(const FMatrix& x, const FMatrix& y);
/// [x | y] — side by side (row counts must agree).
FMatrix hstack(const FMatrix& x, const FMatrix& y);

std::vector<std::uint32_t> mat_vec(const PrimeField& f, const FMatrix& m,
                                   const std::vector<std::uint32_t>& v);

/// d x (d-1) Cauchy matrix: entry (i,j) = 1/(xs[i] - ys[j]).
/// xs (d values) and ys (d-1 values) must be pairwise distinct as one set;
/// every square submatrix is then invertible, which is what the erasure-style
/// secret encoding downstream relies on.
FMatrix cauchy_matrix(const PrimeField& f, std::size_t d,
                      const std::vector<std::uint32_t>& xs,
                      const std::vector<std::uint32_t>& ys);

}  // namespace cds
