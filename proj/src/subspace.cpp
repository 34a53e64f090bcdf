#include "cds/subspace.hpp"

#include <stdexcept>

namespace cds {

Subspace Subspace::from_rows(const PrimeField& f, const FMatrix& m) {
  RrefResult r = rref(f, m);
  FMatrix basis(r.rank, m.cols);
  for (std::size_t i = 0; i < r.rank; ++i) basis.set_row(i, r.mat.row(i));
  return Subspace(std::move(basis));
}

bool Subspace::contains(const PrimeField& f, const std::vector<std::uint32_t>& v) const {
  return solve_left(f, v, basis_).has_value();
}

Subspace Subspace::intersect(const PrimeField& f, const Subspace& x, const Subspace& y) {
  if (x.ambient() != y.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  std::size_t n = x.ambient();
  FMatrix block(x.dim() + y.dim(), 2 * n);
  for (std::size_t r = 0; r < x.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) {
      block.at(r, c) = x.basis_.at(r, c);
      block.at(r, n + c) = x.basis_.at(r, c);
    }
  for (std::size_t r = 0; r < y.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) block.at(x.dim() + r, c) = y.basis_.at(r, c);
  RrefResult red = rref(f, std::move(block));
  std::vector<std::vector<std::uint32_t>> inter_rows;
  for (std::size_t r = 0; r < red.rank; ++r) {
    bool left_zero = true;
    for (std::size_t c = 0; c < n && left_zero; ++c) left_zero = red.mat.at(r, c) == 0;
    if (!left_zero) continue;
    std::vector<std::uint32_t> row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = red.mat.at(r, n + c);
    inter_rows.push_back(std::move(row));
  }
  return from_rows(f, FMatrix::from_rows(inter_rows, n));
}

}  // namespace cds
