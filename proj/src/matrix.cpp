#include "cds/matrix.hpp"

#include <stdexcept>
#include <string>

namespace cds {

FMatrix FMatrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows_in,
                           std::size_t cols) {
  FMatrix m(rows_in.size(), cols);
  for (std::size_t r = 0; r < rows_in.size(); ++r) {
    if (rows_in[r].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
    m.set_row(r, rows_in[r]);
  }
  return m;
}

RrefResult rref(const PrimeField& f, FMatrix m) {
  RrefResult res;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols && lead < m.rows; ++col) {
    // find a pivot at or below `lead`
    std::size_t piv = lead;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != lead) {
      for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(lead, c));
    }
    std::uint32_t s = f.inv(m.at(lead, col));
    for (std::size_t c = col; c < m.cols; ++c) m.at(lead, c) = f.mul(m.at(lead, c), s);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == lead) continue;
      std::uint32_t factor = m.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < m.cols; ++c)
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(lead, c)));
    }
    res.pivots.push_back(col);
    ++lead;
  }
  res.rank = lead;
  res.mat = std::move(m);
  return res;
}

std::size_t rank_of(const PrimeField& f, const FMatrix& m) { return rref(f, m).rank; }

std::optional<std::vector<std::uint32_t>> solve_left(const PrimeField& f,
                                                     const std::vector<std::uint32_t>& target,
                                                     const FMatrix& m) {
  if (target.size() != m.cols) throw std::invalid_argument("solve_left: length mismatch");
  // Reduce [m | I]; the identity block accumulates T with T*m = R, so a
  // representation of target over R's rows pulls back through T.
  FMatrix aug = hstack(m, FMatrix::identity(m.rows));
  // plain rref but pivots restricted to the first m.cols columns
  std::size_t lead = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < m.cols && lead < aug.rows; ++col) {
    std::size_t piv = lead;
    while (piv < aug.rows && aug.at(piv, col) == 0) ++piv;
    if (piv == aug.rows) continue;
    if (piv != lead)
      for (std::size_t c = 0; c < aug.cols; ++c) std::swap(aug.at(piv, c), aug.at(lead, c));
    std::uint32_t s = f.inv(aug.at(lead, col));
    for (std::size_t c = 0; c < aug.cols; ++c) aug.at(lead, c) = f.mul(aug.at(lead, c), s);
    for (std::size_t r = 0; r < aug.rows; ++r) {
      if (r == lead) continue;
      std::uint32_t factor = aug.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = 0; c < aug.cols; ++c)
        aug.at(r, c) = f.sub(aug.at(r, c), f.mul(factor, aug.at(lead, c)));
    }
    pivots.push_back(col);
    ++lead;
  }
  // coefficients of target over the reduced rows, then check the remainder
  std::vector<std::uint32_t> rem = target;
  std::vector<std::uint32_t> coeff(aug.rows, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::uint32_t c0 = rem[pivots[r]];
    if (c0 == 0) continue;
    coeff[r] = c0;
    for (std::size_t c = 0; c < m.cols; ++c) rem[c] = f.sub(rem[c], f.mul(c0, aug.at(r, c)));
  }
  for (std::uint32_t v : rem)
    if (v != 0) return std::nullopt;
  // pull back: result = coeff * T
  std::vector<std::uint32_t> out(m.rows, 0);
  for (std::size_t r = 0; r < aug.rows; ++r) {
    if (coeff[r] == 0) continue;
    for (std::size_t c = 0; c < m.rows; ++c)
      out[c] = f.add(out[c], f.mul(coeff[r], aug.at(r, m.cols + c)));
  }
  return out;
}

FMatrix mat_mul(const PrimeField& f, const FMatrix& x, const FMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  FMatrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < x.cols; ++k) {
      std::uint32_t xv = x.at(i, k);
      if (xv == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        out.at(i, j) = f.add(out.at(i, j), f.mul(xv, y.at(k, j)));
    }
  }
  return out;
}

FMatrix mat_sub(const PrimeField& f, const FMatrix& x, const FMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("mat_sub: shape mismatch");
  FMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.sub(x.a[i], y.a[i]);
  return out;
}

FMatrix vstack(const FMatrix& x, const FMatrix& y) {
  if (x.cols != y.cols) throw std::invalid_argument("vstack: column mismatch");
  FMatrix out(x.rows + y.rows, x.cols);
  std::copy(x.a.begin(), x.a.end(), out.a.begin());
  std::copy(y.a.begin(), y.a.end(), out.a.begin() + static_cast<std::ptrdiff_t>(x.a.size()));
  return out;
}

FMatrix hstack(const FMatrix& x, const FMatrix& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hstack: row mismatch");
  FMatrix out(x.rows, x.cols + y.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < x.cols; ++c) out.at(r, c) = x.at(r, c);
    for (std::size_t c = 0; c < y.cols; ++c) out.at(r, x.cols + c) = y.at(r, c);
  }
  return out;
}

std::vector<std::uint32_t> mat_vec(const PrimeField& f, const FMatrix& m,
                                   const std::vector<std::uint32_t>& v) {
  if (v.size() != m.cols) throw std::invalid_argument("mat_vec: length mismatch");
  std::vector<std::uint32_t> out(m.rows, 0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < m.cols; ++c) {
      acc += std::uint64_t(m.at(r, c)) * v[c];
      if (acc >= (std::uint64_t(1) << 62)) acc %= f.modulus();
    }
    out[r] = static_cast<std::uint32_t>(acc % f.modulus());
  }
  return out;
}

FMatrix cauchy_matrix(const PrimeField& f, std::size_t d,
                      const std::vector<std::uint32_t>& xs,
                      const std::vector<std::uint32_t>& ys) {
  if (d < 2) throw std::invalid_argument("cauchy_matrix: d must be >= 2");
  if (xs.size() != d || ys.size() != d - 1)
    throw std::invalid_argument("cauchy_matrix: need d xs and d-1 ys");
  if (f.modulus() < 2 * d - 1)
    throw std::invalid_argument("cauchy_matrix: field too small for " +
                                std::to_string(2 * d - 1) + " distinct parameters");
  std::vector<std::uint32_t> all;
  all.insert(all.end(), xs.begin(), xs.end());
  all.insert(all.end(), ys.begin(), ys.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] >= f.modulus()) throw std::invalid_argument("cauchy_matrix: parameter out of range");
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i] == all[j]) throw std::invalid_argument("cauchy_matrix: parameters not distinct");
  }
  FMatrix m(d, d - 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j + 1 < d; ++j) m.at(i, j) = f.inv(f.sub(xs[i], ys[j]));
  return m;
}

}  // namespace cds
