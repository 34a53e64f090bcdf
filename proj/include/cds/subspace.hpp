#pragma once

#include <vector>

#include "cds/matrix.hpp"

namespace cds {

/// Row-space of a matrix over F_p, stored as its RREF basis. The RREF basis
/// is the unique canonical representative of a subspace, so operator== is
/// genuine subspace equality.
class Subspace {
 public:
  static Subspace from_rows(const PrimeField& f, const FMatrix& m);

  std::size_t dim() const { return basis_.rows; }
  std::size_t ambient() const { return basis_.cols; }
  const FMatrix& basis() const { return basis_; }

  bool contains(const PrimeField& f, const std::vector<std::uint32_t>& v) const;

  /// Zassenhaus: reduce [a a; b 0] and read the intersection basis off the
  /// rows whose left block vanished.
  static Subspace intersect(const PrimeField& f, const Subspace& x, const Subspace& y);

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.basis_ == y.basis_;
  }

 private:
  Subspace(FMatrix basis) : basis_(std::move(basis)) {}
  FMatrix basis_;
};

}  // namespace cds
