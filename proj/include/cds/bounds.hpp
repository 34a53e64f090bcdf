#pragma once

#include <optional>
#include <string>

#include "cds/graph.hpp"
#include "cds/rational.hpp"
#include "cds/scheme.hpp"

namespace cds {

enum class Thm2Case { NoInternalEdge, RhoFinite, RhoInfinite };

/// Noise-rate converses derived from the graph parameters. thm2 applies to
/// every linear scheme on the graph; thm3 additionally assumes N = L and is
/// therefore only populated when that assertion is made explicitly.
struct RateBounds {
  bool capacity_one = false;  // no internal qualified edge: rate 1 is achievable and maximal
  Rational thm2{1};
  Thm2Case thm2_case = Thm2Case::NoInternalEdge;
  std::optional<Rational> thm3;
  // provenance: the parameter values the bounds were computed from
  ExtendedNat d;
  ExtendedNat rho;
  ExtendedNat q;
};

RateBounds evaluate_bounds(const GraphParams& params, bool assert_n_equals_l = false);

/// Outcome of comparing a verified scheme's noise rate against the bounds.
struct Certificate {
  std::string verdict;  // "capacity-achieving" | "feasible-with-gap" | "bound-violating"
  Rational achieved;
  Rational bound;          // tightest applicable bound
  std::string bound_name;  // "thm2" or "thm3"
  Rational gap;            // bound - achieved
  RateBounds bounds;
  Rates rates;
  std::string graph_hash;
  std::string scheme_hash;
};

/// Requires a passing verification report (refusal otherwise). With
/// assert_n_equals_l the scheme must actually have N = L (input_error
/// otherwise), and the thm3 bound joins the comparison.
Certificate certify(const CdsGraph& g, const GraphParams& params, const LinearScheme& sch,
                    const VerificationReport& report, bool assert_n_equals_l = false);

}  // namespace cds
