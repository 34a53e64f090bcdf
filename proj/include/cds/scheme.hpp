#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cds/graph.hpp"
#include "cds/matrix.hpp"
#include "cds/rational.hpp"

namespace cds {

/// Per-node encoder: the node's signal is F*s + H*z (N symbols).
struct NodeCode {
  FMatrix F;  // N x L
  FMatrix H;  // N x Lz
};

/// Linear one-round scheme: every node publishes N field symbols computed
/// from the L-symbol secret and the Lz-symbol shared noise. A sound scheme
/// additionally has rank(H) = N at every node (checked by verify, not here,
/// so that broken schemes can still be loaded and diagnosed).
struct LinearScheme {
  std::uint64_t p = 2;
  std::size_t L = 1;
  std::size_t Lz = 1;
  std::size_t N = 1;
  std::map<NodeId, NodeCode> nodes;

  Rational noise_rate() const {
    return Rational(static_cast<std::int64_t>(L), static_cast<std::int64_t>(Lz));
  }
  Rational communication_rate() const {
    return Rational(static_cast<std::int64_t>(L), static_cast<std::int64_t>(2 * N));
  }

  friend bool operator==(const LinearScheme& x, const LinearScheme& y) {
    return x.p == y.p && x.L == y.L && x.Lz == y.Lz && x.N == y.N && x.nodes == y.nodes;
  }
};

inline bool operator==(const NodeCode& x, const NodeCode& y) { return x.F == y.F && x.H == y.H; }

/// Signal of one node for concrete secret/noise values.
std::vector<std::uint32_t> evaluate(const PrimeField& f, const LinearScheme& sch, NodeId v,
                                    const std::vector<std::uint32_t>& s,
                                    const std::vector<std::uint32_t>& z);

/// H(S | signals of v and u) in p-ary units, via the rank identity
///   L + rank([H_v; H_u]) - rank([F_v H_v; F_u H_u]).
/// Exact and always integral for linear maps.
Rational rank_entropy(const LinearScheme& sch, NodeId v, NodeId u);

struct ExhaustiveOutcome {
  std::optional<Rational> entropy;
  std::string non_integral_note;  // non-empty when some conditional was not uniform p-power
};

using SignalFn = std::function<std::vector<std::uint32_t>(const std::vector<std::uint32_t>&,
                                                          const std::vector<std::uint32_t>&)>;

/// Independent oracle: enumerates every (secret, noise) state through opaque
/// evaluators, tabulates the joint distribution of (signal pair, secret), and
/// reads the conditional entropy off the table. Works for any evaluator, not
/// just linear ones; conditionals that are not uniform over a p-power support
/// yield a "non-integral" outcome describing the offending distribution.
/// Throws budget_exceeded when p^(L+Lz) > state_limit.
ExhaustiveOutcome exhaustive_entropy(std::uint64_t p, std::size_t L, std::size_t Lz,
                                     const SignalFn& sig_v, const SignalFn& sig_u,
                                     std::uint64_t state_limit);

/// Convenience wrapper binding the oracle to two nodes of a linear scheme.
ExhaustiveOutcome exhaustive_entropy(const LinearScheme& sch, NodeId v, NodeId u,
                                     std::uint64_t state_limit);

/// Overlap structure of two noise row-spans: alpha = dim of the intersection,
/// the projections P_v, P_u mapping each side onto a shared basis of it, and
/// whether the secret parts agree through those projections (the alignment a
/// secure unqualified edge must exhibit).
struct AlignmentDiag {
  Edge edge;
  std::size_t alpha = 0;
  bool projection_ok = false;   // P_v H_v == P_u H_u (holds by construction)
  bool signal_aligned = false;  // P_v F_v == P_u F_u
};

AlignmentDiag alignment_check(const LinearScheme& sch, const Edge& e);

enum class VerifyMethod { Rank, Exhaustive, Both };

struct EdgeVerdict {
  Edge edge;
  std::optional<Rational> entropy_rank;
  std::optional<Rational> entropy_exhaustive;
  bool methods_disagree = false;
  bool pass = false;
  std::string note;

  /// The agreed entropy (rank value when present, else the oracle's).
  std::optional<Rational> entropy() const {
    return entropy_rank ? entropy_rank : entropy_exhaustive;
  }
};

struct Rates {
  Rational noise_rate;
  Rational communication_rate;
};

struct VerificationReport {
  std::vector<EdgeVerdict> verdicts;
  std::vector<AlignmentDiag> alignment;
  std::vector<std::string> h_rank_failures;  // nodes where rank(H) < N
  Rates rates;
  bool overall = false;
};

inline constexpr std::uint64_t kDefaultStateLimit = 100'000'000;

/// Checks the scheme against every edge of the graph: entropy must be 0 on
/// qualified edges and L on unqualified ones, H must have full row rank
/// everywhere, and (method Both) the two entropy computations must agree.
/// Node sets of graph and scheme must match exactly (input_error otherwise).
VerificationReport verify(const CdsGraph& g, const LinearScheme& sch,
                          VerifyMethod method = VerifyMethod::Rank,
                          std::uint64_t state_limit = kDefaultStateLimit);

}  // namespace cds
