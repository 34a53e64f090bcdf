#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cds/graph.hpp"
#include "cds/rational.hpp"
#include "cds/scheme.hpp"

namespace cds {

/// How a constructed scheme came to be: parameters, the prime that was
/// chosen (and any primes rejected because the built scheme failed its
/// post-construction verification), and a hash of that verification report.
struct ConstructionRecipe {
  std::string kind;  // "rate1" or "thm4"
  std::uint64_t p = 0;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> d;
  std::optional<std::uint64_t> unqualified_component_count;  // rate1 only
  std::vector<std::uint64_t> rejected_primes;
  std::vector<std::string> notes;
  std::string verification_hash;
};

struct Construction {
  CdsGraph graph;
  LinearScheme scheme;
  ConstructionRecipe recipe;
  VerificationReport report;  // the verification run backing the postcondition
};

/// Noise-rate-1 scheme (L = Lz = N = 1) for graphs with no internal
/// qualified edge. Every node in the i-th unqualified component (components
/// ordered by their lowest node, i counted from 0) publishes z + i*s over
/// F_p with p >= the component count. Refuses when an internal qualified
/// edge exists or some node has no qualified edge.
Construction construct_rate1(const CdsGraph& g, std::optional<std::uint64_t> p_override = {});

/// Scheme for theorem4_graph(k, d) with L = N = d-1, Lz = d, achieving noise
/// rate (d-1)/d. Secret symbols are spread into d shares by a Cauchy encoder
/// (any d-1 shares recover), each node masks d-1 of the d noise symbols with
/// run-indexed multiples of shares or plain secrets. p defaults to the
/// smallest prime admitting the construction; an explicit override that is
/// too small or fails verification is refused.
Construction construct_theorem4(std::uint64_t k, std::uint64_t d,
                                std::optional<std::uint64_t> p_override = {});

/// Frozen reference values a fixture is expected to analyze/verify to.
struct ExpectedValues {
  std::optional<ExtendedNat> d;
  std::optional<ExtendedNat> rho;
  std::optional<ExtendedNat> q;
  std::optional<std::uint64_t> unqualified_components;
  std::optional<Rational> thm2;
  std::optional<Rational> thm3;  // under the N = L assertion
  std::optional<Rational> noise_rate;
  std::optional<std::size_t> L;
  std::optional<std::size_t> Lz;
  std::optional<std::size_t> N;
};

struct Fixture {
  std::string name;  // "fig1".."fig5"
  std::string note;
  CdsGraph graph;
  std::optional<LinearScheme> scheme;
  ExpectedValues expected;
};

/// The five bundled reference instances:
///   fig1 — 3+3 graph with an unqualified perfect matching; rate-1 territory
///   fig2 — 3+3 graph with one internal qualified edge; d=3, rho=inf, q=2
///   fig3 — fig2's unqualified set with a qualified path; d=3, rho=5
///   fig4 — fig2's graph with a verified N=L scheme meeting the q bound
///   fig5 — cyclic instance (k=1, d=5) with its constructed scheme
std::vector<Fixture> fixtures();

}  // namespace cds
