#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cds {

enum class Side : std::uint8_t { A, B };

/// One party's node, named "A1".."An" / "B1".."Bm" (1-based, as rendered in
/// reports and scheme files). Ordering is A-side first, then index.
struct NodeId {
  Side side = Side::A;
  std::uint32_t index = 0;

  auto operator<=>(const NodeId&) const = default;

  std::string name() const {
    return (side == Side::A ? "A" : "B") + std::to_string(index);
  }
  static std::optional<NodeId> parse(const std::string& s);
};

enum class EdgeLabel : std::uint8_t { Unqualified, Qualified };

/// An edge always stores the A-side endpoint in `a` and the B-side one in `b`.
struct Edge {
  NodeId a;
  NodeId b;
  EdgeLabel label = EdgeLabel::Unqualified;

  auto operator<=>(const Edge&) const = default;
  std::string str() const { return "{" + a.name() + "," + b.name() + "}"; }
};

/// Natural number extended with infinity; the graph parameters d, rho and q
/// live here (infinite exactly when the graph has no internal qualified edge,
/// or for rho when no connected cover exists).
struct ExtendedNat {
  bool finite = false;
  std::uint64_t value = 0;

  static ExtendedNat inf() { return {false, 0}; }
  static ExtendedNat of(std::uint64_t v) { return {true, v}; }

  friend bool operator==(const ExtendedNat& x, const ExtendedNat& y) {
    return x.finite == y.finite && (!x.finite || x.value == y.value);
  }
  friend bool operator<(const ExtendedNat& x, const ExtendedNat& y) {
    if (!y.finite) return x.finite;
    if (!x.finite) return false;
    return x.value < y.value;
  }
  std::string str() const { return finite ? std::to_string(value) : "inf"; }
};

struct Violation {
  std::string code;     // "duplicate-edge", "no-unqualified-edge", "no-qualified-edge"
  std::string message;  // human-readable, names the offending node/edge
};

/// Labeled bipartite graph describing which (x, y) input pairs are qualified.
/// Immutable after construction; edges are kept sorted by (a, b).
class CdsGraph {
 public:
  CdsGraph() = default;
  CdsGraph(std::uint32_t a_count, std::uint32_t b_count, std::vector<Edge> edges);

  std::uint32_t a_count() const { return a_count_; }
  std::uint32_t b_count() const { return b_count_; }
  std::size_t node_count() const { return std::size_t(a_count_) + b_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<NodeId> nodes() const;

  /// Dense index in [0, node_count): A1..An first, then B1..Bm.
  std::size_t node_pos(NodeId v) const {
    return v.side == Side::A ? v.index - 1 : a_count_ + v.index - 1;
  }
  NodeId node_at(std::size_t pos) const {
    if (pos < a_count_) return {Side::A, static_cast<std::uint32_t>(pos + 1)};
    return {Side::B, static_cast<std::uint32_t>(pos - a_count_ + 1)};
  }

  friend bool operator==(const CdsGraph& x, const CdsGraph& y) {
    return x.a_count_ == y.a_count_ && x.b_count_ == y.b_count_ && x.edges_ == y.edges_;
  }

 private:
  std::uint32_t a_count_ = 0;
  std::uint32_t b_count_ = 0;
  std::vector<Edge> edges_;
};

/// Structural checks: duplicate node pairs, nodes without an unqualified edge
/// (the model demands one per node), and absence of any qualified edge.
/// Returns all violations rather than throwing; analysis requires an empty
/// result.
std::vector<Violation> validate(const CdsGraph& g);

/// Drop nodes that lack an unqualified edge (isolated ones included) and
/// renumber compactly. `removed` gets the old names; `renamed` lists
/// old -> new for surviving nodes whose index shifted.
struct PreprocessResult {
  CdsGraph graph;
  std::vector<std::string> removed;
  std::vector<std::pair<std::string, std::string>> renamed;
};
PreprocessResult preprocess(const CdsGraph& g);

/// Connected components of the subgraph restricted to `label` edges,
/// each sorted, ordered by their lowest node. Nodes with no incident edge of
/// that label form no component.
std::vector<std::vector<NodeId>> components(const CdsGraph& g, EdgeLabel label);

/// Qualified edges whose endpoints are also joined by some unqualified path.
std::vector<Edge> internal_qualified_edges(const CdsGraph& g);

struct AnalysisCaps {
  std::uint64_t path_cap = 10'000;      // residing paths enumerated per internal edge
  std::uint64_t work_cap = 10'000'000;  // branch-and-bound expansions for rho, total
};

struct PathWitness {
  Edge edge;
  std::vector<NodeId> path;  // node sequence of the residing path
};

struct CoverWitness {
  Edge edge;
  std::vector<NodeId> path;
  std::vector<Edge> cover;  // connected qualified edge set attaining rho
};

struct QWitness {
  Edge edge;
  std::vector<NodeId> path;
  std::vector<std::string> component_reps;  // lowest node of each touched component
};

/// Everything the analyzer derives from a graph. d/rho/q are the residing
/// path distance, the minimum connected qualified edge cover size, and the
/// minimum number of qualified components touched by a residing path.
struct GraphParams {
  std::vector<Edge> internal_edges;
  ExtendedNat d;
  ExtendedNat rho;
  ExtendedNat q;
  std::optional<PathWitness> d_witness;
  std::optional<CoverWitness> rho_witness;
  std::optional<QWitness> q_witness;
  std::vector<std::vector<NodeId>> unqualified_components;
  std::vector<std::vector<NodeId>> qualified_components;
  bool path_cap_reached = false;   // some path enumeration was truncated
  bool rho_budget_exceeded = false;
  std::optional<std::uint64_t> rho_incumbent;  // best cover size found before the cap hit
};

/// Shortest residing path over all internal qualified edges (BFS per edge).
std::pair<ExtendedNat, std::optional<PathWitness>> residing_distance(const CdsGraph& g);

struct RhoResult {
  ExtendedNat value;
  std::optional<CoverWitness> witness;
  bool budget_exceeded = false;
  std::optional<std::uint64_t> incumbent;  // meaningful when budget_exceeded
  bool path_cap_reached = false;
};

/// Minimum size of a connected qualified edge set that contains an internal
/// edge e and covers all nodes of one of its residing paths; minimized over
/// (e, path). Branch-and-bound over edge trees grown from e, pruned by the
/// remaining-uncovered-nodes bound; `work_cap` counts expansions.
RhoResult rho_cover(const CdsGraph& g, std::uint64_t path_cap = AnalysisCaps{}.path_cap,
                    std::uint64_t work_cap = AnalysisCaps{}.work_cap);

struct QResult {
  ExtendedNat value;
  std::optional<QWitness> witness;
  bool path_cap_reached = false;
};

/// Minimum number of qualified components touching the nodes of a residing
/// path, over all internal edges and their residing paths.
QResult q_components(const CdsGraph& g, std::uint64_t path_cap = AnalysisCaps{}.path_cap);

GraphParams analyze_graph(const CdsGraph& g, const AnalysisCaps& caps = {});

/// Cyclic-family instance: 2(kd+1) nodes v_1..v_{2(kd+1)} with v_{2i-1} = A_i
/// and v_{2i} = B_i, consecutive nodes joined by unqualified edges, and a
/// qualified edge {v_i, v_{((i+d-1) mod 2(kd+1)) + 1}} for every odd i.
/// Analyzes to residing distance d; every qualified edge is internal.
CdsGraph theorem4_graph(std::uint64_t k, std::uint64_t d);

}  // namespace cds
