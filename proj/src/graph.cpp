#include "cds/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "cds/errors.hpp"

namespace cds {

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t x, std::size_t y) { parent[find(x)] = find(y); }
};

// adjacency over dense node positions, restricted to one label; lists sorted
std::vector<std::vector<std::size_t>> adjacency(const CdsGraph& g, EdgeLabel label) {
  std::vector<std::vector<std::size_t>> adj(g.node_count());
  for (const Edge& e : g.edges()) {
    if (e.label != label) continue;
    std::size_t pa = g.node_pos(e.a), pb = g.node_pos(e.b);
    adj[pa].push_back(pb);
    adj[pb].push_back(pa);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

// Enumerates simple paths between two nodes, at most `cap` of them, calling
// `sink` with each node-position sequence. Returns true when the enumeration
// ran to completion (i.e. the cap did not bind).
bool enumerate_paths(const std::vector<std::vector<std::size_t>>& adj, std::size_t from,
                     std::size_t to, std::uint64_t cap,
                     const std::function<void(const std::vector<std::size_t>&)>& sink) {
  std::vector<char> visited(adj.size(), 0);
  std::vector<std::size_t> stack;
  std::uint64_t emitted = 0;
  bool truncated = false;
  std::function<bool(std::size_t)> dfs = [&](std::size_t u) -> bool {
    if (u == to) {
      if (emitted == cap) {
        truncated = true;
        return false;
      }
      ++emitted;
      sink(stack);
      return true;
    }
    for (std::size_t w : adj[u]) {
      if (visited[w]) continue;
      visited[w] = 1;
      stack.push_back(w);
      bool keep_going = dfs(w);
      stack.pop_back();
      visited[w] = 0;
      if (!keep_going) return false;
    }
    return true;
  };
  visited[from] = 1;
  stack.push_back(from);
  dfs(from);
  return !truncated;
}

std::vector<NodeId> positions_to_nodes(const CdsGraph& g, const std::vector<std::size_t>& pos) {
  std::vector<NodeId> out;
  out.reserve(pos.size());
  for (std::size_t p : pos) out.push_back(g.node_at(p));
  return out;
}

}  // namespace

std::optional<NodeId> NodeId::parse(const std::string& s) {
  if (s.size() < 2) return std::nullopt;
  Side side;
  if (s[0] == 'A')
    side = Side::A;
  else if (s[0] == 'B')
    side = Side::B;
  else
    return std::nullopt;
  std::uint32_t idx = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    idx = idx * 10 + static_cast<std::uint32_t>(s[i] - '0');
    if (idx > 1'000'000) return std::nullopt;
  }
  if (idx == 0) return std::nullopt;
  return NodeId{side, idx};
}

CdsGraph::CdsGraph(std::uint32_t a_count, std::uint32_t b_count, std::vector<Edge> edges)
    : a_count_(a_count), b_count_(b_count), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.a.side != Side::A || e.b.side != Side::B)
      throw input_error("edge endpoints must pair one A node with one B node");
    if (e.a.index < 1 || e.a.index > a_count_ || e.b.index < 1 || e.b.index > b_count_)
      throw input_error("edge " + e.str() + " references a node outside the declared counts");
  }
  std::sort(edges_.begin(), edges_.end());
}

std::vector<NodeId> CdsGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(node_count());
  for (std::uint32_t i = 1; i <= a_count_; ++i) out.push_back({Side::A, i});
  for (std::uint32_t i = 1; i <= b_count_; ++i) out.push_back({Side::B, i});
  return out;
}

std::vector<Violation> validate(const CdsGraph& g) {
  std::vector<Violation> out;
  const auto& es = g.edges();
  for (std::size_t i = 0; i + 1 < es.size(); ++i) {
    if (es[i].a == es[i + 1].a && es[i].b == es[i + 1].b)
      out.push_back({"duplicate-edge", "duplicate edge " + es[i].str()});
  }
  std::vector<char> has_unq(g.node_count(), 0);
  bool any_qualified = false;
  for (const Edge& e : es) {
    if (e.label == EdgeLabel::Unqualified) {
      has_unq[g.node_pos(e.a)] = 1;
      has_unq[g.node_pos(e.b)] = 1;
    } else {
      any_qualified = true;
    }
  }
  for (std::size_t p = 0; p < g.node_count(); ++p) {
    if (!has_unq[p])
      out.push_back({"no-unqualified-edge",
                     "node " + g.node_at(p).name() + " lacks an unqualified edge"});
  }
  if (!any_qualified) out.push_back({"no-qualified-edge", "graph has no qualified edge"});
  return out;
}

PreprocessResult preprocess(const CdsGraph& g) {
  std::vector<char> has_unq(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (e.label != EdgeLabel::Unqualified) continue;
    has_unq[g.node_pos(e.a)] = 1;
    has_unq[g.node_pos(e.b)] = 1;
  }
  PreprocessResult res;
  std::map<NodeId, NodeId> rename;
  std::uint32_t na = 0, nb = 0;
  for (std::size_t p = 0; p < g.node_count(); ++p) {
    NodeId v = g.node_at(p);
    if (!has_unq[p]) {
      res.removed.push_back(v.name());
      continue;
    }
    NodeId fresh = v.side == Side::A ? NodeId{Side::A, ++na} : NodeId{Side::B, ++nb};
    rename[v] = fresh;
    if (fresh != v) res.renamed.emplace_back(v.name(), fresh.name());
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    auto ia = rename.find(e.a), ib = rename.find(e.b);
    if (ia == rename.end() || ib == rename.end()) continue;
    kept.push_back({ia->second, ib->second, e.label});
  }
  res.graph = CdsGraph(na, nb, std::move(kept));
  return res;
}

std::vector<std::vector<NodeId>> components(const CdsGraph& g, EdgeLabel label) {
  Dsu dsu(g.node_count());
  std::vector<char> present(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (e.label != label) continue;
    std::size_t pa = g.node_pos(e.a), pb = g.node_pos(e.b);
    present[pa] = present[pb] = 1;
    dsu.unite(pa, pb);
  }
  std::map<std::size_t, std::vector<NodeId>> by_root;
  for (std::size_t p = 0; p < g.node_count(); ++p)
    if (present[p]) by_root[dsu.find(p)].push_back(g.node_at(p));
  std::vector<std::vector<NodeId>> out;
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

std::vector<Edge> internal_qualified_edges(const CdsGraph& g) {
  Dsu dsu(g.node_count());
  for (const Edge& e : g.edges())
    if (e.label == EdgeLabel::Unqualified) dsu.unite(g.node_pos(e.a), g.node_pos(e.b));
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (e.label == EdgeLabel::Qualified &&
        dsu.find(g.node_pos(e.a)) == dsu.find(g.node_pos(e.b)))
      out.push_back(e);
  return out;
}

std::pair<ExtendedNat, std::optional<PathWitness>> residing_distance(const CdsGraph& g) {
  auto internal = internal_qualified_edges(g);
  if (internal.empty()) return {ExtendedNat::inf(), std::nullopt};
  auto adj = adjacency(g, EdgeLabel::Unqualified);
  ExtendedNat best = ExtendedNat::inf();
  std::optional<PathWitness> witness;
  for (const Edge& e : internal) {
    std::size_t from = g.node_pos(e.a), to = g.node_pos(e.b);
    std::vector<std::size_t> parent(adj.size(), SIZE_MAX);
    std::vector<std::int64_t> dist(adj.size(), -1);
    std::queue<std::size_t> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty() && dist[to] < 0) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t w : adj[u]) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[u] + 1;
        parent[w] = u;
        q.push(w);
      }
    }
    if (dist[to] < 0) continue;  // cannot happen for an internal edge
    ExtendedNat len = ExtendedNat::of(static_cast<std::uint64_t>(dist[to]));
    if (len < best) {
      best = len;
      std::vector<std::size_t> rev;
      for (std::size_t u = to; u != SIZE_MAX; u = parent[u]) rev.push_back(u);
      std::reverse(rev.begin(), rev.end());
      witness = PathWitness{e, positions_to_nodes(g, rev)};
    }
  }
  return {best, witness};
}

namespace {

// Branch-and-bound for the minimum connected qualified edge set containing a
// fixed edge and covering a fixed node set. Trees grown from the fixed edge;
// a visited-set keyed by the chosen-edge bitmask collapses permutations of
// the same partial tree.
struct CoverSearch {
  const std::vector<std::pair<std::size_t, std::size_t>>& qedges;
  const std::vector<std::vector<std::size_t>>& incident;  // qualified edge ids per node
  const std::vector<char>& in_target;
  std::size_t target_size;
  std::uint64_t work_cap;
  std::uint64_t& work;
  bool& budget_hit;

  std::uint64_t best;  // global incumbent (may come from an earlier path/edge)
  std::vector<int> chosen_ids;
  std::vector<char> chosen;
  std::vector<char> touched;
  std::size_t covered = 0;
  std::optional<std::vector<int>> found{};  // improves on `best` strictly
  std::unordered_set<std::uint64_t> seen{};
  bool use_seen = false;
  std::uint64_t mask = 0;

  void run(std::size_t seed_edge) {
    use_seen = qedges.size() <= 64;
    choose(seed_edge);
    rec();
    unchoose(seed_edge);
  }

  void choose(std::size_t id) {
    chosen[id] = 1;
    chosen_ids.push_back(static_cast<int>(id));
    if (use_seen) mask |= std::uint64_t(1) << id;
    for (std::size_t ep : {qedges[id].first, qedges[id].second}) {
      if (!touched[ep]) {
        touched[ep] = 1;
        if (in_target[ep]) ++covered;
      } else {
        touched[ep] = static_cast<char>(touched[ep] + 1);
      }
    }
  }
  void unchoose(std::size_t id) {
    chosen[id] = 0;
    chosen_ids.pop_back();
    if (use_seen) mask &= ~(std::uint64_t(1) << id);
    for (std::size_t ep : {qedges[id].first, qedges[id].second}) {
      touched[ep] = static_cast<char>(touched[ep] - 1);
      if (!touched[ep] && in_target[ep]) --covered;
    }
  }

  void rec() {
    if (budget_hit) return;
    if (++work > work_cap) {
      budget_hit = true;
      return;
    }
    if (covered == target_size) {
      if (chosen_ids.size() < best) {
        best = chosen_ids.size();
        found = chosen_ids;
      }
      return;
    }
    std::size_t uncovered = target_size - covered;
    if (chosen_ids.size() + (uncovered + 1) / 2 >= best) return;  // each edge covers <= 2
    if (use_seen && !seen.insert(mask).second) return;
    // candidates adjacent to the current tree, best coverage gain first
    std::vector<std::pair<int, std::size_t>> cand;  // (-gain, id)
    for (std::size_t node = 0; node < touched.size(); ++node) {
      if (!touched[node]) continue;
      for (std::size_t id : incident[node]) {
        if (chosen[id]) continue;
        int gain = 0;
        for (std::size_t ep : {qedges[id].first, qedges[id].second})
          if (!touched[ep] && in_target[ep]) ++gain;
        cand.emplace_back(-gain, id);
      }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t last = SIZE_MAX;
    for (auto [neg_gain, id] : cand) {
      if (id == last) continue;  // same edge may appear via both endpoints
      last = id;
      if (budget_hit) return;
      choose(id);
      rec();
      unchoose(id);
    }
  }
};

}  // namespace

RhoResult rho_cover(const CdsGraph& g, std::uint64_t path_cap, std::uint64_t work_cap) {
  RhoResult res;
  auto internal = internal_qualified_edges(g);
  if (internal.empty()) {
    res.value = ExtendedNat::inf();
    return res;
  }
  auto unq_adj = adjacency(g, EdgeLabel::Unqualified);

  std::vector<std::pair<std::size_t, std::size_t>> qedges;
  std::vector<Edge> qedge_labels;
  std::vector<std::vector<std::size_t>> incident(g.node_count());
  Dsu qdsu(g.node_count());
  std::vector<char> has_q(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (e.label != EdgeLabel::Qualified) continue;
    std::size_t pa = g.node_pos(e.a), pb = g.node_pos(e.b);
    incident[pa].push_back(qedges.size());
    incident[pb].push_back(qedges.size());
    qedges.emplace_back(pa, pb);
    qedge_labels.push_back(e);
    qdsu.unite(pa, pb);
    has_q[pa] = has_q[pb] = 1;
  }

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::optional<CoverWitness> witness;
  std::uint64_t work = 0;
  bool budget_hit = false;

  for (const Edge& e : internal) {
    if (budget_hit) break;
    std::size_t from = g.node_pos(e.a), to = g.node_pos(e.b);
    std::size_t root = qdsu.find(from);
    std::size_t seed_id = SIZE_MAX;
    for (std::size_t id : incident[from])
      if (qedges[id] == std::make_pair(std::min(from, to), std::max(from, to)) ||
          qedges[id] == std::make_pair(from, to) || qedges[id] == std::make_pair(to, from))
        seed_id = id;
    // distinct node sets seen for this edge's residing paths, with a sample path
    std::set<std::vector<std::size_t>> seen_sets;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> targets;
    bool complete = enumerate_paths(unq_adj, from, to, path_cap,
                                    [&](const std::vector<std::size_t>& path) {
                                      std::vector<std::size_t> key = path;
                                      std::sort(key.begin(), key.end());
                                      if (seen_sets.insert(key).second)
                                        targets.emplace_back(key, path);
                                    });
    if (!complete) res.path_cap_reached = true;
    for (auto& [nodes, path] : targets) {
      if (budget_hit) break;
      bool coverable = true;
      for (std::size_t p : nodes)
        if (!has_q[p] || qdsu.find(p) != root) {
          coverable = false;
          break;
        }
      if (!coverable) continue;
      std::vector<char> in_target(g.node_count(), 0);
      for (std::size_t p : nodes) in_target[p] = 1;
      CoverSearch search{qedges,   incident, in_target, nodes.size(),
                         work_cap, work,     budget_hit,
                         best,     {},       std::vector<char>(qedges.size(), 0),
                         std::vector<char>(g.node_count(), 0)};
      search.run(seed_id);
      if (search.found) {
        best = search.found->size();
        std::vector<Edge> cover;
        for (int id : *search.found) cover.push_back(qedge_labels[static_cast<std::size_t>(id)]);
        std::sort(cover.begin(), cover.end());
        witness = CoverWitness{e, positions_to_nodes(g, path), std::move(cover)};
      }
    }
  }

  if (best != std::numeric_limits<std::uint64_t>::max()) {
    res.value = ExtendedNat::of(best);
    res.witness = witness;
  } else {
    res.value = ExtendedNat::inf();
  }
  if (budget_hit) {
    res.budget_exceeded = true;
    if (best != std::numeric_limits<std::uint64_t>::max()) res.incumbent = best;
  }
  return res;
}

QResult q_components(const CdsGraph& g, std::uint64_t path_cap) {
  QResult res;
  auto internal = internal_qualified_edges(g);
  if (internal.empty()) {
    res.value = ExtendedNat::inf();
    return res;
  }
  auto unq_adj = adjacency(g, EdgeLabel::Unqualified);
  Dsu qdsu(g.node_count());
  std::vector<char> has_q(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (e.label != EdgeLabel::Qualified) continue;
    std::size_t pa = g.node_pos(e.a), pb = g.node_pos(e.b);
    qdsu.unite(pa, pb);
    has_q[pa] = has_q[pb] = 1;
  }
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::optional<QWitness> witness;
  for (const Edge& e : internal) {
    std::size_t from = g.node_pos(e.a), to = g.node_pos(e.b);
    bool complete = enumerate_paths(
        unq_adj, from, to, path_cap, [&](const std::vector<std::size_t>& path) {
          std::map<std::size_t, std::size_t> reps;  // component root -> lowest node pos
          for (std::size_t p : path) {
            if (!has_q[p]) continue;
            std::size_t root = qdsu.find(p);
            auto it = reps.find(root);
            if (it == reps.end() || p < it->second) reps[root] = p;
          }
          if (reps.size() < best) {
            best = reps.size();
            std::vector<std::string> names;
            std::vector<std::size_t> lows;
            for (auto& [root, low] : reps) lows.push_back(low);
            std::sort(lows.begin(), lows.end());
            for (std::size_t low : lows) names.push_back(g.node_at(low).name());
            witness = QWitness{e, positions_to_nodes(g, path), std::move(names)};
          }
        });
    if (!complete) res.path_cap_reached = true;
  }
  res.value = ExtendedNat::of(best);
  res.witness = witness;
  return res;
}

GraphParams analyze_graph(const CdsGraph& g, const AnalysisCaps& caps) {
  auto violations = validate(g);
  if (!violations.empty()) {
    std::string msg = "graph fails validation:";
    for (const auto& v : violations) msg += " [" + v.message + "]";
    throw input_error(msg);
  }
  GraphParams params;
  params.internal_edges = internal_qualified_edges(g);
  params.unqualified_components = components(g, EdgeLabel::Unqualified);
  params.qualified_components = components(g, EdgeLabel::Qualified);
  auto [d, dw] = residing_distance(g);
  params.d = d;
  params.d_witness = dw;
  RhoResult rho = rho_cover(g, caps.path_cap, caps.work_cap);
  params.rho = rho.value;
  params.rho_witness = rho.witness;
  params.rho_budget_exceeded = rho.budget_exceeded;
  params.rho_incumbent = rho.incumbent;
  QResult q = q_components(g, caps.path_cap);
  params.q = q.value;
  params.q_witness = q.witness;
  params.path_cap_reached = rho.path_cap_reached || q.path_cap_reached;
  return params;
}

CdsGraph theorem4_graph(std::uint64_t k, std::uint64_t d) {
  if (k < 1) throw input_error("theorem4_graph: k must be >= 1");
  if (d < 3 || d % 2 == 0) throw input_error("theorem4_graph: d must be odd and >= 3");
  std::uint64_t n = 2 * (k * d + 1);
  if (n > 2'000'000) throw input_error("theorem4_graph: instance too large");
  auto node_of = [](std::uint64_t v) -> NodeId {
    // v_1, v_3, ... are A_1, A_2, ...; v_2, v_4, ... are B_1, B_2, ...
    if (v % 2 == 1) return {Side::A, static_cast<std::uint32_t>((v + 1) / 2)};
    return {Side::B, static_cast<std::uint32_t>(v / 2)};
  };
  std::vector<Edge> edges;
  for (std::uint64_t v = 1; v < n; ++v) {
    NodeId x = node_of(v), y = node_of(v + 1);
    if (x.side == Side::A)
      edges.push_back({x, y, EdgeLabel::Unqualified});
    else
      edges.push_back({y, x, EdgeLabel::Unqualified});
  }
  for (std::uint64_t v = 1; v <= n; v += 2) {
    std::uint64_t w = ((v + d - 1) % n) + 1;  // lands on an even node since d is odd
    edges.push_back({node_of(v), node_of(w), EdgeLabel::Qualified});
  }
  std::uint32_t half = static_cast<std::uint32_t>(n / 2);
  return CdsGraph(half, half, std::move(edges));
}

}  // namespace cds
