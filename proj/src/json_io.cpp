#include "cds/json_io.hpp"

#include <fstream>
#include <sstream>

#include "cds/errors.hpp"

namespace cds {

namespace {

using njson = nlohmann::json;

const njson& need(const njson& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(ctx + ": missing field \"" + key + "\"");
  return *it;
}

std::uint64_t need_uint(const njson& j, const char* key, const std::string& ctx) {
  const njson& v = need(j, key, ctx);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw input_error(ctx + ": field \"" + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

ojson edge_name_pair(const Edge& e) { return ojson::array({e.a.name(), e.b.name()}); }

ojson node_list(const std::vector<NodeId>& nodes) {
  ojson out = ojson::array();
  for (NodeId v : nodes) out.push_back(v.name());
  return out;
}

ojson ext_to_json(const ExtendedNat& x) {
  if (x.finite) return ojson(x.value);
  return ojson("inf");
}

ojson matrix_to_json(const FMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

FMatrix matrix_from_json(const njson& j, std::size_t rows, std::size_t cols, std::uint64_t p,
                         const std::string& ctx) {
  if (!j.is_array() || j.size() != rows)
    throw input_error(ctx + ": expected " + std::to_string(rows) + " rows");
  FMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const njson& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw input_error(ctx + ": row " + std::to_string(r) + " must have " +
                        std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const njson& v = row[c];
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
          v.get<std::uint64_t>() >= p)
        throw input_error(ctx + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                          ") must be an integer in [0, " + std::to_string(p) + ")");
      m.at(r, c) = v.get<std::uint32_t>();
    }
  }
  return m;
}

std::string thm2_case_name(Thm2Case c) {
  switch (c) {
    case Thm2Case::NoInternalEdge:
      return "no-internal-edge";
    case Thm2Case::RhoFinite:
      return "rho-finite";
    case Thm2Case::RhoInfinite:
      return "rho-infinite";
  }
  return "?";
}

std::string fmt_edge(const ojson& pair) {
  return "{" + pair[0].get<std::string>() + "," + pair[1].get<std::string>() + "}";
}

}  // namespace

CdsGraph graph_from_json(const njson& j) {
  if (!j.is_object()) throw input_error("graph: top level must be an object");
  std::uint64_t a_count = need_uint(j, "a_count", "graph");
  std::uint64_t b_count = need_uint(j, "b_count", "graph");
  if (a_count > 1'000'000 || b_count > 1'000'000) throw input_error("graph: node count too large");
  const njson& edges = need(j, "edges", "graph");
  if (!edges.is_array()) throw input_error("graph: \"edges\" must be an array");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string ctx = "graph edge " + std::to_string(i);
    const njson& ej = edges[i];
    if (!ej.is_object()) throw input_error(ctx + ": must be an object");
    std::uint64_t a = need_uint(ej, "a", ctx);
    std::uint64_t b = need_uint(ej, "b", ctx);
    if (a < 1 || b < 1) throw input_error(ctx + ": node indices are 1-based");
    const njson& lab = need(ej, "label", ctx);
    EdgeLabel label;
    if (lab == "qualified")
      label = EdgeLabel::Qualified;
    else if (lab == "unqualified")
      label = EdgeLabel::Unqualified;
    else
      throw input_error(ctx + ": label must be \"qualified\" or \"unqualified\"");
    out.push_back({{Side::A, static_cast<std::uint32_t>(a)},
                   {Side::B, static_cast<std::uint32_t>(b)},
                   label});
  }
  return CdsGraph(static_cast<std::uint32_t>(a_count), static_cast<std::uint32_t>(b_count),
                  std::move(out));
}

LinearScheme scheme_from_json(const njson& j) {
  if (!j.is_object()) throw input_error("scheme: top level must be an object");
  LinearScheme s;
  s.p = need_uint(j, "p", "scheme");
  try {
    PrimeField check(s.p);
  } catch (const std::invalid_argument& e) {
    throw input_error(std::string("scheme: ") + e.what());
  }
  s.L = need_uint(j, "L", "scheme");
  s.Lz = need_uint(j, "Lz", "scheme");
  s.N = need_uint(j, "N", "scheme");
  if (s.L < 1 || s.Lz < 1 || s.N < 1) throw input_error("scheme: L, Lz and N must be >= 1");
  const njson& nodes = need(j, "nodes", "scheme");
  if (!nodes.is_object()) throw input_error("scheme: \"nodes\" must be an object");
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    auto id = NodeId::parse(it.key());
    if (!id) throw input_error("scheme: bad node name \"" + it.key() + "\"");
    std::string ctx = "scheme node " + it.key();
    NodeCode code;
    code.F = matrix_from_json(need(it.value(), "F", ctx), s.N, s.L, s.p, ctx + " F");
    code.H = matrix_from_json(need(it.value(), "H", ctx), s.N, s.Lz, s.p, ctx + " H");
    s.nodes[*id] = std::move(code);
  }
  if (s.nodes.empty()) throw input_error("scheme: no nodes");
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write " + path);
  out << content;
}

CdsGraph load_graph(const std::string& path) {
  try {
    return graph_from_json(njson::parse(read_file(path)));
  } catch (const njson::exception& e) {
    throw input_error(path + ": " + e.what());
  }
}

LinearScheme load_scheme(const std::string& path) {
  try {
    return scheme_from_json(njson::parse(read_file(path)));
  } catch (const njson::exception& e) {
    throw input_error(path + ": " + e.what());
  }
}

ojson graph_to_json(const CdsGraph& g) {
  ojson j;
  j["a_count"] = g.a_count();
  j["b_count"] = g.b_count();
  ojson edges = ojson::array();
  for (const Edge& e : g.edges()) {
    ojson ej;
    ej["a"] = e.a.index;
    ej["b"] = e.b.index;
    ej["label"] = e.label == EdgeLabel::Qualified ? "qualified" : "unqualified";
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j;
}

ojson scheme_to_json(const LinearScheme& s) {
  ojson j;
  j["p"] = s.p;
  j["L"] = s.L;
  j["Lz"] = s.Lz;
  j["N"] = s.N;
  ojson nodes;
  for (const auto& [v, code] : s.nodes) {
    ojson nj;
    nj["F"] = matrix_to_json(code.F);
    nj["H"] = matrix_to_json(code.H);
    nodes[v.name()] = std::move(nj);
  }
  j["nodes"] = std::move(nodes);
  return j;
}

ojson bounds_to_json(const RateBounds& b) {
  ojson j;
  j["capacity_one"] = b.capacity_one;
  j["thm2"] = b.thm2.str();
  j["thm2_case"] = thm2_case_name(b.thm2_case);
  if (b.thm3)
    j["thm3"] = b.thm3->str();
  else
    j["thm3"] = nullptr;
  ojson from;
  from["d"] = ext_to_json(b.d);
  from["rho"] = ext_to_json(b.rho);
  from["q"] = ext_to_json(b.q);
  j["from"] = std::move(from);
  return j;
}

ojson analysis_to_json(const GraphParams& p, const RateBounds& b) {
  ojson j;
  ojson internals = ojson::array();
  for (const Edge& e : p.internal_edges) internals.push_back(edge_name_pair(e));
  j["internal_qualified_edges"] = std::move(internals);
  j["d"] = ext_to_json(p.d);
  j["rho"] = ext_to_json(p.rho);
  j["q"] = ext_to_json(p.q);
  ojson comps_u = ojson::array(), comps_q = ojson::array();
  for (const auto& comp : p.unqualified_components) comps_u.push_back(node_list(comp));
  for (const auto& comp : p.qualified_components) comps_q.push_back(node_list(comp));
  j["unqualified_components"] = std::move(comps_u);
  j["qualified_components"] = std::move(comps_q);
  ojson w;
  if (p.d_witness) {
    ojson dw;
    dw["edge"] = edge_name_pair(p.d_witness->edge);
    dw["path"] = node_list(p.d_witness->path);
    w["d"] = std::move(dw);
  } else {
    w["d"] = nullptr;
  }
  if (p.rho_witness) {
    ojson rw;
    rw["edge"] = edge_name_pair(p.rho_witness->edge);
    rw["path"] = node_list(p.rho_witness->path);
    ojson cover = ojson::array();
    for (const Edge& e : p.rho_witness->cover) cover.push_back(edge_name_pair(e));
    rw["cover"] = std::move(cover);
    w["rho"] = std::move(rw);
  } else {
    w["rho"] = nullptr;
  }
  if (p.q_witness) {
    ojson qw;
    qw["edge"] = edge_name_pair(p.q_witness->edge);
    qw["path"] = node_list(p.q_witness->path);
    ojson comps = ojson::array();
    for (const std::string& rep : p.q_witness->component_reps) comps.push_back(rep);
    qw["components"] = std::move(comps);
    w["q"] = std::move(qw);
  } else {
    w["q"] = nullptr;
  }
  j["witnesses"] = std::move(w);
  ojson caps;
  caps["path_cap_reached"] = p.path_cap_reached;
  caps["rho_budget_exceeded"] = p.rho_budget_exceeded;
  if (p.rho_incumbent)
    caps["rho_incumbent"] = *p.rho_incumbent;
  else
    caps["rho_incumbent"] = nullptr;
  j["caps"] = std::move(caps);
  j["bounds"] = bounds_to_json(b);
  return j;
}

ojson report_to_json(const VerificationReport& r) {
  ojson j;
  ojson rates;
  rates["noise_rate"] = r.rates.noise_rate.str();
  rates["communication_rate"] = r.rates.communication_rate.str();
  j["rates"] = std::move(rates);
  ojson fails = ojson::array();
  for (const std::string& n : r.h_rank_failures) fails.push_back(n);
  j["h_rank_failures"] = std::move(fails);
  ojson edges = ojson::array();
  for (const EdgeVerdict& v : r.verdicts) {
    ojson ej;
    ej["edge"] = edge_name_pair(v.edge);
    ej["label"] = v.edge.label == EdgeLabel::Qualified ? "qualified" : "unqualified";
    if (auto h = v.entropy())
      ej["entropy"] = h->str();
    else
      ej["entropy"] = nullptr;
    if (v.entropy_rank) ej["entropy_rank"] = v.entropy_rank->str();
    if (v.entropy_exhaustive) ej["entropy_exhaustive"] = v.entropy_exhaustive->str();
    if (v.methods_disagree) ej["methods_disagree"] = true;
    if (!v.note.empty()) ej["note"] = v.note;
    ej["pass"] = v.pass;
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  ojson align = ojson::array();
  for (const AlignmentDiag& d : r.alignment) {
    ojson aj;
    aj["edge"] = edge_name_pair(d.edge);
    aj["alpha"] = d.alpha;
    aj["projection_ok"] = d.projection_ok;
    aj["signal_aligned"] = d.signal_aligned;
    align.push_back(std::move(aj));
  }
  j["alignment"] = std::move(align);
  j["overall"] = r.overall;
  return j;
}

ojson certificate_to_json(const Certificate& c) {
  ojson j;
  j["verdict"] = c.verdict;
  j["achieved"] = c.achieved.str();
  j["bound"] = c.bound.str();
  j["bound_name"] = c.bound_name;
  j["gap"] = c.gap.str();
  j["bounds"] = bounds_to_json(c.bounds);
  ojson rates;
  rates["noise_rate"] = c.rates.noise_rate.str();
  rates["communication_rate"] = c.rates.communication_rate.str();
  j["rates"] = std::move(rates);
  j["graph_hash"] = c.graph_hash;
  j["scheme_hash"] = c.scheme_hash;
  return j;
}

ojson recipe_to_json(const ConstructionRecipe& r) {
  ojson j;
  j["kind"] = r.kind;
  j["p"] = r.p;
  if (r.k) j["k"] = *r.k;
  if (r.d) j["d"] = *r.d;
  if (r.unqualified_component_count) j["unqualified_components"] = *r.unqualified_component_count;
  ojson rejected = ojson::array();
  for (std::uint64_t p : r.rejected_primes) rejected.push_back(p);
  j["rejected_primes"] = std::move(rejected);
  ojson notes = ojson::array();
  for (const std::string& n : r.notes) notes.push_back(n);
  j["notes"] = std::move(notes);
  j["verification_hash"] = r.verification_hash;
  return j;
}

ojson fixture_expected_to_json(const Fixture& f) {
  ojson j;
  j["name"] = f.name;
  j["note"] = f.note;
  ojson e;
  if (f.expected.d) e["d"] = ext_to_json(*f.expected.d);
  if (f.expected.rho) e["rho"] = ext_to_json(*f.expected.rho);
  if (f.expected.q) e["q"] = ext_to_json(*f.expected.q);
  if (f.expected.unqualified_components)
    e["unqualified_components"] = *f.expected.unqualified_components;
  if (f.expected.thm2) e["thm2"] = f.expected.thm2->str();
  if (f.expected.thm3) e["thm3"] = f.expected.thm3->str();
  if (f.expected.noise_rate) e["noise_rate"] = f.expected.noise_rate->str();
  if (f.expected.L) e["L"] = *f.expected.L;
  if (f.expected.Lz) e["Lz"] = *f.expected.Lz;
  if (f.expected.N) e["N"] = *f.expected.N;
  j["expected"] = std::move(e);
  return j;
}

std::string render_analysis_text(const ojson& analysis) {
  std::ostringstream os;
  const auto& internals = analysis["internal_qualified_edges"];
  os << "internal qualified edges:";
  if (internals.empty()) {
    os << " none\n";
  } else {
    for (const auto& e : internals) os << " " << fmt_edge(e);
    os << "\n";
  }
  os << "unqualified components: " << analysis["unqualified_components"].size() << "\n";
  os << "qualified components: " << analysis["qualified_components"].size() << "\n";
  auto ext = [](const ojson& v) -> std::string {
    return v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::uint64_t>());
  };
  os << "d = " << ext(analysis["d"]) << "\n";
  os << "rho = " << ext(analysis["rho"]);
  const auto& rw = analysis["witnesses"]["rho"];
  if (!rw.is_null()) {
    os << " (cover:";
    for (const auto& e : rw["cover"]) os << " " << fmt_edge(e);
    os << ")";
  }
  os << "\n";
  os << "q = " << ext(analysis["q"]) << "\n";
  const auto& b = analysis["bounds"];
  os << "capacity 1 (no internal qualified edge): "
     << (b["capacity_one"].get<bool>() ? "yes" : "no") << "\n";
  os << "thm2 bound = " << b["thm2"].get<std::string>() << " ["
     << b["thm2_case"].get<std::string>() << "]\n";
  if (!b["thm3"].is_null())
    os << "thm3 bound = " << b["thm3"].get<std::string>() << " [assumes N = L]\n";
  const auto& caps = analysis["caps"];
  if (caps["path_cap_reached"].get<bool>())
    os << "note: path enumeration hit its cap; rho and q are upper bounds\n";
  if (caps["rho_budget_exceeded"].get<bool>()) {
    os << "note: rho search exceeded its work budget";
    if (!caps["rho_incumbent"].is_null())
      os << "; best cover found so far has size " << caps["rho_incumbent"].get<std::uint64_t>();
    os << "\n";
  }
  return os.str();
}

std::string render_report_text(const ojson& report) {
  std::ostringstream os;
  const auto& rates = report["rates"];
  os << "rates: noise " << rates["noise_rate"].get<std::string>() << ", communication "
     << rates["communication_rate"].get<std::string>() << "\n";
  for (const auto& e : report["edges"]) {
    os << e["label"].get<std::string>() << " " << fmt_edge(e["edge"]) << ": entropy ";
    if (e["entropy"].is_null())
      os << "?";
    else
      os << e["entropy"].get<std::string>();
    os << " [";
    bool first = true;
    if (e.contains("entropy_rank")) {
      os << "rank";
      first = false;
    }
    if (e.contains("entropy_exhaustive")) {
      os << (first ? "" : ", ") << "exhaustive";
    }
    os << "] " << (e["pass"].get<bool>() ? "PASS" : "FAIL");
    if (e.contains("note")) os << " (" << e["note"].get<std::string>() << ")";
    os << "\n";
  }
  const auto& fails = report["h_rank_failures"];
  os << "H rank failures:";
  if (fails.empty()) {
    os << " none\n";
  } else {
    for (const auto& n : fails) os << " " << n.get<std::string>();
    os << "\n";
  }
  os << "overall: " << (report["overall"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string render_certificate_text(const ojson& cert) {
  std::ostringstream os;
  os << "verdict: " << cert["verdict"].get<std::string>() << "\n";
  os << "achieved noise rate " << cert["achieved"].get<std::string>() << " vs bound = "
     << cert["bound"].get<std::string>() << " [" << cert["bound_name"].get<std::string>()
     << "]\n";
  os << "gap: " << cert["gap"].get<std::string>() << "\n";
  os << "graph " << cert["graph_hash"].get<std::string>() << ", scheme "
     << cert["scheme_hash"].get<std::string>() << "\n";
  return os.str();
}

std::string dump_canonical(const ojson& j) { return j.dump(2) + "\n"; }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string graph_hash(const CdsGraph& g) { return fnv1a_hex(dump_canonical(graph_to_json(g))); }
std::string scheme_hash(const LinearScheme& s) {
  return fnv1a_hex(dump_canonical(scheme_to_json(s)));
}

}  // namespace cds
