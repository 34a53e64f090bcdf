#include "cds/scheme.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cds/errors.hpp"
#include "cds/subspace.hpp"

namespace cds {

namespace {

const NodeCode& code_of(const LinearScheme& sch, NodeId v) {
  auto it = sch.nodes.find(v);
  if (it == sch.nodes.end()) throw input_error("scheme has no matrices for node " + v.name());
  return it->second;
}

// p^e with saturation at 2^63 (enough to compare against any state limit)
std::uint64_t pow_saturating(std::uint64_t p, std::size_t e) {
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < e; ++i) {
    acc *= p;
    if (acc > (static_cast<unsigned __int128>(1) << 63)) return std::uint64_t(1) << 63;
  }
  return static_cast<std::uint64_t>(acc);
}

// odometer over vectors in [0,p)^n, lexicographic; returns false after the last
bool advance(std::vector<std::uint32_t>& v, std::uint64_t p) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < p) return true;
    v[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<std::uint32_t> evaluate(const PrimeField& f, const LinearScheme& sch, NodeId v,
                                    const std::vector<std::uint32_t>& s,
                                    const std::vector<std::uint32_t>& z) {
  const NodeCode& code = code_of(sch, v);
  std::vector<std::uint32_t> out = mat_vec(f, code.F, s);
  std::vector<std::uint32_t> hz = mat_vec(f, code.H, z);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], hz[i]);
  return out;
}

Rational rank_entropy(const LinearScheme& sch, NodeId v, NodeId u) {
  PrimeField f(sch.p);
  const NodeCode& cv = code_of(sch, v);
  const NodeCode& cu = code_of(sch, u);
  std::size_t noise_rank = rank_of(f, vstack(cv.H, cu.H));
  std::size_t joint_rank = rank_of(f, vstack(hstack(cv.F, cv.H), hstack(cu.F, cu.H)));
  return Rational(static_cast<std::int64_t>(sch.L) + static_cast<std::int64_t>(noise_rank) -
                  static_cast<std::int64_t>(joint_rank));
}

ExhaustiveOutcome exhaustive_entropy(std::uint64_t p, std::size_t L, std::size_t Lz,
                                     const SignalFn& sig_v, const SignalFn& sig_u,
                                     std::uint64_t state_limit) {
  std::uint64_t states = pow_saturating(p, L + Lz);
  if (states > state_limit)
    throw budget_exceeded("exhaustive enumeration needs " + std::to_string(states) +
                          " states, above the limit of " + std::to_string(state_limit) +
                          "; use the rank method");
  // joint tabulation: signal pair -> (secret index -> count)
  std::map<std::vector<std::uint32_t>, std::map<std::uint64_t, std::uint64_t>> table;
  std::vector<std::uint32_t> s(L, 0);
  std::uint64_t s_idx = 0;
  do {
    std::vector<std::uint32_t> z(Lz, 0);
    do {
      std::vector<std::uint32_t> key = sig_v(s, z);
      std::vector<std::uint32_t> su = sig_u(s, z);
      key.insert(key.end(), su.begin(), su.end());
      ++table[std::move(key)][s_idx];
    } while (advance(z, p));
    ++s_idx;
  } while (advance(s, p));

  ExhaustiveOutcome out;
  std::int64_t weighted = 0;  // sum over pairs of (pair mass) * log_p(support)
  for (const auto& [key, counts] : table) {
    std::uint64_t c = counts.begin()->second;
    std::uint64_t support = counts.size();
    for (const auto& [si, cnt] : counts) {
      if (cnt != c) {
        std::ostringstream os;
        os << "conditional over a signal pair is not uniform (counts " << c << " and " << cnt
           << " both occur)";
        out.non_integral_note = os.str();
        return out;
      }
    }
    std::size_t e = 0;
    std::uint64_t acc = 1;
    while (acc < support) {
      acc *= p;
      ++e;
    }
    if (acc != support) {
      std::ostringstream os;
      os << "conditional support " << support << " is not a power of " << p;
      out.non_integral_note = os.str();
      return out;
    }
    weighted += static_cast<std::int64_t>(c * support * e);
  }
  out.entropy = Rational(weighted, static_cast<std::int64_t>(states));
  return out;
}

ExhaustiveOutcome exhaustive_entropy(const LinearScheme& sch, NodeId v, NodeId u,
                                     std::uint64_t state_limit) {
  PrimeField f(sch.p);
  auto bind = [&](NodeId n) -> SignalFn {
    return [&sch, &f, n](const std::vector<std::uint32_t>& s,
                         const std::vector<std::uint32_t>& z) { return evaluate(f, sch, n, s, z); };
  };
  return exhaustive_entropy(sch.p, sch.L, sch.Lz, bind(v), bind(u), state_limit);
}

AlignmentDiag alignment_check(const LinearScheme& sch, const Edge& e) {
  PrimeField f(sch.p);
  const NodeCode& cv = code_of(sch, e.a);
  const NodeCode& cu = code_of(sch, e.b);
  Subspace sv = Subspace::from_rows(f, cv.H);
  Subspace su = Subspace::from_rows(f, cu.H);
  Subspace inter = Subspace::intersect(f, sv, su);
  AlignmentDiag diag;
  diag.edge = e;
  diag.alpha = inter.dim();
  // projections onto the shared basis: row i of P_x expresses basis row i
  // over H_x's rows
  FMatrix pv(inter.dim(), cv.H.rows), pu(inter.dim(), cu.H.rows);
  for (std::size_t i = 0; i < inter.dim(); ++i) {
    auto row = inter.basis().row(i);
    auto xv = solve_left(f, row, cv.H);
    auto xu = solve_left(f, row, cu.H);
    if (!xv || !xu) throw internal_error("intersection basis row left its own span");
    pv.set_row(i, *xv);
    pu.set_row(i, *xu);
  }
  diag.projection_ok = mat_mul(f, pv, cv.H) == mat_mul(f, pu, cu.H);
  diag.signal_aligned = mat_mul(f, pv, cv.F) == mat_mul(f, pu, cu.F);
  return diag;
}

VerificationReport verify(const CdsGraph& g, const LinearScheme& sch, VerifyMethod method,
                          std::uint64_t state_limit) {
  PrimeField f(sch.p);
  // node sets must agree exactly
  for (NodeId v : g.nodes())
    if (!sch.nodes.count(v)) throw input_error("scheme is missing node " + v.name());
  for (const auto& [v, code] : sch.nodes) {
    if (v.side == Side::A ? v.index > g.a_count() : v.index > g.b_count())
      throw input_error("scheme defines node " + v.name() + " absent from the graph");
    if (code.F.rows != sch.N || code.F.cols != sch.L)
      throw input_error("node " + v.name() + ": F must be N x L");
    if (code.H.rows != sch.N || code.H.cols != sch.Lz)
      throw input_error("node " + v.name() + ": H must be N x Lz");
  }
  if (method != VerifyMethod::Rank) {
    std::uint64_t states = pow_saturating(sch.p, sch.L + sch.Lz);
    if (states > state_limit)
      throw budget_exceeded("exhaustive verification needs " + std::to_string(states) +
                            " states, above the limit of " + std::to_string(state_limit) +
                            "; use the rank method");
  }

  VerificationReport report;
  report.rates = {sch.noise_rate(), sch.communication_rate()};
  for (const auto& [v, code] : sch.nodes)
    if (rank_of(f, code.H) != sch.N) report.h_rank_failures.push_back(v.name());

  bool all_pass = true;
  for (const Edge& e : g.edges()) {
    EdgeVerdict verdict;
    verdict.edge = e;
    Rational target = e.label == EdgeLabel::Qualified
                          ? Rational(0)
                          : Rational(static_cast<std::int64_t>(sch.L));
    if (method == VerifyMethod::Rank || method == VerifyMethod::Both)
      verdict.entropy_rank = rank_entropy(sch, e.a, e.b);
    if (method == VerifyMethod::Exhaustive || method == VerifyMethod::Both) {
      ExhaustiveOutcome oc = exhaustive_entropy(sch, e.a, e.b, state_limit);
      if (oc.entropy) {
        verdict.entropy_exhaustive = oc.entropy;
      } else {
        verdict.note = oc.non_integral_note;
      }
    }
    bool ok = true;
    if (method == VerifyMethod::Both) {
      if (!verdict.entropy_exhaustive || *verdict.entropy_rank != *verdict.entropy_exhaustive) {
        verdict.methods_disagree = true;
        if (verdict.note.empty()) verdict.note = "rank and exhaustive entropies disagree";
        ok = false;
      }
    }
    auto h = verdict.entropy();
    ok = ok && h.has_value() && *h == target;
    verdict.pass = ok;
    all_pass = all_pass && ok;
    report.verdicts.push_back(std::move(verdict));
    report.alignment.push_back(alignment_check(sch, e));
  }
  report.overall = all_pass && report.h_rank_failures.empty();
  return report;
}

}  // namespace cds
