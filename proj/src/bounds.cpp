#include "cds/bounds.hpp"

#include "cds/errors.hpp"
#include "cds/json_io.hpp"

namespace cds {

RateBounds evaluate_bounds(const GraphParams& params, bool assert_n_equals_l) {
  RateBounds b;
  b.d = params.d;
  b.rho = params.rho;
  b.q = params.q;
  if (!params.d.finite) {
    b.capacity_one = true;
    b.thm2 = Rational(1);
    b.thm2_case = Thm2Case::NoInternalEdge;
  } else if (params.rho.finite) {
    auto rho = static_cast<std::int64_t>(params.rho.value);
    auto d = static_cast<std::int64_t>(params.d.value);
    b.thm2 = Rational((rho - 1) * (d - 1), rho * d - 1);
    b.thm2_case = Thm2Case::RhoFinite;
  } else {
    auto d = static_cast<std::int64_t>(params.d.value);
    b.thm2 = Rational(d - 1, d);
    b.thm2_case = Thm2Case::RhoInfinite;
  }
  if (assert_n_equals_l) {
    if (!params.q.finite) {
      b.thm3 = Rational(1);  // vacuous: no residing path to fragment
    } else {
      auto q = static_cast<std::int64_t>(params.q.value);
      b.thm3 = Rational(q - 1, q);
    }
  }
  return b;
}

Certificate certify(const CdsGraph& g, const GraphParams& params, const LinearScheme& sch,
                    const VerificationReport& report, bool assert_n_equals_l) {
  if (!report.overall)
    throw refusal("cannot certify: the verification report does not pass");
  if (assert_n_equals_l && sch.N != sch.L)
    throw input_error("N = L asserted, but the scheme has N = " + std::to_string(sch.N) +
                      " and L = " + std::to_string(sch.L));
  Certificate cert;
  cert.bounds = evaluate_bounds(params, assert_n_equals_l);
  cert.rates = report.rates;
  cert.achieved = report.rates.noise_rate;
  cert.bound = cert.bounds.thm2;
  cert.bound_name = "thm2";
  if (cert.bounds.thm3 && *cert.bounds.thm3 < cert.bound) {
    cert.bound = *cert.bounds.thm3;
    cert.bound_name = "thm3";
  }
  cert.gap = cert.bound - cert.achieved;
  if (cert.achieved == cert.bound)
    cert.verdict = "capacity-achieving";
  else if (cert.achieved < cert.bound)
    cert.verdict = "feasible-with-gap";
  else
    cert.verdict = "bound-violating";
  cert.graph_hash = graph_hash(g);
  cert.scheme_hash = scheme_hash(sch);
  return cert;
}

}  // namespace cds
