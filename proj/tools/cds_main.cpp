// Command-line front end: analyze graphs, construct and verify schemes,
// certify rates against the bounds, emit the bundled fixtures.
//
// Exit codes: 0 success; 1 verification failure, bound violation or refusal;
// 2 malformed input; 3 exceeded enumeration/search budget.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cds/bounds.hpp"
#include "cds/construct.hpp"
#include "cds/errors.hpp"
#include "cds/graph.hpp"
#include "cds/json_io.hpp"
#include "cds/scheme.hpp"

namespace {

using cds::ojson;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    cds::write_file(out_path, text);
}

cds::VerifyMethod parse_method(const std::string& m) {
  if (m == "rank") return cds::VerifyMethod::Rank;
  if (m == "exhaustive") return cds::VerifyMethod::Exhaustive;
  if (m == "both") return cds::VerifyMethod::Both;
  throw cds::input_error("method must be rank, exhaustive or both");
}

struct CommonOut {
  std::string format = "text";
  std::string out_path;
  void add_to(CLI::App* cmd) {
    cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", out_path, "write output to a file instead of stdout");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional disclosure with noisy randomness: graph analysis, "
               "scheme construction and verification"};
  app.require_subcommand(1);

  // analyze ------------------------------------------------------------
  std::string an_graph;
  cds::AnalysisCaps caps;
  bool an_preprocess = false;
  bool an_thm3 = false;
  CommonOut an_out;
  auto* an = app.add_subcommand("analyze", "graph parameters (d, rho, q) and rate bounds");
  an->add_option("graph", an_graph, "graph JSON file")->required();
  an->add_option("--path-cap", caps.path_cap, "residing paths enumerated per internal edge")
      ->envname("CDS_PATH_CAP");
  an->add_option("--work-cap", caps.work_cap, "branch-and-bound expansions for rho")
      ->envname("CDS_WORK_CAP");
  an->add_flag("--preprocess", an_preprocess,
               "drop nodes lacking an unqualified edge before analyzing");
  an->add_flag("--assert-n-equals-l", an_thm3,
               "also evaluate the component bound (valid for schemes with N = L)");
  an_out.add_to(an);

  // construct ----------------------------------------------------------
  auto* co = app.add_subcommand("construct", "build a scheme");
  co->require_subcommand(1);

  std::string r1_graph, r1_scheme_out = "scheme.json", r1_recipe_out = "recipe.json";
  std::optional<std::uint64_t> r1_p;
  auto* r1 = co->add_subcommand("rate1", "rate-1 scheme for graphs with no internal edge");
  r1->add_option("graph", r1_graph, "graph JSON file")->required();
  r1->add_option("--p", r1_p, "prime override");
  r1->add_option("--scheme-out", r1_scheme_out, "scheme output path");
  r1->add_option("--recipe-out", r1_recipe_out, "recipe output path");

  std::uint64_t t4_k = 1, t4_d = 3;
  std::optional<std::uint64_t> t4_p;
  std::string t4_graph_out = "graph.json", t4_scheme_out = "scheme.json",
              t4_recipe_out = "recipe.json";
  auto* t4 = co->add_subcommand("thm4", "cyclic-family instance and scheme");
  t4->add_option("--k", t4_k, "number of wraps (>= 1)")->required();
  t4->add_option("--d", t4_d, "residing distance (odd, >= 3)")->required();
  t4->add_option("--p", t4_p, "prime override");
  t4->add_option("--graph-out", t4_graph_out, "graph output path");
  t4->add_option("--scheme-out", t4_scheme_out, "scheme output path");
  t4->add_option("--recipe-out", t4_recipe_out, "recipe output path");

  // verify ---------------------------------------------------------------
  std::string ve_graph, ve_scheme, ve_method = "rank";
  std::uint64_t ve_limit = cds::kDefaultStateLimit;
  CommonOut ve_out;
  auto* ve = app.add_subcommand("verify", "check a scheme edge by edge");
  ve->add_option("graph", ve_graph, "graph JSON file")->required();
  ve->add_option("scheme", ve_scheme, "scheme JSON file")->required();
  ve->add_option("--method", ve_method, "rank, exhaustive or both")
      ->check(CLI::IsMember({"rank", "exhaustive", "both"}));
  ve->add_option("--limit", ve_limit, "max states for exhaustive enumeration")
      ->envname("CDS_STATE_LIMIT");
  ve_out.add_to(ve);

  // certify ----------------------------------------------------------------
  std::string ce_graph, ce_scheme, ce_method = "rank";
  std::uint64_t ce_limit = cds::kDefaultStateLimit;
  cds::AnalysisCaps ce_caps;
  bool ce_nl = false;
  CommonOut ce_out;
  auto* ce = app.add_subcommand("certify", "compare a verified scheme against the rate bounds");
  ce->add_option("graph", ce_graph, "graph JSON file")->required();
  ce->add_option("scheme", ce_scheme, "scheme JSON file")->required();
  ce->add_option("--method", ce_method, "verification method")
      ->check(CLI::IsMember({"rank", "exhaustive", "both"}));
  ce->add_option("--limit", ce_limit, "max states for exhaustive enumeration")
      ->envname("CDS_STATE_LIMIT");
  ce->add_option("--path-cap", ce_caps.path_cap, "residing paths per internal edge")
      ->envname("CDS_PATH_CAP");
  ce->add_option("--work-cap", ce_caps.work_cap, "branch-and-bound expansions for rho")
      ->envname("CDS_WORK_CAP");
  ce->add_flag("--assert-n-equals-l", ce_nl, "apply the component bound (requires N = L)");
  ce_out.add_to(ce);

  // fixtures -----------------------------------------------------------------
  std::string fx_dir;
  auto* fx = app.add_subcommand("fixtures", "emit the bundled reference instances");
  fx->add_option("--emit", fx_dir, "directory to write fixture files into")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (an->parsed()) {
      cds::CdsGraph g = cds::load_graph(an_graph);
      ojson pre;
      if (an_preprocess) {
        cds::PreprocessResult pp = cds::preprocess(g);
        if (!pp.removed.empty()) {
          ojson removed = ojson::array();
          for (const auto& n : pp.removed) removed.push_back(n);
          pre["removed"] = std::move(removed);
          ojson renamed = ojson::object();
          for (const auto& [from, to] : pp.renamed) renamed[from] = to;
          pre["renamed"] = std::move(renamed);
          g = pp.graph;
        }
      }
      cds::GraphParams params = cds::analyze_graph(g, caps);
      cds::RateBounds bounds = cds::evaluate_bounds(params, an_thm3);
      ojson j = cds::analysis_to_json(params, bounds);
      if (!pre.is_null()) j["preprocessing"] = std::move(pre);
      if (an_out.format == "json")
        emit(cds::dump_canonical(j), an_out.out_path);
      else
        emit(cds::render_analysis_text(j), an_out.out_path);
      return params.rho_budget_exceeded ? 3 : 0;
    }

    if (r1->parsed()) {
      cds::CdsGraph g = cds::load_graph(r1_graph);
      cds::Construction built = cds::construct_rate1(g, r1_p);
      cds::write_file(r1_scheme_out, cds::dump_canonical(cds::scheme_to_json(built.scheme)));
      cds::write_file(r1_recipe_out, cds::dump_canonical(cds::recipe_to_json(built.recipe)));
      std::cout << "wrote " << r1_scheme_out << " and " << r1_recipe_out << " (p = "
                << built.recipe.p << ", noise rate "
                << built.report.rates.noise_rate.str() << ")\n";
      return 0;
    }

    if (t4->parsed()) {
      cds::Construction built = cds::construct_theorem4(t4_k, t4_d, t4_p);
      cds::write_file(t4_graph_out, cds::dump_canonical(cds::graph_to_json(built.graph)));
      cds::write_file(t4_scheme_out, cds::dump_canonical(cds::scheme_to_json(built.scheme)));
      cds::write_file(t4_recipe_out, cds::dump_canonical(cds::recipe_to_json(built.recipe)));
      std::cout << "wrote " << t4_graph_out << ", " << t4_scheme_out << " and " << t4_recipe_out
                << " (p = " << built.recipe.p << ", noise rate "
                << built.report.rates.noise_rate.str() << ")\n";
      return 0;
    }

    if (ve->parsed()) {
      cds::CdsGraph g = cds::load_graph(ve_graph);
      cds::LinearScheme sch = cds::load_scheme(ve_scheme);
      cds::VerificationReport report = cds::verify(g, sch, parse_method(ve_method), ve_limit);
      ojson j = cds::report_to_json(report);
      if (ve_out.format == "json")
        emit(cds::dump_canonical(j), ve_out.out_path);
      else
        emit(cds::render_report_text(j), ve_out.out_path);
      return report.overall ? 0 : 1;
    }

    if (ce->parsed()) {
      cds::CdsGraph g = cds::load_graph(ce_graph);
      cds::LinearScheme sch = cds::load_scheme(ce_scheme);
      cds::VerificationReport report = cds::verify(g, sch, parse_method(ce_method), ce_limit);
      if (!report.overall) {
        std::cerr << "verification failed; certificate refused\n";
        std::cerr << cds::render_report_text(cds::report_to_json(report));
        return 1;
      }
      cds::GraphParams params = cds::analyze_graph(g, ce_caps);
      cds::Certificate cert = cds::certify(g, params, sch, report, ce_nl);
      ojson j = cds::certificate_to_json(cert);
      if (ce_out.format == "json")
        emit(cds::dump_canonical(j), ce_out.out_path);
      else
        emit(cds::render_certificate_text(j), ce_out.out_path);
      return cert.verdict == "bound-violating" ? 1 : 0;
    }

    if (fx->parsed()) {
      for (const cds::Fixture& f : cds::fixtures()) {
        std::string base = fx_dir + "/" + f.name;
        cds::write_file(base + "_graph.json", cds::dump_canonical(cds::graph_to_json(f.graph)));
        std::cout << f.name << "_graph.json";
        if (f.scheme) {
          cds::write_file(base + "_scheme.json",
                          cds::dump_canonical(cds::scheme_to_json(*f.scheme)));
          std::cout << " " << f.name << "_scheme.json";
        }
        cds::write_file(base + "_expected.json",
                        cds::dump_canonical(cds::fixture_expected_to_json(f)));
        std::cout << " " << f.name << "_expected.json\n";
      }
      return 0;
    }
  } catch (const cds::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cds::refusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  } catch (const cds::budget_exceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
