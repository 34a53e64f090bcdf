#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <random>

#include "cds/bounds.hpp"
#include "cds/construct.hpp"
#include "cds/errors.hpp"
#include "cds/json_io.hpp"
#include "test_util.hpp"

using namespace cds;

TEST_CASE("graph serialization round trip, byte stable") {
  std::vector<CdsGraph> graphs;
  for (const auto& fx : fixtures()) graphs.push_back(fx.graph);
  graphs.push_back(theorem4_graph(2, 3));
  std::mt19937_64 rng(51);
  for (int i = 0; i < 10; ++i) graphs.push_back(testutil::random_graph(rng, 4, 12));

  for (const CdsGraph& g : graphs) {
    ojson j = graph_to_json(g);
    std::string once = dump_canonical(j);
    CdsGraph back = graph_from_json(nlohmann::json::parse(once));
    CHECK(back == g);
    std::string twice = dump_canonical(graph_to_json(back));
    CHECK(once == twice);
    CHECK(graph_hash(g) == graph_hash(back));
  }
  // distinct graphs hash apart (not guaranteed in theory, checked in practice)
  CHECK(graph_hash(graphs[0]) != graph_hash(graphs[1]));
}

TEST_CASE("scheme serialization round trip, byte stable") {
  std::vector<LinearScheme> schemes;
  for (const auto& fx : fixtures())
    if (fx.scheme) schemes.push_back(*fx.scheme);
  std::mt19937_64 rng(52);
  for (int i = 0; i < 8; ++i) {
    CdsGraph g = testutil::random_graph(rng, 3, 9);
    schemes.push_back(testutil::random_scheme(rng, g));
  }
  for (const LinearScheme& s : schemes) {
    std::string once = dump_canonical(scheme_to_json(s));
    LinearScheme back = scheme_from_json(nlohmann::json::parse(once));
    CHECK(back == s);
    CHECK(dump_canonical(scheme_to_json(back)) == once);
    CHECK(scheme_hash(s) == scheme_hash(back));
  }
}

TEST_CASE("graph parse diagnostics name the problem") {
  auto expect_error = [](const char* text, const char* needle) {
    try {
      graph_from_json(nlohmann::json::parse(text));
      FAIL_CHECK((std::string("expected input_error for ") + text));
    } catch (const input_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error(R"([1,2])", "top level");
  expect_error(R"({"b_count":1,"edges":[]})", "a_count");
  expect_error(R"({"a_count":1,"b_count":1,"edges":{}})", "must be an array");
  expect_error(R"({"a_count":1,"b_count":1,"edges":[{"a":1,"label":"qualified"}]})", "\"b\"");
  expect_error(R"({"a_count":1,"b_count":1,"edges":[{"a":0,"b":1,"label":"qualified"}]})",
               "1-based");
  expect_error(R"({"a_count":1,"b_count":1,"edges":[{"a":1,"b":1,"label":"x"}]})", "label");
  expect_error(R"({"a_count":1,"b_count":1,"edges":[{"a":1,"b":2,"label":"qualified"}]})",
               "outside the declared counts");
}

TEST_CASE("scheme parse diagnostics name the problem") {
  auto expect_error = [](const char* text, const char* needle) {
    try {
      scheme_from_json(nlohmann::json::parse(text));
      FAIL_CHECK((std::string("expected input_error for ") + text));
    } catch (const input_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error(R"({"p":4,"L":1,"Lz":1,"N":1,"nodes":{}})", "not prime");
  expect_error(R"({"p":3,"L":0,"Lz":1,"N":1,"nodes":{}})", ">= 1");
  expect_error(R"({"p":3,"L":1,"Lz":1,"N":1,"nodes":{}})", "no nodes");
  expect_error(R"({"p":3,"L":1,"Lz":1,"N":1,"nodes":{"C1":{"F":[[1]],"H":[[1]]}}})",
               "bad node name");
  expect_error(R"({"p":3,"L":1,"Lz":1,"N":1,"nodes":{"A1":{"F":[[1]]}}})", "\"H\"");
  expect_error(R"({"p":3,"L":1,"Lz":1,"N":1,"nodes":{"A1":{"F":[[3]],"H":[[1]]}}})",
               "in [0, 3)");
  expect_error(R"({"p":3,"L":2,"Lz":1,"N":1,"nodes":{"A1":{"F":[[1]],"H":[[1]]}}})",
               "2 entries");
  expect_error(R"({"p":3,"L":1,"Lz":1,"N":2,"nodes":{"A1":{"F":[[1]],"H":[[1]]}}})",
               "2 rows");
}

TEST_CASE("file loading wraps json parse failures as input errors") {
  write_file("bad_graph_tmp.json", "{ not json ");
  CHECK_THROWS_AS(load_graph("bad_graph_tmp.json"), input_error);
  CHECK_THROWS_AS(load_graph("no_such_file_tmp.json"), input_error);
  std::remove("bad_graph_tmp.json");
}

TEST_CASE("analysis json and text for the rho=5 instance") {
  auto fxs = fixtures();
  const auto& fig3 = fxs[2];
  auto params = analyze_graph(fig3.graph);
  auto bounds = evaluate_bounds(params);
  ojson j = analysis_to_json(params, bounds);
  CHECK(j["d"] == 3);
  CHECK(j["rho"] == 5);
  CHECK(j["q"] == 1);
  CHECK(j["bounds"]["thm2"] == "4/7");
  CHECK(j["bounds"]["thm2_case"] == "rho-finite");
  CHECK(j["bounds"]["thm3"].is_null());
  CHECK(j["witnesses"]["rho"]["cover"].size() == 5);
  CHECK(!j["caps"]["path_cap_reached"].get<bool>());

  std::string text = render_analysis_text(j);
  CHECK(text.find("rho = 5") != std::string::npos);
  CHECK(text.find("bound = 4/7") != std::string::npos);
  CHECK(text.find("[rho-finite]") != std::string::npos);

  // the infinite case prints as "inf"
  auto params1 = analyze_graph(fxs[0].graph);
  ojson j1 = analysis_to_json(params1, evaluate_bounds(params1));
  CHECK(j1["d"] == "inf");
  CHECK(render_analysis_text(j1).find("d = inf") != std::string::npos);
}

TEST_CASE("report json and text") {
  auto fxs = fixtures();
  const auto& fig4 = fxs[3];
  auto rep = verify(fig4.graph, *fig4.scheme, VerifyMethod::Both);
  ojson j = report_to_json(rep);
  CHECK(j["overall"] == true);
  CHECK(j["rates"]["noise_rate"] == "1/2");
  CHECK(j["edges"].size() == 8);
  for (const auto& e : j["edges"]) {
    CHECK(e["pass"] == true);
    CHECK(e.contains("entropy_rank"));
    CHECK(e.contains("entropy_exhaustive"));
    CHECK(!e.contains("methods_disagree"));
  }
  std::string text = render_report_text(j);
  CHECK(text.find("overall: PASS") != std::string::npos);
  CHECK(text.find("rank, exhaustive") != std::string::npos);

  LinearScheme broken = *fig4.scheme;
  broken.nodes.begin()->second.F.at(0, 0) =
      (broken.nodes.begin()->second.F.at(0, 0) + 1) % 3;
  auto rep2 = verify(fig4.graph, broken);
  ojson j2 = report_to_json(rep2);
  CHECK(j2["overall"] == false);
  CHECK(render_report_text(j2).find("FAIL") != std::string::npos);
}

TEST_CASE("certificate json and text") {
  auto fxs = fixtures();
  const auto& fig4 = fxs[3];
  auto params = analyze_graph(fig4.graph);
  auto rep = verify(fig4.graph, *fig4.scheme);
  auto cert = certify(fig4.graph, params, *fig4.scheme, rep, true);
  ojson j = certificate_to_json(cert);
  CHECK(j["verdict"] == "capacity-achieving");
  CHECK(j["achieved"] == "1/2");
  CHECK(j["bound"] == "1/2");
  CHECK(j["bound_name"] == "thm3");
  CHECK(j["gap"] == "0");
  CHECK(j["graph_hash"] == graph_hash(fig4.graph));
  std::string text = render_certificate_text(j);
  CHECK(text.find("capacity-achieving") != std::string::npos);
  CHECK(text.find("1/2") != std::string::npos);
}

TEST_CASE("recipe json carries the construction story") {
  auto built = construct_theorem4(2, 3);
  ojson j = recipe_to_json(built.recipe);
  CHECK(j["kind"] == "thm4");
  CHECK(j["p"] == 5);
  CHECK(j["k"] == 2);
  CHECK(j["d"] == 3);
  CHECK(j["rejected_primes"].empty());
  CHECK(j["verification_hash"].get<std::string>().size() == 16);
  std::string notes;
  for (const auto& n : j["notes"]) notes += n.get<std::string>() + "\n";
  CHECK(notes.find("xs = {0,1,3}") != std::string::npos);
  CHECK(notes.find("skipped") != std::string::npos);

  auto rate1 = construct_rate1(fixtures()[0].graph);
  ojson j1 = recipe_to_json(rate1.recipe);
  CHECK(j1["kind"] == "rate1");
  CHECK(j1["unqualified_components"] == 3);
  CHECK(j1["rejected_primes"].empty());
}

TEST_CASE("fixture expected-values json") {
  auto fxs = fixtures();
  ojson j = fixture_expected_to_json(fxs[2]);
  CHECK(j["name"] == "fig3");
  CHECK(j["expected"]["rho"] == 5);
  CHECK(j["expected"]["thm2"] == "4/7");
  ojson j4 = fixture_expected_to_json(fxs[3]);
  CHECK(j4["expected"]["thm3"] == "1/2");
}

TEST_CASE("hashing is order-insensitive for logically equal inputs") {
  // same edges in a different declaration order construct the same graph
  CdsGraph g1(2, 2, {{{Side::A, 1}, {Side::B, 1}, EdgeLabel::Unqualified},
                     {{Side::A, 2}, {Side::B, 2}, EdgeLabel::Unqualified},
                     {{Side::A, 1}, {Side::B, 2}, EdgeLabel::Qualified}});
  CdsGraph g2(2, 2, {{{Side::A, 1}, {Side::B, 2}, EdgeLabel::Qualified},
                     {{Side::A, 2}, {Side::B, 2}, EdgeLabel::Unqualified},
                     {{Side::A, 1}, {Side::B, 1}, EdgeLabel::Unqualified}});
  CHECK(graph_hash(g1) == graph_hash(g2));
}
