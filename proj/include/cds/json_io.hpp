#pragma once

#include <string>

#include "json.hpp"

#include "cds/bounds.hpp"
#include "cds/construct.hpp"
#include "cds/graph.hpp"
#include "cds/scheme.hpp"

namespace cds {

/// Emission uses ordered_json with a fixed insertion order so identical
/// inputs serialize to identical bytes.
using ojson = nlohmann::ordered_json;

// ---- parsing (throws input_error naming the offending field) ----
CdsGraph graph_from_json(const nlohmann::json& j);
LinearScheme scheme_from_json(const nlohmann::json& j);
CdsGraph load_graph(const std::string& path);
LinearScheme load_scheme(const std::string& path);

// ---- emission ----
ojson graph_to_json(const CdsGraph& g);
ojson scheme_to_json(const LinearScheme& s);
ojson bounds_to_json(const RateBounds& b);
/// Analyzer output: graph parameters, witnesses, caps status and bounds.
ojson analysis_to_json(const GraphParams& p, const RateBounds& b);
ojson report_to_json(const VerificationReport& r);
ojson certificate_to_json(const Certificate& c);
ojson recipe_to_json(const ConstructionRecipe& r);
ojson fixture_expected_to_json(const Fixture& f);

// ---- text renderings, derived from the JSON form ----
std::string render_analysis_text(const ojson& analysis);
std::string render_report_text(const ojson& report);
std::string render_certificate_text(const ojson& cert);

// ---- plumbing ----
std::string dump_canonical(const ojson& j);  // dump(2) with trailing newline
std::string fnv1a_hex(const std::string& bytes);
std::string graph_hash(const CdsGraph& g);
std::string scheme_hash(const LinearScheme& s);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cds
