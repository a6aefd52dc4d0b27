#ifndef CRGEO_ANALYZE_HPP
#define CRGEO_ANALYZE_HPP

#include <string>

#include <json.hpp>

#include "crgeo/spec_format.hpp"

namespace crgeo {

using json = nlohmann::ordered_json;

struct AnalyzeConfig {
  int order = 0;           // 0 = take the input file's order
  int weight_budget = 4;   // boundary-system weight cap
  int psc_samples = 32;    // pseudoconvexity sampling budget
  int locus_samples = 8;   // rank-locus sample budget for sheaf/ideal checks
};

struct AnalyzeOutcome {
  json report;
  bool all_claims_pass = true;
};

/// Runs the full pipeline on every declared point and assembles the
/// machine-readable report. Deterministic: identical (spec, config) produce
/// byte-identical reports. Numbers are exact rational strings; the only
/// floating-point field is the numeric-tier minimum, which carries its
/// tolerance.
AnalyzeOutcome analyze(const HypersurfaceSpec& spec, const AnalyzeConfig& cfg = {});

/// Plain-text rendering of the report.
std::string render_text(const json& report);

/// Canonical byte serialization used by the CLI and the golden files.
std::string render_json(const json& report);

} // namespace crgeo

#endif
