// Command line front end: parse a hypersurface description, run the analysis
// pipeline, emit a machine-readable or plain-text report.
//
// Exit codes: 0 = all asserted identities pass, 1 = a violation was found,
// 2 = input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crgeo/analyze.hpp"

namespace {

int run_analyze(const std::string& file, const std::string& point_arg, int order,
                const std::string& format, int budget) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "crgeo: cannot open '" << file << "'\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  crgeo::HypersurfaceSpec spec;
  try {
    spec = crgeo::parse_spec(buf.str());
  } catch (const std::exception& e) {
    std::cerr << "crgeo: parse error: " << e.what() << "\n";
    return 2;
  }

  if (!point_arg.empty()) {
    // comma separated complex constants: z1,..,z{n-1},w
    std::vector<std::string> parts;
    std::string cur;
    for (char c : point_arg) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != spec.n) {
      std::cerr << "crgeo: --point needs " << spec.n << " comma-separated coordinates\n";
      return 2;
    }
    try {
      crgeo::AmbientPoint p;
      for (int j = 0; j + 1 < spec.n; ++j) p.z.push_back(crgeo::parse_constant(parts[j]));
      p.w = crgeo::parse_constant(parts.back());
      spec.points = {p};
    } catch (const std::exception& e) {
      std::cerr << "crgeo: bad --point: " << e.what() << "\n";
      return 2;
    }
  }

  crgeo::AnalyzeConfig cfg;
  cfg.order = order;
  cfg.weight_budget = budget;

  crgeo::AnalyzeOutcome outcome;
  try {
    outcome = crgeo::analyze(spec, cfg);
  } catch (const std::exception& e) {
    std::cerr << "crgeo: analysis error: " << e.what() << "\n";
    return 2;
  }

  if (format == "json") std::cout << crgeo::render_json(outcome.report);
  else std::cout << crgeo::render_text(outcome.report);
  return outcome.all_claims_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact CR invariants of polynomial real hypersurfaces"};
  app.require_subcommand(1);

  std::string file, point, format = "json";
  int order = 0, budget = 4;
  CLI::App* an = app.add_subcommand("analyze", "analyze a hypersurface description file");
  an->add_option("file", file, "input .crs file")->required();
  an->add_option("--point", point, "analysis point z1,..,z{n-1},w (complex constants)");
  an->add_option("--order", order, "jet order (default: the file's order)");
  an->add_option("--report", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  an->add_option("--budget", budget, "boundary system weight budget (default 4)");

  CLI11_PARSE(app, argc, argv);

  if (an->parsed()) return run_analyze(file, point, order, format, budget);
  return 2;
}
