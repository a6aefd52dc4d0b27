#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "crgeo/analyze.hpp"
#include "test_support.hpp"

using namespace crgeo;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(CRGEO_FIXTURE_DIR))
    if (e.path().extension() == ".crs") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("expression parsing against hand-built polynomials") {
  int nz = 2;
  Poly z1 = Poly::var(nz, VarId::z(0)), w = Poly::var(nz, VarId::w());
  Poly expect = -(w + w.conj()) + z1 * z1.conj();
  CHECK(parse_expression("-(w + conj(w)) + z1*conj(z1)", nz) == expect);

  Poly u2 = parse_expression("-2*Re(w) + (z1*conj(z1))^2 + Im(w)^2*z1*conj(z1)", 1);
  CHECK(u2.is_real());
  // Im(w)^2 |z1|^2 expands through w and conj(w)
  CHECK(u2.degree_in(VarId::w()) == 2);

  CHECK(parse_expression("1/2 + 3/4*i", 1) ==
        Poly::constant(1, GaussianRational(mpq_class(1, 2), mpq_class(3, 4))));

  // precise error positions
  try {
    parse_expression("z1 +", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.col == 5);
  }
  CHECK_THROWS_AS(parse_expression("z3", 2), ParseError);      // out of range
  CHECK_THROWS_AS(parse_expression("u", 2), ParseError);       // chart-only symbol
  CHECK_THROWS_AS(parse_expression("z1/z1", 2), ParseError);   // non-constant divisor
  CHECK_THROWS_AS(parse_expression("w ^ z1", 2), ParseError);  // non-integer exponent
}

TEST_CASE("spec files: validation and canonical round trip") {
  // non-real rho is rejected
  CHECK_THROWS_AS(parse_spec("n 2\nrho z1\n"), ParseError);
  // off-surface point is rejected
  CHECK_THROWS_AS(parse_spec("n 2\nrho -(w+conj(w))+z1*conj(z1)\npoint 0 1\n"), ParseError);
  // missing declarations
  CHECK_THROWS_AS(parse_spec("n 2\n"), ParseError);

  for (const auto& file : corpus()) {
    CAPTURE(file.string());
    HypersurfaceSpec spec = parse_spec(slurp(file));
    // parse -> print -> parse is the identity on the corpus
    std::string printed = print_spec(spec);
    HypersurfaceSpec again = parse_spec(printed);
    CHECK(again.n == spec.n);
    CHECK(again.rho == spec.rho);
    CHECK(again.points.size() == spec.points.size());
    for (size_t k = 0; k < spec.points.size(); ++k) CHECK(again.points[k] == spec.points[k]);
    CHECK(print_spec(again) == printed);
  }
}

TEST_CASE("reports are deterministic byte for byte") {
  for (const auto& file : corpus()) {
    CAPTURE(file.string());
    HypersurfaceSpec spec = parse_spec(slurp(file));
    AnalyzeOutcome a = analyze(spec);
    AnalyzeOutcome b = analyze(spec);
    CHECK(render_json(a.report) == render_json(b.report));
  }
}

TEST_CASE("golden reports across the corpus") {
  for (const auto& file : corpus()) {
    CAPTURE(file.string());
    fs::path golden = fs::path(CRGEO_FIXTURE_DIR) / "golden" / (file.stem().string() + ".json");
    if (!fs::exists(golden)) {
      FAIL_CHECK("missing golden file ", golden.string());
      continue;
    }
    HypersurfaceSpec spec = parse_spec(slurp(file));
    AnalyzeOutcome out = analyze(spec);
    CHECK(render_json(out.report) == slurp(golden));
  }
}

TEST_CASE("claims pass on the corpus fixtures") {
  for (const auto& file : corpus()) {
    CAPTURE(file.string());
    HypersurfaceSpec spec = parse_spec(slurp(file));
    AnalyzeOutcome out = analyze(spec);
    CHECK(out.all_claims_pass);
  }
}

TEST_CASE("report content spot checks") {
  HypersurfaceSpec dq = parse_spec(slurp(fs::path(CRGEO_FIXTURE_DIR) / "deg_quadric.crs"));
  json rep = analyze(dq).report;
  CHECK(rep["points"][0]["levi"]["rank"] == 1);
  CHECK(rep["points"][0]["multitype"]["prefix"] == "(1,2,>4)");

  HypersurfaceSpec d5 = parse_spec(slurp(fs::path(CRGEO_FIXTURE_DIR) / "dangelo.crs"));
  json rep5 = analyze(d5).report;
  CHECK(rep5["points"].size() == 3);
  CHECK(rep5["points"][0]["multitype"]["prefix"] == "(1,4,4)");
  CHECK(rep5["points"][0]["type"]["verdict"] == "type4");
  CHECK(rep5["points"][1]["levi"]["rank"] == 1);
  CHECK(rep5["points"][1]["type"]["verdict"] == "type>4");
  CHECK(rep5["points"][1]["quartic_normal_form"]["phi4"] == "0");

  HypersurfaceSpec u2 = parse_spec(slurp(fs::path(CRGEO_FIXTURE_DIR) / "u2_type4.crs"));
  json repu = analyze(u2).report;
  CHECK(repu["points"][0]["multitype"]["prefix"] == "(1,4)");
  CHECK(repu["points"][0]["tangent_space_S"]["dim"] == 0);

  // text rendering exists and mentions the verdicts
  std::string text = render_text(repu);
  CHECK(text.find("type4") != std::string::npos);
  CHECK(text.find("multitype (1,4)") != std::string::npos);
}
