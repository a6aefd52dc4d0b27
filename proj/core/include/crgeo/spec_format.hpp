#ifndef CRGEO_SPEC_FORMAT_HPP
#define CRGEO_SPEC_FORMAT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "crgeo/hypersurface.hpp"
#include "crgeo/weights.hpp"

namespace crgeo {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), col(col_) {}
};

/// Parsed hypersurface description (the .crs file format):
///   # comment
///   name <label>
///   n <ambient dimension>
///   rho <expression in w, z1..z{n-1}, conj(), Re(), Im(), i, rationals>
///   point <z1> .. <z{n-1}> <w>      (complex constants, space separated)
///   weights <w1> .. <wn>            (rationals or inf)
///   order <jet order>
struct HypersurfaceSpec {
  std::string name;
  int n = 2;
  Poly rho;
  std::vector<AmbientPoint> points;
  std::vector<WeightVector> weights;
  int order = 6;
};

/// Expression parser over +, -, *, ^ with rational literals (division is
/// allowed by constant divisors only), the imaginary unit i, variables
/// w and z1..z{n-1}, and conj(.), Re(.), Im(.). Errors carry line:column.
Poly parse_expression(const std::string& text, int nz);

/// Constant-only expression (used for point coordinates).
GaussianRational parse_constant(const std::string& text);

/// Full file parse; validates that rho is real and that every declared point
/// lies on the hypersurface.
HypersurfaceSpec parse_spec(const std::string& text);

/// Canonical rendering of a spec (parses back to the same content).
std::string print_spec(const HypersurfaceSpec& spec);

} // namespace crgeo

#endif
