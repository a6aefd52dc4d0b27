#ifndef CRGEO_RATIONAL_EXPR_HPP
#define CRGEO_RATIONAL_EXPR_HPP

#include "crgeo/jet.hpp"
#include "crgeo/poly.hpp"

namespace crgeo {

/// num/den with den a unit at the expansion center (nonzero constant term).
/// This is the exact carrier for rational coefficients such as
/// phi_v / (1 - i phi_u); geometry code collapses it to a Jet at the chart
/// order. No gcd reduction is attempted (den piles up as unit powers, which
/// stays small at jet scale).
class RationalExpr {
public:
  RationalExpr() : num_(0), den_(Poly::constant(0, GaussianRational(1))) {}
  explicit RationalExpr(Poly num)
      : num_(std::move(num)), den_(Poly::constant(num_.nz(), GaussianRational(1))) {}
  RationalExpr(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int nz() const { return num_.nz(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;

  RationalExpr operator-() const { return RationalExpr(-num_, den_); }
  RationalExpr operator+(const RationalExpr& o) const;
  RationalExpr operator-(const RationalExpr& o) const;
  RationalExpr operator*(const RationalExpr& o) const;
  /// Division by a unit-at-center expression.
  RationalExpr operator/(const RationalExpr& o) const;

  bool equals(const RationalExpr& o) const; // cross multiplication, exact

  RationalExpr conj() const { return RationalExpr(num_.conj(), den_.conj()); }
  /// Quotient rule.
  RationalExpr wirtinger(VarId v) const;

  /// Exact evaluation; requires den(point) != 0.
  GaussianRational eval(const std::vector<GaussianRational>& vals) const;

  /// Collapse to a truncated jet at the center via geometric-series division.
  Jet jet(int order) const;

  std::string str() const;

private:
  Poly num_, den_;
};

} // namespace crgeo

#endif
