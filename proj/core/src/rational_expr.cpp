#include "crgeo/rational_expr.hpp"

#include <stdexcept>

namespace crgeo {

RationalExpr::RationalExpr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.constant_term().is_zero())
    throw std::invalid_argument("RationalExpr: denominator is not a unit at the center");
  if (den_.nz() != num_.nz()) {
    int nn = std::max(den_.nz(), num_.nz());
    num_ = num_.with_nz(nn);
    den_ = den_.with_nz(nn);
  }
  // fold constant denominators into the numerator
  if (den_.degree() == 0) {
    num_ = num_ * den_.constant_term().inverse();
    den_ = Poly::constant(num_.nz(), GaussianRational(1));
  }
}

bool RationalExpr::is_polynomial() const { return den_.degree() == 0; }

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
  if (is_polynomial() && o.is_polynomial()) return RationalExpr(num_ + o.num_);
  return RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator-(const RationalExpr& o) const { return *this + (-o); }

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
  return RationalExpr(num_ * o.num_, den_ * o.den_);
}

RationalExpr RationalExpr::operator/(const RationalExpr& o) const {
  if (o.num_.constant_term().is_zero())
    throw std::domain_error("RationalExpr: division by a non-unit");
  return RationalExpr(num_ * o.den_, den_ * o.num_);
}

bool RationalExpr::equals(const RationalExpr& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

RationalExpr RationalExpr::wirtinger(VarId v) const {
  if (is_polynomial()) return RationalExpr(num_.wirtinger(v));
  Poly dn = num_.wirtinger(v), dd = den_.wirtinger(v);
  return RationalExpr(dn * den_ - num_ * dd, den_ * den_);
}

GaussianRational RationalExpr::eval(const std::vector<GaussianRational>& vals) const {
  GaussianRational d = den_.eval(vals);
  if (d.is_zero()) throw std::domain_error("RationalExpr::eval: denominator vanishes at the point");
  return num_.eval(vals) / d;
}

Jet RationalExpr::jet(int order) const {
  Jet n(num_, order);
  if (is_polynomial()) return n;
  return n * Jet(den_, order).inverse();
}

std::string RationalExpr::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace crgeo
