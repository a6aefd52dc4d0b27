#include "crgeo/jet.hpp"

#include <stdexcept>

namespace crgeo {

GaussianRational Jet::value0() const {
  if (ord_ < 0) throw std::logic_error("Jet::value0: jet order exhausted (raise the chart order)");
  return p_.constant_term();
}

Jet Jet::operator+(const Jet& o) const {
  int m = std::min(ord_, o.ord_);
  return Jet(p_.truncate(m) + o.p_.truncate(m), m);
}

Jet Jet::operator-(const Jet& o) const {
  int m = std::min(ord_, o.ord_);
  return Jet(p_.truncate(m) - o.p_.truncate(m), m);
}

Jet Jet::operator*(const Jet& o) const {
  int m = std::min(ord_, o.ord_);
  if (m < 0) return Jet(Poly(std::max(nz(), o.nz())), m);
  return Jet((p_ * o.p_).truncate(m), m);
}

Jet Jet::inverse() const {
  GaussianRational c = value0();
  if (c.is_zero()) throw std::domain_error("Jet::inverse: not a unit at the center");
  // 1/(c(1+s)) = (1/c) sum (-s)^k, s = p/c - 1, s(0) = 0.
  GaussianRational cinv = c.inverse();
  Poly s = (p_ * cinv) - Poly::constant(p_.nz(), GaussianRational(1));
  Poly acc = Poly::constant(p_.nz(), GaussianRational(1));
  Poly pow = Poly::constant(p_.nz(), GaussianRational(1));
  for (int k = 1; k <= ord_; ++k) {
    pow = (pow * s).truncate(ord_);
    if (pow.is_zero()) break;
    if (k % 2) acc -= pow;
    else acc += pow;
  }
  return Jet(acc * cinv, ord_);
}

} // namespace crgeo
