#ifndef CRGEO_JET_HPP
#define CRGEO_JET_HPP

#include "crgeo/poly.hpp"

namespace crgeo {

/// Polynomial jet at the origin with an explicit validity order: `p` agrees
/// with the represented function modulo terms of total degree > ord.
/// Arithmetic tracks validity (products take the min, derivatives drop one),
/// so an under-resolved evaluation trips an assertion instead of silently
/// returning a wrong exact value.
class Jet {
public:
  Jet() : ord_(-1) {}
  Jet(Poly p, int ord) : p_(p.truncate(ord)), ord_(ord) {}

  static Jet constant(int nz, const GaussianRational& c, int ord) {
    return Jet(Poly::constant(nz, c), ord);
  }
  static Jet zero(int nz, int ord) { return Jet(Poly(nz), ord); }

  const Poly& poly() const { return p_; }
  int order() const { return ord_; }
  int nz() const { return p_.nz(); }
  bool is_zero() const { return p_.is_zero(); }

  /// Value at the center; requires a meaningful constant term (ord >= 0).
  GaussianRational value0() const;

  Jet operator-() const { return Jet(-p_, ord_); }
  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator*(const GaussianRational& s) const { return Jet(p_ * s, ord_); }
  Jet& operator+=(const Jet& o) { *this = *this + o; return *this; }
  Jet& operator-=(const Jet& o) { *this = *this - o; return *this; }

  Jet conj() const { return Jet(p_.conj(), ord_); }
  Jet wirtinger(VarId v) const { return Jet(p_.wirtinger(v), ord_ - 1); }

  /// Ambient coordinate derivatives of a chart function f(z, conj z, u),
  /// extended off the hypersurface independently of Re w:
  /// d/dw = i d/du, d/d(conj w) = -i d/du.
  Jet d_ambient_w() const { return wirtinger(VarId::u()) * GaussianRational::i(); }
  Jet d_ambient_wb() const { return wirtinger(VarId::u()) * (-GaussianRational::i()); }

  /// Multiplicative inverse; requires a unit (nonzero value at 0). Geometric
  /// series truncated at the jet order.
  Jet inverse() const;

  Jet truncated(int order) const { return Jet(p_, std::min(ord_, order)); }

  bool same_jet(const Jet& o) const {
    int m = std::min(ord_, o.ord_);
    return p_.truncate(m) == o.p_.truncate(m);
  }

private:
  Poly p_;
  int ord_;
};

inline Jet operator*(const GaussianRational& s, const Jet& j) { return j * s; }

} // namespace crgeo

#endif
