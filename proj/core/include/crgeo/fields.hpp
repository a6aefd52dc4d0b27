#ifndef CRGEO_FIELDS_HPP
#define CRGEO_FIELDS_HPP

#include <vector>

#include "crgeo/hypersurface.hpp"
#include "crgeo/jet.hpp"

namespace crgeo {

/// Complexified tangent vector at the chart center, in the frame basis:
/// hol[j] along L_j(0), anti[j] along conj(L_j)(0), t along the real
/// transversal direction T(0).
struct TangentVec {
  std::vector<GaussianRational> hol;
  std::vector<GaussianRational> anti;
  GaussianRational t;

  static TangentVec zero(int nz) { return {std::vector<GaussianRational>(nz), std::vector<GaussianRational>(nz), {}}; }
  static TangentVec hol_vec(std::vector<GaussianRational> a);
  static TangentVec anti_vec(std::vector<GaussianRational> b);
  static TangentVec transversal() { TangentVec v = zero(0); v.t = GaussianRational(1); return v; }

  TangentVec conj() const;
  TangentVec operator+(const TangentVec& o) const;
  TangentVec operator*(const GaussianRational& s) const;
  bool is_zero() const;
  bool is_hol() const;
  bool is_anti() const;
  bool in_CH() const { return t.is_zero(); }
  bool is_real() const; // fixed by conjugation
};

/// Vector field in ambient directions with chart-jet coefficients,
/// restricted to the hypersurface. Component layout:
/// [d/dw, d/d(conj w), d/dz_1.., d/d(conj z_1)..].
class VectorField {
public:
  VectorField() : nz_(0) {}
  VectorField(int nz, int ord);

  static int dw() { return 0; }
  static int dwb() { return 1; }
  static int dz(int j) { return 2 + j; }
  int dzb(int j) const { return 2 + nz_ + j; }
  static int dir_count(int nz) { return 2 + 2 * nz; }

  int nz() const { return nz_; }
  const Jet& comp(int a) const { return comp_[a]; }
  Jet& comp(int a) { return comp_[a]; }

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator-() const;
  VectorField scaled(const Jet& f) const;
  VectorField scaled(const GaussianRational& s) const;
  VectorField conj() const;

  /// Values of the components at the center.
  std::vector<GaussianRational> value0() const;
  bool vanishes_at0() const;

  /// Derivative of a chart function along the field. Chart functions extend
  /// off M independently of Re w, so d/dw acts as i d/du and d/d(conj w) as
  /// -i d/du.
  Jet apply(const Jet& f) const;

  /// Lie bracket [x, y].
  static VectorField bracket(const VectorField& x, const VectorField& y);

private:
  int nz_;
  std::vector<Jet> comp_;
};

/// H^10 frame field L_v = d_v + (phi_v/(1 - i phi_u)) d_w for a constant
/// (1,0) direction v (no w component).
VectorField frame_field(const Hypersurface& h, const std::vector<GaussianRational>& v);
VectorField frame_field_basis(const Hypersurface& h, int j);

/// Real transversal tangent field T = i/(1-i phi_u) d_w - i/(1+i phi_u) d_wb.
VectorField transversal_field(const Hypersurface& h);

/// Canonical extension of a tangent vector: frame fields, their conjugates
/// and T combined with constant coefficients.
VectorField extension_field(const Hypersurface& h, const TangentVec& v);

/// X(rho) as a chart jet; identically zero (at jet order) iff tangent.
Jet tangency_defect(const Hypersurface& h, const VectorField& x);
bool is_tangent(const Hypersurface& h, const VectorField& x);

} // namespace crgeo

#endif
