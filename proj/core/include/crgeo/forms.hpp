#ifndef CRGEO_FORMS_HPP
#define CRGEO_FORMS_HPP

#include <vector>

#include "crgeo/exact_matrix.hpp"
#include "crgeo/fields.hpp"

namespace crgeo {

/// One-form on the chart, coefficients over the ambient co-basis
/// [dw, d(conj w), dz_1.., d(conj z_1)..].
class OneForm {
public:
  OneForm() : nz_(0) {}
  OneForm(int nz, int ord);

  int nz() const { return nz_; }
  const Jet& comp(int a) const { return comp_[a]; }
  Jet& comp(int a) { return comp_[a]; }

  OneForm operator+(const OneForm& o) const;
  OneForm operator-(const OneForm& o) const;
  OneForm scaled(const Jet& f) const;
  OneForm scaled(const GaussianRational& s) const;
  OneForm conj() const;

  /// <omega, X>, bilinear over chart jets.
  Jet pair(const VectorField& x) const;

private:
  int nz_;
  std::vector<Jet> comp_;
};

/// Two-form stored as the full antisymmetric coefficient matrix.
class TwoForm {
public:
  TwoForm() : nz_(0) {}
  TwoForm(int nz, int ord);

  int nz() const { return nz_; }
  const Jet& comp(int a, int b) const { return comp_[a * dim() + b]; }
  void set(int a, int b, const Jet& v); // maintains antisymmetry
  int dim() const { return VectorField::dir_count(nz_); }

  Jet eval(const VectorField& x, const VectorField& y) const;

private:
  std::vector<Jet> comp_;
  int nz_;
};

/// Ambient partial of a chart function (d/dw = i d/du, etc).
Jet ambient_partial(const Jet& f, int dir, int nz);

/// Exterior derivative of a chart function.
OneForm exterior_d(const Jet& f, int nz);
/// Exterior derivative of a one-form.
TwoForm exterior_d(const OneForm& w);
/// d of a two-form, returned as the list of strictly increasing triple
/// coefficients (only used to verify d after d vanishes).
std::vector<Jet> exterior_d3(const TwoForm& w);

/// Contractions.
Jet contract(const OneForm& w, const VectorField& x);
OneForm contract(const TwoForm& w, const VectorField& x);

/// Cartan-formula Lie derivative of a one-form along a tangent field:
/// T_L w = i_L(dw) + d(i_L w).
OneForm lie_derivative(const VectorField& l, const OneForm& w);

/// Oriented contact form used by all tensor computations. Sign convention is
/// pinned so that the quadric 2 Re w = |z_1|^2 has Levi value +1 along e_1.
OneForm oriented_theta(const Hypersurface& h);

/// i * d_hol(rho) for the normalized defining function rho =
/// -(w + conj w) + phi (matches the raw contact-form convention).
OneForm contact_form(const Hypersurface& h);

/// <theta_o, [X, Y]> as a chart jet; X, Y must be tangent.
Jet levi_pairing(const Hypersurface& h, const VectorField& x, const VectorField& y);

/// Levi matrix function G[j][k] = i <theta_o, [L_j, conj L_k]> (Hermitian at
/// the center) and its exact value at the center.
std::vector<std::vector<Jet>> levi_matrix_fn(const Hypersurface& h);
ExactMatrix levi_matrix0(const Hypersurface& h);

/// Basis of the Levi kernel K^10 at the center, as z-coordinate vectors.
std::vector<std::vector<GaussianRational>> levi_kernel_basis(const Hypersurface& h);

} // namespace crgeo

#endif
