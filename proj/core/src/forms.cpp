#include "crgeo/forms.hpp"

#include <stdexcept>

namespace crgeo {

OneForm::OneForm(int nz, int ord) : nz_(nz) {
  comp_.assign(VectorField::dir_count(nz), Jet::zero(nz, ord));
}

OneForm OneForm::operator+(const OneForm& o) const {
  OneForm r = *this;
  for (size_t a = 0; a < comp_.size(); ++a) r.comp_[a] = r.comp_[a] + o.comp_[a];
  return r;
}

OneForm OneForm::operator-(const OneForm& o) const {
  OneForm r = *this;
  for (size_t a = 0; a < comp_.size(); ++a) r.comp_[a] = r.comp_[a] - o.comp_[a];
  return r;
}

OneForm OneForm::scaled(const Jet& f) const {
  OneForm r = *this;
  for (auto& c : r.comp_) c = c * f;
  return r;
}

OneForm OneForm::scaled(const GaussianRational& s) const {
  OneForm r = *this;
  for (auto& c : r.comp_) c = c * s;
  return r;
}

OneForm OneForm::conj() const {
  OneForm r(nz_, comp_[0].order());
  r.comp_[0] = comp_[1].conj();
  r.comp_[1] = comp_[0].conj();
  for (int j = 0; j < nz_; ++j) {
    r.comp_[2 + j] = comp_[2 + nz_ + j].conj();
    r.comp_[2 + nz_ + j] = comp_[2 + j].conj();
  }
  return r;
}

Jet OneForm::pair(const VectorField& x) const {
  Jet acc = comp_[0] * x.comp(0);
  for (int a = 1; a < VectorField::dir_count(nz_); ++a) acc += comp_[a] * x.comp(a);
  return acc;
}

TwoForm::TwoForm(int nz, int ord) : nz_(nz) {
  int d = VectorField::dir_count(nz);
  comp_.assign(static_cast<size_t>(d) * d, Jet::zero(nz, ord));
}

void TwoForm::set(int a, int b, const Jet& v) {
  comp_[a * dim() + b] = v;
  comp_[b * dim() + a] = -v;
}

Jet TwoForm::eval(const VectorField& x, const VectorField& y) const {
  Jet acc = Jet::zero(nz_, x.comp(0).order());
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) {
      const Jet& c = comp(a, b);
      if (c.is_zero()) continue;
      acc += c * x.comp(a) * y.comp(b);
    }
  return acc;
}

Jet ambient_partial(const Jet& f, int dir, int nz) {
  if (dir == 0) return f.d_ambient_w();
  if (dir == 1) return f.d_ambient_wb();
  if (dir < 2 + nz) return f.wirtinger(VarId::z(dir - 2));
  return f.wirtinger(VarId::zb(dir - 2 - nz));
}

OneForm exterior_d(const Jet& f, int nz) {
  OneForm w(nz, f.order() - 1);
  for (int a = 0; a < VectorField::dir_count(nz); ++a) w.comp(a) = ambient_partial(f, a, nz);
  return w;
}

TwoForm exterior_d(const OneForm& w) {
  int nz = w.nz();
  int d = VectorField::dir_count(nz);
  TwoForm r(nz, w.comp(0).order() - 1);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      // (dw)_{ab} = d_a w_b - d_b w_a
      Jet v = ambient_partial(w.comp(b), a, nz) - ambient_partial(w.comp(a), b, nz);
      r.set(a, b, v);
    }
  return r;
}

std::vector<Jet> exterior_d3(const TwoForm& w) {
  int nz = w.nz();
  int d = VectorField::dir_count(nz);
  std::vector<Jet> out;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = b + 1; c < d; ++c) {
        Jet v = ambient_partial(w.comp(b, c), a, nz) - ambient_partial(w.comp(a, c), b, nz) +
                ambient_partial(w.comp(a, b), c, nz);
        out.push_back(v);
      }
  return out;
}

Jet contract(const OneForm& w, const VectorField& x) { return w.pair(x); }

OneForm contract(const TwoForm& w, const VectorField& x) {
  int nz = w.nz();
  OneForm r(nz, x.comp(0).order());
  for (int b = 0; b < w.dim(); ++b) {
    Jet acc = Jet::zero(nz, x.comp(0).order());
    for (int a = 0; a < w.dim(); ++a) {
      const Jet& c = w.comp(a, b);
      if (!c.is_zero()) acc += x.comp(a) * c;
    }
    r.comp(b) = acc;
  }
  return r;
}

OneForm lie_derivative(const VectorField& l, const OneForm& w) {
  OneForm a = contract(exterior_d(w), l);
  OneForm b = exterior_d(contract(w, l), w.nz());
  return a + b;
}

OneForm oriented_theta(const Hypersurface& h) {
  // theta_o = -i d_hol rho for rho = -(w + conj w) + phi:
  //   theta_o = i(1 - i phi_u) dw - i phi_z dz
  int nz = h.nz();
  int ord = h.order() - 1;
  OneForm th(nz, ord);
  GaussianRational I = GaussianRational::i();
  Jet one = Jet::constant(nz, GaussianRational(1), ord);
  th.comp(0) = (one - h.phi_u() * I) * I;
  for (int j = 0; j < nz; ++j) th.comp(2 + j) = -(h.phi_z(j) * I);
  return th;
}

OneForm contact_form(const Hypersurface& h) {
  // i d_hol rho, the raw convention: exactly -oriented_theta
  OneForm th = oriented_theta(h);
  return th.scaled(GaussianRational(-1));
}

Jet levi_pairing(const Hypersurface& h, const VectorField& x, const VectorField& y) {
  if (!is_tangent(h, x) || !is_tangent(h, y))
    throw std::invalid_argument("levi_pairing: fields must be tangent to the hypersurface");
  return oriented_theta(h).pair(VectorField::bracket(x, y));
}

std::vector<std::vector<Jet>> levi_matrix_fn(const Hypersurface& h) {
  int nz = h.nz();
  OneForm th = oriented_theta(h);
  std::vector<VectorField> L;
  L.reserve(nz);
  for (int j = 0; j < nz; ++j) L.push_back(frame_field_basis(h, j));
  std::vector<std::vector<Jet>> g(nz, std::vector<Jet>(nz));
  for (int j = 0; j < nz; ++j)
    for (int k = 0; k < nz; ++k)
      g[j][k] = th.pair(VectorField::bracket(L[j], L[k].conj())) * GaussianRational::i();
  return g;
}

ExactMatrix levi_matrix0(const Hypersurface& h) {
  // at the center the bracket pairing reduces to the mixed quadratic
  // coefficients of phi (the bracket route stays available through
  // levi_matrix_fn and the two are cross-checked in the test suite)
  int nz = h.nz();
  ExactMatrix m(nz, nz);
  const Poly& phi = h.phi().poly();
  for (int j = 0; j < nz; ++j)
    for (int k = 0; k < nz; ++k) {
      Mono mono(VarId::slot_count(nz), 0);
      mono[VarId::z(j).slot(nz)] += 1;
      mono[VarId::zb(k).slot(nz)] += 1;
      m.at(j, k) = phi.coeff(mono);
    }
  return m;
}

std::vector<std::vector<GaussianRational>> levi_kernel_basis(const Hypersurface& h) {
  // v in K^10  iff  sum_j v_j G[j][k](0) = 0 for all k
  return levi_matrix0(h).transpose().nullspace();
}

} // namespace crgeo
