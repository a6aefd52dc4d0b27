#include "crgeo/fields.hpp"

#include <stdexcept>

namespace crgeo {

TangentVec TangentVec::hol_vec(std::vector<GaussianRational> a) {
  TangentVec v;
  v.anti.assign(a.size(), GaussianRational());
  v.hol = std::move(a);
  return v;
}

TangentVec TangentVec::anti_vec(std::vector<GaussianRational> b) {
  TangentVec v;
  v.hol.assign(b.size(), GaussianRational());
  v.anti = std::move(b);
  return v;
}

TangentVec TangentVec::conj() const {
  TangentVec r;
  r.hol.reserve(anti.size());
  r.anti.reserve(hol.size());
  for (const auto& x : anti) r.hol.push_back(x.conj());
  for (const auto& x : hol) r.anti.push_back(x.conj());
  r.t = t.conj();
  return r;
}

TangentVec TangentVec::operator+(const TangentVec& o) const {
  TangentVec r = *this;
  if (r.hol.size() < o.hol.size()) r.hol.resize(o.hol.size());
  if (r.anti.size() < o.anti.size()) r.anti.resize(o.anti.size());
  for (size_t j = 0; j < o.hol.size(); ++j) r.hol[j] += o.hol[j];
  for (size_t j = 0; j < o.anti.size(); ++j) r.anti[j] += o.anti[j];
  r.t += o.t;
  return r;
}

TangentVec TangentVec::operator*(const GaussianRational& s) const {
  TangentVec r = *this;
  for (auto& x : r.hol) x *= s;
  for (auto& x : r.anti) x *= s;
  r.t *= s;
  return r;
}

bool TangentVec::is_zero() const {
  if (!t.is_zero()) return false;
  for (const auto& x : hol)
    if (!x.is_zero()) return false;
  for (const auto& x : anti)
    if (!x.is_zero()) return false;
  return true;
}

bool TangentVec::is_hol() const {
  if (!t.is_zero()) return false;
  for (const auto& x : anti)
    if (!x.is_zero()) return false;
  return true;
}

bool TangentVec::is_anti() const {
  if (!t.is_zero()) return false;
  for (const auto& x : hol)
    if (!x.is_zero()) return false;
  return true;
}

bool TangentVec::is_real() const {
  if (!t.is_real()) return false;
  if (hol.size() != anti.size()) return false;
  for (size_t j = 0; j < hol.size(); ++j)
    if (hol[j] != anti[j].conj()) return false;
  return true;
}

VectorField::VectorField(int nz, int ord) : nz_(nz) {
  comp_.assign(dir_count(nz), Jet::zero(nz, ord));
}

VectorField VectorField::operator+(const VectorField& o) const {
  VectorField r = *this;
  for (size_t a = 0; a < comp_.size(); ++a) r.comp_[a] = r.comp_[a] + o.comp_[a];
  return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
  VectorField r = *this;
  for (size_t a = 0; a < comp_.size(); ++a) r.comp_[a] = r.comp_[a] - o.comp_[a];
  return r;
}

VectorField VectorField::operator-() const {
  VectorField r = *this;
  for (auto& c : r.comp_) c = -c;
  return r;
}

VectorField VectorField::scaled(const Jet& f) const {
  VectorField r = *this;
  for (auto& c : r.comp_) c = c * f;
  return r;
}

VectorField VectorField::scaled(const GaussianRational& s) const {
  VectorField r = *this;
  for (auto& c : r.comp_) c = c * s;
  return r;
}

VectorField VectorField::conj() const {
  // conjugation swaps d/dw <-> d/d(conj w) and d/dz_j <-> d/d(conj z_j)
  VectorField r(nz_, comp_[0].order());
  r.comp_[dw()] = comp_[dwb()].conj();
  r.comp_[dwb()] = comp_[dw()].conj();
  for (int j = 0; j < nz_; ++j) {
    r.comp_[dz(j)] = comp_[dzb(j)].conj();
    r.comp_[dzb(j)] = comp_[dz(j)].conj();
  }
  return r;
}

std::vector<GaussianRational> VectorField::value0() const {
  std::vector<GaussianRational> v;
  v.reserve(comp_.size());
  for (const auto& c : comp_) v.push_back(c.value0());
  return v;
}

bool VectorField::vanishes_at0() const {
  for (const auto& c : comp_)
    if (!c.value0().is_zero()) return false;
  return true;
}

Jet VectorField::apply(const Jet& f) const {
  Jet fu = f.wirtinger(VarId::u());
  Jet acc = (comp_[dw()] * GaussianRational::i() - comp_[dwb()] * GaussianRational::i()) * fu;
  for (int j = 0; j < nz_; ++j) {
    acc += comp_[dz(j)] * f.wirtinger(VarId::z(j));
    acc += comp_[dzb(j)] * f.wirtinger(VarId::zb(j));
  }
  return acc;
}

VectorField VectorField::bracket(const VectorField& x, const VectorField& y) {
  if (x.nz_ != y.nz_) throw std::invalid_argument("VectorField::bracket: variable count mismatch");
  VectorField r(x.nz_, std::min(x.comp_[0].order(), y.comp_[0].order()) - 1);
  for (size_t a = 0; a < r.comp_.size(); ++a)
    r.comp_[a] = x.apply(y.comp_[a]) - y.apply(x.comp_[a]);
  return r;
}

VectorField frame_field(const Hypersurface& h, const std::vector<GaussianRational>& v) {
  int nz = h.nz();
  if (static_cast<int>(v.size()) != nz)
    throw std::invalid_argument("frame_field: direction must be a z vector (no w component)");
  int ord = h.order() - 1;
  VectorField L(nz, ord);
  Jet phi_v = Jet::zero(nz, ord);
  for (int j = 0; j < nz; ++j) {
    if (v[j].is_zero()) continue;
    L.comp(VectorField::dz(j)) = Jet::constant(nz, v[j], ord);
    phi_v += h.phi_z(j) * v[j];
  }
  L.comp(VectorField::dw()) = phi_v * h.unit_inv();
  return L;
}

VectorField frame_field_basis(const Hypersurface& h, int j) {
  std::vector<GaussianRational> v(h.nz());
  v[j] = GaussianRational(1);
  return frame_field(h, v);
}

VectorField transversal_field(const Hypersurface& h) {
  int nz = h.nz();
  int ord = h.order() - 1;
  VectorField T(nz, ord);
  Jet i_jet = Jet::constant(nz, GaussianRational::i(), ord);
  T.comp(VectorField::dw()) = i_jet * h.unit_inv();
  T.comp(VectorField::dwb()) = -(i_jet * h.unit_inv().conj());
  return T;
}

VectorField extension_field(const Hypersurface& h, const TangentVec& v) {
  int nz = h.nz();
  std::vector<GaussianRational> hol = v.hol, anti_c = v.anti;
  hol.resize(nz);
  anti_c.resize(nz);
  std::vector<GaussianRational> anti_dir(nz);
  for (int j = 0; j < nz; ++j) anti_dir[j] = anti_c[j].conj();

  VectorField out = frame_field(h, hol);
  out = out + frame_field(h, anti_dir).conj();
  if (!v.t.is_zero()) out = out + transversal_field(h).scaled(v.t);
  return out;
}

Jet tangency_defect(const Hypersurface& h, const VectorField& x) {
  Jet acc = x.comp(VectorField::dw()) * h.rho_w() + x.comp(VectorField::dwb()) * h.rho_wb();
  for (int j = 0; j < h.nz(); ++j) {
    acc += x.comp(VectorField::dz(j)) * h.rho_z(j);
    acc += x.comp(x.dzb(j)) * h.rho_zb(j);
  }
  return acc;
}

bool is_tangent(const Hypersurface& h, const VectorField& x) {
  return tangency_defect(h, x).is_zero();
}

} // namespace crgeo
