#include "crgeo/hypersurface.hpp"

#include <sstream>
#include <stdexcept>

#include "crgeo/exact_matrix.hpp"

namespace crgeo {

std::string AmbientPoint::str() const {
  std::ostringstream os;
  os << "(";
  for (const auto& zj : z) os << zj.str() << ",";
  os << w.str() << ")";
  return os.str();
}

namespace {

std::vector<std::optional<Poly>> no_images(int nz) {
  return std::vector<std::optional<Poly>>(VarId::slot_count(nz));
}

// u -> i (w - conj w)
Poly ambientize(const Poly& chart) {
  int nz = chart.nz();
  auto im = no_images(nz);
  im[VarId::u().slot(nz)] =
      (Poly::var(nz, VarId::w()) - Poly::var(nz, VarId::wb())) * GaussianRational::i();
  return chart.substitute(im);
}

} // namespace

CoordChange CoordChange::identity(int nz) {
  CoordChange c;
  c.w_expr = Poly::var(nz, VarId::w());
  c.z_exprs.reserve(nz);
  for (int j = 0; j < nz; ++j) c.z_exprs.push_back(Poly::var(nz, VarId::z(j)));
  return c;
}

bool CoordChange::is_identity() const {
  int nz = static_cast<int>(z_exprs.size());
  return *this == identity(nz);
}

Poly CoordChange::apply(const Poly& p, int trunc_order) const {
  int nz = static_cast<int>(z_exprs.size());
  if (p.depends_on(VarId::u())) {
    // chart polynomials must be ambientized by the caller first
    throw std::invalid_argument("CoordChange::apply: expected an ambient polynomial (no u)");
  }
  auto im = no_images(nz);
  im[VarId::w().slot(nz)] = w_expr;
  im[VarId::wb().slot(nz)] = w_expr.conj();
  for (int j = 0; j < nz; ++j) {
    im[VarId::z(j).slot(nz)] = z_exprs[j];
    im[VarId::zb(j).slot(nz)] = z_exprs[j].conj();
  }
  return p.with_nz(nz).substitute(im, trunc_order);
}

CoordChange CoordChange::then(const CoordChange& inner, int trunc_order) const {
  int nz = static_cast<int>(z_exprs.size());
  auto im = no_images(nz);
  im[VarId::w().slot(nz)] = inner.w_expr;
  for (int j = 0; j < nz; ++j) im[VarId::z(j).slot(nz)] = inner.z_exprs[j];
  CoordChange out;
  out.w_expr = w_expr.substitute(im, trunc_order);
  out.z_exprs.reserve(nz);
  for (int j = 0; j < nz; ++j) out.z_exprs.push_back(z_exprs[j].substitute(im, trunc_order));
  return out;
}

std::vector<std::vector<GaussianRational>> CoordChange::linear_part() const {
  int nz = static_cast<int>(z_exprs.size());
  int m = 1 + nz;
  std::vector<std::vector<GaussianRational>> a(m, std::vector<GaussianRational>(m));
  auto fill_row = [&](int row, const Poly& e) {
    Poly lin = e.part_of_degree(1);
    for (const auto& [mono, c] : lin.terms()) {
      for (int s = 0; s < VarId::slot_count(nz); ++s) {
        if (mono[s] == 0) continue;
        VarId v = VarId::from_slot(s, nz);
        if (v.kind == VarId::W) a[row][0] = c;
        else if (v.kind == VarId::Z) a[row][1 + v.index] = c;
        else throw std::logic_error("CoordChange: non-holomorphic linear part");
      }
    }
  };
  fill_row(0, w_expr);
  for (int j = 0; j < nz; ++j) fill_row(1 + j, z_exprs[j]);
  return a;
}

CoordChange CoordChange::inverse_truncated(int order) const {
  int nz = static_cast<int>(z_exprs.size());
  int m = 1 + nz;
  // constant terms must vanish
  for (const Poly* e : [&] {
         std::vector<const Poly*> v{&w_expr};
         for (const auto& z : z_exprs) v.push_back(&z);
         return v;
       }())
    if (!e->constant_term().is_zero())
      throw std::invalid_argument("CoordChange::inverse_truncated: change must fix the origin");

  ExactMatrix L(m, m);
  auto lp = linear_part();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) L.at(i, j) = lp[i][j];
  if (!L.invertible())
    throw std::invalid_argument("CoordChange::inverse_truncated: singular linear part");

  // Linear inverse as polynomial stack in (w, z).
  ExactMatrix Linv_cols(m, m);
  for (int j = 0; j < m; ++j) {
    std::vector<GaussianRational> e(m);
    e[j] = GaussianRational(1);
    auto col = L.solve(e);
    for (int i = 0; i < m; ++i) Linv_cols.at(i, j) = col[i];
  }
  auto hol_var = [&](int idx) {
    return idx == 0 ? Poly::var(nz, VarId::w()) : Poly::var(nz, VarId::z(idx - 1));
  };
  auto stack_of = [&](const ExactMatrix& mat) {
    std::vector<Poly> st(m, Poly(nz));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (!mat.at(i, j).is_zero()) st[i] += hol_var(j) * mat.at(i, j);
    return st;
  };
  std::vector<Poly> linv = stack_of(Linv_cols);

  std::vector<Poly> fstack{w_expr};
  for (const auto& z : z_exprs) fstack.push_back(z);

  auto substitute_stack = [&](const Poly& p, const std::vector<Poly>& g) {
    auto im = no_images(nz);
    im[VarId::w().slot(nz)] = g[0];
    for (int j = 0; j < nz; ++j) im[VarId::z(j).slot(nz)] = g[1 + j];
    return p.substitute(im, order);
  };

  // g_{k+1} = Linv(x - N(g_k)), N = F - L
  std::vector<Poly> nonlin(m);
  for (int i = 0; i < m; ++i) nonlin[i] = fstack[i] - fstack[i].part_of_degree(1);
  std::vector<Poly> g = linv;
  for (int it = 0; it < order; ++it) {
    std::vector<Poly> next(m);
    std::vector<Poly> rhs(m);
    for (int j = 0; j < m; ++j) rhs[j] = hol_var(j) - substitute_stack(nonlin[j], g);
    for (int i = 0; i < m; ++i) {
      next[i] = Poly(nz);
      for (int j = 0; j < m; ++j)
        if (!Linv_cols.at(i, j).is_zero()) next[i] += rhs[j] * Linv_cols.at(i, j);
      next[i] = next[i].truncate(order);
    }
    if (next == g) break;
    g = next;
  }

  CoordChange inv;
  inv.w_expr = g[0];
  inv.z_exprs.assign(g.begin() + 1, g.end());
  return inv;
}

namespace {

// Solve -(w + conj w) + R = 0 for s := w + conj w as phi(z, conj z, u),
// u = i(w - conj w). Reuses the W slot for s during the iteration.
Jet solve_graph(const Poly& rho_normalized, int nz, int order, bool* exact_out, Poly* phi_full) {
  Poly R = rho_normalized + Poly::var(nz, VarId::w()) + Poly::var(nz, VarId::wb());
  auto im = no_images(nz);
  GaussianRational half = GaussianRational::rational(1, 2);
  GaussianRational mihalf = GaussianRational(mpq_class(0), mpq_class(-1, 2)); // -i/2
  Poly s = Poly::var(nz, VarId::w());
  Poly u = Poly::var(nz, VarId::u());
  im[VarId::w().slot(nz)] = s * half + u * mihalf;        // w = (s - i u)/2
  im[VarId::wb().slot(nz)] = s * half + u * (-mihalf);    // conj w = (s + i u)/2
  Poly Rs = R.substitute(im);

  bool exact = Rs.degree_in(VarId::w()) == 0;
  if (exact_out) *exact_out = exact;
  if (exact) {
    if (phi_full) *phi_full = Rs;
    return Jet(Rs, order);
  }

  auto subs_s = [&](const Poly& target, const Poly& value) {
    auto im2 = no_images(nz);
    im2[VarId::w().slot(nz)] = value;
    return target.substitute(im2, order);
  };
  Poly phi(nz);
  for (int k = 0; k < order; ++k) {
    Poly next = subs_s(Rs, phi);
    if (next == phi) break;
    phi = next;
  }
  if (subs_s(Rs, phi) != phi)
    throw std::logic_error("graph solve: fixed point iteration did not converge");
  if (phi_full) *phi_full = phi;
  return Jet(phi, order);
}

} // namespace

Poly chart_to_ambient(const Poly& chart) { return ambientize(chart); }

Jet solve_graph_jet(const Poly& rho_normalized_ambient, int nz, int order) {
  return solve_graph(rho_normalized_ambient, nz, order, nullptr, nullptr);
}

Poly Hypersurface::rho_normalized_ambient() const {
  int nzv = nz();
  return ambientize(phi_.poly()) - Poly::var(nzv, VarId::w()) - Poly::var(nzv, VarId::wb());
}

Hypersurface Hypersurface::at_point(const Poly& rho, int n, const AmbientPoint& center, int order) {
  if (n < 2) throw std::invalid_argument("Hypersurface: ambient dimension must be >= 2");
  int nz = n - 1;
  Poly r = rho.with_nz(nz);
  if (r.depends_on(VarId::u()))
    throw std::invalid_argument("Hypersurface: defining polynomial must be ambient (no u)");
  if (!r.is_real()) throw std::invalid_argument("Hypersurface: defining polynomial is not real");
  if (static_cast<int>(center.z.size()) != nz)
    throw std::invalid_argument("Hypersurface: point dimension mismatch");

  // translate the center to the origin
  auto im = no_images(nz);
  im[VarId::w().slot(nz)] = Poly::var(nz, VarId::w()) + Poly::constant(nz, center.w);
  im[VarId::wb().slot(nz)] = Poly::var(nz, VarId::wb()) + Poly::constant(nz, center.w.conj());
  for (int j = 0; j < nz; ++j) {
    im[VarId::z(j).slot(nz)] = Poly::var(nz, VarId::z(j)) + Poly::constant(nz, center.z[j]);
    im[VarId::zb(j).slot(nz)] = Poly::var(nz, VarId::zb(j)) + Poly::constant(nz, center.z[j].conj());
  }
  Poly r0 = r.substitute(im);
  if (!r0.constant_term().is_zero())
    throw std::invalid_argument("Hypersurface: center does not lie on the hypersurface");

  GaussianRational alpha = r0.coeff([&] {
    Mono m(VarId::slot_count(nz), 0);
    m[VarId::w().slot(nz)] = 1;
    return m;
  }());
  std::vector<GaussianRational> beta(nz);
  bool any_linear = !alpha.is_zero();
  for (int j = 0; j < nz; ++j) {
    Mono m(VarId::slot_count(nz), 0);
    m[VarId::z(j).slot(nz)] = 1;
    beta[j] = r0.coeff(m);
    if (!beta[j].is_zero()) any_linear = true;
  }
  if (!any_linear) throw std::invalid_argument("Hypersurface: d rho vanishes at the center");
  if (alpha.is_zero())
    throw std::invalid_argument("Hypersurface: non-transversal w direction at the center");

  // w_old = -(w + sum beta_j z_j)/alpha brings the linear part to -(w + conj w)
  CoordChange norm;
  GaussianRational mainv = -(alpha.inverse());
  norm.w_expr = Poly::var(nz, VarId::w()) * mainv;
  for (int j = 0; j < nz; ++j) norm.w_expr += Poly::var(nz, VarId::z(j)) * (mainv * beta[j]);
  for (int j = 0; j < nz; ++j) norm.z_exprs.push_back(Poly::var(nz, VarId::z(j)));

  Poly r1 = norm.apply(r0);

  Hypersurface h;
  h.n_ = n;
  h.order_ = order;
  h.rho_ = r;
  h.center_ = center;
  h.normalization_ = norm;
  h.phi_ = solve_graph(r1, nz, order, &h.graph_exact_, &h.phi_full_);

  const Poly& phi = h.phi_.poly();
  if (!phi.is_real()) throw std::logic_error("Hypersurface: graph jet is not real");
  if (!phi.truncate(1).is_zero())
    throw std::logic_error("Hypersurface: graph jet has constant or linear part");

  h.cache_derivatives();
  return h;
}

Hypersurface Hypersurface::from_graph(const Poly& phi_chart, int n, int order) {
  int nz = n - 1;
  Poly p = phi_chart.with_nz(nz);
  if (p.depends_on(VarId::w()) || p.depends_on(VarId::wb()))
    throw std::invalid_argument("from_graph: phi must be a chart polynomial (z, conj z, u)");
  Poly rho = ambientize(p) - Poly::var(nz, VarId::w()) - Poly::var(nz, VarId::wb());
  return at_point(rho, n, AmbientPoint::origin(n), order);
}

void Hypersurface::cache_derivatives() {
  int nz = n_ - 1;
  phi_u_ = phi_.wirtinger(VarId::u());
  phi_z_.clear();
  phi_zb_.clear();
  for (int j = 0; j < nz; ++j) {
    phi_z_.push_back(phi_.wirtinger(VarId::z(j)));
    phi_zb_.push_back(phi_.wirtinger(VarId::zb(j)));
  }
  Jet one = Jet::constant(nz, GaussianRational(1), order_ - 1);
  unit_inv_ = (one - phi_u_ * GaussianRational::i()).inverse();
}

Jet Hypersurface::rho_w() const {
  // rho_int = -(w + conj w) + phi(z, conj z, u), u = i(w - conj w)
  return Jet::constant(nz(), GaussianRational(-1), order_ - 1) + phi_u_ * GaussianRational::i();
}

Jet Hypersurface::rho_wb() const {
  return Jet::constant(nz(), GaussianRational(-1), order_ - 1) - phi_u_ * GaussianRational::i();
}

Jet Hypersurface::rho_z(int j) const { return phi_z_[j]; }
Jet Hypersurface::rho_zb(int j) const { return phi_zb_[j]; }

Hypersurface Hypersurface::recenter(const AmbientPoint& p) const {
  return at_point(rho_, n_, p, order_);
}

AmbientPoint Hypersurface::ambient_of_chart(const std::vector<GaussianRational>& zvals,
                                            const GaussianRational& u) const {
  if (!graph_exact_)
    throw std::domain_error("ambient_of_chart: chart is a jet only (implicit model); "
                            "supply exact ambient points instead");
  if (!u.is_real()) throw std::invalid_argument("ambient_of_chart: u must be real");
  int nzv = nz();
  std::vector<GaussianRational> slots(VarId::slot_count(nzv));
  for (int j = 0; j < nzv; ++j) {
    slots[VarId::z(j).slot(nzv)] = zvals[j];
    slots[VarId::zb(j).slot(nzv)] = zvals[j].conj();
  }
  slots[VarId::u().slot(nzv)] = u;
  GaussianRational s = phi_full_.eval(slots);
  // w_normalized = (s - i u)/2
  GaussianRational wn = (s - GaussianRational::i() * u) * GaussianRational::rational(1, 2);

  // map back through the normalization and the translation
  std::vector<GaussianRational> hol(VarId::slot_count(nzv));
  hol[VarId::w().slot(nzv)] = wn;
  for (int j = 0; j < nzv; ++j) hol[VarId::z(j).slot(nzv)] = zvals[j];
  AmbientPoint out;
  out.w = normalization_.w_expr.eval(hol) + center_.w;
  out.z.resize(nzv);
  for (int j = 0; j < nzv; ++j)
    out.z[j] = normalization_.z_exprs[j].eval(hol) + center_.z[j];
  return out;
}

bool Hypersurface::contains(const AmbientPoint& p) const {
  int nzv = nz();
  if (static_cast<int>(p.z.size()) != nzv) return false;
  std::vector<GaussianRational> slots(VarId::slot_count(nzv));
  slots[VarId::w().slot(nzv)] = p.w;
  slots[VarId::wb().slot(nzv)] = p.w.conj();
  for (int j = 0; j < nzv; ++j) {
    slots[VarId::z(j).slot(nzv)] = p.z[j];
    slots[VarId::zb(j).slot(nzv)] = p.z[j].conj();
  }
  return rho_.eval(slots).is_zero();
}

Hypersurface Hypersurface::with_phi(Jet phi, CoordChange normalization) const {
  Hypersurface h = *this;
  h.phi_ = std::move(phi);
  h.normalization_ = std::move(normalization);
  h.graph_exact_ = false;
  h.phi_full_ = h.phi_.poly();
  h.cache_derivatives();
  return h;
}

} // namespace crgeo
