#include "crgeo/sheaves.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace crgeo {

namespace {

GaussianRational gr(long n) { return GaussianRational(n); }

void require_exact_graph(const Hypersurface& h, const char* who) {
  if (!h.graph_exact())
    throw std::domain_error(std::string(who) +
                            ": needs an exact graph model (implicit models only support "
                            "center-point checks after recentering)");
}

std::vector<GaussianRational> chart_slots(int nz, const std::vector<GaussianRational>& z,
                                          const GaussianRational& u) {
  std::vector<GaussianRational> slots(VarId::slot_count(nz));
  for (int j = 0; j < nz; ++j) {
    slots[VarId::z(j).slot(nz)] = z[j];
    slots[VarId::zb(j).slot(nz)] = z[j].conj();
  }
  slots[VarId::u().slot(nz)] = u;
  return slots;
}

Poly chart_base(const Hypersurface& h) {
  int nz = h.nz();
  return Poly::constant(nz, gr(1)) -
         h.phi().poly().wirtinger(VarId::u()) * GaussianRational::i();
}

} // namespace

UnitFrac UnitFrac::operator+(const UnitFrac& o) const {
  if (num.is_zero()) return o;
  if (o.num.is_zero()) return *this;
  const Poly& D = base.is_zero() ? o.base : base;
  if (!base.is_zero() && !o.base.is_zero() && !(base == o.base))
    throw std::invalid_argument("UnitFrac: mixed denominator bases");
  int ra = std::max(a, o.a), rb = std::max(b, o.b);
  Poly Dc = D.conj();
  Poly lhs = num, rhs = o.num;
  for (int k = a; k < ra; ++k) lhs = lhs * D;
  for (int k = b; k < rb; ++k) lhs = lhs * Dc;
  for (int k = o.a; k < ra; ++k) rhs = rhs * D;
  for (int k = o.b; k < rb; ++k) rhs = rhs * Dc;
  UnitFrac r(lhs + rhs, D, ra, rb);
  if (r.a == 0 && r.b == 0) r.base = Poly();
  return r;
}

UnitFrac UnitFrac::operator*(const UnitFrac& o) const {
  const Poly& D = base.is_zero() ? o.base : base;
  if (!base.is_zero() && !o.base.is_zero() && !(base == o.base))
    throw std::invalid_argument("UnitFrac: mixed denominator bases");
  UnitFrac r(num * o.num, D, a + o.a, b + o.b);
  if (r.num.is_zero() || (r.a == 0 && r.b == 0)) r.base = Poly();
  return r;
}

UnitFrac UnitFrac::wirtinger(VarId v) const {
  if (a == 0 && b == 0) return UnitFrac(num.wirtinger(v));
  // d(N / D^a Dc^b) = (N' D Dc - a N D' Dc - b N D Dc') / D^{a+1} Dc^{b+1}
  Poly D = base, Dc = base.conj();
  Poly n = num.wirtinger(v) * D * Dc - num * D.wirtinger(v) * Dc * gr(a) -
           num * D * Dc.wirtinger(v) * gr(b);
  return UnitFrac(n, base, a + 1, b + 1);
}

UnitFrac UnitFrac::conj() const {
  UnitFrac r(num.conj(), base, b, a);
  if (r.a == 0 && r.b == 0) r.base = Poly();
  return r;
}

GaussianRational UnitFrac::eval(const std::vector<GaussianRational>& slots) const {
  GaussianRational nv = num.eval(slots);
  if (a == 0 && b == 0) return nv;
  GaussianRational dv = base.eval(slots);
  if (dv.is_zero()) throw std::domain_error("UnitFrac::eval: base vanishes at the point");
  GaussianRational den(1);
  for (int k = 0; k < a; ++k) den *= dv;
  GaussianRational dvc = dv.conj();
  for (int k = 0; k < b; ++k) den *= dvc;
  return nv / den;
}

RationalExpr UnitFrac::expr() const {
  if (a == 0 && b == 0) return RationalExpr(num);
  Poly den = Poly::constant(num.nz(), gr(1));
  for (int k = 0; k < a; ++k) den = den * base;
  Poly bc = base.conj();
  for (int k = 0; k < b; ++k) den = den * bc;
  return RationalExpr(num, den);
}

XField XField::zero(const Hypersurface& h) {
  XField f;
  f.nz = h.nz();
  f.comp.assign(VectorField::dir_count(f.nz), UnitFrac(Poly(f.nz)));
  return f;
}

UnitFrac XField::apply(const UnitFrac& f) const {
  UnitFrac fu = f.wirtinger(VarId::u());
  UnitFrac acc = (comp[0] - comp[1]) * UnitFrac(Poly::constant(nz, GaussianRational::i())) * fu;
  for (int j = 0; j < nz; ++j) {
    acc = acc + comp[2 + j] * f.wirtinger(VarId::z(j));
    acc = acc + comp[2 + nz + j] * f.wirtinger(VarId::zb(j));
  }
  return acc;
}

XField XField::conj() const {
  XField r;
  r.nz = nz;
  r.comp.resize(comp.size());
  r.comp[0] = comp[1].conj();
  r.comp[1] = comp[0].conj();
  for (int j = 0; j < nz; ++j) {
    r.comp[2 + j] = comp[2 + nz + j].conj();
    r.comp[2 + nz + j] = comp[2 + j].conj();
  }
  return r;
}

XField XField::operator+(const XField& o) const {
  XField r = *this;
  for (size_t c = 0; c < comp.size(); ++c) r.comp[c] = r.comp[c] + o.comp[c];
  return r;
}

XField XField::scaled(const Poly& f) const { return scaled(UnitFrac(f.with_nz(nz))); }

XField XField::scaled(const UnitFrac& f) const {
  XField r = *this;
  for (auto& c : r.comp) c = c * f;
  return r;
}

XField XField::bracket(const XField& x, const XField& y) {
  XField r;
  r.nz = x.nz;
  r.comp.resize(x.comp.size());
  for (size_t c = 0; c < x.comp.size(); ++c) r.comp[c] = x.apply(y.comp[c]) - y.apply(x.comp[c]);
  return r;
}

std::vector<GaussianRational> XField::value_at(const std::vector<GaussianRational>& z,
                                               const GaussianRational& u) const {
  auto slots = chart_slots(nz, z, u);
  std::vector<GaussianRational> out;
  out.reserve(comp.size());
  for (const auto& c : comp) out.push_back(c.eval(slots));
  return out;
}

VectorField XField::jet_field(int order) const {
  VectorField f(nz, order);
  for (size_t c = 0; c < comp.size(); ++c) f.comp(static_cast<int>(c)) = comp[c].expr().jet(order);
  return f;
}

XField x_frame_field(const Hypersurface& h, const std::vector<GaussianRational>& v) {
  require_exact_graph(h, "x_frame_field");
  int nz = h.nz();
  const Poly& phi = h.phi().poly();
  Poly D = chart_base(h);
  XField f = XField::zero(h);
  Poly phi_v(nz);
  for (int j = 0; j < nz; ++j) {
    if (v[j].is_zero()) continue;
    f.comp[2 + j] = UnitFrac(Poly::constant(nz, v[j]));
    phi_v += phi.wirtinger(VarId::z(j)) * v[j];
  }
  if (D.degree() == 0) f.comp[0] = UnitFrac(phi_v); // rigid chart: unit denominator
  else f.comp[0] = UnitFrac(phi_v, D, 1, 0);
  return f;
}

XField x_frame_basis(const Hypersurface& h, int j) {
  std::vector<GaussianRational> v(h.nz());
  v[j] = gr(1);
  return x_frame_field(h, v);
}

XField x_transversal(const Hypersurface& h) {
  require_exact_graph(h, "x_transversal");
  int nz = h.nz();
  Poly D = chart_base(h);
  Poly i_pol = Poly::constant(nz, GaussianRational::i());
  XField f = XField::zero(h);
  if (D.degree() == 0) {
    f.comp[0] = UnitFrac(i_pol);
    f.comp[1] = UnitFrac(-i_pol);
  } else {
    f.comp[0] = UnitFrac(i_pol, D, 1, 0);
    f.comp[1] = UnitFrac(-i_pol, D, 0, 1);
  }
  return f;
}

std::vector<UnitFrac> x_oriented_theta(const Hypersurface& h) {
  require_exact_graph(h, "x_oriented_theta");
  int nz = h.nz();
  const Poly& phi = h.phi().poly();
  std::vector<UnitFrac> th(VectorField::dir_count(nz), UnitFrac(Poly(nz)));
  th[0] = UnitFrac(chart_base(h) * GaussianRational::i());
  for (int j = 0; j < nz; ++j)
    th[2 + j] = UnitFrac(phi.wirtinger(VarId::z(j)) * (-GaussianRational::i()));
  return th;
}

UnitFrac x_levi_pairing(const Hypersurface& h, const XField& x, const XField& y) {
  auto th = x_oriented_theta(h);
  XField b = XField::bracket(x, y);
  UnitFrac acc = th[0] * b.comp[0];
  for (size_t c = 1; c < th.size(); ++c) acc = acc + th[c] * b.comp[c];
  return acc;
}

std::vector<ChartPoint> find_rank_le_points(const Hypersurface& h, int q, int max_count,
                                            long max_denominator) {
  require_exact_graph(h, "find_rank_le_points");
  std::vector<ChartPoint> out;
  int nz = h.nz();
  std::vector<GaussianRational> scalars;
  scalars.push_back(gr(0));
  for (long den = 1; den <= max_denominator; den *= 2)
    for (long num : {1L, -1L}) {
      scalars.push_back(GaussianRational::rational(num, den));
      scalars.push_back(GaussianRational(mpq_class(0), mpq_class(num, den)));
    }
  int dims = nz + 1;
  std::vector<size_t> idx(dims, 0);
  auto advance = [&]() {
    for (int d = 0; d < dims; ++d) {
      if (++idx[d] < scalars.size()) return true;
      idx[d] = 0;
    }
    return false;
  };
  for (;;) {
    GaussianRational u = scalars[idx[nz]];
    if (u.is_real()) {
      ChartPoint p;
      p.u = u;
      p.z.resize(nz);
      for (int j = 0; j < nz; ++j) p.z[j] = scalars[idx[j]];
      AmbientPoint ap = h.ambient_of_chart(p.z, p.u);
      if (levi_rank_at(h, ap) <= q) {
        out.push_back(p);
        if (static_cast<int>(out.size()) >= max_count) break;
      }
    }
    if (!advance()) break;
  }
  return out;
}

AdmissibilityReport in_kernel_up_to_order1(const Hypersurface& h, const VectorField& L,
                                           const std::vector<TangentVec>* microlocal_V) {
  AdmissibilityReport rep;
  OneForm th = oriented_theta(h);
  VectorField Lbar = L.conj();

  rep.kernel_value = true;
  std::vector<Jet> pairings;
  for (int j = 0; j < h.nz(); ++j) {
    VectorField L1 = frame_field_basis(h, j);
    Jet F = th.pair(VectorField::bracket(L1, Lbar));
    if (!F.value0().is_zero()) {
      rep.kernel_value = false;
      rep.witness = "pairing with frame " + std::to_string(j + 1) + " at the center";
      rep.verdict = AdmissibilityReport::Verdict::fails;
      return rep;
    }
    pairings.push_back(F);
  }

  std::vector<VectorField> directions;
  std::vector<std::string> tags;
  if (microlocal_V) {
    for (size_t t = 0; t < microlocal_V->size(); ++t) {
      directions.push_back(extension_field(h, (*microlocal_V)[t]));
      tags.push_back("V[" + std::to_string(t) + "]");
    }
  } else {
    for (int j = 0; j < h.nz(); ++j) {
      directions.push_back(frame_field_basis(h, j));
      tags.push_back("frame " + std::to_string(j + 1));
      directions.push_back(frame_field_basis(h, j).conj());
      tags.push_back("conj frame " + std::to_string(j + 1));
    }
    directions.push_back(transversal_field(h));
    tags.push_back("transversal");
  }

  for (int j = 0; j < h.nz(); ++j)
    for (size_t d = 0; d < directions.size(); ++d) {
      if (!directions[d].apply(pairings[j]).value0().is_zero()) {
        rep.witness = "derivative along " + tags[d] + " of the pairing with frame " +
                      std::to_string(j + 1);
        rep.verdict = AdmissibilityReport::Verdict::fails;
        return rep;
      }
    }
  rep.verdict = microlocal_V ? AdmissibilityReport::Verdict::microlocal
                             : AdmissibilityReport::Verdict::order1_kernel;
  return rep;
}

AdmissibilityReport in_kernel_up_to_order1_at(const Hypersurface& h, const XField& L,
                                              const ChartPoint& p) {
  require_exact_graph(h, "in_kernel_up_to_order1_at");
  AdmissibilityReport rep;
  int nz = h.nz();
  auto slots = chart_slots(nz, p.z, p.u);
  XField Lbar = L.conj();

  rep.kernel_value = true;
  std::vector<UnitFrac> pairings;
  for (int j = 0; j < nz; ++j) {
    UnitFrac F = x_levi_pairing(h, x_frame_basis(h, j), Lbar);
    if (!F.eval(slots).is_zero()) {
      rep.kernel_value = false;
      rep.witness = "pairing with frame " + std::to_string(j + 1) + " at the point";
      rep.verdict = AdmissibilityReport::Verdict::fails;
      return rep;
    }
    pairings.push_back(F);
  }
  std::vector<XField> directions;
  for (int j = 0; j < nz; ++j) {
    directions.push_back(x_frame_basis(h, j));
    directions.push_back(x_frame_basis(h, j).conj());
  }
  directions.push_back(x_transversal(h));
  for (int j = 0; j < nz; ++j)
    for (size_t d = 0; d < directions.size(); ++d)
      if (!directions[d].apply(pairings[j]).eval(slots).is_zero()) {
        rep.witness = "derivative of the pairing with frame " + std::to_string(j + 1);
        rep.verdict = AdmissibilityReport::Verdict::fails;
        return rep;
      }
  rep.verdict = AdmissibilityReport::Verdict::order1_kernel;
  return rep;
}

std::vector<XField> levi_orthogonal_complement(const Hypersurface& h,
                                               const std::vector<XField>& v_frame) {
  require_exact_graph(h, "levi_orthogonal_complement");
  int nz = h.nz();
  int q = static_cast<int>(v_frame.size());
  auto zero_slots = chart_slots(nz, std::vector<GaussianRational>(nz), gr(0));

  ExactMatrix g0(q, q);
  std::vector<std::vector<UnitFrac>> G(q, std::vector<UnitFrac>(q, UnitFrac(Poly(nz))));
  for (int s = 0; s < q; ++s)
    for (int k = 0; k < q; ++k) {
      G[s][k] = x_levi_pairing(h, v_frame[s], v_frame[k].conj());
      g0.at(s, k) = G[s][k].eval(zero_slots);
    }
  if (g0.rank() != q)
    throw std::invalid_argument(
        "levi_orthogonal_complement: family is Levi-degenerate at the center");

  // base frame directions completing the family's span at the center
  std::vector<std::vector<GaussianRational>> vals;
  for (const auto& f : v_frame) {
    std::vector<GaussianRational> v(nz);
    auto all = f.value_at(std::vector<GaussianRational>(nz), gr(0));
    for (int j = 0; j < nz; ++j) v[j] = all[2 + j];
    vals.push_back(v);
  }
  std::vector<int> base;
  for (int t = 0; t < nz && static_cast<int>(base.size()) < nz - q; ++t) {
    std::vector<std::vector<GaussianRational>> cand = vals;
    for (int b : base) {
      std::vector<GaussianRational> e(nz);
      e[b] = gr(1);
      cand.push_back(e);
    }
    std::vector<GaussianRational> e(nz);
    e[t] = gr(1);
    cand.push_back(e);
    ExactMatrix m(static_cast<int>(cand.size()), nz);
    for (size_t r = 0; r < cand.size(); ++r)
      for (int c = 0; c < nz; ++c) m.at(static_cast<int>(r), c) = cand[r][c];
    if (m.rank() == static_cast<int>(cand.size())) base.push_back(t);
  }

  // solve sum_s c_s <th,[V_s, conj V_k]> = -<th,[L_t, conj V_k]> by Cramer
  // (exact; the Gram determinant is a unit at the center)
  UnitFrac det = UnitFrac(Poly(nz));
  {
    // explicit small determinants (q <= 3 in practice); general cofactor
    // expansion over the first row
    std::function<UnitFrac(std::vector<std::vector<UnitFrac>>)> det_of =
        [&](std::vector<std::vector<UnitFrac>> m) -> UnitFrac {
      int d = static_cast<int>(m.size());
      if (d == 0) return UnitFrac(Poly::constant(nz, gr(1)));
      if (d == 1) return m[0][0];
      UnitFrac acc{Poly(nz)};
      for (int c = 0; c < d; ++c) {
        std::vector<std::vector<UnitFrac>> sub;
        for (int r = 1; r < d; ++r) {
          std::vector<UnitFrac> row;
          for (int cc = 0; cc < d; ++cc)
            if (cc != c) row.push_back(m[r][cc]);
          sub.push_back(row);
        }
        UnitFrac term = m[0][c] * det_of(sub);
        if (c % 2) term = -term;
        acc = acc + term;
      }
      return acc;
    };
    // matrix A[k][s] = G[s][k]
    std::vector<std::vector<UnitFrac>> A(q, std::vector<UnitFrac>(q, UnitFrac(Poly(nz))));
    for (int k = 0; k < q; ++k)
      for (int s = 0; s < q; ++s) A[k][s] = G[s][k];
    det = det_of(A);

    std::vector<XField> out;
    for (int t : base) {
      XField Lt = x_frame_basis(h, t);
      std::vector<UnitFrac> rhs(q, UnitFrac(Poly(nz)));
      for (int k = 0; k < q; ++k) rhs[k] = -x_levi_pairing(h, Lt, v_frame[k].conj());
      // scale the field by det to stay polynomial-fraction exact:
      // L := det * L_t + sum_s cramer_s * V_s  solves det * (orthogonality)
      XField L = Lt.scaled(det);
      for (int s = 0; s < q; ++s) {
        std::vector<std::vector<UnitFrac>> As = A;
        for (int k = 0; k < q; ++k) As[k][s] = rhs[k];
        L = L + v_frame[s].scaled(det_of(As));
      }
      // normalize so the value at the center matches L_t's value: divide by
      // det(0); determinant is a nonzero constant there
      GaussianRational d0 = det.eval(zero_slots);
      L = L.scaled(UnitFrac(Poly::constant(nz, d0.inverse())));
      out.push_back(L);
    }
    return out;
  }
}

bool freeman_N2_member(const Hypersurface& h, const XField& L) {
  require_exact_graph(h, "freeman_N2_member");
  for (int j = 0; j < h.nz(); ++j) {
    UnitFrac F = x_levi_pairing(h, x_frame_basis(h, j), L.conj());
    if (!F.is_zero()) return false;
  }
  return true;
}

SheafMembership sheaf_membership_S10q(const Hypersurface& h, const XField& L, int q,
                                      const std::vector<ChartPoint>& sample) {
  SheafMembership out;
  for (const auto& p : sample) {
    AmbientPoint ap = h.ambient_of_chart(p.z, p.u);
    if (levi_rank_at(h, ap) > q) {
      ++out.points_skipped_rank;
      continue;
    }
    ++out.points_checked;
    if (!in_kernel_up_to_order1_at(h, L, p).passes()) {
      out.passes = false;
      out.failure = p;
      break;
    }
  }
  return out;
}

GaussianRational IdealGenerator::eval(const ChartPoint& p) const {
  int nz = static_cast<int>(p.z.size());
  return value.eval(chart_slots(nz, p.z, p.u));
}

IdealGenerator ideal_generator(const Hypersurface& h, IdealGenerator::Kind kind,
                               const XField& L3, const XField& L2, const XField& L1, int q,
                               const std::vector<ChartPoint>& sample) {
  require_exact_graph(h, "ideal_generator");
  if (!sheaf_membership_S10q(h, L2, q, sample).passes)
    throw std::invalid_argument("ideal_generator: L2 fails the sampled sheaf membership");
  if (!sheaf_membership_S10q(h, L1.conj(), q, sample).passes)
    throw std::invalid_argument("ideal_generator: conj(L1) fails the sampled sheaf membership");

  IdealGenerator gen;
  gen.kind = kind;
  UnitFrac g = x_levi_pairing(h, L2, L1);
  gen.value = kind == IdealGenerator::Kind::g ? g : L3.apply(g);

  int nz = h.nz();
  auto zero_slots = chart_slots(nz, std::vector<GaussianRational>(nz), gr(0));
  for (int j = 0; j < nz; ++j)
    gen.differential.push_back(gen.value.wirtinger(VarId::z(j)).eval(zero_slots));
  for (int j = 0; j < nz; ++j)
    gen.differential.push_back(gen.value.wirtinger(VarId::zb(j)).eval(zero_slots));
  gen.differential.push_back(gen.value.wirtinger(VarId::u()).eval(zero_slots));
  return gen;
}

bool verify_vanishing_on_rank_locus(const Hypersurface& h, const IdealGenerator& gen,
                                    const std::vector<ChartPoint>& sample) {
  (void)h;
  for (const auto& p : sample)
    if (!gen.eval(p).is_zero()) return false;
  return true;
}

int vanishing_order_at(const UnitFrac& f, const ChartPoint& p) {
  if (f.a != 0 || f.b != 0)
    throw std::invalid_argument("vanishing_order_at: chart function must be polynomial");
  const Poly& pol = f.num;
  int nz = pol.nz();
  std::vector<std::optional<Poly>> im(VarId::slot_count(nz));
  for (int j = 0; j < nz; ++j) {
    im[VarId::z(j).slot(nz)] = Poly::var(nz, VarId::z(j)) + Poly::constant(nz, p.z[j]);
    im[VarId::zb(j).slot(nz)] = Poly::var(nz, VarId::zb(j)) + Poly::constant(nz, p.z[j].conj());
  }
  im[VarId::u().slot(nz)] = Poly::var(nz, VarId::u()) + Poly::constant(nz, p.u);
  Poly shifted = pol.substitute(im);
  if (shifted.is_zero()) return -1; // vanishes identically
  for (int d = 0; d <= shifted.degree(); ++d)
    if (!shifted.part_of_degree(d).is_zero()) return d;
  return -1;
}

bool bracket_closure_check(const Hypersurface& h, const VectorField& L, const VectorField& Lp) {
  ExactMatrix levi0 = levi_matrix0(h);
  int nz = h.nz();
  auto value_in_ck = [&](const VectorField& b) {
    std::vector<GaussianRational> v = b.value0();
    GaussianRational aw = v[VectorField::dw()], awb = v[1];
    if (!(aw + awb).is_zero()) return false; // not tangent at 0
    if (!aw.is_zero()) return false;         // transversal component
    std::vector<GaussianRational> hol(nz), anti(nz);
    for (int j = 0; j < nz; ++j) {
      hol[j] = v[2 + j];
      anti[j] = v[2 + nz + j].conj();
    }
    auto in_kernel = [&](const std::vector<GaussianRational>& x) {
      for (int k = 0; k < nz; ++k) {
        GaussianRational acc;
        for (int j = 0; j < nz; ++j) acc += x[j] * levi0.at(j, k);
        if (!acc.is_zero()) return false;
      }
      return true;
    };
    return in_kernel(hol) && in_kernel(anti);
  };
  return value_in_ck(VectorField::bracket(L, Lp)) &&
         value_in_ck(VectorField::bracket(L.conj(), Lp));
}

bool no_low_weight_nondeg_terms(const QuarticNormalForm& qnf, const VectorField& L) {
  // forbidden: coefficient of d/dz_k (k < q) containing a monomial linear in a
  // kernel variable or its conjugate
  int nz = qnf.model.nz();
  int q = qnf.levi_rank;
  for (int k = 0; k < q; ++k) {
    const Poly lin = L.comp(VectorField::dz(k)).poly().part_of_degree(1);
    for (const auto& [mono, coeff] : lin.terms())
      for (int j = q; j < nz; ++j)
        if (mono[VarId::z(j).slot(nz)] != 0 || mono[VarId::zb(j).slot(nz)] != 0) return false;
  }
  return true;
}

} // namespace crgeo
