#include "crgeo/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crgeo {

namespace {

GaussianRational gr(long n) { return GaussianRational(n); }

// deterministic rational offsets used for sampling chart points near 0
const std::vector<GaussianRational>& sample_scalars() {
  static const std::vector<GaussianRational> s = [] {
    std::vector<GaussianRational> v;
    v.push_back(gr(0));
    v.push_back(GaussianRational::rational(1, 4));
    v.push_back(GaussianRational::rational(-1, 4));
    v.push_back(GaussianRational(mpq_class(0), mpq_class(1, 4)));
    v.push_back(GaussianRational(mpq_class(1, 4), mpq_class(-1, 4)));
    v.push_back(GaussianRational::rational(1, 2));
    return v;
  }();
  return s;
}

} // namespace

PseudoconvexCertificate is_pseudoconvex_at(const Hypersurface& h, int sample_budget) {
  PseudoconvexCertificate cert;
  cert.psd_at_center = levi_matrix0(h).hermitian_signature().minus == 0;
  if (!cert.psd_at_center || !h.graph_exact() || sample_budget <= 0) return cert;

  int nz = h.nz();
  const auto& scal = sample_scalars();
  std::vector<GaussianRational> z(nz);
  // odometer over scalar offsets for (z_1..z_nz, u), skipping the center
  int dims = nz + 1;
  std::vector<size_t> idx(dims, 0);
  auto advance = [&]() {
    for (int d = 0; d < dims; ++d) {
      if (++idx[d] < scal.size()) return true;
      idx[d] = 0;
    }
    return false;
  };
  while (cert.samples_checked < sample_budget) {
    if (!advance()) break;
    GaussianRational u = scal[idx[nz]];
    if (!u.is_real()) continue; // u offsets must stay real
    for (int j = 0; j < nz; ++j) z[j] = scal[idx[j]];
    AmbientPoint p = h.ambient_of_chart(z, u);
    // the signature needs second-order data only
    Hypersurface hp = Hypersurface::at_point(h.rho_ambient(), h.n(), p, 2);
    ++cert.samples_checked;
    if (levi_matrix0(hp).hermitian_signature().minus != 0) {
      cert.psd_at_samples = false;
      cert.failure = p;
      break;
    }
  }
  return cert;
}

std::pair<int, std::vector<std::vector<GaussianRational>>> levi_rank_kernel(
    const Hypersurface& h) {
  auto kernel = levi_kernel_basis(h);
  return {h.nz() - static_cast<int>(kernel.size()), kernel};
}

int levi_rank_at(const Hypersurface& h, const AmbientPoint& p) {
  return levi_matrix0(Hypersurface::at_point(h.rho_ambient(), h.n(), p, 2)).rank();
}

std::vector<std::vector<GaussianRational>> holomorphic_kernel(const Poly& P, int nvars) {
  Poly p = P.with_nz(std::max(nvars, P.nz()));
  // rows: monomial coefficients of d_{z_j} P, and of the conjugated
  // antiholomorphic system (sum_j v_j conj(coeff of d_{zb_j} P) = 0)
  std::map<Mono, std::vector<GaussianRational>> rows;
  for (int j = 0; j < nvars; ++j) {
    Poly dj = p.wirtinger(VarId::z(j));
    for (const auto& [m, c] : dj.terms()) {
      auto it = rows.try_emplace(m, std::vector<GaussianRational>(nvars)).first;
      it->second[j] = c;
    }
  }
  for (int j = 0; j < nvars; ++j) {
    Poly dj = p.wirtinger(VarId::zb(j));
    for (const auto& [m, c] : dj.terms()) {
      Mono key = m;
      key.push_back(1); // separate block from the holomorphic constraints
      auto it = rows.try_emplace(key, std::vector<GaussianRational>(nvars)).first;
      it->second[j] = c.conj();
    }
  }
  ExactMatrix A(static_cast<int>(rows.size()), nvars);
  int r = 0;
  for (const auto& [m, row] : rows) {
    for (int j = 0; j < nvars; ++j) A.at(r, j) = row[j];
    ++r;
  }
  return A.nullspace();
}

int poly_rank(const Poly& P, int nvars) {
  return nvars - static_cast<int>(holomorphic_kernel(P, nvars).size());
}

namespace {

// subspace equality by double-inclusion rank tests
bool same_span(const std::vector<std::vector<GaussianRational>>& a,
               const std::vector<std::vector<GaussianRational>>& b, int dim) {
  auto rank_of = [&](const std::vector<std::vector<GaussianRational>>& rowsa,
                     const std::vector<std::vector<GaussianRational>>& rowsb) {
    ExactMatrix m(static_cast<int>(rowsa.size() + rowsb.size()), dim);
    int r = 0;
    for (const auto& v : rowsa) {
      for (int j = 0; j < dim; ++j) m.at(r, j) = v[j];
      ++r;
    }
    for (const auto& v : rowsb) {
      for (int j = 0; j < dim; ++j) m.at(r, j) = v[j];
      ++r;
    }
    return m.rank();
  };
  int ra = rank_of(a, {});
  int rb = rank_of(b, {});
  return ra == rb && rank_of(a, b) == ra;
}

std::vector<std::vector<GaussianRational>> nullspace_of_value_rows(
    const std::vector<std::vector<GaussianRational>>& rows, int cols) {
  ExactMatrix m(static_cast<int>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < cols; ++c) m.at(static_cast<int>(r), c) = rows[r][c];
  return m.nullspace();
}

} // namespace

KernelCoincidenceReport kernel_coincidence(const QuarticNormalForm& qnf) {
  KernelCoincidenceReport rep;
  int nk = qnf.model.nz() - qnf.levi_rank;
  rep.nk = nk;
  if (nk == 0) return rep;

  auto ek = [&](int a) {
    std::vector<GaussianRational> e(nk);
    e[a] = gr(1);
    return e;
  };
  auto ck_basis = [&](int a) {
    if (a < nk) return CKVec::hol_vec(ek(a));
    CKVec v;
    v.hol.assign(nk, GaussianRational());
    v.anti = ek(a - nk);
    return v;
  };

  // slot 1: rows indexed by (b, c, d), columns by the CK basis
  {
    std::vector<std::vector<GaussianRational>> rows;
    for (int b = 0; b < 2 * nk; ++b)
      for (int c = 0; c < nk; ++c)
        for (int d = 0; d < nk; ++d) {
          std::vector<GaussianRational> row(2 * nk);
          for (int a = 0; a < 2 * nk; ++a)
            row[a] = tau40_nf(qnf, ck_basis(a), ck_basis(b), ek(c), ek(d));
          rows.push_back(std::move(row));
        }
    rep.slot1_kernel = nullspace_of_value_rows(rows, 2 * nk);
  }
  // slot 2
  {
    std::vector<std::vector<GaussianRational>> rows;
    for (int a = 0; a < 2 * nk; ++a)
      for (int c = 0; c < nk; ++c)
        for (int d = 0; d < nk; ++d) {
          std::vector<GaussianRational> row(2 * nk);
          for (int b = 0; b < 2 * nk; ++b)
            row[b] = tau40_nf(qnf, ck_basis(a), ck_basis(b), ek(c), ek(d));
          rows.push_back(std::move(row));
        }
    rep.slot2_kernel = nullspace_of_value_rows(rows, 2 * nk);
  }
  // slot 3 (K10) and slot 4 (conj K10)
  {
    std::vector<std::vector<GaussianRational>> rows3, rows4;
    for (int a = 0; a < 2 * nk; ++a)
      for (int b = 0; b < 2 * nk; ++b)
        for (int d = 0; d < nk; ++d) {
          std::vector<GaussianRational> row(nk);
          for (int c = 0; c < nk; ++c)
            row[c] = tau40_nf(qnf, ck_basis(a), ck_basis(b), ek(c), ek(d));
          rows3.push_back(std::move(row));
        }
    for (int a = 0; a < 2 * nk; ++a)
      for (int b = 0; b < 2 * nk; ++b)
        for (int c = 0; c < nk; ++c) {
          std::vector<GaussianRational> row(nk);
          for (int d = 0; d < nk; ++d)
            row[d] = tau40_nf(qnf, ck_basis(a), ck_basis(b), ek(c), ek(d));
          rows4.push_back(std::move(row));
        }
    rep.slot3_kernel = nullspace_of_value_rows(rows3, nk);
    rep.slot4_kernel = nullspace_of_value_rows(rows4, nk);
  }

  rep.phi4_hol_kernel = holomorphic_kernel(qnf.phi4, nk);

  // expected CK span: V + conj(V)
  std::vector<std::vector<GaussianRational>> vk;
  for (const auto& v : rep.phi4_hol_kernel) {
    std::vector<GaussianRational> hol(2 * nk), anti(2 * nk);
    for (int j = 0; j < nk; ++j) {
      hol[j] = v[j];
      anti[nk + j] = v[j].conj();
    }
    vk.push_back(hol);
    vk.push_back(anti);
  }
  rep.slot12_match_hol_kernel =
      same_span(rep.slot1_kernel, vk, 2 * nk) && same_span(rep.slot2_kernel, vk, 2 * nk);

  std::vector<std::vector<GaussianRational>> vconj;
  for (const auto& v : rep.phi4_hol_kernel) {
    std::vector<GaussianRational> c(nk);
    for (int j = 0; j < nk; ++j) c[j] = v[j].conj();
    vconj.push_back(c);
  }
  rep.slot3_matches_hol_kernel = same_span(rep.slot3_kernel, rep.phi4_hol_kernel, nk);
  rep.slot4_matches_conj_kernel = same_span(rep.slot4_kernel, vconj, nk);
  return rep;
}

std::string TypeVerdict::str() const {
  switch (kind) {
    case Kind::type2: return "type2";
    case Kind::type4: return "type4";
    case Kind::type_gt4: return "type>4";
    case Kind::undecided_numeric: return "undecided-numeric";
  }
  return "?";
}

namespace {

// Q(v) = 4 * phi22(v, conj v), exact
GaussianRational type_form_value(const Poly& phi22, int nk,
                                 const std::vector<GaussianRational>& v) {
  std::vector<GaussianRational> slots(VarId::slot_count(phi22.nz()));
  for (int j = 0; j < nk; ++j) {
    slots[VarId::z(j).slot(phi22.nz())] = v[j];
    slots[VarId::zb(j).slot(phi22.nz())] = v[j].conj();
  }
  return phi22.eval(slots) * gr(4);
}

double type_form_double(const Poly& phi22, int nk, const std::vector<double>& re,
                        const std::vector<double>& im) {
  double n2 = 0;
  for (int j = 0; j < nk; ++j) n2 += re[j] * re[j] + im[j] * im[j];
  if (n2 == 0) return 1e100;
  int nz = phi22.nz();
  double val = 0;
  for (const auto& [mono, c] : phi22.terms()) {
    double term_re = 1, term_im = 0;
    auto mul = [&](double ar, double ai, int times) {
      for (int t = 0; t < times; ++t) {
        double nr = term_re * ar - term_im * ai;
        double ni = term_re * ai + term_im * ar;
        term_re = nr;
        term_im = ni;
      }
    };
    for (int j = 0; j < nk; ++j) {
      mul(re[j], im[j], mono[VarId::z(j).slot(nz)]);
      mul(re[j], -im[j], mono[VarId::zb(j).slot(nz)]);
    }
    val += c.re().get_d() * term_re - c.im().get_d() * term_im;
  }
  return 4.0 * val / (n2 * n2);
}

} // namespace

TypeVerdict dangelo_type_le4(const Hypersurface& h) {
  PseudoconvexCertificate psc = is_pseudoconvex_at(h);
  if (!psc.verdict())
    throw std::domain_error("dangelo_type_le4: input is not pseudoconvex at the center "
                            "(the decision needs the pseudoconvexity hypothesis)");
  TypeVerdict out;
  auto [q, kernel] = levi_rank_kernel(h);
  (void)q;
  if (kernel.empty()) {
    out.kind = TypeVerdict::Kind::type2;
    out.tier = "trivial-kernel";
    return out;
  }
  QuarticNormalForm qnf = quartic_normal_form(h);
  int nk = h.nz() - qnf.levi_rank;

  // exact zero directions on the rational grid (also catches phi22 = 0)
  {
    std::vector<std::vector<GaussianRational>> grid;
    for (int a = 0; a < nk; ++a) {
      std::vector<GaussianRational> e(nk);
      e[a] = gr(1);
      grid.push_back(e);
    }
    for (int a = 0; a < nk; ++a)
      for (int b = a + 1; b < nk; ++b)
        for (const auto& s :
             {gr(1), gr(-1), GaussianRational::i(), gr(1) + GaussianRational::i()}) {
          std::vector<GaussianRational> e(nk);
          e[a] = gr(1);
          e[b] = s;
          grid.push_back(e);
        }
    for (const auto& v : grid)
      if (type_form_value(qnf.phi22, nk, v).is_zero()) {
        out.kind = TypeVerdict::Kind::type_gt4;
        out.tier = "exact-zero";
        out.zero_direction = v;
        return out;
      }
  }

  if (nk == 1) {
    GaussianRational c = type_form_value(qnf.phi22, 1, {gr(1)});
    out.kind = c.is_zero() ? TypeVerdict::Kind::type_gt4 : TypeVerdict::Kind::type4;
    out.tier = "kernel-dim-1";
    if (c.is_zero()) out.zero_direction = std::vector<GaussianRational>{gr(1)};
    return out;
  }

  Signature gsig = gram_matrix_22(qnf.phi22, nk).hermitian_signature();
  if (gsig.minus == 0 && gsig.zero == 0) {
    out.kind = TypeVerdict::Kind::type4;
    out.tier = "gram-pd";
    return out;
  }

  // exact sufficient with diagonal slack: phi22 - eps * sum |z_j|^4 with a
  // PSD Gram matrix gives Q(v) >= 4 eps sum |v_j|^4 > 0
  {
    Poly diag_quartic(qnf.phi22.nz());
    for (int j = 0; j < nk; ++j) {
      Mono m(VarId::slot_count(qnf.phi22.nz()), 0);
      m[VarId::z(j).slot(qnf.phi22.nz())] = 2;
      m[VarId::zb(j).slot(qnf.phi22.nz())] = 2;
      diag_quartic += Poly::monomial(qnf.phi22.nz(), m, gr(1));
    }
    for (long den : {1L, 2L, 4L, 8L, 16L}) {
      Poly slack = qnf.phi22 - diag_quartic * GaussianRational::rational(1, den);
      if (gram_matrix_22(slack, nk).hermitian_signature().minus == 0) {
        out.kind = TypeVerdict::Kind::type4;
        out.tier = "gram-psd-slack";
        return out;
      }
    }
  }

  // deterministic numeric minimization over the unit sphere, tolerance 1e-9
  const double tol = 1e-9;
  std::vector<double> steps{-1, -0.5, 0, 0.5, 1};
  std::vector<double> best_re(nk), best_im(nk);
  double best = 1e100;
  std::vector<int> odo(2 * nk, 0);
  bool more = true;
  while (more) {
    std::vector<double> re(nk), im(nk);
    for (int j = 0; j < nk; ++j) {
      re[j] = steps[odo[2 * j]];
      im[j] = steps[odo[2 * j + 1]];
    }
    double v = type_form_double(qnf.phi22, nk, re, im);
    if (v < best) {
      best = v;
      best_re = re;
      best_im = im;
    }
    more = false;
    for (int d = 0; d < 2 * nk; ++d) {
      if (++odo[d] < static_cast<int>(steps.size())) {
        more = true;
        break;
      }
      odo[d] = 0;
    }
  }
  double step = 0.25;
  for (int round = 0; round < 60; ++round) {
    bool improved = false;
    for (int j = 0; j < nk; ++j)
      for (int part = 0; part < 2; ++part)
        for (double sgn : {-1.0, 1.0}) {
          std::vector<double> re = best_re, im = best_im;
          (part ? im[j] : re[j]) += sgn * step;
          double v = type_form_double(qnf.phi22, nk, re, im);
          if (v < best) {
            best = v;
            best_re = re;
            best_im = im;
            improved = true;
          }
        }
    if (!improved) step /= 2;
    if (step < 1e-12) break;
  }
  out.numeric_min = best;

  if (best > tol) {
    out.kind = TypeVerdict::Kind::type4;
    out.tier = "numeric";
    return out;
  }
  // near-zero numeric minimum: try to confirm an exact zero nearby
  for (long den : {1L, 2L, 4L, 8L, 16L}) {
    std::vector<GaussianRational> v(nk);
    bool nonzero = false;
    for (int j = 0; j < nk; ++j) {
      long re_r = std::lround(best_re[j] * den);
      long im_r = std::lround(best_im[j] * den);
      mpq_class re_q(re_r, den), im_q(im_r, den);
      re_q.canonicalize();
      im_q.canonicalize();
      v[j] = GaussianRational(re_q, im_q);
      if (!v[j].is_zero()) nonzero = true;
    }
    if (nonzero && type_form_value(qnf.phi22, nk, v).is_zero()) {
      out.kind = TypeVerdict::Kind::type_gt4;
      out.tier = "exact-zero";
      out.zero_direction = v;
      return out;
    }
  }
  out.kind = TypeVerdict::Kind::undecided_numeric;
  out.tier = "numeric";
  return out;
}

std::vector<std::string> MultitypePrefix::entries() const {
  std::vector<std::string> e{"1"};
  for (int j = 0; j < q2; ++j) e.push_back("2");
  for (int j = 0; j < q4; ++j) e.push_back("4");
  for (int j = 1 + q2 + q4; j < n; ++j) e.push_back(">4");
  return e;
}

std::string MultitypePrefix::str() const {
  std::ostringstream os;
  os << "(";
  auto e = entries();
  for (size_t j = 0; j < e.size(); ++j) {
    if (j) os << ",";
    os << e[j];
  }
  os << ")";
  return os.str();
}

MultitypePrefix multitype_prefix(const Hypersurface& h) {
  PseudoconvexCertificate psc = is_pseudoconvex_at(h);
  if (!psc.verdict())
    throw std::domain_error("multitype_prefix: input is not pseudoconvex at the center");
  MultitypePrefix out;
  out.n = h.n();
  QuarticNormalForm qnf = quartic_normal_form(h);
  out.q2 = qnf.levi_rank;
  int nk = h.nz() - qnf.levi_rank;
  out.q4 = poly_rank(qnf.phi4, nk);

  // Def-level admissibility of the finite prefix (infinite tail entries skip)
  std::vector<WeightVector::Entry> entries;
  entries.emplace_back(mpq_class(1));
  for (int j = 0; j < out.q2; ++j) entries.emplace_back(mpq_class(2));
  for (int j = 0; j < out.q4; ++j) entries.emplace_back(mpq_class(4));
  for (int j = 1 + out.q2 + out.q4; j < out.n; ++j) entries.emplace_back(std::nullopt);
  out.admissible = WeightVector(entries).is_admissible();

  // tail variables absent from phi up to the chart order?
  auto tail_kernel = holomorphic_kernel(qnf.phi4, nk);
  bool vanish = !tail_kernel.empty();
  const Poly& phi = qnf.model.phi().poly();
  for (const auto& v : tail_kernel) {
    int idx = -1;
    int nonzero = 0;
    for (int j = 0; j < nk; ++j)
      if (!v[j].is_zero()) {
        ++nonzero;
        idx = j;
      }
    // only coordinate-aligned kernel directions are checked; report false
    // otherwise (conservative)
    if (nonzero != 1) {
      vanish = false;
      break;
    }
    int slot = qnf.levi_rank + idx;
    if (phi.depends_on(VarId::z(slot)) || phi.depends_on(VarId::zb(slot))) vanish = false;
  }
  out.tail_vanishes_at_order = vanish;
  return out;
}

TangentSpaceS tangent_space_S(const Hypersurface& h) {
  TensorContext ctx = tensor_context(h);
  int nz = h.nz();
  TangentSpaceS out;

  // real basis of T_p: x_j = e_j + conj e_j, y_j = i e_j - i conj e_j, T
  std::vector<TangentVec> basis;
  for (int j = 0; j < nz; ++j) {
    std::vector<GaussianRational> e(nz);
    e[j] = gr(1);
    basis.push_back(TangentVec::hol_vec(e) + TangentVec::anti_vec(e));
    std::vector<GaussianRational> ie(nz), mie(nz);
    ie[j] = GaussianRational::i();
    mie[j] = -GaussianRational::i();
    basis.push_back(TangentVec::hol_vec(ie) + TangentVec::anti_vec(mie));
  }
  basis.push_back(TangentVec::transversal());
  int dim = static_cast<int>(basis.size());

  if (ctx.kernel.empty()) {
    out.basis = basis; // no kernel slots: no equations cut T_p
    out.dim = dim;
    out.intersection_with_K_totally_real = true;
    return out;
  }

  std::vector<TangentVec> ct_basis;
  for (int j = 0; j < nz; ++j) {
    std::vector<GaussianRational> e(nz);
    e[j] = gr(1);
    ct_basis.push_back(TangentVec::hol_vec(e));
    ct_basis.push_back(TangentVec::anti_vec(e));
  }
  ct_basis.push_back(TangentVec::transversal());

  // two real equations per complex value; unknowns are the real coefficients
  std::vector<std::vector<GaussianRational>> rows;
  for (const auto& v3 : ct_basis)
    for (const auto& v2 : ctx.kernel)
      for (const auto& v1 : ctx.kernel) {
        std::vector<GaussianRational> row_re(dim), row_im(dim);
        for (int b = 0; b < dim; ++b) {
          GaussianRational val = tau4(ctx, basis[b], v3, v2, v1);
          row_re[b] = GaussianRational(val.re());
          row_im[b] = GaussianRational(val.im());
        }
        rows.push_back(row_re);
        rows.push_back(row_im);
      }
  auto null_coeffs = nullspace_of_value_rows(rows, dim);

  for (const auto& c : null_coeffs) {
    TangentVec v = TangentVec::zero(nz);
    for (int b = 0; b < dim; ++b) v = v + basis[b] * c[b];
    out.basis.push_back(v);
  }
  out.dim = static_cast<int>(out.basis.size());

  // intersection with K_p and its totally-real test
  std::vector<std::vector<GaussianRational>> hol_members;
  if (!out.basis.empty()) {
    int m = out.dim;
    std::vector<std::vector<GaussianRational>> cons;
    std::vector<GaussianRational> trow(m);
    for (int b = 0; b < m; ++b) trow[b] = out.basis[b].t;
    cons.push_back(trow);
    for (int k = 0; k < nz; ++k) {
      std::vector<GaussianRational> row(m);
      for (int b = 0; b < m; ++b) {
        GaussianRational acc;
        for (int j = 0; j < nz; ++j) acc += out.basis[b].hol[j] * ctx.levi0.at(j, k);
        row[b] = acc;
      }
      cons.push_back(row);
    }
    for (const auto& c : nullspace_of_value_rows(cons, m)) {
      std::vector<GaussianRational> hol(nz);
      bool nonzero = false;
      for (int b = 0; b < m; ++b)
        for (int j = 0; j < nz; ++j) {
          hol[j] += out.basis[b].hol[j] * c[b];
          if (!hol[j].is_zero()) nonzero = true;
        }
      if (nonzero) hol_members.push_back(hol);
    }
  }
  if (hol_members.empty()) {
    out.intersection_with_K_totally_real = true;
  } else {
    auto realify = [&](const std::vector<GaussianRational>& v) {
      std::vector<GaussianRational> r(2 * nz);
      for (int j = 0; j < nz; ++j) {
        r[j] = GaussianRational(v[j].re());
        r[nz + j] = GaussianRational(v[j].im());
      }
      return r;
    };
    std::vector<std::vector<GaussianRational>> wrows, allrows;
    for (const auto& v : hol_members) {
      wrows.push_back(realify(v));
      allrows.push_back(wrows.back());
    }
    for (const auto& v : hol_members) {
      std::vector<GaussianRational> iv(v.size());
      for (size_t j = 0; j < v.size(); ++j) iv[j] = v[j] * GaussianRational::i();
      allrows.push_back(realify(iv));
    }
    ExactMatrix wm(static_cast<int>(wrows.size()), 2 * nz);
    for (size_t r = 0; r < wrows.size(); ++r)
      for (int c = 0; c < 2 * nz; ++c) wm.at(static_cast<int>(r), c) = wrows[r][c];
    ExactMatrix am(static_cast<int>(allrows.size()), 2 * nz);
    for (size_t r = 0; r < allrows.size(); ++r)
      for (int c = 0; c < 2 * nz; ++c) am.at(static_cast<int>(r), c) = allrows[r][c];
    out.intersection_with_K_totally_real = am.rank() == 2 * wm.rank();
  }
  return out;
}

} // namespace crgeo
