#include "crgeo/tensors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crgeo {

namespace {

GaussianRational gr(long n) { return GaussianRational(n); }

// Solve M x = b over the jet ring; M(0) must be invertible. Gauss-Jordan with
// unit pivots (first row whose pivot has a nonzero value at the center).
std::vector<Jet> solve_jet_system(std::vector<std::vector<Jet>> m, std::vector<Jet> b) {
  int n = static_cast<int>(m.size());
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int r = c; r < n; ++r)
      if (!m[r][c].value0().is_zero()) { pr = r; break; }
    if (pr < 0) throw std::domain_error("solve_jet_system: singular at the center");
    std::swap(m[c], m[pr]);
    std::swap(b[c], b[pr]);
    Jet inv = m[c][c].inverse();
    for (int j = 0; j < n; ++j) m[c][j] = m[c][j] * inv;
    b[c] = b[c] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Jet f = m[r][c];
      for (int j = 0; j < n; ++j) m[r][j] = m[r][j] - f * m[c][j];
      b[r] = b[r] - f * b[c];
    }
  }
  return b;
}

void check_kernel(const TensorContext& ctx, const std::vector<GaussianRational>& v,
                  const char* slot) {
  if (!in_levi_kernel(ctx, v)) {
    std::ostringstream os;
    os << "tensor slot " << slot << " requires a Levi kernel value";
    throw std::invalid_argument(os.str());
  }
}

void check_ck(const TensorContext& ctx, const TangentVec& v, const char* slot) {
  if (!v.t.is_zero())
    throw std::invalid_argument(std::string("slot ") + slot + ": transversal part not allowed");
  std::vector<GaussianRational> hol = v.hol, antid(v.anti.size());
  hol.resize(ctx.model.nz());
  for (size_t j = 0; j < v.anti.size(); ++j) antid[j] = v.anti[j].conj();
  antid.resize(ctx.model.nz());
  check_kernel(ctx, hol, slot);
  check_kernel(ctx, antid, slot);
}

Jet pairing_fn(const TensorContext& ctx, const VectorField& a, const VectorField& b) {
  return ctx.theta.pair(VectorField::bracket(a, b));
}

} // namespace

TensorContext tensor_context(const Hypersurface& h) {
  return tensor_context_scaled(h, Jet::constant(h.nz(), gr(1), h.order() - 1));
}

TensorContext tensor_context_scaled(const Hypersurface& h, const Jet& f) {
  if (f.value0().is_zero())
    throw std::invalid_argument("tensor_context: theta scaling must be a unit");
  TensorContext ctx;
  ctx.model = h;
  ctx.theta = oriented_theta(h).scaled(f);
  ctx.levi0 = levi_matrix0(h);
  ctx.kernel = levi_kernel_basis(h);
  ctx.q = h.nz() - static_cast<int>(ctx.kernel.size());
  for (int j = 0; j < h.nz(); ++j) ctx.frame.push_back(frame_field_basis(h, j));
  ctx.transversal = transversal_field(h);

  // greedy Levi-nondegenerate frame subset of size q (iterate until stable:
  // an index rejected early can become admissible after later ones join)
  bool grew = true;
  while (static_cast<int>(ctx.nondeg_idx.size()) < ctx.q && grew) {
    grew = false;
    for (int j = 0; j < h.nz() && static_cast<int>(ctx.nondeg_idx.size()) < ctx.q; ++j) {
      if (std::find(ctx.nondeg_idx.begin(), ctx.nondeg_idx.end(), j) != ctx.nondeg_idx.end())
        continue;
      std::vector<int> cand = ctx.nondeg_idx;
      cand.push_back(j);
      ExactMatrix g(static_cast<int>(cand.size()), static_cast<int>(cand.size()));
      for (size_t a = 0; a < cand.size(); ++a)
        for (size_t b = 0; b < cand.size(); ++b)
          g.at(static_cast<int>(a), static_cast<int>(b)) = ctx.levi0.at(cand[a], cand[b]);
      if (g.rank() == static_cast<int>(cand.size())) {
        ctx.nondeg_idx = cand;
        grew = true;
      }
    }
  }
  if (static_cast<int>(ctx.nondeg_idx.size()) != ctx.q)
    throw std::logic_error("tensor_context: no Levi-nondegenerate frame subset of full rank");

  // cubic tensor over bases (exact)
  ctx.tau3_zero = true;
  if (!ctx.kernel.empty()) {
    std::vector<TangentVec> ct_basis;
    for (int j = 0; j < h.nz(); ++j) {
      std::vector<GaussianRational> e(h.nz());
      e[j] = gr(1);
      ct_basis.push_back(TangentVec::hol_vec(e));
      ct_basis.push_back(TangentVec::anti_vec(e));
    }
    ct_basis.push_back(TangentVec::transversal());
    for (const auto& v3 : ct_basis)
      for (const auto& v2 : ctx.kernel)
        for (const auto& v1 : ctx.kernel)
          if (!tau3(ctx, v3, v2, v1).is_zero()) ctx.tau3_zero = false;
  }
  return ctx;
}

bool in_levi_kernel(const TensorContext& ctx, const std::vector<GaussianRational>& v) {
  int nz = ctx.model.nz();
  if (static_cast<int>(v.size()) != nz) return false;
  for (int k = 0; k < nz; ++k) {
    GaussianRational acc;
    for (int j = 0; j < nz; ++j) acc += v[j] * ctx.levi0.at(j, k);
    if (!acc.is_zero()) return false;
  }
  return true;
}

VectorField admissible_extension(const TensorContext& ctx,
                                 const std::vector<GaussianRational>& v) {
  VectorField base = frame_field(ctx.model, v);
  int q = ctx.q;
  if (q == 0) return base;
  // L = L_v + sum_s c_s L_s with <theta, [L, conj L_k]> = 0 for the
  // nondegenerate frame subset; linear in c (theta kills the frame fields)
  std::vector<std::vector<Jet>> m(q, std::vector<Jet>(q));
  std::vector<Jet> rhs(q);
  for (int k = 0; k < q; ++k) {
    const VectorField& Lk = ctx.frame[ctx.nondeg_idx[k]];
    rhs[k] = -pairing_fn(ctx, base, Lk.conj());
    for (int s = 0; s < q; ++s)
      m[k][s] = pairing_fn(ctx, ctx.frame[ctx.nondeg_idx[s]], Lk.conj());
  }
  std::vector<Jet> c = solve_jet_system(std::move(m), std::move(rhs));
  VectorField out = base;
  for (int s = 0; s < q; ++s) out = out + ctx.frame[ctx.nondeg_idx[s]].scaled(c[s]);
  return out;
}

GaussianRational tau3(const TensorContext& ctx, const TangentVec& v3,
                      const std::vector<GaussianRational>& v2,
                      const std::vector<GaussianRational>& v1b) {
  check_kernel(ctx, v2, "2 (K10)");
  check_kernel(ctx, v1b, "1 (conj K10)");
  VectorField L3 = extension_field(ctx.model, v3);
  VectorField L2 = frame_field(ctx.model, v2);
  VectorField L1 = frame_field(ctx.model, v1b).conj();
  Jet F = pairing_fn(ctx, L2, L1);
  return (L3.apply(F) * GaussianRational::i()).value0();
}

GaussianRational tau31(const TensorContext& ctx, const TangentVec& v3,
                       const std::vector<GaussianRational>& v2,
                       const std::vector<GaussianRational>& v1b) {
  check_ck(ctx, v3, "3 (CK)");
  check_kernel(ctx, v2, "2 (K10)");
  check_kernel(ctx, v1b, "1 (conj K10)");
  VectorField L3 = extension_field(ctx.model, v3);
  VectorField L2 = frame_field(ctx.model, v2);
  VectorField L1 = frame_field(ctx.model, v1b).conj();
  VectorField bb = VectorField::bracket(L3, VectorField::bracket(L2, L1));
  return (ctx.theta.pair(bb) * GaussianRational::i()).value0();
}

GaussianRational tau21(const TensorContext& ctx, const TangentVec& v3, const TangentVec& v2,
                       const TangentVec& v1) {
  if (!v3.in_CH()) throw std::invalid_argument("tau21: slot 3 must lie in CH");
  // two tensorial domains: H10 x H10 x conj-K10, and CH x CK x CK
  auto is_anti_kernel = [&](const TangentVec& v) {
    if (!v.is_anti()) return false;
    std::vector<GaussianRational> a(v.anti.size());
    for (size_t j = 0; j < v.anti.size(); ++j) a[j] = v.anti[j].conj();
    a.resize(ctx.model.nz());
    return in_levi_kernel(ctx, a);
  };
  auto is_ck = [&](const TangentVec& v) {
    if (!v.t.is_zero()) return false;
    std::vector<GaussianRational> hol = v.hol, antid(v.anti.size());
    hol.resize(ctx.model.nz());
    for (size_t j = 0; j < v.anti.size(); ++j) antid[j] = v.anti[j].conj();
    antid.resize(ctx.model.nz());
    return in_levi_kernel(ctx, hol) && in_levi_kernel(ctx, antid);
  };
  bool dom_a = v2.is_hol() && is_anti_kernel(v1);
  bool dom_b = is_ck(v2) && is_ck(v1);
  if (!dom_a && !dom_b)
    throw std::invalid_argument(
        "tau21: slots must lie in H10 x H10 x conj-K10 or in CH x CK x CK");
  VectorField L3 = extension_field(ctx.model, v3);
  VectorField L2 = extension_field(ctx.model, v2);
  VectorField L1 = extension_field(ctx.model, v1);
  OneForm w = lie_derivative(L3, lie_derivative(L2, ctx.theta));
  return w.pair(L1).value0();
}

GaussianRational tau4(const TensorContext& ctx, const TangentVec& v4, const TangentVec& v3,
                      const std::vector<GaussianRational>& v2,
                      const std::vector<GaussianRational>& v1b) {
  if (!ctx.tau3_zero)
    throw std::domain_error("tau4: cubic tensor does not vanish at this center");
  check_kernel(ctx, v2, "2 (K10)");
  check_kernel(ctx, v1b, "1 (conj K10)");
  VectorField L4 = extension_field(ctx.model, v4);
  VectorField L3 = extension_field(ctx.model, v3);
  VectorField L2 = admissible_extension(ctx, v2);
  VectorField L1 = admissible_extension(ctx, v1b).conj();
  Jet F = pairing_fn(ctx, L2, L1);
  return (L4.apply(L3.apply(F)) * GaussianRational::i()).value0();
}

GaussianRational tau4_bracket(const TensorContext& ctx, const TangentVec& v4,
                              const TangentVec& v3, const std::vector<GaussianRational>& v2,
                              const std::vector<GaussianRational>& v1b) {
  if (!ctx.tau3_zero)
    throw std::domain_error("tau4_bracket: cubic tensor does not vanish at this center");
  if (!v4.in_CH() || !v3.in_CH())
    throw std::invalid_argument("tau4_bracket: slots 3 and 4 must lie in CH");
  check_kernel(ctx, v2, "2 (K10)");
  check_kernel(ctx, v1b, "1 (conj K10)");
  VectorField L4 = extension_field(ctx.model, v4);
  VectorField L3 = extension_field(ctx.model, v3);
  VectorField L2 = admissible_extension(ctx, v2);
  VectorField L1 = admissible_extension(ctx, v1b).conj();
  VectorField b =
      VectorField::bracket(L4, VectorField::bracket(L3, VectorField::bracket(L2, L1)));
  return (ctx.theta.pair(b) * GaussianRational::i()).value0();
}

namespace {

// directional Wirtinger derivative in the kernel ring
Poly directional(const Poly& p, const std::vector<GaussianRational>& hol,
                 const std::vector<GaussianRational>& anti) {
  int nz = p.nz();
  Poly acc(nz);
  for (int j = 0; j < static_cast<int>(hol.size()); ++j)
    if (!hol[j].is_zero()) acc += p.wirtinger(VarId::z(j)) * hol[j];
  for (int j = 0; j < static_cast<int>(anti.size()); ++j)
    if (!anti[j].is_zero()) acc += p.wirtinger(VarId::zb(j)) * anti[j];
  return acc;
}

} // namespace

GaussianRational tau40_nf(const QuarticNormalForm& qnf, const CKVec& v4, const CKVec& v3,
                          const std::vector<GaussianRational>& v2,
                          const std::vector<GaussianRational>& v1b) {
  Poly p = qnf.phi4;
  p = directional(p, v4.hol, v4.anti);
  p = directional(p, v3.hol, v3.anti);
  p = directional(p, v2, {});
  std::vector<GaussianRational> v1(v1b.size());
  for (size_t j = 0; j < v1b.size(); ++j) v1[j] = v1b[j].conj();
  p = directional(p, {}, v1);
  return p.constant_term();
}

GaussianRational tau40_sym(const QuarticNormalForm& qnf, const CKVec& v4, const CKVec& v3,
                           const CKVec& v2, const CKVec& v1) {
  Poly p = qnf.phi4;
  p = directional(p, v4.hol, v4.anti);
  p = directional(p, v3.hol, v3.anti);
  p = directional(p, v2.hol, v2.anti);
  p = directional(p, v1.hol, v1.anti);
  return p.constant_term();
}

GaussianRational tau30_sym(const CubicNormalForm& cnf, const CKVec& v3, const CKVec& v2,
                           const CKVec& v1) {
  // cubic part of the normal form, differentiated in kernel directions only;
  // kernel slots sit after the Levi block
  int nz = cnf.model.nz();
  int q = cnf.levi_rank;
  Poly p = cnf.model.phi().poly().part_of_degree(3);
  auto widen = [&](const std::vector<GaussianRational>& a) {
    std::vector<GaussianRational> w(nz);
    for (size_t j = 0; j < a.size(); ++j) w[q + j] = a[j];
    return w;
  };
  p = directional(p, widen(v3.hol), widen(v3.anti));
  p = directional(p, widen(v2.hol), widen(v2.anti));
  p = directional(p, widen(v1.hol), widen(v1.anti));
  return p.constant_term();
}

std::vector<GaussianRational> to_nf_kernel_coords(const QuarticNormalForm& qnf,
                                                  const std::vector<GaussianRational>& v_input) {
  int nz = qnf.model.nz();
  auto lp = qnf.change.linear_part();
  // z block of the linearization (w never mixes into z expressions)
  ExactMatrix a(nz, nz);
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < nz; ++j) a.at(i, j) = lp[1 + i][1 + j];
  std::vector<GaussianRational> x = a.solve(v_input);
  for (int j = 0; j < qnf.levi_rank; ++j)
    if (!x[j].is_zero())
      throw std::logic_error("to_nf_kernel_coords: image is not supported on the kernel block");
  return std::vector<GaussianRational>(x.begin() + qnf.levi_rank, x.end());
}

TensorTable tau3_table(const TensorContext& ctx) {
  int nz = ctx.model.nz();
  int nk = static_cast<int>(ctx.kernel.size());
  TensorTable t;
  t.slots = {"CT", "K10", "conj-K10"};
  t.dims = {2 * nz + 1, nk, nk};
  t.frame_note =
      "CT basis: frame fields, conjugate frames, transversal; kernel basis from the Levi nullspace";
  std::vector<TangentVec> ct;
  for (int j = 0; j < nz; ++j) {
    std::vector<GaussianRational> e(nz);
    e[j] = gr(1);
    ct.push_back(TangentVec::hol_vec(e));
  }
  for (int j = 0; j < nz; ++j) {
    std::vector<GaussianRational> e(nz);
    e[j] = gr(1);
    ct.push_back(TangentVec::anti_vec(e));
  }
  ct.push_back(TangentVec::transversal());
  for (int a = 0; a < static_cast<int>(ct.size()); ++a)
    for (int b = 0; b < nk; ++b)
      for (int c = 0; c < nk; ++c) {
        GaussianRational v = tau3(ctx, ct[a], ctx.kernel[b], ctx.kernel[c]);
        if (!v.is_zero()) t.entries[{a, b, c}] = v;
      }
  return t;
}

TensorTable tau4_table(const TensorContext& ctx) {
  int nz = ctx.model.nz();
  int nk = static_cast<int>(ctx.kernel.size());
  TensorTable t;
  t.slots = {"CT", "CT", "K10", "conj-K10"};
  t.dims = {2 * nz + 1, 2 * nz + 1, nk, nk};
  t.frame_note =
      "CT basis: frame fields, conjugate frames, transversal; kernel basis from the Levi nullspace";
  std::vector<TangentVec> ct;
  for (int j = 0; j < nz; ++j) {
    std::vector<GaussianRational> e(nz);
    e[j] = gr(1);
    ct.push_back(TangentVec::hol_vec(e));
  }
  for (int j = 0; j < nz; ++j) {
    std::vector<GaussianRational> e(nz);
    e[j] = gr(1);
    ct.push_back(TangentVec::anti_vec(e));
  }
  ct.push_back(TangentVec::transversal());
  for (int a = 0; a < static_cast<int>(ct.size()); ++a)
    for (int b = 0; b < static_cast<int>(ct.size()); ++b)
      for (int c = 0; c < nk; ++c)
        for (int d = 0; d < nk; ++d) {
          GaussianRational v = tau4(ctx, ct[a], ct[b], ctx.kernel[c], ctx.kernel[d]);
          if (!v.is_zero()) t.entries[{a, b, c, d}] = v;
        }
  return t;
}

TensorTable tau40_table(const QuarticNormalForm& qnf) {
  int nk = qnf.model.nz() - qnf.levi_rank;
  TensorTable t;
  t.slots = {"CK", "CK", "K10", "conj-K10"};
  t.dims = {2 * nk, 2 * nk, nk, nk};
  t.frame_note = "normal-form kernel coordinates; CK basis: kernel frames then conjugates";
  auto ck = [&](int a) {
    std::vector<GaussianRational> e(nk);
    e[a % nk] = gr(1);
    if (a < nk) return CKVec::hol_vec(e);
    CKVec v;
    v.hol.assign(nk, GaussianRational());
    v.anti = e;
    return v;
  };
  auto ek = [&](int a) {
    std::vector<GaussianRational> e(nk);
    e[a] = gr(1);
    return e;
  };
  for (int a = 0; a < 2 * nk; ++a)
    for (int b = 0; b < 2 * nk; ++b)
      for (int c = 0; c < nk; ++c)
        for (int d = 0; d < nk; ++d) {
          GaussianRational v = tau40_nf(qnf, ck(a), ck(b), ek(c), ek(d));
          if (!v.is_zero()) t.entries[{a, b, c, d}] = v;
        }
  return t;
}

Poly tau40_diagonal_polynomial(const QuarticNormalForm& qnf) {
  // tau4(v, conj v, v, conj v) with formal v; by multilinearity this is
  // sum_{a,b,c,d} tau40(e_a, conj e_b, e_c, conj e_d) v_a conj(v_b) v_c conj(v_d)
  int nk = qnf.model.nz() - qnf.levi_rank;
  Poly out(nk);
  auto ek = [&](int a) {
    std::vector<GaussianRational> e(nk);
    e[a] = gr(1);
    return e;
  };
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      for (int c = 0; c < nk; ++c)
        for (int d = 0; d < nk; ++d) {
          CKVec v4 = CKVec::hol_vec(ek(a));
          CKVec v3;
          v3.hol.assign(nk, GaussianRational());
          v3.anti = ek(b);
          GaussianRational val = tau40_nf(qnf, v4, v3, ek(c), ek(d));
          if (val.is_zero()) continue;
          Mono m(VarId::slot_count(nk), 0);
          m[VarId::z(a).slot(nk)] += 1;
          m[VarId::zb(b).slot(nk)] += 1;
          m[VarId::z(c).slot(nk)] += 1;
          m[VarId::zb(d).slot(nk)] += 1;
          out += Poly::monomial(nk, m, val);
        }
  return out;
}

namespace {

TwistDiagnostic run_twist(const Hypersurface& h, int kernel_idx, int nondeg_idx, bool quartic,
                          bool bracket_route) {
  TensorContext ctx = tensor_context(h);
  auto value = [&](long cval) {
    GaussianRational c(cval);
    std::vector<GaussianRational> ek(h.nz()), eb(h.nz());
    ek[kernel_idx] = gr(1);
    eb[nondeg_idx] = gr(1);
    VectorField Lk = frame_field(h, ek);
    VectorField Lb = frame_field(h, eb);
    Jet tw(Poly::var(h.nz(), VarId::z(kernel_idx)) * c, h.order() - 1);
    VectorField L = Lk + Lb.scaled(tw); // kernel value, non-kernel 1-jet
    if (!quartic) {
      VectorField L3 = frame_field(h, ek);
      VectorField L1c = Lb.conj();
      if (bracket_route) {
        VectorField bb = VectorField::bracket(L3, VectorField::bracket(L, L1c));
        return (ctx.theta.pair(bb) * GaussianRational::i()).value0();
      }
      Jet F = ctx.theta.pair(VectorField::bracket(L, L1c));
      return (L3.apply(F) * GaussianRational::i()).value0();
    }
    if (bracket_route) {
      VectorField b = VectorField::bracket(
          L, VectorField::bracket(L.conj(), VectorField::bracket(L, L.conj())));
      return (ctx.theta.pair(b) * GaussianRational::i()).value0();
    }
    Jet F = ctx.theta.pair(VectorField::bracket(L, L.conj()));
    return (L.apply(L.conj().apply(F)) * GaussianRational::i()).value0();
  };
  return TwistDiagnostic{value(0), value(1)};
}

} // namespace

TwistDiagnostic twisted_triple_bracket(const Hypersurface& h, int kernel_idx, int nondeg_idx) {
  return run_twist(h, kernel_idx, nondeg_idx, false, true);
}
TwistDiagnostic twisted_levi_derivative(const Hypersurface& h, int kernel_idx, int nondeg_idx) {
  return run_twist(h, kernel_idx, nondeg_idx, false, false);
}
TwistDiagnostic twisted_quartic_derivative(const Hypersurface& h, int kernel_idx, int nondeg_idx) {
  return run_twist(h, kernel_idx, nondeg_idx, true, false);
}
TwistDiagnostic twisted_quartic_bracket(const Hypersurface& h, int kernel_idx, int nondeg_idx) {
  return run_twist(h, kernel_idx, nondeg_idx, true, true);
}

} // namespace crgeo
