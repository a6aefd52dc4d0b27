#include "crgeo/normal_form.hpp"

#include <algorithm>
#include <sstream>

namespace crgeo {

namespace {

GaussianRational gr(long n) { return GaussianRational(n); }

// (2i)^s
GaussianRational two_i_pow(int s) {
  GaussianRational r(1);
  for (int k = 0; k < s; ++k) r *= GaussianRational(mpq_class(0), mpq_class(2));
  return r;
}

Hypersurface apply_step(const Hypersurface& cur, const CoordChange& step) {
  Poly rho = cur.rho_normalized_ambient();
  Poly rho2 = step.apply(rho, cur.order());
  Jet phi2 = solve_graph_jet(rho2, cur.nz(), cur.order());
  return cur.with_phi(phi2, CoordChange::identity(cur.nz()));
}

// Kill all harmonic terms (z-bidegree (k,0)/(0,k), including pure u powers)
// of total degree m via w -> w + g(z, w).
CoordChange harmonic_step(const Hypersurface& h, int m) {
  int nz = h.nz();
  Poly g(nz);
  const Poly part_m = h.phi().poly().part_of_degree(m);
  for (const auto& [mono, c] : part_m.terms()) {
    auto [zdeg, zbdeg] = Poly::z_bidegree(mono, nz);
    if (zbdeg != 0) continue; // conjugates ride along with the real pair
    int s = mono[VarId::u().slot(nz)];
    Mono hol(VarId::slot_count(nz), 0);
    for (int j = 0; j < nz; ++j) hol[VarId::z(j).slot(nz)] = mono[VarId::z(j).slot(nz)];
    hol[VarId::w().slot(nz)] = static_cast<uint16_t>(s);
    GaussianRational gamma = c * two_i_pow(s);
    if (zdeg == 0) gamma = gamma * GaussianRational::rational(1, 2); // self-conjugate pure-u term
    g += Poly::monomial(nz, hol, gamma);
  }
  CoordChange step = CoordChange::identity(nz);
  step.w_expr = step.w_expr + g;
  return step;
}

Hypersurface remove_harmonic_orders(Hypersurface cur, int from, int to, CoordChange& acc) {
  for (int m = from; m <= to; ++m) {
    CoordChange step = harmonic_step(cur, m);
    if (step.is_identity()) continue;
    acc = acc.then(step, cur.order());
    cur = apply_step(cur, step);
  }
  return cur;
}

} // namespace

bool CubicNormalForm::pseudoconvex_cubic_shape() const {
  for (const auto& d : pencil_diag)
    if (!d.is_zero()) return false;
  int nz = model.nz();
  for (const auto& [mono, c] : phi21.terms()) {
    for (int j = levi_rank; j < nz; ++j)
      if (mono[VarId::z(j).slot(nz)] != 0) return false; // kernel-slot holomorphic factor
  }
  return true;
}

bool CubicNormalForm::tau3_vanishes() const {
  // no cubic monomial carries both a kernel z and a kernel conj(z) factor
  int nz = model.nz();
  const Poly cubic_part = model.phi().poly().part_of_degree(3);
  for (const auto& [mono, c] : cubic_part.terms()) {
    int kz = 0, kzb = 0;
    for (int j = levi_rank; j < nz; ++j) {
      kz += mono[VarId::z(j).slot(nz)];
      kzb += mono[VarId::zb(j).slot(nz)];
    }
    if (kz > 0 && kzb > 0) return false;
  }
  return true;
}

CubicNormalForm cubic_normal_form(const Hypersurface& h) {
  const int nz = h.nz();
  const int N = h.order();
  CoordChange acc = CoordChange::identity(nz);
  Hypersurface cur = h;

  // order 2: harmonic removal, then Levi block diagonalization
  cur = remove_harmonic_orders(cur, 2, 2, acc);

  ExactMatrix H(nz, nz);
  for (int j = 0; j < nz; ++j)
    for (int k = 0; k < nz; ++k) {
      Mono m(VarId::slot_count(nz), 0);
      m[VarId::z(j).slot(nz)] = 1;
      m[VarId::zb(k).slot(nz)] += 1;
      H.at(j, k) = cur.phi().poly().coeff(m);
    }
  auto [Q, D] = H.congruence_diagonalize();
  // substitution matrix: z_old = conj(Q) z_mid; columns then reordered so the
  // diagonal reads positives, negatives, zeros
  std::vector<int> order_idx;
  for (int pass = 0; pass < 3; ++pass)
    for (int k = 0; k < nz; ++k) {
      const mpq_class& v = D.at(k, k).re();
      bool take = (pass == 0 && v > 0) || (pass == 1 && v < 0) || (pass == 2 && v == 0);
      if (take) order_idx.push_back(k);
    }
  Signature sig;
  std::vector<GaussianRational> diag;
  for (int t = 0; t < nz; ++t) {
    const mpq_class& v = D.at(order_idx[t], order_idx[t]).re();
    if (v > 0) ++sig.plus;
    else if (v < 0) ++sig.minus;
    else ++sig.zero;
    diag.emplace_back(v);
  }
  int q = sig.plus + sig.minus;

  ExactMatrix Qc = Q.conj();
  CoordChange diag_step = CoordChange::identity(nz);
  for (int j = 0; j < nz; ++j) {
    Poly e(nz);
    for (int t = 0; t < nz; ++t) {
      const GaussianRational& a = Qc.at(j, order_idx[t]);
      if (!a.is_zero()) e += Poly::var(nz, VarId::z(t)) * a;
    }
    diag_step.z_exprs[j] = e;
  }
  if (!diag_step.is_identity()) {
    acc = acc.then(diag_step, N);
    cur = apply_step(cur, diag_step);
  }

  // order 3: harmonic removal, then shears against the nondegenerate block
  cur = remove_harmonic_orders(cur, 3, 3, acc);

  {
    std::vector<Poly> shears(nz, Poly(nz));
    bool any = false;
    const Poly cubic = cur.phi().poly().part_of_degree(3);
    for (const auto& [mono, c] : cubic.terms()) {
      auto [zdeg, zbdeg] = Poly::z_bidegree(mono, nz);
      (void)zdeg;
      if (zbdeg != 1) continue;
      int k = -1;
      for (int j = 0; j < nz; ++j)
        if (mono[VarId::zb(j).slot(nz)] == 1) k = j;
      if (k >= q) continue; // kernel-slot conj(z): kept (phi21 / pencil classes)
      // halve when the conjugate monomial is also enumerated by this loop
      Mono cm = Poly::monomial(nz, mono, gr(1)).conj().terms().begin()->first;
      auto [czdeg, czbdeg] = Poly::z_bidegree(cm, nz);
      (void)czdeg;
      bool conj_also = false;
      if (czbdeg == 1) {
        for (int j = 0; j < q; ++j)
          if (cm[VarId::zb(j).slot(nz)] == 1) conj_also = true;
      }
      GaussianRational ch = conj_also ? c * GaussianRational::rational(1, 2) : c;
      int s = mono[VarId::u().slot(nz)];
      Mono hol(VarId::slot_count(nz), 0);
      for (int j = 0; j < nz; ++j) hol[VarId::z(j).slot(nz)] = mono[VarId::z(j).slot(nz)];
      hol[VarId::w().slot(nz)] = static_cast<uint16_t>(s);
      GaussianRational sigma = -(ch * two_i_pow(s)) / diag[k];
      shears[k] += Poly::monomial(nz, hol, sigma);
      any = true;
    }
    if (any) {
      CoordChange step = CoordChange::identity(nz);
      for (int k = 0; k < nz; ++k) step.z_exprs[k] = step.z_exprs[k] + shears[k];
      acc = acc.then(step, N);
      cur = apply_step(cur, step);
    }
  }

  // u-pencil on the kernel block, diagonalized by a second congruence
  int nk = nz - q;
  std::vector<GaussianRational> pencil(nk);
  if (nk > 0) {
    ExactMatrix Pu(nk, nk);
    for (int a = 0; a < nk; ++a)
      for (int b = 0; b < nk; ++b) {
        Mono m(VarId::slot_count(nz), 0);
        m[VarId::u().slot(nz)] = 1;
        m[VarId::z(q + a).slot(nz)] += 1;
        m[VarId::zb(q + b).slot(nz)] += 1;
        Pu.at(a, b) = cur.phi().poly().coeff(m);
      }
    if (!Pu.is_zero()) {
      auto [Qp, Dp] = Pu.congruence_diagonalize();
      ExactMatrix Qpc = Qp.conj();
      CoordChange step = CoordChange::identity(nz);
      for (int a = 0; a < nk; ++a) {
        Poly e(nz);
        for (int b = 0; b < nk; ++b) {
          const GaussianRational& x = Qpc.at(a, b);
          if (!x.is_zero()) e += Poly::var(nz, VarId::z(q + b)) * x;
        }
        step.z_exprs[q + a] = e;
      }
      if (!step.is_identity()) {
        acc = acc.then(step, N);
        cur = apply_step(cur, step);
      }
      for (int a = 0; a < nk; ++a) pencil[a] = Dp.at(a, a);
    }
  }

  CubicNormalForm out;
  out.model = cur;
  out.change = acc;
  out.levi_rank = q;
  out.signature = sig;
  out.levi_diag = diag;
  out.pencil_diag = pencil;
  for (const auto& p : pencil)
    out.eps.push_back(p.re() > 0 ? 1 : (p.re() < 0 ? -1 : 0));

  Poly phi21(nz);
  const Poly cubic_terms = cur.phi().poly().part_of_degree(3);
  for (const auto& [mono, c] : cubic_terms.terms()) {
    auto [zdeg, zbdeg] = Poly::z_bidegree(mono, nz);
    if (zdeg == 2 && zbdeg == 1 && mono[VarId::u().slot(nz)] == 0) phi21 += Poly::monomial(nz, mono, c);
  }
  out.phi21 = phi21;

  // shape assertions: the remaining cubic is 2 Re phi21 + pencil
  Poly pencil_poly(nz);
  for (int a = 0; a < nk; ++a) {
    Mono m(VarId::slot_count(nz), 0);
    m[VarId::u().slot(nz)] = 1;
    m[VarId::z(q + a).slot(nz)] += 1;
    m[VarId::zb(q + a).slot(nz)] += 1;
    pencil_poly += Poly::monomial(nz, m, pencil[a]);
  }
  Poly cubic = cur.phi().poly().part_of_degree(3);
  if (cubic != phi21 + phi21.conj() + pencil_poly)
    throw NormalFormError("cubic normal form left unexpected cubic terms: " + cubic.str());
  for (const auto& [mono, c] : out.phi21.terms())
    for (int j = 0; j < q; ++j)
      if (mono[VarId::zb(j).slot(nz)] != 0)
        throw NormalFormError("cubic normal form kept a nondegenerate conj(z) slot");
  return out;
}

WeightVector QuarticNormalForm::weights() const {
  std::vector<long> v{1};
  int nz = model.nz();
  for (int j = 0; j < levi_rank; ++j) v.push_back(2);
  for (int j = levi_rank; j < nz; ++j) v.push_back(4);
  return WeightVector::finite(v);
}

std::vector<int> QuarticNormalForm::kernel_slots() const {
  std::vector<int> s;
  for (int j = levi_rank; j < model.nz(); ++j) s.push_back(j);
  return s;
}

QuarticNormalForm quartic_normal_form(const Hypersurface& h) {
  CubicNormalForm cnf = cubic_normal_form(h);
  if (!cnf.tau3_vanishes()) {
    std::ostringstream os;
    os << "quartic normal form needs a vanishing cubic tensor at the center; "
       << "kernel-sector cubic terms remain: "
       << cnf.model.phi().poly().part_of_degree(3).str();
    throw NormalFormError(os.str());
  }

  const int nz = h.nz();
  const int N = h.order();
  const int q = cnf.levi_rank;
  CoordChange acc = cnf.change;
  Hypersurface cur = remove_harmonic_orders(cnf.model, 4, N, acc);

  QuarticNormalForm out;
  out.model = cur;
  out.change = acc;
  out.levi_rank = q;
  out.levi_diag = cnf.levi_diag;

  // phi4: u-free quartic supported on kernel slots only, re-indexed to a
  // kernel ring with nz' = nz - q
  int nk = nz - q;
  Poly phi4(nk), phi31(nk), phi22(nk);
  const Poly quartic_terms = cur.phi().poly().part_of_degree(4);
  for (const auto& [mono, c] : quartic_terms.terms()) {
    if (mono[VarId::u().slot(nz)] != 0) continue;
    bool kernel_only = true;
    for (int j = 0; j < q && kernel_only; ++j)
      if (mono[VarId::z(j).slot(nz)] != 0 || mono[VarId::zb(j).slot(nz)] != 0) kernel_only = false;
    if (!kernel_only) continue;
    Mono km(VarId::slot_count(nk), 0);
    for (int a = 0; a < nk; ++a) {
      km[VarId::z(a).slot(nk)] = mono[VarId::z(q + a).slot(nz)];
      km[VarId::zb(a).slot(nk)] = mono[VarId::zb(q + a).slot(nz)];
    }
    Poly term = Poly::monomial(nk, km, c);
    phi4 += term;
    auto [zdeg, zbdeg] = Poly::z_bidegree(km, nk);
    if (zdeg == 3 && zbdeg == 1) phi31 += term;
    if (zdeg == 2 && zbdeg == 2) phi22 += term;
  }
  out.phi4 = phi4;
  out.phi31 = phi31;
  out.phi22 = phi22;

  // weight filter: everything outside phi2 and phi4 has weight > 1
  WeightVector lam = out.weights();
  bool ok = true;
  for (const auto& [mono, c] : cur.phi().poly().terms()) {
    mpq_class wt = lam.weight_of_monomial(mono, nz);
    if (wt > 1) continue;
    auto [zdeg, zbdeg] = Poly::z_bidegree(mono, nz);
    int deg = mono_degree(mono);
    bool is_phi2 = deg == 2 && zdeg == 1 && zbdeg == 1 && mono[VarId::u().slot(nz)] == 0;
    bool kernel_only = true;
    for (int j = 0; j < q; ++j)
      if (mono[VarId::z(j).slot(nz)] != 0 || mono[VarId::zb(j).slot(nz)] != 0) kernel_only = false;
    bool is_phi4 =
        deg == 4 && kernel_only && mono[VarId::u().slot(nz)] == 0 && zdeg >= 1 && zbdeg >= 1;
    if (!is_phi2 && !is_phi4) ok = false;
  }
  out.weight_filter_ok = ok;
  if (!ok) throw NormalFormError("quartic normal form failed the weight filter");
  return out;
}

ExactMatrix gram_matrix_22(const Poly& phi22, int nvars) {
  std::vector<std::pair<int, int>> basis;
  for (int a = 0; a < nvars; ++a)
    for (int b = a; b < nvars; ++b) basis.emplace_back(a, b);
  auto index_of = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == std::make_pair(a, b)) return static_cast<int>(i);
    return -1;
  };
  int dim = static_cast<int>(basis.size());
  ExactMatrix G(dim, dim);
  int nz = phi22.nz();
  for (const auto& [mono, c] : phi22.terms()) {
    std::vector<int> zs, zbs;
    for (int j = 0; j < nz; ++j) {
      for (int r = 0; r < mono[VarId::z(j).slot(nz)]; ++r) zs.push_back(j);
      for (int r = 0; r < mono[VarId::zb(j).slot(nz)]; ++r) zbs.push_back(j);
    }
    if (zs.size() != 2 || zbs.size() != 2)
      throw std::invalid_argument("gram_matrix_22: polynomial is not of bidegree (2,2)");
    G.at(index_of(zs[0], zs[1]), index_of(zbs[0], zbs[1])) = c;
  }
  return G;
}

namespace {

// Deterministic sample directions for witness search.
std::vector<std::vector<GaussianRational>> sample_directions(int k) {
  std::vector<std::vector<GaussianRational>> out;
  auto push = [&](std::vector<GaussianRational> v) { out.push_back(std::move(v)); };
  for (int a = 0; a < k; ++a) {
    std::vector<GaussianRational> e(k);
    e[a] = gr(1);
    push(e);
  }
  std::vector<GaussianRational> scalars{gr(1), gr(-1), GaussianRational::i(),
                                        -GaussianRational::i(), gr(1) + GaussianRational::i(),
                                        GaussianRational::rational(1, 2)};
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (const auto& s : scalars) {
        std::vector<GaussianRational> e(k);
        e[a] = gr(1);
        e[b] = s;
        push(e);
      }
  if (k > 0) push(std::vector<GaussianRational>(k, gr(1)));
  return out;
}

} // namespace

PshCertificate is_psh_quartic(const Poly& phi4_in, int nvars) {
  PshCertificate cert;
  Poly phi4 = phi4_in.with_nz(std::max(nvars, phi4_in.nz()));
  int nz = phi4.nz();
  if (!phi4.is_real()) throw std::invalid_argument("is_psh_quartic: polynomial is not real");

  // witness search: exact Hessian signature at sampled rational directions
  std::vector<std::vector<Poly>> hess(nvars, std::vector<Poly>(nvars));
  for (int j = 0; j < nvars; ++j)
    for (int kk = 0; kk < nvars; ++kk)
      hess[j][kk] = phi4.wirtinger(VarId::z(j)).wirtinger(VarId::zb(kk));
  for (const auto& dir : sample_directions(nvars)) {
    std::vector<GaussianRational> slots(VarId::slot_count(nz));
    for (int j = 0; j < nvars; ++j) {
      slots[VarId::z(j).slot(nz)] = dir[j];
      slots[VarId::zb(j).slot(nz)] = dir[j].conj();
    }
    ExactMatrix Hm(nvars, nvars);
    for (int j = 0; j < nvars; ++j)
      for (int kk = 0; kk < nvars; ++kk) Hm.at(j, kk) = hess[j][kk].eval(slots);
    if (Hm.hermitian_signature().minus > 0) {
      cert.status = PshCertificate::Status::witness_found;
      cert.tier = "hessian-witness";
      cert.witness = dir;
      return cert;
    }
  }

  auto split = phi4.bidegree_split();
  bool only22 = true;
  for (const auto& [kdeg, part] : split)
    if (kdeg != std::make_pair(2, 2) && !part.is_zero()) only22 = false;
  if (only22) {
    Poly phi22 = split.count({2, 2}) ? split.at({2, 2}) : Poly(nz);
    if (gram_matrix_22(phi22, nvars).hermitian_signature().minus == 0) {
      cert.status = PshCertificate::Status::certified;
      cert.tier = "gram-psd";
      return cert;
    }
  }
  cert.status = PshCertificate::Status::sampled_no_witness;
  cert.tier = "sampled";
  return cert;
}

} // namespace crgeo
