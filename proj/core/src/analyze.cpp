#include "crgeo/analyze.hpp"

#include <sstream>

#include "crgeo/boundary_system.hpp"
#include "crgeo/sheaves.hpp"

namespace crgeo {

namespace {

GaussianRational gr(long n) { return GaussianRational(n); }

json jnum(const GaussianRational& x) { return x.str(); }

json jvec(const std::vector<GaussianRational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(jnum(x));
  return a;
}

json jbasis(const std::vector<std::vector<GaussianRational>>& b) {
  json a = json::array();
  for (const auto& v : b) a.push_back(jvec(v));
  return a;
}

json jtable(const TensorTable& t) {
  json out;
  out["slots"] = t.slots;
  out["dims"] = t.dims;
  out["frame"] = t.frame_note;
  json entries = json::array();
  for (const auto& [idx, val] : t.entries) {
    json e;
    e["index"] = idx;
    e["value"] = jnum(val);
    entries.push_back(e);
  }
  out["entries"] = entries;
  return out;
}

struct ClaimSink {
  json claims = json::array();
  bool all_pass = true;

  void add(const std::string& id, bool pass, const std::string& detail = "") {
    json c;
    c["id"] = id;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    claims.push_back(c);
    all_pass = all_pass && pass;
  }
  void note(const std::string& id, const std::string& status) {
    json c;
    c["id"] = id;
    c["status"] = status;
    claims.push_back(c);
  }
};

json analyze_point(const HypersurfaceSpec& spec, const AmbientPoint& pt,
                   const AnalyzeConfig& cfg, int order, bool* pass_out) {
  json out;
  ClaimSink claims;
  out["point"] = json{{"z", jvec(pt.z)}, {"w", jnum(pt.w)}};

  Hypersurface h = Hypersurface::at_point(spec.rho, spec.n, pt, order);
  out["chart"] = json{{"graph_exact", h.graph_exact()},
                      {"order", order},
                      {"phi", h.phi().poly().str()}};

  // Levi data
  auto [q, kernel] = levi_rank_kernel(h);
  ExactMatrix levi0 = levi_matrix0(h);
  Signature sig = levi0.hermitian_signature();
  out["levi"] = json{{"rank", q},
                     {"signature", json{{"plus", sig.plus}, {"minus", sig.minus}, {"zero", sig.zero}}},
                     {"kernel_basis", jbasis(kernel)}};
  claims.add("levi-matrix-hermitian", levi0.is_hermitian());

  PseudoconvexCertificate psc = is_pseudoconvex_at(h, cfg.psc_samples);
  out["pseudoconvex"] = json{{"psd_at_center", psc.psd_at_center},
                             {"samples_checked", psc.samples_checked},
                             {"psd_at_samples", psc.psd_at_samples},
                             {"verdict", psc.verdict()}};

  TensorContext ctx = tensor_context(h);
  out["tau3"] = jtable(tau3_table(ctx));
  out["tau3_zero"] = ctx.tau3_zero;
  if (psc.verdict()) claims.add("cubic-vanishing-pseudoconvex", ctx.tau3_zero);

  // order-3 normal form
  CubicNormalForm cnf = cubic_normal_form(h);
  out["cubic_normal_form"] =
      json{{"levi_diag", jvec(cnf.levi_diag)},
           {"phi21", cnf.phi21.str()},
           {"pencil_diag", jvec(cnf.pencil_diag)},
           {"eps", cnf.eps}};
  if (psc.verdict())
    claims.add("pseudoconvex-cubic-shape", cnf.pseudoconvex_cubic_shape());

  // Lie-derivative cubic tensor against the (2,1) normal-form coefficients:
  // proportional with one global constant, calibrated here and reported
  if (!cnf.phi21.is_zero() && cnf.levi_rank < h.nz()) {
    int nz = h.nz();
    TensorContext nfctx = tensor_context(cnf.model);
    const auto& [mono, coeff] = *cnf.phi21.terms().begin();
    int ha = -1, hb = -1, kc = -1;
    for (int j = 0; j < nz; ++j) {
      for (int r = 0; r < mono[VarId::z(j).slot(nz)]; ++r) (ha < 0 ? ha : hb) = j;
      if (mono[VarId::zb(j).slot(nz)] == 1) kc = j;
    }
    if (hb < 0) hb = ha;
    auto unit = [&](int j) {
      std::vector<GaussianRational> e(nz);
      e[j] = gr(1);
      return e;
    };
    GaussianRational lie = tau21(nfctx, TangentVec::hol_vec(unit(ha)),
                                 TangentVec::hol_vec(unit(hb)), TangentVec::anti_vec(unit(kc)));
    Poly cubic3 = cnf.model.phi().poly().part_of_degree(3);
    GaussianRational nfc = cubic3.wirtinger(VarId::z(ha))
                               .wirtinger(VarId::z(hb))
                               .wirtinger(VarId::zb(kc))
                               .constant_term();
    if (!nfc.is_zero()) {
      out["tau21_phi21_ratio"] = jnum(lie / nfc);
      claims.add("tau21-matches-phi21-up-to-constant", !lie.is_zero());
    }
  }

  if (!ctx.tau3_zero) {
    claims.note("quartic-data", "skipped: cubic tensor does not vanish at this center");
    out["claims"] = claims.claims;
    out["all_claims_pass"] = claims.all_pass;
    *pass_out = claims.all_pass;
    return out;
  }

  QuarticNormalForm qnf = quartic_normal_form(h);
  int nk = h.nz() - qnf.levi_rank;
  out["quartic_normal_form"] = json{{"levi_rank", qnf.levi_rank},
                                    {"phi4", qnf.phi4.str()},
                                    {"phi31", qnf.phi31.str()},
                                    {"phi22", qnf.phi22.str()},
                                    {"weights", qnf.weights().str()}};
  claims.add("quartic-weight-filter", qnf.weight_filter_ok);
  out["tau40"] = jtable(tau40_table(qnf));

  // cross-route equality over the kernel bases
  {
    bool equal = true;
    for (const auto& va : ctx.kernel)
      for (const auto& vb : ctx.kernel) {
        // anti slots from conj(K10): the common domain of the three routes
        std::vector<GaussianRational> vbc(vb.size());
        for (size_t j = 0; j < vb.size(); ++j) vbc[j] = vb[j].conj();
        GaussianRational deriv =
            tau4(ctx, TangentVec::hol_vec(va), TangentVec::anti_vec(vbc), va, vb);
        GaussianRational brack =
            tau4_bracket(ctx, TangentVec::hol_vec(va), TangentVec::anti_vec(vbc), va, vb);
        auto na = to_nf_kernel_coords(qnf, va);
        auto nb = to_nf_kernel_coords(qnf, vb);
        GaussianRational nfv =
            tau40_nf(qnf, CKVec::hol_vec(na), CKVec::hol_vec(nb).conj(), na, nb);
        if (deriv != brack || deriv != nfv) equal = false;
      }
    claims.add("quartic-route-equality", equal);
  }

  if (nk > 0) {
    PshCertificate psh22 = is_psh_quartic(qnf.phi22, nk);
    out["phi22_psh"] = json{{"status", psh22.tier},
                            {"certified", psh22.is_psh_certified()}};
    if (psc.verdict()) claims.add("phi22-plurisubharmonic", psh22.is_psh_certified());
  }

  // positivity samples (pseudoconvex only)
  if (psc.verdict() && !ctx.kernel.empty()) {
    bool pos = true;
    std::vector<GaussianRational> scal{gr(1), gr(-1), GaussianRational::i(),
                                       GaussianRational::rational(1, 2),
                                       gr(1) + GaussianRational::i()};
    int count = 0;
    for (const auto& s1 : scal)
      for (const auto& s2 : scal) {
        TangentVec v;
        v.hol.resize(h.nz());
        for (int j = 0; j < h.nz(); ++j) v.hol[j] = s1 * GaussianRational(j + 1);
        v.anti.resize(h.nz());
        for (int j = 0; j < h.nz(); ++j) v.anti[j] = v.hol[j].conj();
        v.t = GaussianRational(s2.re());
        std::vector<GaussianRational> k(h.nz());
        for (size_t b = 0; b < ctx.kernel.size(); ++b)
          for (int j = 0; j < h.nz(); ++j)
            k[j] += ctx.kernel[b][j] * (b == 0 ? s2 : s1);
        GaussianRational val = tau4(ctx, v, v, k, k);
        ++count;
        if (!val.is_real() || val.re() < 0) pos = false;
      }
    claims.add("quartic-positivity", pos, std::to_string(count) + " sampled argument tuples");
  }

  // type and multitype (pseudoconvex hypotheses)
  if (psc.verdict()) {
    TypeVerdict tv = dangelo_type_le4(h);
    json jt;
    jt["verdict"] = tv.str();
    jt["tier"] = tv.tier;
    if (tv.zero_direction) jt["zero_direction"] = jvec(*tv.zero_direction);
    if (tv.numeric_min) {
      jt["numeric_min"] = *tv.numeric_min;
      jt["tolerance"] = 1e-9;
    }
    out["type"] = jt;
    claims.add("type-never-3", true, "verdict domain excludes 3 by construction");

    MultitypePrefix mt = multitype_prefix(h);
    out["multitype"] = json{{"prefix", mt.str()},
                            {"entries", mt.entries()},
                            {"admissible", mt.admissible},
                            {"tail_vanishes_at_order", mt.tail_vanishes_at_order}};
    claims.add("multitype-admissible", mt.admissible);

    KernelCoincidenceReport kc = kernel_coincidence(qnf);
    out["tau40_kernels"] = json{{"slot1", jbasis(kc.slot1_kernel)},
                                {"slot2", jbasis(kc.slot2_kernel)},
                                {"slot3", jbasis(kc.slot3_kernel)},
                                {"slot4", jbasis(kc.slot4_kernel)},
                                {"phi4_hol_kernel", jbasis(kc.phi4_hol_kernel)}};
    claims.add("kernel-coincidence", kc.slot12_match_hol_kernel &&
                                         kc.slot3_matches_hol_kernel &&
                                         kc.slot4_matches_conj_kernel);

    TangentSpaceS ts = tangent_space_S(h);
    out["tangent_space_S"] = json{{"dim", ts.dim},
                                  {"totally_real_intersection",
                                   ts.intersection_with_K_totally_real}};
    if (tv.kind == TypeVerdict::Kind::type4)
      claims.add("containing-submanifold-totally-real", ts.intersection_with_K_totally_real);
  }

  // boundary system trace
  {
    BoundarySystem bs = init_boundary_system(h);
    json steps = json::array();
    bool reduction_ok = true;
    std::vector<VectorField> admissible;
    for (const auto& kv : ctx.kernel) admissible.push_back(admissible_extension(ctx, kv));
    for (size_t c = 0; c < admissible.size(); ++c) {
      BoundaryStepResult res = boundary_system_step(bs, admissible[c], cfg.weight_budget);
      json st;
      st["candidate"] = static_cast<int>(c);
      st["success"] = res.success;
      if (res.success) {
        st["alpha"] = res.alpha;
        st["list"] = res.chosen.str();
        st["used_imaginary"] = res.used_imaginary;
        st["r_derivative"] = jnum(res.r_derivative);
      } else {
        st["exhausted_at_budget"] = cfg.weight_budget;
      }
      st["lists_tried"] = static_cast<int>(res.tried.size());
      steps.push_back(st);
    }
    if (!admissible.empty()) {
      reduction_ok = quartic_reduction_check(ctx, admissible);
      claims.add("boundary-quartic-reduction", reduction_ok);
      if (psc.verdict())
        claims.add("boundary-length3-vanishing", length3_vanishing(ctx, admissible));
    }
    out["boundary_system"] = json{{"block_size", static_cast<int>(bs.block.size())},
                                  {"steps", steps}};
  }

  // sheaf and ideal checks on exact graph models
  if (h.graph_exact() && !ctx.kernel.empty()) {
    auto sample = find_rank_le_points(h, q, cfg.locus_samples, 4);
    json sheaf;
    sheaf["rank_locus_samples"] = static_cast<int>(sample.size());
    std::vector<XField> vfam;
    for (int idx : ctx.nondeg_idx) vfam.push_back(x_frame_basis(h, idx));
    std::vector<XField> comp;
    if (static_cast<int>(vfam.size()) == q && q > 0) comp = levi_orthogonal_complement(h, vfam);
    else if (q == 0)
      for (int j = 0; j < h.nz(); ++j) comp.push_back(x_frame_basis(h, j));
    bool member_ok = true;
    for (const auto& f : comp)
      if (!sheaf_membership_S10q(h, f, q, sample).passes) member_ok = false;
    sheaf["complement_membership"] = member_ok;
    claims.add("orthogonal-complement-in-sheaf", member_ok,
               "sampled verdict over the rank locus sample");

    if (!comp.empty()) {
      IdealGenerator g = ideal_generator(h, IdealGenerator::Kind::g, x_transversal(h), comp[0],
                                         comp[0].conj(), q, sample);
      IdealGenerator f = ideal_generator(h, IdealGenerator::Kind::f, x_transversal(h), comp[0],
                                         comp[0].conj(), q, sample);
      bool vanish = verify_vanishing_on_rank_locus(h, g, sample) &&
                    verify_vanishing_on_rank_locus(h, f, sample);
      claims.add("ideal-generators-vanish-on-rank-locus", vanish);
      sheaf["g_differential"] = jvec(g.differential);
      sheaf["f_differential"] = jvec(f.differential);

      // df at the center against the quartic tensor in the first slot
      bool linked = true;
      std::vector<GaussianRational> v2(h.nz()), v1(h.nz());
      auto cv = comp[0].value_at(std::vector<GaussianRational>(h.nz()), gr(0));
      for (int j = 0; j < h.nz(); ++j) v2[j] = cv[2 + j];
      v1 = v2;
      std::vector<TangentVec> probe;
      for (int j = 0; j < h.nz(); ++j) {
        std::vector<GaussianRational> e(h.nz());
        e[j] = gr(1);
        probe.push_back(TangentVec::hol_vec(e));
        probe.push_back(TangentVec::anti_vec(e));
      }
      TangentVec tp = TangentVec::zero(h.nz());
      tp.t = gr(1);
      probe.push_back(tp);
      for (const auto& v : probe) {
        GaussianRational lhs;
        for (int j = 0; j < h.nz(); ++j) {
          lhs += f.differential[j] * v.hol[j];
          lhs += f.differential[h.nz() + j] * v.anti[j];
        }
        // the transversal probe acts as -2 d/du on chart functions
        lhs += f.differential[2 * h.nz()] * (v.t * gr(-2));
        GaussianRational rhs =
            -GaussianRational::i() * tau4(ctx, v, TangentVec::transversal(), v2, v1);
        if (lhs != rhs) linked = false;
      }
      claims.add("ideal-differential-matches-quartic-tensor", linked);
    }
    out["sheaf_ideal"] = sheaf;
  }

  // user-declared weight tuples
  if (!spec.weights.empty()) {
    json ws = json::array();
    for (const auto& w : spec.weights) {
      json e;
      e["weights"] = w.str();
      e["admissible"] = w.is_admissible();
      e["O_lambda_1"] = is_O_Lambda(h.rho_normalized_ambient(), w);
      ws.push_back(e);
    }
    out["weight_checks"] = ws;
  }

  out["claims"] = claims.claims;
  out["all_claims_pass"] = claims.all_pass;
  *pass_out = claims.all_pass;
  return out;
}

} // namespace

AnalyzeOutcome analyze(const HypersurfaceSpec& spec, const AnalyzeConfig& cfg) {
  AnalyzeOutcome out;
  int order = cfg.order > 0 ? cfg.order : spec.order;
  json rep;
  rep["schema_version"] = 1;
  rep["tool"] = "crgeo";
  json input;
  if (!spec.name.empty()) input["name"] = spec.name;
  input["n"] = spec.n;
  input["rho"] = spec.rho.str();
  input["order"] = order;
  rep["input"] = input;
  json points = json::array();
  for (const auto& pt : spec.points) {
    bool pass = true;
    points.push_back(analyze_point(spec, pt, cfg, order, &pass));
    out.all_claims_pass = out.all_claims_pass && pass;
  }
  rep["points"] = points;
  rep["all_claims_pass"] = out.all_claims_pass;
  out.report = rep;
  return out;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_text(const json& report) {
  std::ostringstream os;
  os << "crgeo report (schema " << report["schema_version"] << ")\n";
  os << "rho = " << report["input"]["rho"].get<std::string>() << "\n";
  for (const auto& pt : report["points"]) {
    os << "\npoint z=" << pt["point"]["z"].dump() << " w=" << pt["point"]["w"].get<std::string>()
       << "\n";
    os << "  levi rank " << pt["levi"]["rank"] << ", pseudoconvex: "
       << (pt["pseudoconvex"]["verdict"].get<bool>() ? "yes" : "no")
       << ", cubic tensor zero: " << (pt["tau3_zero"].get<bool>() ? "yes" : "no") << "\n";
    if (pt.contains("type"))
      os << "  type " << pt["type"]["verdict"].get<std::string>() << " ("
         << pt["type"]["tier"].get<std::string>() << ")\n";
    if (pt.contains("multitype"))
      os << "  multitype " << pt["multitype"]["prefix"].get<std::string>() << "\n";
    if (pt.contains("quartic_normal_form"))
      os << "  phi4 = " << pt["quartic_normal_form"]["phi4"].get<std::string>() << "\n";
    for (const auto& c : pt["claims"]) {
      if (c.contains("pass"))
        os << "  [" << (c["pass"].get<bool>() ? "pass" : "FAIL") << "] "
           << c["id"].get<std::string>() << "\n";
      else
        os << "  [note] " << c["id"].get<std::string>() << ": "
           << c["status"].get<std::string>() << "\n";
    }
  }
  os << "\noverall: " << (report["all_claims_pass"].get<bool>() ? "pass" : "FAIL") << "\n";
  return os.str();
}

} // namespace crgeo
