#include "crgeo/boundary_system.hpp"

#include <functional>
#include <sstream>

namespace crgeo {

namespace {

GaussianRational gr(long n) { return GaussianRational(n); }

VectorField resolve(const ListEntry& e, const std::vector<VectorField>& fields) {
  return e.conjugated ? fields[e.source].conj() : fields[e.source];
}

std::vector<GaussianRational> hol_value(const VectorField& f) {
  int nz = f.nz();
  std::vector<GaussianRational> v(nz);
  for (int j = 0; j < nz; ++j) v[j] = f.comp(VectorField::dz(j)).value0();
  return v;
}

} // namespace

std::string DerivativeList::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < entries.size(); ++k) {
    if (k) os << ",";
    if (entries[k].conjugated) os << "conj ";
    os << "L" << entries[k].source;
  }
  os << ")";
  return os.str();
}

mpq_class list_weight(const DerivativeList& l, const std::vector<int>& source_weights) {
  mpq_class w = 0;
  for (const auto& e : l.entries) w += mpq_class(1, source_weights[e.source]);
  return w;
}

std::vector<DerivativeList> enumerate_weight1_lists(const std::vector<int>& source_weights,
                                                    int required_source) {
  std::vector<DerivativeList> out;
  int ns = static_cast<int>(source_weights.size());
  DerivativeList cur;
  // depth-first over nonincreasing source sequences with free flags
  std::function<void(int, mpq_class)> rec = [&](int max_source, mpq_class acc) {
    if (acc == 1 && cur.length() >= 2) {
      bool has_required = false;
      for (const auto& e : cur.entries)
        if (e.source == required_source) has_required = true;
      if (has_required) out.push_back(cur);
      // a completed weight cannot be extended (weights are positive)
      return;
    }
    if (acc >= 1) return;
    for (int s = max_source; s >= 0; --s) {
      mpq_class next = acc + mpq_class(1, source_weights[s]);
      if (next > 1) continue;
      for (bool flag : {false, true}) {
        cur.entries.push_back({s, flag});
        rec(s, next);
        cur.entries.pop_back();
      }
    }
  };
  rec(ns - 1, mpq_class(0));
  return out;
}

Jet list_derivative(const TensorContext& ctx, const DerivativeList& l,
                    const std::vector<VectorField>& fields) {
  int m = l.length();
  if (m < 2) throw std::invalid_argument("list_derivative: need at least two fields");
  VectorField L2 = resolve(l.entries[m - 2], fields);
  VectorField L1 = resolve(l.entries[m - 1], fields);
  Jet f = ctx.theta.pair(VectorField::bracket(L2, L1));
  for (int k = m - 3; k >= 0; --k) f = resolve(l.entries[k], fields).apply(f);
  return f;
}

BoundarySystem init_boundary_system(const Hypersurface& h) {
  BoundarySystem bs;
  bs.model = h;
  bs.ctx = tensor_context(h);
  for (int idx : bs.ctx.nondeg_idx) bs.block.push_back(bs.ctx.frame[idx]);
  return bs;
}

BoundaryStepResult boundary_system_step(BoundarySystem& bs, const VectorField& candidate,
                                        int budget) {
  BoundaryStepResult res;
  std::vector<VectorField> fields = bs.pool;
  fields.push_back(candidate);
  int cand_idx = static_cast<int>(fields.size()) - 1;

  for (int alpha = 2; alpha <= budget && !res.success; ++alpha) {
    std::vector<int> weights = bs.pool_weights;
    weights.push_back(alpha);
    for (const auto& list : enumerate_weight1_lists(weights, cand_idx)) {
      GaussianRational value = list_derivative(bs.ctx, list, fields).value0();
      res.tried.push_back({alpha, list, value});
      if (value.is_zero()) continue;
      res.success = true;
      res.alpha = alpha;
      res.chosen = list;
      break;
    }
  }
  if (!res.success) return res; // exhausted within the weight budget

  if (res.chosen.length() == 2) {
    // the candidate pairs nondegenerately against itself: it extends the
    // Levi-nondegenerate block and carries no defining function
    bs.block.push_back(candidate);
    return res;
  }

  DerivativeList prefix;
  prefix.entries.assign(res.chosen.entries.begin() + 1, res.chosen.entries.end());
  Jet F = list_derivative(bs.ctx, prefix, fields);
  Jet r_re = (F + F.conj()) * GaussianRational::rational(1, 2);
  Jet r_im = (F - F.conj()) * GaussianRational(mpq_class(0), mpq_class(-1, 2));

  // deterministic tie-break on x = (L^m F)(0): Re when Re(x)^2 >= Im(x)^2
  VectorField outer = resolve(res.chosen.entries[0], fields);
  GaussianRational x = outer.apply(F).value0();
  bool prefer_re = x.re() * x.re() >= x.im() * x.im();
  VectorField cand_unbarred = candidate;
  auto deriv0 = [&](const Jet& r) { return cand_unbarred.apply(r).value0(); };
  Jet r = prefer_re ? r_re : r_im;
  bool used_im = !prefer_re;
  if (deriv0(r).is_zero()) {
    r = prefer_re ? r_im : r_re;
    used_im = prefer_re;
  }
  res.r = r;
  res.used_imaginary = used_im;
  res.r_derivative = deriv0(r);

  bs.pool.push_back(candidate);
  bs.pool_weights.push_back(res.alpha);
  bs.r_funcs.push_back(r);
  bs.r_imaginary.push_back(used_im);
  return res;
}

namespace {

// expected tensor value of a quartic list: zero for an unmixed inner pair,
// else +- (-i) tau4 with the slot-normalized inner orientation
GaussianRational expected_list_value(const TensorContext& ctx, const DerivativeList& l,
                                     const std::vector<VectorField>& fields) {
  const ListEntry& e2 = l.entries[2];
  const ListEntry& e1 = l.entries[3];
  if (e2.conjugated == e1.conjugated) return gr(0);
  auto vec_of = [&](const ListEntry& e) {
    std::vector<GaussianRational> v = hol_value(fields[e.source]);
    if (!e.conjugated) return TangentVec::hol_vec(v);
    for (auto& x : v) x = x.conj();
    return TangentVec::anti_vec(v);
  };
  TangentVec v4 = vec_of(l.entries[0]);
  TangentVec v3 = vec_of(l.entries[1]);
  GaussianRational sign(1);
  const ListEntry* inner_hol = &e2;
  const ListEntry* inner_bar = &e1;
  if (e2.conjugated) {
    // <theta,[conj A, B]> = -<theta,[B, conj A]>
    std::swap(inner_hol, inner_bar);
    sign = gr(-1);
  }
  std::vector<GaussianRational> v2 = hol_value(fields[inner_hol->source]);
  std::vector<GaussianRational> v1b = hol_value(fields[inner_bar->source]);
  GaussianRational t4 = tau4(ctx, v4, v3, v2, v1b);
  return sign * (-GaussianRational::i()) * t4;
}

} // namespace

bool quartic_reduction_check(const TensorContext& ctx, const std::vector<VectorField>& fields) {
  std::vector<int> weights(fields.size(), 4);
  for (size_t s = 0; s < fields.size(); ++s) {
    for (const auto& list : enumerate_weight1_lists(weights, static_cast<int>(s))) {
      if (list.length() != 4) continue;
      GaussianRational value = list_derivative(ctx, list, fields).value0();
      if (value != expected_list_value(ctx, list, fields)) return false;
    }
  }
  return true;
}

bool length3_vanishing(const TensorContext& ctx, const std::vector<VectorField>& fields) {
  // every length-3 flagged list over the given fields
  int ns = static_cast<int>(fields.size());
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b)
      for (int c = 0; c < ns; ++c)
        for (int flags = 0; flags < 8; ++flags) {
          DerivativeList l;
          l.entries = {{a, (flags & 4) != 0}, {b, (flags & 2) != 0}, {c, (flags & 1) != 0}};
          if (!list_derivative(ctx, l, fields).value0().is_zero()) return false;
        }
  return true;
}

} // namespace crgeo
