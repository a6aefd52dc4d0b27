#ifndef CRGEO_TENSORS_HPP
#define CRGEO_TENSORS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crgeo/forms.hpp"
#include "crgeo/normal_form.hpp"

namespace crgeo {

/// Per-center data shared by the tensor routes: oriented contact form, frame,
/// Levi matrix and kernel, a Levi-nondegenerate frame index subset, and the
/// order-1-kernel extensions of kernel vectors (Levi-orthogonal complement
/// construction).
struct TensorContext {
  Hypersurface model;
  OneForm theta;
  ExactMatrix levi0;
  int q = 0;                                           // Levi rank at the center
  std::vector<std::vector<GaussianRational>> kernel;   // K^10 basis (z coordinates)
  std::vector<int> nondeg_idx;                         // frame indices spanning a
                                                       // Levi-nondegenerate subbundle
  std::vector<VectorField> frame;
  VectorField transversal;
  bool tau3_zero = true; // cubic tensor vanishes at the center (exact, over bases)
};

TensorContext tensor_context(const Hypersurface& h);
/// Same with theta replaced by f * theta (f a unit chart function); tensor
/// values must scale by f(0).
TensorContext tensor_context_scaled(const Hypersurface& h, const Jet& f);

bool in_levi_kernel(const TensorContext& ctx, const std::vector<GaussianRational>& v);

/// Order-1-kernel extension of a kernel vector: frame field corrected by a
/// jet combination of the nondegenerate frame so the Levi pairings against
/// that frame vanish identically near the center.
VectorField admissible_extension(const TensorContext& ctx,
                                 const std::vector<GaussianRational>& v);

/// Cubic tensor, derivative route: i (L3 <theta, [L2, L1]>)(0) with
/// v3 in CT, v2 in K^10, and the third slot receiving conj(v1b), v1b in K^10.
GaussianRational tau3(const TensorContext& ctx, const TangentVec& v3,
                      const std::vector<GaussianRational>& v2,
                      const std::vector<GaussianRational>& v1b);

/// Cubic tensor, double-bracket route: i <theta, [L3, [L2, L1]]>(0); all
/// three slots kernel-valued (v3 may mix kernel hol and anti parts).
GaussianRational tau31(const TensorContext& ctx, const TangentVec& v3,
                       const std::vector<GaussianRational>& v2,
                       const std::vector<GaussianRational>& v1b);

/// Lie-derivative cubic tensor: <T_{L3} T_{L2} theta, L1>(0) with v3 in CH
/// and v2, v1 in CK.
GaussianRational tau21(const TensorContext& ctx, const TangentVec& v3, const TangentVec& v2,
                       const TangentVec& v1);

/// Quartic tensor, derivative route: i (L4 L3 <theta, [L2, L1]>)(0); needs a
/// vanishing cubic tensor; L2, conj(L1) are order-1-kernel extensions.
GaussianRational tau4(const TensorContext& ctx, const TangentVec& v4, const TangentVec& v3,
                      const std::vector<GaussianRational>& v2,
                      const std::vector<GaussianRational>& v1b);

/// Quartic tensor, quadruple-bracket route: i <theta, [L4,[L3,[L2,L1]]]>(0);
/// v4, v3 in CH.
GaussianRational tau4_bracket(const TensorContext& ctx, const TangentVec& v4,
                              const TangentVec& v3, const std::vector<GaussianRational>& v2,
                              const std::vector<GaussianRational>& v1b);

/// Kernel-ring vector with holomorphic and antiholomorphic parts (a value in
/// CK expressed in normal-form kernel coordinates).
struct CKVec {
  std::vector<GaussianRational> hol;
  std::vector<GaussianRational> anti;

  static CKVec hol_vec(std::vector<GaussianRational> a) {
    CKVec v;
    v.anti.assign(a.size(), GaussianRational());
    v.hol = std::move(a);
    return v;
  }
  CKVec conj() const {
    CKVec r;
    for (const auto& x : anti) r.hol.push_back(x.conj());
    for (const auto& x : hol) r.anti.push_back(x.conj());
    return r;
  }
};

/// Normal-form route: 4th directional derivative of phi4 in the kernel ring.
/// Slots: v4, v3 in CK; v2 holomorphic kernel vector; the last slot receives
/// conj(v1b).
GaussianRational tau40_nf(const QuarticNormalForm& qnf, const CKVec& v4, const CKVec& v3,
                          const std::vector<GaussianRational>& v2,
                          const std::vector<GaussianRational>& v1b);

/// Unique symmetric extension of the kernel restriction (all four slots CK).
GaussianRational tau40_sym(const QuarticNormalForm& qnf, const CKVec& v4, const CKVec& v3,
                           const CKVec& v2, const CKVec& v1);

/// Symmetric extension of the cubic kernel restriction via the order-3
/// normal form: 3rd directional derivative of the cubic part.
GaussianRational tau30_sym(const CubicNormalForm& cnf, const CKVec& v3, const CKVec& v2,
                           const CKVec& v1);

/// Transport of kernel vectors into normal-form kernel coordinates through
/// the linearization of the recorded change.
std::vector<GaussianRational> to_nf_kernel_coords(const QuarticNormalForm& qnf,
                                                  const std::vector<GaussianRational>& v_input);

/// Coefficient tables (the serializable TensorValue realization: slot tags,
/// frame note, dense entries over the stated bases).
struct TensorTable {
  std::vector<std::string> slots;
  std::vector<int> dims;
  std::string frame_note;
  std::map<std::vector<int>, GaussianRational> entries; // nonzero entries
};

/// tau3 over the bases CT x K10 x conj K10 (CT basis: frames, conjugate
/// frames, transversal).
TensorTable tau3_table(const TensorContext& ctx);
/// tau4 over CT x CT x K10 x conj K10.
TensorTable tau4_table(const TensorContext& ctx);
/// tau40 over CK x CK x K10 x conj K10 in normal-form kernel coordinates
/// (CK basis: kernel frames then their conjugates).
TensorTable tau40_table(const QuarticNormalForm& qnf);

/// tau4(v,vbar,v,vbar) expanded as an exact polynomial in formal kernel
/// coordinates v_1..v_k, conj(v_1)..conj(v_k) (kernel ring polynomial).
Poly tau40_diagonal_polynomial(const QuarticNormalForm& qnf);

/// Diagnostics reproducing the breakdown of tensoriality when slot
/// hypotheses are violated (twisted fields L + c z_kappa L_nondeg).
struct TwistDiagnostic {
  GaussianRational at_c0;
  GaussianRational at_c1;
  bool differs() const { return at_c0 != at_c1; }
};
/// Triple bracket / first-derivative diagnostics with the twist on the
/// middle field (kernel value, non-kernel 1-jet).
TwistDiagnostic twisted_triple_bracket(const Hypersurface& h, int kernel_idx, int nondeg_idx);
TwistDiagnostic twisted_levi_derivative(const Hypersurface& h, int kernel_idx, int nondeg_idx);
/// Quartic diagnostics with the self-twisted field L = L_kappa + c z_kappa L_b.
TwistDiagnostic twisted_quartic_derivative(const Hypersurface& h, int kernel_idx, int nondeg_idx);
TwistDiagnostic twisted_quartic_bracket(const Hypersurface& h, int kernel_idx, int nondeg_idx);

} // namespace crgeo

#endif
