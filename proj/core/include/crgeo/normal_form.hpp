#ifndef CRGEO_NORMAL_FORM_HPP
#define CRGEO_NORMAL_FORM_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "crgeo/forms.hpp"
#include "crgeo/hypersurface.hpp"
#include "crgeo/weights.hpp"

namespace crgeo {

struct NormalFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Order-3 normal form: after the recorded holomorphic change the graph reads
///   2 Re w = sum_j d_j |z_j|^2  (nonzero block first)
///          + 2 Re phi21 + sum_j eps_j' |z_kernel_j|^2 u + O(4),
/// with no harmonic cubic monomials and no cubic with a single conj(z) factor
/// in a Levi-nondegenerate slot. Diagonal entries stay rational (no square
/// roots over Q(i)); signs carry the signature.
struct CubicNormalForm {
  Hypersurface model;  // transformed chart (phi in normal shape up to order 3)
  CoordChange change;  // normal chart -> chart the input model was given in
  int levi_rank = 0;
  Signature signature;
  std::vector<GaussianRational> levi_diag; // d_j, zeros trailing
  Poly phi21;                              // (2,1) cubic part, conj(z) slots in the kernel block
  std::vector<GaussianRational> pencil_diag; // u-pencil diagonal on the kernel block
  std::vector<int> eps;                      // signs of pencil_diag in {-1,0,1}

  /// Lemma-level shape test for pseudoconvex models: pencil vanishes and
  /// phi21 only has nondegenerate-slot holomorphic factors.
  bool pseudoconvex_cubic_shape() const;
  /// Kernel-sector cubic content vanishes (the cubic tensor at the center).
  bool tau3_vanishes() const;
};

CubicNormalForm cubic_normal_form(const Hypersurface& h);

/// Weight-(1, 1/2, 1/4) normal form for models with vanishing cubic tensor:
///   2 Re w = sum d_j |z_j|^2 + phi4(z_kernel, conj z_kernel) + o_w(1),
/// phi4 = 2 Re phi31 + phi22 bihomogeneous of bidegrees (3,1) and (2,2).
struct QuarticNormalForm {
  Hypersurface model;
  CoordChange change; // normal chart -> input chart
  int levi_rank = 0;
  std::vector<GaussianRational> levi_diag;
  Poly phi4;
  Poly phi31;
  Poly phi22;
  bool weight_filter_ok = false; // every non-{phi2, phi4} monomial has weight > 1

  WeightVector weights() const; // (1, 2...2, 4...4)
  /// Kernel slot indices in the normal chart (z block after the Levi block).
  std::vector<int> kernel_slots() const;
};

/// Throws NormalFormError with a diagnostic when the cubic tensor does not
/// vanish at the center. Pseudoconvexity itself is the caller's lookout (the
/// shape checks above); models with vanishing cubic tensor are accepted even
/// when not pseudoconvex.
QuarticNormalForm quartic_normal_form(const Hypersurface& h);

/// Plurisubharmonicity check for a real homogeneous quartic in the kernel
/// variables. Decision tiers: exact Gram positivity of the (2,2) part when
/// the (3,1) part vanishes; exact witness refutation from sampled rational
/// directions; otherwise a sampled no-witness verdict (tagged non-exact).
struct PshCertificate {
  enum class Status { certified, witness_found, sampled_no_witness };
  Status status = Status::sampled_no_witness;
  std::string tier;
  // a direction where the complex Hessian has a negative eigenvalue
  std::vector<GaussianRational> witness;
  bool is_psh_certified() const { return status == Status::certified; }
};

PshCertificate is_psh_quartic(const Poly& phi4, int nvars);

/// Hermitian Gram matrix of a bidegree-(2,2) polynomial on the degree-2
/// monomial basis (unique for this bidegree).
ExactMatrix gram_matrix_22(const Poly& phi22, int nvars);

} // namespace crgeo

#endif
