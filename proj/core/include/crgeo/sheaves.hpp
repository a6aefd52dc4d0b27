#ifndef CRGEO_SHEAVES_HPP
#define CRGEO_SHEAVES_HPP

#include <optional>
#include <string>
#include <vector>

#include "crgeo/invariants.hpp"
#include "crgeo/rational_expr.hpp"

namespace crgeo {

/// Rational chart function of the shape num / (base^a * conj(base)^b) where
/// base is the chart unit 1 - i phi_u (never zero at real chart points).
/// Keeping the denominator as tracked powers makes the quotient rule grow
/// linearly instead of compounding denominators.
struct UnitFrac {
  Poly num;
  Poly base; // empty/one when a = b = 0
  int a = 0;
  int b = 0;

  UnitFrac() = default;
  explicit UnitFrac(Poly n) : num(std::move(n)) {}
  UnitFrac(Poly n, Poly base_, int a_, int b_)
      : num(std::move(n)), base(std::move(base_)), a(a_), b(b_) {}

  bool is_zero() const { return num.is_zero(); }
  UnitFrac operator-() const { return UnitFrac(-num, base, a, b); }
  UnitFrac operator+(const UnitFrac& o) const;
  UnitFrac operator-(const UnitFrac& o) const { return *this + (-o); }
  UnitFrac operator*(const UnitFrac& o) const;
  UnitFrac wirtinger(VarId v) const;
  UnitFrac conj() const;
  GaussianRational eval(const std::vector<GaussianRational>& slots) const;
  RationalExpr expr() const; // boundary view as num/den
};

/// Vector field with exact rational-function coefficients on an exact-graph
/// chart; a global object evaluable at any rational chart point.
struct XField {
  int nz = 0;
  std::vector<UnitFrac> comp; // ambient directions, chart-var coefficients

  static XField zero(const Hypersurface& h);
  UnitFrac apply(const UnitFrac& f) const; // chart-function derivative
  XField conj() const;
  XField operator+(const XField& o) const;
  XField scaled(const Poly& f) const;
  XField scaled(const UnitFrac& f) const;
  static XField bracket(const XField& x, const XField& y);
  std::vector<GaussianRational> value_at(const std::vector<GaussianRational>& z,
                                         const GaussianRational& u) const;
  /// Jet view at the chart center (interop with the jet calculus).
  VectorField jet_field(int order) const;
};

/// Exact global frame machinery (requires h.graph_exact()).
XField x_frame_field(const Hypersurface& h, const std::vector<GaussianRational>& v);
XField x_frame_basis(const Hypersurface& h, int j);
XField x_transversal(const Hypersurface& h);
/// Oriented contact form coefficients as exact chart functions.
std::vector<UnitFrac> x_oriented_theta(const Hypersurface& h);
/// <theta_o, [X, Y]> as an exact chart function.
UnitFrac x_levi_pairing(const Hypersurface& h, const XField& x, const XField& y);

/// Chart point (z, u) on an exact-graph model.
struct ChartPoint {
  std::vector<GaussianRational> z;
  GaussianRational u;
};

/// Bounded-height search for rational chart points of Levi rank <= q.
std::vector<ChartPoint> find_rank_le_points(const Hypersurface& h, int q, int max_count,
                                            long max_denominator = 8);

/// Pointwise admissibility of a (1,0) field at the chart center (Levi kernel
/// inclusion up to order 1). The first-derivative checks quantify L2 over a
/// frame of CT, or over the given subspace V in the microlocal variant.
struct AdmissibilityReport {
  enum class Verdict { order1_kernel, microlocal, fails };
  Verdict verdict = Verdict::fails;
  bool kernel_value = false;
  std::optional<std::string> witness; // which check failed

  bool passes() const { return verdict != Verdict::fails; }
};

AdmissibilityReport in_kernel_up_to_order1(const Hypersurface& h, const VectorField& L,
                                           const std::vector<TangentVec>* microlocal_V = nullptr);

/// Same check for an exact field at an arbitrary rational chart point of an
/// exact-graph model (evaluates global identities at the point).
AdmissibilityReport in_kernel_up_to_order1_at(const Hypersurface& h, const XField& L,
                                              const ChartPoint& p);

/// Fields Levi-orthogonal to a Levi-nondegenerate family near the center.
/// Returns one field per frame direction completing the family's span;
/// throws on a degenerate family.
std::vector<XField> levi_orthogonal_complement(const Hypersurface& h,
                                               const std::vector<XField>& v_frame);

/// Freeman's second module: [L, conj L1] stays in CH identically for every
/// frame field L1 (coefficient-level check).
bool freeman_N2_member(const Hypersurface& h, const XField& L);

/// Sampled membership in the submodule sheaf of fields that are in the Levi
/// kernel up to order 1 at every point of Levi rank <= q. The verdict is
/// quantified over the supplied sample only (stated in the report).
struct SheafMembership {
  bool passes = true;
  int points_checked = 0;
  int points_skipped_rank = 0; // sample points of rank > q impose nothing
  std::optional<ChartPoint> failure;
};

SheafMembership sheaf_membership_S10q(const Hypersurface& h, const XField& L, int q,
                                      const std::vector<ChartPoint>& sample);

/// Ideal-sheaf generators g = <theta,[L2,L1]> and f = L3 <theta,[L2,L1]> as
/// exact chart functions, with the differential at the center.
struct IdealGenerator {
  enum class Kind { g, f };
  Kind kind = Kind::g;
  UnitFrac value;
  // differential at the center over (dz_j..., d conj z_j..., du)
  std::vector<GaussianRational> differential;

  GaussianRational eval(const ChartPoint& p) const;
  const GaussianRational& transversal_component() const { return differential.back(); }
};

/// Builds a generator; L2 and conj(L1) must pass the sampled sheaf membership
/// for the given q and sample (throws std::invalid_argument otherwise).
IdealGenerator ideal_generator(const Hypersurface& h, IdealGenerator::Kind kind,
                               const XField& L3, const XField& L2, const XField& L1,
                               int q, const std::vector<ChartPoint>& sample);

/// Exact evaluation of the generator at each sample point; true if all vanish.
bool verify_vanishing_on_rank_locus(const Hypersurface& h, const IdealGenerator& gen,
                                    const std::vector<ChartPoint>& sample);

/// Vanishing order of a polynomial chart function at a chart point.
int vanishing_order_at(const UnitFrac& f, const ChartPoint& p);

/// Both [L, L'](0) and [conj L, L'](0) lie in CK (membership via the Levi
/// nullspace; transversal parts must vanish).
bool bracket_closure_check(const Hypersurface& h, const VectorField& L, const VectorField& Lp);

/// Weighted-expansion check for admissible fields in a quartic normal chart:
/// no weight -1/4 terms of the form z_kernel d/dz_nondeg or
/// conj(z_kernel) d/dz_nondeg.
bool no_low_weight_nondeg_terms(const QuarticNormalForm& qnf, const VectorField& L);

} // namespace crgeo

#endif
