#ifndef CRGEO_INVARIANTS_HPP
#define CRGEO_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "crgeo/tensors.hpp"

namespace crgeo {

/// Exact PSD check of the Levi matrix at the center plus, for exact-graph
/// models, the same check at deterministically sampled rational points of M
/// near the center.
struct PseudoconvexCertificate {
  bool psd_at_center = false;
  int samples_checked = 0;
  bool psd_at_samples = true;
  std::optional<AmbientPoint> failure;

  bool verdict() const { return psd_at_center && psd_at_samples; }
};

PseudoconvexCertificate is_pseudoconvex_at(const Hypersurface& h, int sample_budget = 32);

/// (rank, kernel basis) of the Levi form at the center.
std::pair<int, std::vector<std::vector<GaussianRational>>> levi_rank_kernel(const Hypersurface& h);

int levi_rank_at(const Hypersurface& h, const AmbientPoint& p);

/// Holomorphic kernel of a homogeneous polynomial in nvars z variables:
/// { v : d_v P = d_{conj v} P = 0 }, computed as the joint nullspace of the
/// coefficient-linear systems.
std::vector<std::vector<GaussianRational>> holomorphic_kernel(const Poly& P, int nvars);

/// nvars - dim holomorphic_kernel.
int poly_rank(const Poly& P, int nvars);

/// Slot-wise kernels of tau40 in normal-form kernel coordinates, compared
/// against the holomorphic kernel of phi4. The equalities are asserted facts
/// only in the pseudoconvex case; the report always carries the subspaces.
struct KernelCoincidenceReport {
  int nk = 0;
  // CK vectors as length-2nk coordinate rows (hol part then anti part)
  std::vector<std::vector<GaussianRational>> slot1_kernel;
  std::vector<std::vector<GaussianRational>> slot2_kernel;
  // K10 (resp. conj K10) vectors as length-nk rows
  std::vector<std::vector<GaussianRational>> slot3_kernel;
  std::vector<std::vector<GaussianRational>> slot4_kernel;
  std::vector<std::vector<GaussianRational>> phi4_hol_kernel;
  bool slot12_match_hol_kernel = false; // slot1 = slot2 = hol kernel + conj
  bool slot3_matches_hol_kernel = false;
  bool slot4_matches_conj_kernel = false;
};

KernelCoincidenceReport kernel_coincidence(const QuarticNormalForm& qnf);

/// D'Angelo type decision up to 4.
struct TypeVerdict {
  enum class Kind { type2, type4, type_gt4, undecided_numeric };
  Kind kind = Kind::undecided_numeric;
  std::string tier; // "trivial-kernel", "gram-pd", "kernel-dim-1", "exact-zero", "numeric"
  std::optional<std::vector<GaussianRational>> zero_direction; // exact when present
  std::optional<double> numeric_min; // set by the numeric tier (tolerance 1e-9)

  std::string str() const;
};

/// Decision strategy: exact sufficient (Gram positive definite), exact for
/// kernel dimension 1, exact zero directions found on the rational grid,
/// else deterministic numeric minimization with tolerance 1e-9. Refuses
/// non-pseudoconvex input.
TypeVerdict dangelo_type_le4(const Hypersurface& h);

/// Catlin multitype entries up to 4; the tail is a ">4" lower bound.
struct MultitypePrefix {
  int n = 0;
  int q2 = 0;
  int q4 = 0;
  bool admissible = false;
  /// kernel-tail variables do not appear in phi up to the chart order
  bool tail_vanishes_at_order = false;

  std::vector<std::string> entries() const; // "1", "2", "4", ">4"
  std::string str() const;
};

MultitypePrefix multitype_prefix(const Hypersurface& h);

/// Tangent space of the containing submanifold S: real tangent vectors
/// annihilating tau4 in the first slot.
struct TangentSpaceS {
  std::vector<TangentVec> basis;    // real tangent vectors
  int dim = 0;
  bool intersection_with_K_totally_real = false;
};

TangentSpaceS tangent_space_S(const Hypersurface& h);

} // namespace crgeo

#endif
