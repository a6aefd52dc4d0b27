#ifndef CRGEO_BOUNDARY_SYSTEM_HPP
#define CRGEO_BOUNDARY_SYSTEM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crgeo/tensors.hpp"

namespace crgeo {

/// Ordered list of flagged field references (L^m, ..., L^1), outermost first;
/// `source` indexes a field pool, `conjugated` picks the conjugate field.
struct ListEntry {
  int source = 0;
  bool conjugated = false;
  bool operator==(const ListEntry&) const = default;
};

struct DerivativeList {
  std::vector<ListEntry> entries;

  int length() const { return static_cast<int>(entries.size()); }
  std::string str() const;
};

/// Total weight = sum of 1/alpha over entries (conjugates count with the same
/// source weight).
mpq_class list_weight(const DerivativeList& l, const std::vector<int>& source_weights);

/// All ordered lists of total weight 1 over the given sources (entries may be
/// conjugated) that contain `required_source`. Ordering rule: reading from
/// the outermost entry, source indices never increase (higher-index fields
/// come first); conjugation flags are free. Deterministic order.
std::vector<DerivativeList> enumerate_weight1_lists(const std::vector<int>& source_weights,
                                                    int required_source);

/// L^m ... L^3 <theta_o, [L^2, L^1]> as a chart jet (m >= 2); fields[k]
/// resolves source k.
Jet list_derivative(const TensorContext& ctx, const DerivativeList& l,
                    const std::vector<VectorField>& fields);

/// Catlin-style boundary system at the quartic level: the Levi-nondegenerate
/// block carries weight 2; accepted candidates carry their found weight and a
/// defining function r with a nonvanishing candidate derivative.
struct BoundarySystem {
  Hypersurface model;
  TensorContext ctx;
  std::vector<VectorField> block; // L_2 .. L_{q+1}
  std::vector<VectorField> pool;  // accepted fields beyond the block
  std::vector<int> pool_weights;
  std::vector<Jet> r_funcs;
  std::vector<bool> r_imaginary; // Im was chosen instead of Re
};

BoundarySystem init_boundary_system(const Hypersurface& h);

struct BoundaryStepTrace {
  int alpha = 0;
  DerivativeList list;
  GaussianRational value; // full list derivative at the center
};

struct BoundaryStepResult {
  bool success = false;
  int alpha = 0; // weight of the accepted candidate
  DerivativeList chosen;
  Jet r;
  bool used_imaginary = false;
  GaussianRational r_derivative; // (L_{nu+1} r)(0), nonzero on success
  std::vector<BoundaryStepTrace> tried;
};

/// One induction step: find the minimal weight alpha <= budget for which some
/// ordered weight-1 list over pool + candidate has a nonvanishing derivative
/// at the center; pick Re or Im of the one-shorter list function by the
/// deterministic tie-break. `exhausted` = !success (reported, not fatal).
BoundaryStepResult boundary_system_step(BoundarySystem& bs, const VectorField& candidate,
                                        int budget = 4);

/// Every ordered length-4 weight-1 list over the given admissible fields
/// matches the quartic tensor on the fields' center values (lists whose inner
/// pair is not mixed must vanish).
bool quartic_reduction_check(const TensorContext& ctx, const std::vector<VectorField>& fields);

/// Length-3 derivatives vanish at the center for admissible fields.
bool length3_vanishing(const TensorContext& ctx, const std::vector<VectorField>& fields);

} // namespace crgeo

#endif
