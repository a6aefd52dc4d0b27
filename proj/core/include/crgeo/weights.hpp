#ifndef CRGEO_WEIGHTS_HPP
#define CRGEO_WEIGHTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "crgeo/poly.hpp"

namespace crgeo {

/// Ordered weight tuple (lambda_1, ..., lambda_n) with entries in
/// [1, infinity], nondecreasing; lambda_k applies to the k-th ambient complex
/// coordinate, with coordinate 1 = w (u counts with w) and coordinate k+1 =
/// z_k. An empty optional entry means infinity.
class WeightVector {
public:
  using Entry = std::optional<mpq_class>; // nullopt = infinity

  WeightVector() = default;
  explicit WeightVector(std::vector<Entry> entries);

  static WeightVector finite(const std::vector<long>& v);

  int size() const { return static_cast<int>(entries_.size()); }
  const Entry& entry(int k) const { return entries_[k]; }

  /// 1 <= lambda_1 <= ... <= lambda_n (<= infinity).
  bool is_ordered_tuple() const;

  /// For each finite lambda_k there is a nonnegative integer tuple
  /// (a_1..a_k), a_k > 0, of Lambda-weight exactly 1.
  bool is_admissible() const;

  /// ||alpha||_Lambda = sum alpha_k / lambda_k over ambient coordinate
  /// groups; infinite entries contribute 0. `alpha` has one entry per
  /// ambient coordinate (w first, then z_1..z_{n-1}).
  mpq_class weight_of_multiindex(const std::vector<int>& alpha) const;

  /// Weight of a monomial of the chart/ambient ring: w, conj(w), u count
  /// toward coordinate 1; z_j and conj(z_j) toward coordinate j+1.
  mpq_class weight_of_monomial(const Mono& m, int nz) const;

  std::string str() const;

private:
  std::vector<Entry> entries_;
};

/// True iff every nonzero monomial of rho has Lambda-weight >= 1.
bool is_O_Lambda(const Poly& rho, const WeightVector& lambda);

/// Terms of Lambda-weight <= 1 (used to read off lowest-weight parts).
Poly weight_le_part(const Poly& p, const WeightVector& lambda);

} // namespace crgeo

#endif
