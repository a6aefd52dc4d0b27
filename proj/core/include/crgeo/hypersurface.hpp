#ifndef CRGEO_HYPERSURFACE_HPP
#define CRGEO_HYPERSURFACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "crgeo/jet.hpp"
#include "crgeo/poly.hpp"

namespace crgeo {

/// Rational point in ambient coordinates (z_1..z_{n-1}, w).
struct AmbientPoint {
  std::vector<GaussianRational> z;
  GaussianRational w;

  static AmbientPoint origin(int n) { return {std::vector<GaussianRational>(n - 1), {}}; }
  std::string str() const;
  bool operator==(const AmbientPoint&) const = default;
};

/// Holomorphic polynomial coordinate change, written as the old coordinates
/// expressed in the new ones: w_old = w_expr(w,z), z_old_j = z_expr[j](w,z).
/// Only the holomorphic variables may appear in the expressions.
struct CoordChange {
  Poly w_expr;
  std::vector<Poly> z_exprs;

  bool operator==(const CoordChange&) const = default;

  static CoordChange identity(int nz);
  bool is_identity() const;
  /// Apply to an ambient polynomial (substitutes w, conj w, z, conj z).
  Poly apply(const Poly& p, int trunc_order = -1) const;
  /// this followed by `inner`: expresses old coords in the newest ones.
  CoordChange then(const CoordChange& inner, int trunc_order = -1) const;
  /// Inverse as a truncated polynomial map (fixed-point iteration); the
  /// change must fix the origin with invertible linear part.
  CoordChange inverse_truncated(int order) const;
  /// Image of a tangent-space vector under the linearization at 0, in the
  /// coordinates (z_1..z_nz) of the holomorphic directions: new -> old is
  /// this map, so vectors push forward by the inverse linear part. Returns
  /// the matrix A with v_old = A v_new acting on (w, z) jointly.
  std::vector<std::vector<GaussianRational>> linear_part() const;
};

/// Hypersurface model analyzed at a center point. The exact ambient defining
/// polynomial is kept; per center we hold the normalized chart
///   rho = -(w + conj w) + phi(z, conj z, u),  u = i(w - conj w),
/// with phi a jet at 0 (exact polynomial when the input was in graph form).
/// The recorded normalization maps the normalized chart back to the original
/// ambient coordinates.
class Hypersurface {
public:
  Hypersurface() = default; // empty shell; factories below build real models

  /// Build the analysis chart of `rho` at `center` (must lie on {rho = 0}).
  /// Throws on: non-real rho, center off the surface, d rho = 0, or
  /// non-transversal w direction (rho_w(center) = 0).
  static Hypersurface at_point(const Poly& rho, int n, const AmbientPoint& center, int order);

  /// Convenience: model already given as a graph  2 Re w = phi(z, conj z, u)
  /// expressed by a chart polynomial phi (no w dependence).
  static Hypersurface from_graph(const Poly& phi_chart, int n, int order);

  int n() const { return n_; }
  int nz() const { return n_ - 1; }
  int order() const { return order_; }
  const Poly& rho_ambient() const { return rho_; }
  const AmbientPoint& center() const { return center_; }
  const Jet& phi() const { return phi_; }
  bool graph_exact() const { return graph_exact_; }
  const CoordChange& normalization() const { return normalization_; }

  /// phi derivatives, cached.
  const Jet& phi_u() const { return phi_u_; }
  const Jet& phi_z(int j) const { return phi_z_[j]; }
  const Jet& phi_zb(int j) const { return phi_zb_[j]; }
  /// 1/(1 - i phi_u) as a jet.
  const Jet& unit_inv() const { return unit_inv_; }

  /// Ambient partials of rho_int = -(w + conj w) + phi as chart jets.
  Jet rho_w() const;
  Jet rho_wb() const;
  Jet rho_z(int j) const;
  Jet rho_zb(int j) const;

  /// New chart centered at another exact point of {rho = 0}.
  Hypersurface recenter(const AmbientPoint& p) const;
  /// Ambient point over chart coordinates (z, u); exact only when the graph
  /// is exact (throws otherwise).
  AmbientPoint ambient_of_chart(const std::vector<GaussianRational>& zvals,
                                const GaussianRational& u) const;

  bool contains(const AmbientPoint& p) const;

  /// Replace phi (used by the normal-form pipeline after a recorded change).
  Hypersurface with_phi(Jet phi, CoordChange normalization) const;

  /// Normalized internal defining polynomial -(w + conj w) + phi as an
  /// ambient polynomial (u rewritten as i(w - conj w)).
  Poly rho_normalized_ambient() const;

private:
  void cache_derivatives();

  int n_ = 2;
  int order_ = 6;
  Poly rho_;            // exact, original ambient coordinates
  AmbientPoint center_; // in original ambient coordinates
  CoordChange normalization_;
  Jet phi_;
  Poly phi_full_; // exact graph polynomial when graph_exact_, else = phi jet
  bool graph_exact_ = false;

  Jet phi_u_, unit_inv_;
  std::vector<Jet> phi_z_, phi_zb_;
};

/// Rewrite a chart polynomial (z, conj z, u) as an ambient one via
/// u -> i(w - conj w).
Poly chart_to_ambient(const Poly& chart);

/// Solve -(w + conj w) + R = 0 for w + conj w = phi(z, conj z, u); the input
/// must have linear part exactly -(w + conj w).
Jet solve_graph_jet(const Poly& rho_normalized_ambient, int nz, int order);

} // namespace crgeo

#endif
