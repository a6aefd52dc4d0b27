#ifndef CRGEO_POLY_HPP
#define CRGEO_POLY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crgeo/gaussian_rational.hpp"
#include "crgeo/variables.hpp"

namespace crgeo {

/// Exponent vector over the slot layout of VarId.
using Mono = std::vector<uint16_t>;

int mono_degree(const Mono& m);

/// Graded order: total degree first, then lexicographic on the exponent
/// vector. Fixes the canonical term order used everywhere (printing, report
/// serialization, iteration).
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

/// Exact multivariate polynomial over Q(i) in the variables
/// w, conj(w), u, z_j, conj(z_j). No zero coefficients are stored; the term
/// map is kept in canonical order.
class Poly {
public:
  Poly() : nz_(0) {}
  explicit Poly(int nz) : nz_(nz) {}

  static Poly constant(int nz, const GaussianRational& c);
  static Poly var(int nz, VarId v);
  static Poly monomial(int nz, const Mono& m, const GaussianRational& c);

  int nz() const { return nz_; }
  /// Same polynomial in a ring with more z variables.
  Poly with_nz(int nz) const;

  bool is_zero() const { return terms_.empty(); }
  int degree() const; // -1 for the zero polynomial
  int degree_in(VarId v) const;
  bool depends_on(VarId v) const { return degree_in(v) > 0; }
  size_t term_count() const { return terms_.size(); }

  const std::map<Mono, GaussianRational, MonoLess>& terms() const { return terms_; }
  GaussianRational coeff(const Mono& m) const;
  GaussianRational constant_term() const;
  void set_coeff(const Mono& m, const GaussianRational& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const GaussianRational& s) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int k) const;

  /// Complex conjugate: bar on coefficients, w <-> conj(w), z <-> conj(z).
  Poly conj() const;
  bool is_real() const { return *this == conj(); }

  /// Wirtinger / partial derivative with respect to one variable (z and
  /// conj(z) are independent symbols; u is an ordinary real variable).
  Poly wirtinger(VarId v) const;

  /// Drop all terms of total degree > order (order < 0 keeps nothing).
  Poly truncate(int order) const;
  Poly part_of_degree(int d) const;
  /// Terms whose total degree lies in [lo, hi].
  Poly degree_range(int lo, int hi) const;

  /// Full evaluation; `vals` is indexed by slot.
  GaussianRational eval(const std::vector<GaussianRational>& vals) const;

  /// Simultaneous substitution. images[slot] is the replacement for that
  /// variable (identity when absent). If trunc_order >= 0 the result and all
  /// intermediate powers are truncated at that total degree. When
  /// check_conjugation is set, paired slots must be given mutually conjugate
  /// images (throws std::invalid_argument otherwise).
  Poly substitute(const std::vector<std::optional<Poly>>& images, int trunc_order = -1,
                  bool check_conjugation = false) const;

  /// z-bidegree of a term: (sum of z exponents, sum of conj(z) exponents);
  /// u and w count as spectators.
  static std::pair<int, int> z_bidegree(const Mono& m, int nz);

  /// Components keyed by z-bidegree (j, k); they sum back to the input.
  std::map<std::pair<int, int>, Poly> bidegree_split() const;

  /// Terms of z-bidegree (k,0) or (0,k) including pure u/w terms; the
  /// complement contains only mixed terms.
  Poly harmonic_part() const;

  /// Canonical text rendering in the input grammar (deterministic).
  std::string str() const;

private:
  int nz_;
  std::map<Mono, GaussianRational, MonoLess> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

inline Poly operator*(const GaussianRational& s, const Poly& p) { return p * s; }

} // namespace crgeo

#endif
