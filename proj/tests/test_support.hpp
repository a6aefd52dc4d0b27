#ifndef CRGEO_TEST_SUPPORT_HPP
#define CRGEO_TEST_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "crgeo/exact_matrix.hpp"
#include "crgeo/poly.hpp"

namespace crgeo::testing {

// Deterministic splitmix64; property tests must be reproducible.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  long range(long lo, long hi) { // inclusive
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  GaussianRational rational() {
    return GaussianRational::rational(range(-6, 6), range(1, 4));
  }

  GaussianRational gaussian() {
    mpq_class re(range(-6, 6), range(1, 4));
    re.canonicalize();
    mpq_class im(range(-6, 6), range(1, 4));
    im.canonicalize();
    return GaussianRational(re, im);
  }

  GaussianRational nonzero_gaussian() {
    for (;;) {
      GaussianRational x = gaussian();
      if (!x.is_zero()) return x;
    }
  }

  Mono mono(int nz, int max_deg) {
    Mono m(VarId::slot_count(nz), 0);
    int deg = static_cast<int>(range(0, max_deg));
    for (int k = 0; k < deg; ++k) m[static_cast<size_t>(range(0, VarId::slot_count(nz) - 1))]++;
    return m;
  }

  Poly poly(int nz, int max_deg, int terms) {
    Poly p(nz);
    for (int t = 0; t < terms; ++t) p += Poly::monomial(nz, mono(nz, max_deg), gaussian());
    return p;
  }

  /// Chart polynomial: no w / conj(w).
  Poly chart_poly(int nz, int max_deg, int terms) {
    Poly p(nz);
    for (int t = 0; t < terms; ++t) {
      Mono m = mono(nz, max_deg);
      m[0] = m[1] = 0;
      p += Poly::monomial(nz, m, gaussian());
    }
    return p;
  }

  ExactMatrix hermitian(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      m.at(i, i) = GaussianRational(range(-4, 4));
      for (int j = i + 1; j < n; ++j) {
        m.at(i, j) = gaussian();
        m.at(j, i) = m.at(i, j).conj();
      }
    }
    return m;
  }

  ExactMatrix invertible(int n) {
    for (;;) {
      ExactMatrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = GaussianRational(range(-3, 3));
      if (m.rank() == n) return m;
    }
  }

private:
  uint64_t state_;
};

} // namespace crgeo::testing

#endif
