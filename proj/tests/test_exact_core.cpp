#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crgeo/exact_matrix.hpp"
#include "crgeo/gaussian_rational.hpp"
#include "test_support.hpp"

using namespace crgeo;
using crgeo::testing::Rng;

namespace {
GaussianRational gr(long n) { return GaussianRational(n); }
GaussianRational I() { return GaussianRational::i(); }
} // namespace

TEST_CASE("gaussian rational field arithmetic") {
  GaussianRational a = GaussianRational::rational(3, 2) + I() * gr(2);
  CHECK(a.re() == mpq_class(3, 2));
  CHECK(a.im() == 2);
  CHECK((a * a.inverse()).is_one());
  CHECK((I() * I()) == gr(-1));
  CHECK(a.conj().conj() == a);
  CHECK((a * a.conj()).is_real());

  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    GaussianRational x = rng.gaussian(), y = rng.gaussian(), z = rng.gaussian();
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x.conj().conj() == x);
    CHECK((x * y).conj() == x.conj() * y.conj());
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("canonical rendering of Gaussian rationals") {
  CHECK(gr(0).str() == "0");
  CHECK(GaussianRational::rational(3, 2).str() == "3/2");
  CHECK(I().str() == "i");
  CHECK((-I()).str() == "-i");
  CHECK((gr(2) * I()).str() == "2*i");
  CHECK((GaussianRational::rational(1, 2) - gr(3) * I()).str() == "1/2-3*i");
  CHECK((gr(1) + I()).str() == "1+i");
}

TEST_CASE("nullspace on pinned examples") {
  ExactMatrix d(2, 2);
  d.at(0, 0) = gr(1);
  auto ns = d.nullspace();
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == gr(0));
  CHECK(ns[0][1] == gr(1));

  CHECK(ExactMatrix::identity(2).nullspace().empty());

  // [[1, i], [-i, 1]]: rank 1, kernel spanned by (-i, 1)
  ExactMatrix m(2, 2);
  m.at(0, 0) = gr(1);
  m.at(0, 1) = I();
  m.at(1, 0) = -I();
  m.at(1, 1) = gr(1);
  auto ker = m.nullspace();
  REQUIRE(ker.size() == 1);
  // up to scale: v x (-i,1) must vanish
  CHECK(ker[0][0] * gr(1) == ker[0][1] * (-I()));
  // verified by multiplication
  for (int r = 0; r < 2; ++r)
    CHECK(m.at(r, 0) * ker[0][0] + m.at(r, 1) * ker[0][1] == gr(0));
}

TEST_CASE("hermitian signatures on pinned examples") {
  ExactMatrix d(3, 3);
  d.at(0, 0) = gr(1);
  d.at(1, 1) = gr(-1);
  CHECK(d.hermitian_signature() == Signature{1, 1, 1});

  ExactMatrix p(2, 2);
  p.at(0, 0) = gr(2);
  p.at(1, 1) = gr(3);
  CHECK(p.hermitian_signature() == Signature{2, 0, 0});

  ExactMatrix offdiag(2, 2);
  offdiag.at(0, 1) = gr(1);
  offdiag.at(1, 0) = gr(1);
  CHECK(offdiag.hermitian_signature() == Signature{1, 1, 0});

  ExactMatrix nonherm(2, 2);
  nonherm.at(0, 1) = gr(1);
  CHECK_THROWS_AS(nonherm.hermitian_signature(), std::invalid_argument);
}

TEST_CASE("congruence diagonalization") {
  ExactMatrix d(2, 2);
  d.at(0, 0) = gr(1);
  auto [p1, d1] = d.congruence_diagonalize();
  CHECK(p1 == ExactMatrix::identity(2));
  CHECK(d1 == d);

  ExactMatrix offdiag(2, 2);
  offdiag.at(0, 1) = gr(1);
  offdiag.at(1, 0) = gr(1);
  auto [p2, d2] = offdiag.congruence_diagonalize();
  CHECK(p2.invertible());
  CHECK(p2.adjoint() * offdiag * p2 == d2);
  int pos = 0, neg = 0;
  for (int k = 0; k < 2; ++k) {
    if (d2.at(k, k).re() > 0) ++pos;
    if (d2.at(k, k).re() < 0) ++neg;
  }
  CHECK(pos == 1);
  CHECK(neg == 1);

  ExactMatrix one(1, 1);
  one.at(0, 0) = gr(5);
  auto [p3, d3] = one.congruence_diagonalize();
  CHECK(d3.at(0, 0) == gr(5));
  CHECK(p3 == ExactMatrix::identity(1));
}

TEST_CASE("signature invariant under random exact congruences") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    int n = static_cast<int>(rng.range(1, 4));
    ExactMatrix m = rng.hermitian(n);
    Signature s = m.hermitian_signature();
    ExactMatrix p = rng.invertible(n);
    ExactMatrix m2 = p.adjoint() * m * p;
    REQUIRE(m2.is_hermitian());
    CHECK(m2.hermitian_signature() == s);

    auto [q, d] = m.congruence_diagonalize();
    CHECK(q.adjoint() * m * q == d);
    CHECK(q.invertible());
  }
}

TEST_CASE("nullspace dimension and verification on random matrices") {
  Rng rng(13);
  for (int t = 0; t < 60; ++t) {
    int r = static_cast<int>(rng.range(1, 4)), c = static_cast<int>(rng.range(1, 4));
    ExactMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (rng.range(0, 2)) m.at(i, j) = rng.gaussian();
    auto ns = m.nullspace();
    CHECK(static_cast<int>(ns.size()) == c - m.rank());
    for (const auto& v : ns) {
      auto mv = m.apply(v);
      for (const auto& x : mv) CHECK(x.is_zero());
    }
    // linear independence: stack into a matrix and check rank
    if (!ns.empty()) {
      ExactMatrix s(static_cast<int>(ns.size()), c);
      for (size_t i = 0; i < ns.size(); ++i)
        for (int j = 0; j < c; ++j) s.at(static_cast<int>(i), j) = ns[i][j];
      CHECK(s.rank() == static_cast<int>(ns.size()));
    }
  }
}
