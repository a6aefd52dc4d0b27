#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crgeo/poly.hpp"
#include "crgeo/rational_expr.hpp"
#include "crgeo/weights.hpp"
#include "test_support.hpp"

using namespace crgeo;
using crgeo::testing::Rng;

namespace {
GaussianRational gr(long n) { return GaussianRational(n); }
Poly V(int nz, VarId v) { return Poly::var(nz, v); }
} // namespace

TEST_CASE("conjugation is an involution with the right fixed points") {
  int nz = 2;
  Poly z1 = V(nz, VarId::z(0)), z2b = V(nz, VarId::zb(1));
  CHECK((z1 * z2b).conj() == V(nz, VarId::zb(0)) * V(nz, VarId::z(1)));
  Poly abs_sq = z1 * V(nz, VarId::zb(0));
  CHECK(abs_sq.conj() == abs_sq);
  CHECK((z1 * GaussianRational::i()).conj() == V(nz, VarId::zb(0)) * (-GaussianRational::i()));

  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    Poly p = rng.poly(2, 4, 5);
    CHECK(p.conj().conj() == p);
    CHECK(p.conj().wirtinger(VarId::zb(0)) == p.wirtinger(VarId::z(0)).conj());
  }
}

TEST_CASE("wirtinger derivatives") {
  int nz = 1;
  Poly z = V(nz, VarId::z(0)), zb = V(nz, VarId::zb(0)), u = V(nz, VarId::u());
  CHECK((z * zb).wirtinger(VarId::z(0)) == zb);
  // d^2/dz^2 d^2/dzb^2 (z^2 zb^2) = 4
  Poly p = z.pow(2) * zb.pow(2);
  Poly d = p.wirtinger(VarId::z(0)).wirtinger(VarId::z(0)).wirtinger(VarId::zb(0)).wirtinger(VarId::zb(0));
  CHECK(d == Poly::constant(nz, gr(4)));
  CHECK((u * u * z * zb).wirtinger(VarId::u()) == u * z * zb * gr(2));

  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    Poly a = rng.poly(2, 3, 4), b = rng.poly(2, 3, 4);
    VarId v = (t % 2) ? VarId::z(t % 2) : VarId::zb(0);
    CHECK((a * b).wirtinger(v) == a.wirtinger(v) * b + a * b.wirtinger(v));
  }
}

TEST_CASE("bidegree split") {
  int nz = 2;
  Poly z1 = V(nz, VarId::z(0)), z2 = V(nz, VarId::z(1));
  Poly z1b = V(nz, VarId::zb(0)), z2b = V(nz, VarId::zb(1));
  // |z1|^4 + 2 Re(z1^3 conj(z2))
  Poly p = (z1 * z1b).pow(2) + z1.pow(3) * z2b + z1b.pow(3) * z2;
  auto parts = p.bidegree_split();
  REQUIRE(parts.size() == 3);
  CHECK(parts.at({2, 2}) == (z1 * z1b).pow(2));
  CHECK(parts.at({3, 1}) == z1.pow(3) * z2b);
  CHECK(parts.at({1, 3}) == z1b.pow(3) * z2);

  CHECK(z1.pow(2).bidegree_split().size() == 1);
  CHECK(Poly(nz).bidegree_split().empty());

  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    Poly q = rng.poly(2, 5, 6);
    Poly sum(2);
    for (auto& [k, comp] : q.bidegree_split()) {
      sum += comp;
      // Euler operators: z d/dz and zb d/dzb act with eigenvalues (j, k)
      Poly ez(2), ezb(2);
      for (int j = 0; j < 2; ++j) {
        ez += V(2, VarId::z(j)) * comp.wirtinger(VarId::z(j));
        ezb += V(2, VarId::zb(j)) * comp.wirtinger(VarId::zb(j));
      }
      CHECK(ez == comp * gr(k.first));
      CHECK(ezb == comp * gr(k.second));
    }
    CHECK(sum == q);
  }
}

TEST_CASE("weights and O_Lambda") {
  WeightVector lam = WeightVector::finite({1, 2, 4});
  CHECK(lam.weight_of_multiindex({1, 0, 0}) == 1);
  CHECK(lam.weight_of_multiindex({0, 2, 0}) == 1);
  CHECK(lam.weight_of_multiindex({0, 1, 2}) == 1); // 1/2 + 2/4
  CHECK(lam.is_admissible());

  int nz = 1;
  Poly rho = -(V(nz, VarId::w()) + V(nz, VarId::wb())) +
             (V(nz, VarId::z(0)) * V(nz, VarId::zb(0))).pow(2);
  CHECK(is_O_Lambda(rho, WeightVector::finite({1, 4})));
  CHECK(!is_O_Lambda(rho, WeightVector::finite({1, 5})));
  Poly lin = -(V(nz, VarId::w()) + V(nz, VarId::wb()));
  CHECK(is_O_Lambda(lin, WeightVector::finite({1, 7})));

  // infinity entries contribute zero weight
  WeightVector with_inf({std::optional<mpq_class>(mpq_class(1)), std::nullopt});
  CHECK(with_inf.weight_of_multiindex({0, 5}) == 0);
  CHECK(!is_O_Lambda(V(nz, VarId::z(0)) * V(nz, VarId::zb(0)), with_inf));

  // monotonicity: componentwise lowering Lambda never flips true -> false
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    Poly p = rng.chart_poly(1, 5, 4);
    long l2 = rng.range(1, 6);
    WeightVector a = WeightVector::finite({1, l2});
    WeightVector b = WeightVector::finite({1, rng.range(1, l2)});
    if (is_O_Lambda(p, a)) CHECK(is_O_Lambda(p, b));
  }
}

TEST_CASE("admissibility examples") {
  CHECK(WeightVector::finite({1, 2, 4}).is_admissible());
  CHECK(WeightVector::finite({1, 4, 4}).is_admissible());
  // lambda = 3/2 admits (1,...) tuples? a1/1 + a2/(3/2) = 1 requires a2*2/3 with a2>0: no
  WeightVector bad({std::optional<mpq_class>(mpq_class(1)), std::optional<mpq_class>(mpq_class(3, 2))});
  CHECK(!bad.is_admissible());
  WeightVector ok({std::optional<mpq_class>(mpq_class(1)), std::optional<mpq_class>(mpq_class(3))});
  CHECK(ok.is_admissible());
}

TEST_CASE("substitute with truncation") {
  int nz = 2;
  Poly z1 = V(nz, VarId::z(0)), z2 = V(nz, VarId::z(1));
  Poly p = z1 * V(nz, VarId::zb(0));
  std::vector<std::optional<Poly>> im(VarId::slot_count(nz));
  im[VarId::z(0).slot(nz)] = z1 + z2.pow(2);
  im[VarId::zb(0).slot(nz)] = (z1 + z2.pow(2)).conj();
  CHECK(p.substitute(im, 2, true) == p);

  // non conjugation compatible map is reported
  im[VarId::zb(0).slot(nz)] = V(nz, VarId::zb(0));
  CHECK_THROWS_AS(p.substitute(im, 2, true), std::invalid_argument);

  // identity map
  std::vector<std::optional<Poly>> none(VarId::slot_count(nz));
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    Poly q = rng.poly(2, 4, 5);
    CHECK(q.substitute(none) == q);
  }

  // truncation is idempotent
  for (int t = 0; t < 20; ++t) {
    Poly q = rng.poly(2, 6, 6);
    CHECK(q.truncate(3).truncate(3) == q.truncate(3));
  }
}

TEST_CASE("w-substitution kills the matching real pair up to the cut order") {
  // p = 2 Re w, w -> w - h(z): the substitution removes 2 Re h modulo order > 3
  int nz = 1;
  Poly w = V(nz, VarId::w()), z = V(nz, VarId::z(0));
  Poly h = z.pow(2) + z.pow(3) * gr(5);
  std::vector<std::optional<Poly>> im(VarId::slot_count(nz));
  im[VarId::w().slot(nz)] = w - h;
  im[VarId::wb().slot(nz)] = (w - h).conj();
  Poly p = w + V(nz, VarId::wb());
  Poly out = p.substitute(im, 3, true);
  CHECK(out == w + V(nz, VarId::wb()) - h - h.conj());
  // at order 2 the cubic part of h is cut
  Poly out2 = p.substitute(im, 2, true);
  CHECK(out2 == w + V(nz, VarId::wb()) - z.pow(2) - z.pow(2).conj());
}

TEST_CASE("harmonic part") {
  int nz = 1;
  Poly z = V(nz, VarId::z(0)), zb = V(nz, VarId::zb(0)), u = V(nz, VarId::u());
  CHECK((z.pow(3) + z * zb).harmonic_part() == z.pow(3));
  CHECK((z.pow(2) * zb + zb.pow(2) * z).harmonic_part().is_zero());
  CHECK((u * z.pow(2) + u * z * zb).harmonic_part() == u * z.pow(2));
  CHECK((u.pow(3)).harmonic_part() == u.pow(3)); // pure-u counts as harmonic
}

TEST_CASE("ring axioms and rendering round knowledge") {
  Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    Poly a = rng.poly(2, 4, 4), b = rng.poly(2, 4, 4), c = rng.poly(2, 4, 4);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
  // canonical rendering is deterministic
  Poly p = rng.poly(2, 4, 6);
  CHECK(p.str() == p.str());
}

TEST_CASE("rational expressions: quotient rule and jets") {
  int nz = 1;
  Poly z = V(nz, VarId::z(0)), zb = V(nz, VarId::zb(0));
  Poly one = Poly::constant(nz, gr(1));
  RationalExpr f(z * zb, one + z * zb); // unit denominator at 0
  RationalExpr df = f.wirtinger(VarId::z(0));
  // d/dz (z zb/(1+z zb)) = zb/(1+z zb)^2
  RationalExpr expected(zb, (one + z * zb).pow(2));
  CHECK(df.equals(expected));

  // geometric series jet of 1/(1 - z zb)
  RationalExpr g(one, one - z * zb);
  Jet gj = g.jet(5);
  Poly expect = one + z * zb + (z * zb).pow(2);
  CHECK(gj.poly() == expect.truncate(5));

  CHECK_THROWS_AS(RationalExpr(one, z), std::invalid_argument); // non-unit denominator

  // exact evaluation away from the center
  std::vector<GaussianRational> at(VarId::slot_count(nz));
  at[VarId::z(0).slot(nz)] = GaussianRational::rational(1, 2);
  at[VarId::zb(0).slot(nz)] = GaussianRational::rational(1, 2);
  CHECK(f.eval(at) == GaussianRational::rational(1, 5));

  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    Poly num = rng.poly(1, 3, 3);
    Poly den = one + rng.poly(1, 3, 3).truncate(3).degree_range(1, 3);
    RationalExpr r(num, den);
    RationalExpr s(rng.poly(1, 3, 3));
    VarId v = VarId::z(0);
    CHECK((r * s).wirtinger(v).equals(r.wirtinger(v) * s + r * s.wirtinger(v)));
  }
}
