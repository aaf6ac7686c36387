#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdeq/ratfunc.hpp"

#include <random>

using namespace mdeq;

namespace {

PolyQ rand_poly(std::mt19937& rng, int max_deg = 4) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> coef(-5, 5);
  int d = deg(rng);
  std::vector<Rational> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
  return PolyQ(std::move(c));
}

RationalFunction rand_rf(std::mt19937& rng) {
  PolyQ num = rand_poly(rng);
  PolyQ den = rand_poly(rng);
  while (den.is_zero()) den = rand_poly(rng);
  return RationalFunction(num, den);
}

}  // namespace

TEST_CASE("polynomial arithmetic, division, gcd") {
  PolyQ t = PolyQ::x();
  PolyQ p = t * t - PolyQ(Rational(1));               // t^2 - 1
  PolyQ q = t - PolyQ(Rational(1));                   // t - 1
  auto [quo, rem] = PolyQ::divmod(p, q);
  CHECK(rem.is_zero());
  CHECK(quo == t + PolyQ(Rational(1)));
  CHECK(gcd(p, q) == q.monic());
  CHECK(derivative(p) == Rational(2) * t);
  CHECK(p.eval(Rational(3)) == 8);
  CHECK(PolyQ::from_roots({Rational(1), Rational(-1)}) == p);
  CHECK_THROWS_AS((void)PolyQ::divmod(p, PolyQ()), std::domain_error);
}

TEST_CASE("rational functions reduce and normalize") {
  PolyQ t = PolyQ::x();
  RationalFunction f(t * t - PolyQ(Rational(1)), Rational(2) * (t - PolyQ(Rational(1))));
  // (t^2-1)/(2(t-1)) reduces to (t+1)/2 with monic denominator... num/den scaled
  CHECK(f.den() == PolyQ(Rational(1)));
  CHECK(f.num() == Rational(1, 2) * (t + PolyQ(Rational(1))));
  CHECK_THROWS_AS(RationalFunction(t, PolyQ()), std::domain_error);
}

TEST_CASE("field and derivation laws on random rational functions") {
  std::mt19937 rng(424243);
  int done = 0;
  while (done < 40) {
    RationalFunction f = rand_rf(rng), g = rand_rf(rng), h = rand_rf(rng);
    CHECK(f + g == g + f);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(derivative(f * g) == derivative(f) * g + f * derivative(g));
    CHECK(derivative(f + g) == derivative(f) + derivative(g));
    if (!g.is_zero()) {
      CHECK(f / g * g == f);
      CHECK(derivative(f / g) == (derivative(f) * g - f * derivative(g)) / (g * g));
    }
    ++done;
  }
}

TEST_CASE("limit at infinity") {
  PolyQ t = PolyQ::x();
  RationalFunction f(Rational(3) * t * t + t, Rational(4) * t * t - PolyQ(Rational(7)));
  REQUIRE(f.limit_at_infinity().has_value());
  CHECK(*f.limit_at_infinity() == Rational(3, 4));
  RationalFunction g(t, t * t + PolyQ(Rational(1)));
  CHECK(*g.limit_at_infinity() == Rational(0));
  RationalFunction h(t * t, t - PolyQ(Rational(2)));
  CHECK(!h.limit_at_infinity().has_value());
}
