#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdeq/constructions.hpp"

using namespace mdeq;

namespace {

SolveOptions sopts() {
  SolveOptions o;
  o.prec = 256;
  return o;
}

EvalOptions eopts() {
  EvalOptions o;
  o.prec = 256;
  o.order = 60;
  return o;
}

SolutionSet class_sols(int alpha, long n) {
  AlgebraicSystem sys = class_system(alpha, n);
  if (auto closed = solve_closed_small(sys, sopts())) return *closed;
  return solve_positive(sys, sopts());
}

SolutionSet exact_one_point(const AlgebraicSystem& sys, const Rational& x) {
  SolutionSet s{sys,
                {BigComplex::from_rational(x, 256)},
                BigFloat(256),
                SolutionDomain::Complex,
                std::vector<Rational>{x}};
  return s;
}

}  // namespace

TEST_CASE("class systems and r values") {
  CHECK(class_system(1, 2).label() == "E^2_{4,3,12}");
  CHECK(class_system(7, 0).label() == "E^0_{4,9,12}");
  CHECK(class_system(5, 1).label() == "E^1_{8,3,12}");
  CHECK(class_system(11, 3).label() == "E^3_{8,9,12}");
  CHECK_THROWS_AS((void)class_system(3, 0), std::invalid_argument);
  CHECK(class_r(1, 0) == Rational(1, 6));
  CHECK(class_r(7, 0) == Rational(7, 6));
  CHECK(class_r(1, 1) == Rational(13, 6));
  CHECK(class_r(11, 2) == Rational(35, 6));
}

TEST_CASE("build_f leading exponents match r") {
  for (int alpha : {1, 5, 7, 11}) {
    for (long n : {0L, 1L}) {
      ResidueClassSpec spec{alpha, n, class_sols(alpha, n)};
      FormExprPtr f = build_f(spec);
      Rational r = class_r(alpha, n);
      CHECK(predicted_leading_exponent(f) == r);
      SeriesQ s = compile_exact(f, 8);
      CHECK(s.leading()->first == r);
    }
  }
  // mismatched certification is rejected
  ResidueClassSpec bad{7, 1, class_sols(1, 1)};
  CHECK_THROWS_AS((void)build_f(bad), std::invalid_argument);
}

TEST_CASE("Schwarz checks pass exactly for n in {0,1}, all classes") {
  for (int alpha : {1, 5, 7, 11}) {
    for (long n : {0L, 1L}) {
      ResidueClassSpec spec{alpha, n, class_sols(alpha, n)};
      VerificationReport rep = schwarz_check_exact(build_f(spec), class_r(alpha, n), 40);
      INFO(rep.check);
      CHECK(rep.pass);
      CHECK(rep.max_deviation == "0");
    }
  }
}

TEST_CASE("Schwarz constant term bookkeeping") {
  ResidueClassSpec spec{1, 0, class_sols(1, 0)};
  VerificationReport rep = schwarz_check_exact(build_f(spec), Rational(1, 6), 24);
  CHECK(rep.details["constant_term_lhs"] == "-1/72");
}

TEST_CASE("Schwarz negative control: wrong root fails visibly") {
  AlgebraicSystem sys = class_system(1, 1);
  SolutionSet wrong = exact_one_point(sys, Rational(1, 2));
  FormExprPtr f = make_product(
      {make_pow(make_atom(FormAtom::Eta), 4),
       make_pow(make_poly(FormAtom::J, std::vector<Rational>{Rational(-1, 2), Rational(1)}), -2)});
  VerificationReport rep = schwarz_check_exact(f, Rational(13, 6), 24);
  CHECK(!rep.pass);
  CHECK(BigFloat::from_decimal(rep.max_deviation, 128) >= BigFloat::from_decimal("1e-6", 128));
  (void)wrong;
}

TEST_CASE("companion equation checks") {
  ResidueClassSpec k0{1, 0, class_sols(1, 0)};
  CHECK(mde_check_exact(build_y1(k0), Rational(1, 6), 40).pass);
  ResidueClassSpec k1{1, 1, class_sols(1, 1)};
  CHECK(mde_check_exact(build_y1(k1), Rational(13, 6), 40).pass);
  // wrong multiplier fails
  CHECK(!mde_check_exact(build_y1(k0), Rational(1, 3), 16).pass);
  // the reciprocal-square-root solution works for the other classes too
  FormExprPtr y7 = make_product({make_pow(make_atom(FormAtom::Eta), -14),
                                 make_atom(FormAtom::E6)});
  CHECK(mde_check_exact(y7, Rational(7, 6), 24).pass);
}

TEST_CASE("enumeration of admissible pole/cusp counts") {
  CuspData m2 = enumerate_ab(2, 3);
  CHECK(m2.nu_inf == 3);
  REQUIRE(m2.pairs.size() == 2);
  CHECK(m2.pairs[0] == std::pair<long, long>(4, 0));
  CHECK(m2.pairs[1] == std::pair<long, long>(1, 1));

  CuspData m25 = enumerate_ab(2, 5);
  CHECK(m25.pairs[0] == std::pair<long, long>(7, 0));
  CHECK(m25.pairs[1] == std::pair<long, long>(2, 1));

  CuspData m3 = enumerate_ab(3, 2);
  CHECK(m3.nu_inf == 4);
  CHECK(m3.pairs[0] == std::pair<long, long>(3, 0));
  CHECK(m3.pairs[1] == std::pair<long, long>(1, 1));

  CuspData m4 = enumerate_ab(4, 3);
  CHECK(m4.nu_inf == 6);
  REQUIRE(m4.pairs.size() == 3);
  CHECK(m4.pairs[2] == std::pair<long, long>(1, 2));

  CuspData m5 = enumerate_ab(5, 2);
  CHECK(m5.nu_inf == 12);
  REQUIRE(m5.pairs.size() == 4);
  CHECK(m5.pairs[0] == std::pair<long, long>(7, 0));
  CHECK(m5.pairs[3] == std::pair<long, long>(1, 3));
  CHECK(m5.discarded.size() == 2);

  // small n discards negative-a members
  CuspData m41 = enumerate_ab(4, 1);
  CHECK(m41.discarded.size() == 1);

  // degree relation holds across levels and coprime n <= 9
  for (int m = 2; m <= 5; ++m)
    for (long n = 1; n <= 9; ++n) {
      if (std::gcd(static_cast<long>(m), n) != 1) continue;
      CuspData d = enumerate_ab(m, n);
      for (auto [a, b] : d.pairs) CHECK(2 * (a + n * b) - 2 == (n - 1) * d.nu_inf);
    }

  CHECK_THROWS_AS((void)enumerate_ab(6, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)enumerate_ab(2, 4), std::invalid_argument);
}

TEST_CASE("level-2 systems and expressions") {
  CHECK(level2_pole_count(3, Level2Variant::Case1) == 4);
  CHECK(level2_pole_count(3, Level2Variant::Case2Cusp0) == 1);
  CHECK_THROWS_AS((void)level2_pole_count(4, Level2Variant::Case1), std::invalid_argument);
  CHECK(level2_system(3, Level2Variant::Case2Cusp0).label() == "E^1_{-2,4,2}");
  CHECK(level2_system(3, Level2Variant::Case2Cusp1).label() == "E^1_{4,-2,2}");
  auto [candA, candB] = level2_case1_candidates(3);
  CHECK(candA.label() == "E^4_{2,-2,-2}");
  CHECK(candB.label() == "E^4_{2,2,-2}");

  // closed forms: x = -1 (cusp 0) and x = 2 (cusp 1)
  auto o = sopts();
  auto s0 = solve_closed_small(level2_system(3, Level2Variant::Case2Cusp0), o);
  REQUIRE(s0.has_value());
  CHECK(s0->exact_points->front() == Rational(-1));
  auto s1 = solve_closed_small(level2_system(3, Level2Variant::Case2Cusp1), o);
  CHECK(s1->exact_points->front() == Rational(2));

  FormExprPtr h1 = level2_hprime(3, Level2Variant::Case2Cusp0, *s0, 256);
  CHECK(expr_to_string(h1) == "Dt*t^2*(t + -1)^-4*(t + 1)^-2");
  FormExprPtr h2 = level2_hprime(3, Level2Variant::Case2Cusp1, *s1, 256);
  CHECK(expr_to_string(h2) == "Dt*(t + -1)^2*t^-4*(t + -2)^-2");
  CHECK(predicted_leading_exponent(h2) == Rational(3, 2));
  CHECK(compile_exact(h2, 8).leading()->first == Rational(3, 2));

  // quartic denominator for case 1
  std::vector<BigComplex> monic;
  for (long c : {-2, 4, 0, -2, 1}) monic.push_back(BigComplex::from_long(c, 256));
  SolutionSet squartic = certify_points(level2_case1_candidates(3).second,
                                        complex_poly_roots(monic, 256), sopts());
  FormExprPtr h3 = level2_hprime(3, Level2Variant::Case1, squartic, 256);
  CHECK(expr_to_string(h3) == "Dt*t^2*(t + -1)^2*(t^4 + -2*t^3 + 4*t + -2)^-2");
  CHECK(compile_exact(h3, 8).leading()->first == Rational(3, 2));

  CHECK_THROWS_AS((void)level2_hprime(3, Level2Variant::Case1, *s0, 256), std::invalid_argument);
}

TEST_CASE("level-2 Schwarz checks") {
  // the Hauptmodul itself: r = 1/2
  FormExprPtr dt = make_atom(FormAtom::DT);
  CHECK(level2_schwarz_check(dt, Rational(1, 2), 40, true, 256,
                             BigFloat::from_decimal("1e-20", 256))
            .pass);
  // wrong multiplier fails
  CHECK(!level2_schwarz_check(dt, Rational(1), 16, true, 256,
                              BigFloat::from_decimal("1e-20", 256))
             .pass);
  // case 2 cusp 1 at r = 3/2
  auto s1 = solve_closed_small(level2_system(3, Level2Variant::Case2Cusp1), sopts());
  FormExprPtr h2 = level2_hprime(3, Level2Variant::Case2Cusp1, *s1, 256);
  VerificationReport rep = level2_schwarz_check(h2, Rational(3, 2), 40, true, 256,
                                                BigFloat::from_decimal("1e-20", 256));
  CHECK(rep.pass);
  CHECK(rep.max_deviation == "0");
}

TEST_CASE("example primitives: derivative and moebius identities") {
  for (int which : {1, 2, 3}) {
    VerificationReport rep = ratfunc_derivative_check(
        "h" + std::to_string(which), level2_example_h(which),
        level2_example_hprime_over_tprime(which));
    INFO(rep.check);
    CHECK(rep.pass);
  }
  VerificationReport moe = moebius_relation_check();
  CHECK(moe.pass);
  // negative control: a wrong primitive fails
  VerificationReport bad =
      ratfunc_derivative_check("wrong", level2_example_h(1), level2_example_hprime_over_tprime(2));
  CHECK(!bad.pass);
}

TEST_CASE("residue suite for a class construction") {
  ResidueClassSpec spec{7, 0, class_sols(7, 0)};
  FormExprPtr f = build_f(spec);
  auto poles = class_pole_points(spec, eopts());
  REQUIRE(poles.size() == 1);  // only the elliptic point i
  VerificationReport rep = residue_report("residues", f, poles, {}, eopts(),
                                          BigFloat::from_decimal("1e-15", 256));
  CHECK(rep.pass);
}

TEST_CASE("case-1 sign resolution retains the log-derivative system") {
  Case1Resolution res =
      resolve_case1(3, eopts(), sopts(), BigFloat::from_decimal("1e-15", 256));
  CHECK(res.report.pass);
  CHECK(res.winner.label() == "E^4_{2,2,-2}");
  CHECK(res.winning_solutions.points.size() == 4);
  // the paper-normalized member (coefficients 1,-2,0,4,-2) lies in the family
  auto space = heine_stieltjes_polynomials(res.winner);
  REQUIRE(space.exists);
  REQUIRE(space.directions.size() == 1);
  std::vector<Rational> member(space.base);
  for (size_t k = 0; k < member.size(); ++k) member[k] += Rational(4) * space.directions[0][k];
  CHECK(member == std::vector<Rational>{Rational(-2), Rational(4), Rational(0), Rational(-2),
                                        Rational(1)});
}
