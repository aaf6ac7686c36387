#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdeq/point_eval.hpp"

using namespace mdeq;

namespace {

EvalOptions opts() {
  EvalOptions o;
  o.prec = 256;
  o.order = 60;
  return o;
}

HalfPlanePoint point_i(mpfr_prec_t prec) {
  return HalfPlanePoint(BigFloat(prec), BigFloat::from_long(1, prec));
}

HalfPlanePoint point_rho(mpfr_prec_t prec) {
  BigFloat half = BigFloat::from_rational(Rational(1, 2), prec);
  return HalfPlanePoint(-half, sqrt(BigFloat::from_long(3, prec)) / BigFloat::from_long(2, prec));
}

double abs_diff(const BigComplex& a, const BigComplex& b) { return abs(a - b).to_double(); }

}  // namespace

TEST_CASE("values at the elliptic points") {
  auto o = opts();
  BigComplex one = BigComplex::from_long(1, o.prec);
  CHECK(abs_diff(eval_atom(FormAtom::J, point_i(o.prec), 0, o).value, one) < 1e-60);
  CHECK(abs(eval_atom(FormAtom::E6, point_i(o.prec), 0, o).value).to_double() < 1e-60);
  // J has a triple zero at rho: the value and first two derivatives vanish
  CHECK(abs(eval_atom(FormAtom::J, point_rho(o.prec), 0, o).value).to_double() < 1e-55);
  CHECK(abs(eval_atom(FormAtom::J, point_rho(o.prec), 1, o).value).to_double() < 1e-50);
  CHECK(abs(eval_atom(FormAtom::J, point_rho(o.prec), 2, o).value).to_double() < 1e-48);
  CHECK(abs(eval_atom(FormAtom::E4, point_rho(o.prec), 0, o).value).to_double() < 1e-60);
  // lambda(i) = 1/2, so t(i) = 2
  CHECK(abs_diff(eval_atom(FormAtom::Lambda, point_i(o.prec), 0, o).value,
                 BigComplex::from_rational(Rational(1, 2), o.prec)) < 1e-60);
  CHECK(abs_diff(eval_atom(FormAtom::T, point_i(o.prec), 0, o).value,
                 BigComplex::from_long(2, o.prec)) < 1e-60);
}

TEST_CASE("evaluation guards") {
  auto o = opts();
  CHECK_THROWS_AS((void)eval_atom(FormAtom::J, HalfPlanePoint::make(0.0, 0.2, o.prec), 0, o),
                  std::domain_error);
  CHECK_THROWS_AS((void)HalfPlanePoint::make(0.0, -1.0, o.prec), std::invalid_argument);
  // D-eval agreement: eval(D f, tau) * 2 pi i == eval(f, tau, 1)
  SeriesC e4 = atom_series_c(FormAtom::E4, o.order, o.prec);
  SeriesC de4 = derive(e4);
  HalfPlanePoint p = HalfPlanePoint::make(0.13, 1.21, o.prec);
  BigComplex lhs = eval_series(de4, p, 0, o).value;
  BigFloat two_pi = BigFloat::pi(o.prec) + BigFloat::pi(o.prec);
  lhs *= BigComplex(BigFloat(o.prec), two_pi);
  BigComplex rhs = eval_series(e4, p, 1, o).value;
  CHECK(abs(lhs - rhs).to_double() < 1e-60);
}

TEST_CASE("evaluation is linear and multiplicative") {
  auto o = opts();
  HalfPlanePoint p = HalfPlanePoint::make(-0.27, 0.93, o.prec);
  SeriesC e4 = atom_series_c(FormAtom::E4, o.order, o.prec);
  SeriesC e6 = atom_series_c(FormAtom::E6, o.order, o.prec);
  BigComplex sum = eval_series(e4 + e6, p, 0, o).value;
  BigComplex parts = eval_series(e4, p, 0, o).value + eval_series(e6, p, 0, o).value;
  CHECK(abs(sum - parts).to_double() < 1e-70);
  BigComplex prod = eval_series(e4 * e6, p, 0, o).value;
  BigComplex factors = eval_series(e4, p, 0, o).value * eval_series(e6, p, 0, o).value;
  CHECK(abs(prod - factors).to_double() < 1e-60);
}

TEST_CASE("tail estimates accompany every evaluation") {
  auto o = opts();
  EvalResult r = eval_atom(FormAtom::J, point_i(o.prec), 0, o);
  CHECK(r.tail_bound.sgn() > 0);
  CHECK(r.tail_bound.to_double() < 1e-40);
  // requesting a tolerance below the tail estimate is an error
  EvalOptions strict = o;
  strict.tail_tol = BigFloat::from_decimal("1e-200", o.prec);
  CHECK_THROWS_AS((void)eval_atom(FormAtom::J, point_i(o.prec), 0, strict), std::runtime_error);
}

TEST_CASE("special-value report hits the closed forms") {
  auto o = opts();
  VerificationReport rep = special_value_report(o, BigFloat::from_decimal("1e-25", o.prec));
  CHECK(rep.pass);
  CHECK(BigFloat::from_decimal(rep.max_deviation, 128) <= BigFloat::from_decimal("1e-70", 128));
}

TEST_CASE("special-value deviations track precision and order") {
  EvalOptions loose;
  loose.prec = 128;
  loose.order = 20;
  VerificationReport rep = special_value_report(loose, BigFloat::from_decimal("1e-10", 128));
  CHECK(rep.pass);
  VerificationReport too_tight = special_value_report(loose, BigFloat::from_decimal("1e-60", 128));
  CHECK(!too_tight.pass);
}

TEST_CASE("arc preimages and Newton inversion round-trip") {
  auto o = opts();
  HalfPlanePoint w = j_preimage_on_arc(Rational(4, 7), o);
  // preimage lies on the unit arc
  CHECK(std::abs(hypot(w.re, w.im).to_double() - 1.0) < 1e-40);
  BigComplex back = eval_atom(FormAtom::J, w, 0, o).value;
  CHECK(abs(back - BigComplex::from_rational(Rational(4, 7), o.prec)).to_double() < 1e-60);
  CHECK_THROWS_AS((void)j_preimage_on_arc(Rational(3, 2), o), std::invalid_argument);

  // t = 2 pulls back to i
  HalfPlanePoint wi =
      invert_expr(make_atom(FormAtom::T), BigComplex::from_long(2, o.prec), std::nullopt, o);
  CHECK(abs(BigComplex(wi.re, wi.im) - BigComplex::i_unit(o.prec)).to_double() < 1e-55);
  BigComplex fwd = eval_atom(FormAtom::T, wi, 0, o).value;
  CHECK(abs(fwd - BigComplex::from_long(2, o.prec)).to_double() < 1e-60);
}

TEST_CASE("contour quadrature on a bare double pole kernel") {
  auto o = opts();
  HalfPlanePoint w = HalfPlanePoint::make(0.21, 0.9, o.prec);
  BigComplex wc(w.re, w.im);
  auto simple_pole = [&](const HalfPlanePoint& tau) {
    return inverse(BigComplex(tau.re, tau.im) - wc);
  };
  BigFloat guard = BigFloat::from_decimal("1e-40", o.prec);
  ResidueResult rr = contour_residue_fn(simple_pole, w, BigFloat::from_double(0.05, o.prec), 256,
                                        o.prec, guard);
  CHECK(abs(rr.residue - BigComplex::from_long(1, o.prec)).to_double() < 1e-55);

  // holomorphic integrand: residue ~ 0
  auto holo = [&](const HalfPlanePoint& tau) {
    BigComplex z(tau.re, tau.im);
    return z * z + BigComplex::from_long(3, o.prec);
  };
  ResidueResult rh = contour_residue_fn(holo, w, BigFloat::from_double(0.05, o.prec), 256, o.prec, guard);
  CHECK(abs(rh.residue).to_double() < 1e-60);
}

TEST_CASE("residues of the adjoined-pole family detect the right root") {
  auto o = opts();
  BigFloat guard = BigFloat::from_decimal("1e-12", o.prec);

  FormExprPtr good = make_product(
      {make_pow(make_atom(FormAtom::Eta), 4),
       make_pow(make_poly(FormAtom::J, std::vector<Rational>{Rational(-4, 7), Rational(1)}), -2)});
  HalfPlanePoint w_good = j_preimage_on_arc(Rational(4, 7), o);
  ResidueQuery rq{good, w_good, BigFloat::from_double(0.05, o.prec), 256};
  ResidueResult rr = contour_residue(rq, o, guard);
  CHECK(abs(rr.residue).to_double() < 1e-15);

  // x = 1/2 does not satisfy the residue system: nonzero residue
  FormExprPtr bad = make_product(
      {make_pow(make_atom(FormAtom::Eta), 4),
       make_pow(make_poly(FormAtom::J, std::vector<Rational>{Rational(-1, 2), Rational(1)}), -2)});
  HalfPlanePoint w_bad = j_preimage_on_arc(Rational(1, 2), o);
  ResidueQuery rq_bad{bad, w_bad, BigFloat::from_double(0.05, o.prec), 256};
  ResidueResult rb = contour_residue(rq_bad, o, guard);
  CHECK(abs(rb.residue).to_double() > 1e-6);
}

TEST_CASE("residue query validation") {
  auto o = opts();
  FormExprPtr eta4 = make_pow(make_atom(FormAtom::Eta), 4);
  HalfPlanePoint low = HalfPlanePoint::make(0.0, 0.38, o.prec);
  ResidueQuery rq{eta4, low, BigFloat::from_double(0.05, o.prec), 256};
  CHECK_THROWS_AS((void)contour_residue(rq, o, BigFloat::from_decimal("1e-12", o.prec)),
                  std::invalid_argument);
  ResidueQuery rq2{eta4, HalfPlanePoint::make(0.0, 1.0, o.prec), BigFloat::from_double(0.05, o.prec),
                   16};
  CHECK_THROWS_AS((void)contour_residue(rq2, o, BigFloat::from_decimal("1e-12", o.prec)),
                  std::invalid_argument);
}
