#pragma once

#include "mdeq/forms.hpp"

#include <functional>
#include <optional>

namespace mdeq {

/// A point of the upper half-plane in tau coordinates.
struct HalfPlanePoint {
  BigFloat re, im;
  HalfPlanePoint(BigFloat re_, BigFloat im_) : re(std::move(re_)), im(std::move(im_)) {
    if (im.sgn() <= 0) throw std::invalid_argument("point must lie in the upper half-plane");
  }
  static HalfPlanePoint make(double re, double im, mpfr_prec_t prec) {
    return HalfPlanePoint(BigFloat::from_double(re, prec), BigFloat::from_double(im, prec));
  }
  BigComplex value(mpfr_prec_t prec) const {
    (void)prec;
    return BigComplex(re, im);
  }
};

struct EvalOptions {
  mpfr_prec_t prec = 256;
  long order = 60;
  double min_im = 0.5;                 // |q| <= e^{-pi} at the default floor
  std::optional<BigFloat> tail_tol;    // reject evaluations whose tail estimate exceeds this
};

struct EvalResult {
  BigComplex value;
  BigFloat tail_bound;
};

/// Value of the deriv_order-th tau-derivative of the series at tau, termwise:
/// the u^k term picks up (2 pi i k/N)^deriv_order.
EvalResult eval_series(const SeriesC& f, const HalfPlanePoint& tau, int deriv_order,
                       const EvalOptions& opts);

EvalResult eval_atom(FormAtom a, const HalfPlanePoint& tau, int deriv_order, const EvalOptions& opts);

/// Structural evaluation of an expression: atoms are evaluated through their
/// own (everywhere-convergent) q-expansions and combined as values, so the
/// result is valid even at points where the compiled series of the whole
/// expression would diverge (near its poles).
BigComplex eval_expr(const FormExprPtr& e, const HalfPlanePoint& tau, const EvalOptions& opts);

/// (value, d/dtau value) of an expression.
std::pair<BigComplex, BigComplex> eval_expr_jet(const FormExprPtr& e, const HalfPlanePoint& tau,
                                                const EvalOptions& opts);

/// Special values of higher derivatives at the elliptic points i and rho:
/// 12 eta'(i)/eta(i) = (3/7) E6''(i)/E6'(i) = J'''(i)/J''(i) = 3i and
/// 24 eta'(rho)/eta(rho) = J''''(rho)/J'''(rho) = (6/5) E4''(rho)/E4'(rho)
/// = 12(1+rho)/(1-rho).
VerificationReport special_value_report(const EvalOptions& opts, const BigFloat& tol);

/// Preimage of x in (0,1) under J along the unit arc between rho and i,
/// where J is real and monotone (asserted at runtime), polished by Newton.
HalfPlanePoint j_preimage_on_arc(const Rational& x, const EvalOptions& opts);
HalfPlanePoint j_preimage_on_arc_value(const BigFloat& x, const EvalOptions& opts);

/// Newton inversion of an expression near a seed; falls back to a coarse
/// grid scan over re in [-1,1], im in [0.42,2] when no seed is given.
HalfPlanePoint invert_expr(const FormExprPtr& form, const BigComplex& target,
                           std::optional<HalfPlanePoint> seed, const EvalOptions& opts);

struct ResidueQuery {
  FormExprPtr form;
  HalfPlanePoint center;
  BigFloat radius;
  long samples = 256;
};

struct ResidueResult {
  BigComplex residue;
  BigFloat guard_disagreement;  // |estimate(radius) - estimate(radius/2)|
};

/// (1/2 pi i) times the contour integral of the form around the center,
/// by the trapezoid rule; a second pass at half the radius must agree
/// within guard_tol or the query is rejected (nearby-pole signal).
ResidueResult contour_residue(const ResidueQuery& rq, const EvalOptions& opts,
                              const BigFloat& guard_tol);

/// Same quadrature for an arbitrary integrand.
ResidueResult contour_residue_fn(const std::function<BigComplex(const HalfPlanePoint&)>& f,
                                 const HalfPlanePoint& center, const BigFloat& radius, long samples,
                                 mpfr_prec_t prec, const BigFloat& guard_tol);

}  // namespace mdeq
