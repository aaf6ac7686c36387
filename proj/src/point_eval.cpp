#include "mdeq/point_eval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mdeq {

namespace {

BigComplex two_pi_i(mpfr_prec_t prec) {
  BigFloat two_pi = BigFloat::pi(prec) + BigFloat::pi(prec);
  return BigComplex(BigFloat(prec), two_pi);
}

// q^(1/N) at tau: exp(2 pi i tau / N).
BigComplex nome_root(const HalfPlanePoint& tau, long denom, mpfr_prec_t prec) {
  BigFloat two_pi = BigFloat::pi(prec) + BigFloat::pi(prec);
  BigFloat n = BigFloat::from_long(denom, prec);
  BigFloat mag = exp(-(two_pi * tau.im / n));
  BigFloat ang = two_pi * tau.re / n;
  BigFloat s(prec), c(prec);
  sin_cos(ang, s, c);
  return BigComplex(mag * c, mag * s);
}

Rational rational_pow(const Rational& x, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// 2^-(prec-16): the practical convergence target at a given precision.
BigFloat ldexp_bound(mpfr_prec_t prec) {
  BigFloat r = BigFloat::from_long(1, prec);
  mpfr_mul_2si(r.raw(), r.raw(), -static_cast<long>(prec - 16), MPFR_RNDN);
  return r;
}

}  // namespace

EvalResult eval_series(const SeriesC& f, const HalfPlanePoint& tau, int deriv_order,
                       const EvalOptions& opts) {
  const mpfr_prec_t prec = opts.prec;
  if (tau.im < BigFloat::from_double(opts.min_im, prec))
    throw std::domain_error("tau below the convergence floor for series evaluation");
  if (deriv_order < 0) throw std::invalid_argument("negative derivative order");

  const long N = f.denom();
  BigComplex w = nome_root(tau, N, prec);
  BigFloat rho = abs(w);

  // Sum over nonzero stored terms, stepping w^k between them.
  BigComplex sum(prec);
  BigComplex wp = pow_int(w, f.lo_num());
  long cur = f.lo_num();
  BigFloat tail_scale(prec);
  int seen_for_tail = 0;
  BigFloat coeff_max(prec);
  for (long k = f.lo_num(); k < f.trunc_num(); ++k) {
    const BigComplex& c = f.at_num(k);
    if (c.is_zero()) continue;
    if (k != cur) {
      wp *= pow_int(w, k - cur);
      cur = k;
    }
    BigComplex term = c;
    if (deriv_order > 0) {
      Rational e = Rational(k) / Rational(N);
      term = mul_rational(term, rational_pow(e, deriv_order));
    }
    sum += term * wp;
    BigFloat a = abs(c);
    if (coeff_max < a) coeff_max = a;
    ++seen_for_tail;
  }
  if (deriv_order > 0) sum *= pow_int(two_pi_i(prec), deriv_order);

  // Geometric tail estimate from the largest stored coefficient.
  BigFloat one = BigFloat::from_long(1, prec);
  BigFloat tail(prec);
  if (rho < one) {
    BigFloat top = coeff_max.is_zero() ? one : coeff_max;
    BigFloat rho_pow = exp(BigFloat::from_long(f.trunc_num(), prec) * log(rho));
    BigFloat deriv_fac = one;
    if (deriv_order > 0) {
      BigFloat e = BigFloat::from_long(f.trunc_num(), prec) / BigFloat::from_long(N, prec);
      BigFloat twopi = BigFloat::pi(prec) + BigFloat::pi(prec);
      for (int i = 0; i < deriv_order; ++i) deriv_fac *= twopi * e;
    }
    tail = BigFloat::from_long(4, prec) * top * rho_pow * deriv_fac / (one - rho);
  }
  if (opts.tail_tol && tail > *opts.tail_tol)
    throw std::runtime_error("series truncation error exceeds the requested tolerance");
  return {sum, tail};
}

EvalResult eval_atom(FormAtom a, const HalfPlanePoint& tau, int deriv_order, const EvalOptions& opts) {
  return eval_series(atom_series_c(a, opts.order, opts.prec), tau, deriv_order, opts);
}

namespace {

struct Jet {
  BigComplex f, df;  // value and d/dtau
};

Jet jet_mul(const Jet& a, const Jet& b) { return {a.f * b.f, a.f * b.df + a.df * b.f}; }

Jet jet_pow(const Jet& a, long n, mpfr_prec_t prec) {
  BigComplex fn = pow_int(a.f, n);
  BigComplex dfn = BigComplex::from_long(n, prec) * pow_int(a.f, n - 1) * a.df;
  return {fn, dfn};
}

Jet eval_jet_impl(const FormExprPtr& e, const HalfPlanePoint& tau, const EvalOptions& opts) {
  const mpfr_prec_t prec = opts.prec;
  if (const auto* at = std::get_if<FormExpr::AtomNode>(&e->node)) {
    return {eval_atom(at->atom, tau, 0, opts).value, eval_atom(at->atom, tau, 1, opts).value};
  }
  if (const auto* pw = std::get_if<FormExpr::PowNode>(&e->node))
    return jet_pow(eval_jet_impl(pw->base, tau, opts), pw->exponent, prec);
  if (const auto* pr = std::get_if<FormExpr::ProductNode>(&e->node)) {
    Jet acc{BigComplex::from_long(1, prec), BigComplex(prec)};
    for (const auto& f : pr->factors) acc = jet_mul(acc, eval_jet_impl(f, tau, opts));
    return acc;
  }
  const auto& pn = std::get<FormExpr::PolyNode>(e->node);
  Jet A{eval_atom(pn.atom, tau, 0, opts).value, eval_atom(pn.atom, tau, 1, opts).value};
  size_t deg = pn.exact ? pn.qcoeffs.size() : pn.ccoeffs.size();
  auto coeff_at = [&](size_t k) {
    return pn.exact ? BigComplex::from_rational(pn.qcoeffs[k], prec) : pn.ccoeffs[k];
  };
  BigComplex p(prec), dp(prec);  // Horner for P(A) and P'(A)
  for (size_t k = deg; k-- > 0;) {
    dp = dp * A.f + p;
    p = p * A.f + coeff_at(k);
  }
  return {p, dp * A.df};
}

}  // namespace

BigComplex eval_expr(const FormExprPtr& e, const HalfPlanePoint& tau, const EvalOptions& opts) {
  const mpfr_prec_t prec = opts.prec;
  if (const auto* at = std::get_if<FormExpr::AtomNode>(&e->node))
    return eval_atom(at->atom, tau, 0, opts).value;
  if (const auto* pw = std::get_if<FormExpr::PowNode>(&e->node))
    return pow_int(eval_expr(pw->base, tau, opts), pw->exponent);
  if (const auto* pr = std::get_if<FormExpr::ProductNode>(&e->node)) {
    BigComplex acc = BigComplex::from_long(1, prec);
    for (const auto& f : pr->factors) acc *= eval_expr(f, tau, opts);
    return acc;
  }
  const auto& pn = std::get<FormExpr::PolyNode>(e->node);
  BigComplex A = eval_atom(pn.atom, tau, 0, opts).value;
  size_t deg = pn.exact ? pn.qcoeffs.size() : pn.ccoeffs.size();
  BigComplex p(prec);
  for (size_t k = deg; k-- > 0;) {
    BigComplex c = pn.exact ? BigComplex::from_rational(pn.qcoeffs[k], prec) : pn.ccoeffs[k];
    p = p * A + c;
  }
  return p;
}

std::pair<BigComplex, BigComplex> eval_expr_jet(const FormExprPtr& e, const HalfPlanePoint& tau,
                                                const EvalOptions& opts) {
  Jet j = eval_jet_impl(e, tau, opts);
  return {j.f, j.df};
}

VerificationReport special_value_report(const EvalOptions& opts, const BigFloat& tol) {
  const mpfr_prec_t prec = opts.prec;
  HalfPlanePoint pt_i(BigFloat(prec), BigFloat::from_long(1, prec));
  BigFloat half = BigFloat::from_rational(Rational(1, 2), prec);
  HalfPlanePoint pt_rho(-half, sqrt(BigFloat::from_long(3, prec)) / BigFloat::from_long(2, prec));

  auto ratio = [&](FormAtom a, const HalfPlanePoint& tau, int dnum, int dden) {
    BigComplex num = eval_atom(a, tau, dnum, opts).value;
    BigComplex den = eval_atom(a, tau, dden, opts).value;
    return num / den;
  };

  BigComplex three_i = BigComplex(BigFloat(prec), BigFloat::from_long(3, prec));
  BigComplex rho(-half, sqrt(BigFloat::from_long(3, prec)) / BigFloat::from_long(2, prec));
  BigComplex one = BigComplex::from_long(1, prec);
  BigComplex target_rho = BigComplex::from_long(12, prec) * (one + rho) / (one - rho);

  BigComplex r1 = BigComplex::from_long(12, prec) * ratio(FormAtom::Eta, pt_i, 1, 0);
  BigComplex r2 = mul_rational(ratio(FormAtom::E6, pt_i, 2, 1), Rational(3, 7));
  BigComplex r3 = ratio(FormAtom::J, pt_i, 3, 2);
  BigComplex r4 = BigComplex::from_long(24, prec) * ratio(FormAtom::Eta, pt_rho, 1, 0);
  BigComplex r5 = ratio(FormAtom::J, pt_rho, 4, 3);
  BigComplex r6 = mul_rational(ratio(FormAtom::E4, pt_rho, 2, 1), Rational(6, 5));

  BigFloat dev(prec);
  auto upd = [&](const BigComplex& got, const BigComplex& want) {
    BigFloat d = abs(got - want);
    if (dev < d) dev = d;
  };
  upd(r1, three_i);
  upd(r2, three_i);
  upd(r3, three_i);
  upd(r4, target_rho);
  upd(r5, target_rho);
  upd(r6, target_rho);

  VerificationReport rep;
  rep.check = "special-values at i and rho";
  rep.order = opts.order;
  rep.max_deviation = dev.to_decimal();
  rep.pass = dev <= tol;
  rep.tolerance_provenance =
      "numeric, " + std::to_string(static_cast<long>(prec)) + "-bit, order " + std::to_string(opts.order);
  rep.details["12 eta'(i)/eta(i)"] = r1.to_string();
  rep.details["(3/7) E6''(i)/E6'(i)"] = r2.to_string();
  rep.details["J'''(i)/J''(i)"] = r3.to_string();
  rep.details["target_i"] = three_i.to_string();
  rep.details["24 eta'(rho)/eta(rho)"] = r4.to_string();
  rep.details["J''''(rho)/J'''(rho)"] = r5.to_string();
  rep.details["(6/5) E4''(rho)/E4'(rho)"] = r6.to_string();
  rep.details["target_rho"] = target_rho.to_string();
  return rep;
}

HalfPlanePoint j_preimage_on_arc(const Rational& x, const EvalOptions& opts) {
  if (sgn(x) <= 0 || x >= 1) throw std::invalid_argument("arc preimage needs x strictly inside (0,1)");
  return j_preimage_on_arc_value(BigFloat::from_rational(x, opts.prec), opts);
}

HalfPlanePoint j_preimage_on_arc_value(const BigFloat& x, const EvalOptions& opts) {
  const mpfr_prec_t prec = opts.prec;
  if (!(x.sgn() > 0) || !(x < BigFloat::from_long(1, prec)))
    throw std::invalid_argument("arc preimage needs x strictly inside (0,1)");
  const SeriesC j = atom_series_c(FormAtom::J, opts.order, opts.prec);
  BigFloat pi = BigFloat::pi(prec);
  const BigFloat& xw = x;

  auto j_on_arc = [&](const BigFloat& theta) {
    BigFloat s(prec), c(prec);
    sin_cos(theta, s, c);
    HalfPlanePoint tau{c, s};
    BigComplex v = eval_series(j, tau, 0, opts).value;
    // J is real on the arc; a sizable imaginary part means the arc
    // assumption broke down.
    if (abs(v.im()) > BigFloat::from_double(1e-20, prec))
      throw std::runtime_error("J developed an imaginary part on the unit arc");
    return v.re();
  };

  BigFloat lo = pi / BigFloat::from_long(3, prec) + BigFloat::from_double(1e-8, prec);
  BigFloat hi = pi / BigFloat::from_long(2, prec);
  BigFloat flo = j_on_arc(lo), fhi = j_on_arc(hi);
  if (!(flo < xw && xw < fhi))
    throw std::runtime_error("target not bracketed on the arc (monotonicity assumption violated)");
  for (int it = 0; it < 80; ++it) {
    BigFloat mid = (lo + hi) / BigFloat::from_long(2, prec);
    BigFloat fm = j_on_arc(mid);
    if (fm < xw)
      lo = mid;
    else
      hi = mid;
  }
  BigFloat theta = (lo + hi) / BigFloat::from_long(2, prec);
  BigFloat s(prec), c(prec);
  sin_cos(theta, s, c);

  // Newton polish in the full tau plane.
  BigComplex tau(c, s);
  BigComplex target(xw, BigFloat(prec));
  BigFloat tol = ldexp_bound(prec);
  for (int it = 0; it < 64; ++it) {
    HalfPlanePoint p{tau.re(), tau.im()};
    BigComplex f = eval_series(j, p, 0, opts).value - target;
    if (abs(f) <= tol) break;
    BigComplex df = eval_series(j, p, 1, opts).value;
    if (abs(df).is_zero()) throw std::runtime_error("derivative collapse during Newton polish");
    tau -= f / df;
  }
  return HalfPlanePoint(tau.re(), tau.im());
}

HalfPlanePoint invert_expr(const FormExprPtr& form, const BigComplex& target,
                           std::optional<HalfPlanePoint> seed, const EvalOptions& opts) {
  const mpfr_prec_t prec = opts.prec;
  EvalOptions local = opts;
  local.min_im = std::min(local.min_im, 0.35);

  auto newton_from = [&](BigComplex tau) -> std::optional<HalfPlanePoint> {
    BigFloat tol = ldexp_bound(prec);
    for (int it = 0; it < 96; ++it) {
      if (tau.im() < BigFloat::from_double(0.33, prec)) return std::nullopt;
      HalfPlanePoint p{tau.re(), tau.im()};
      auto [f, df] = eval_expr_jet(form, p, local);
      BigComplex r = f - target;
      if (abs(r) <= tol * max(BigFloat::from_long(1, prec), abs(target)))
        return HalfPlanePoint(tau.re(), tau.im());
      if (abs(df) < BigFloat::from_double(1e-30, prec))
        throw std::runtime_error("derivative collapse during inversion (seed near a critical point)");
      tau -= r / df;
    }
    return std::nullopt;
  };

  if (seed) {
    auto got = newton_from(BigComplex(seed->re, seed->im));
    if (got) return *got;
  }

  // Coarse scan, then Newton from the best candidates.
  std::vector<std::pair<double, BigComplex>> ranked;
  for (double im = 0.45; im <= 2.0; im += im < 0.65 ? 0.05 : 0.15) {
    for (double re = -1.0; re <= 1.0; re += 0.0625) {
      HalfPlanePoint p = HalfPlanePoint::make(re, im, prec);
      BigComplex v = eval_expr(form, p, local);
      ranked.emplace_back(abs(v - target).to_double(), BigComplex(p.re, p.im));
    }
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t k = 0; k < std::min<size_t>(ranked.size(), 8); ++k) {
    auto got = newton_from(ranked[k].second);
    if (got) return *got;
  }
  throw std::runtime_error("inversion did not converge from any seed");
}

ResidueResult contour_residue_fn(const std::function<BigComplex(const HalfPlanePoint&)>& f,
                                 const HalfPlanePoint& center, const BigFloat& radius, long samples,
                                 mpfr_prec_t prec, const BigFloat& guard_tol) {
  if (samples < 64) throw std::invalid_argument("residue quadrature needs at least 64 samples");
  if (!(radius < center.im)) throw std::invalid_argument("contour leaves the upper half-plane");

  auto estimate = [&](const BigFloat& rad) {
    BigFloat two_pi = BigFloat::pi(prec) + BigFloat::pi(prec);
    BigComplex acc(prec);
    for (long k = 0; k < samples; ++k) {
      BigFloat ang = two_pi * BigFloat::from_long(k, prec) / BigFloat::from_long(samples, prec);
      BigFloat s(prec), c(prec);
      sin_cos(ang, s, c);
      BigComplex unit(c, s);
      HalfPlanePoint tau{center.re + rad * c, center.im + rad * s};
      acc += f(tau) * unit;
    }
    return acc * BigComplex(rad / BigFloat::from_long(samples, prec), BigFloat(prec));
  };

  BigComplex r1 = estimate(radius);
  BigComplex r2 = estimate(radius / BigFloat::from_long(2, prec));
  BigFloat dis = abs(r1 - r2);
  if (dis > guard_tol)
    throw std::runtime_error("residue estimates at radius and radius/2 disagree (nearby pole?)");
  return {r1, dis};
}

ResidueResult contour_residue(const ResidueQuery& rq, const EvalOptions& opts,
                              const BigFloat& guard_tol) {
  const mpfr_prec_t prec = opts.prec;
  if (rq.center.im - rq.radius < BigFloat::from_double(0.35, prec))
    throw std::invalid_argument("contour dips below the evaluation floor");
  EvalOptions local = opts;
  local.min_im = 0.34;
  auto fn = [&](const HalfPlanePoint& tau) { return eval_expr(rq.form, tau, local); };
  return contour_residue_fn(fn, rq.center, rq.radius, rq.samples, prec, guard_tol);
}

}  // namespace mdeq
