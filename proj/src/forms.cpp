#include "mdeq/forms.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace mdeq {

const char* atom_name(FormAtom a) {
  switch (a) {
    case FormAtom::E2: return "E2";
    case FormAtom::E4: return "E4";
    case FormAtom::E6: return "E6";
    case FormAtom::Eta: return "eta";
    case FormAtom::Delta: return "Delta";
    case FormAtom::J: return "J";
    case FormAtom::Lambda: return "lambda";
    case FormAtom::Theta2: return "theta2";
    case FormAtom::Theta3: return "theta3";
    case FormAtom::Theta4: return "theta4";
    case FormAtom::T: return "t";
    case FormAtom::DT: return "Dt";
  }
  return "?";
}

Rational atom_leading_exponent(FormAtom a) {
  switch (a) {
    case FormAtom::E2:
    case FormAtom::E4:
    case FormAtom::E6:
    case FormAtom::Theta3:
    case FormAtom::Theta4: return Rational(0);
    case FormAtom::Eta: return Rational(1) / 24;
    case FormAtom::Delta: return Rational(1);
    case FormAtom::J: return Rational(-1);
    case FormAtom::Lambda: return Rational(1) / 2;
    case FormAtom::Theta2: return Rational(1) / 8;
    case FormAtom::T:
    case FormAtom::DT: return Rational(-1) / 2;
  }
  return Rational(0);
}

FormExprPtr make_atom(FormAtom a) {
  return std::make_shared<const FormExpr>(FormExpr{FormExpr::AtomNode{a}});
}
FormExprPtr make_pow(FormExprPtr base, long exponent) {
  return std::make_shared<const FormExpr>(FormExpr{FormExpr::PowNode{std::move(base), exponent}});
}
FormExprPtr make_product(std::vector<FormExprPtr> factors) {
  return std::make_shared<const FormExpr>(FormExpr{FormExpr::ProductNode{std::move(factors)}});
}
FormExprPtr make_poly(FormAtom a, std::vector<Rational> coeffs) {
  return std::make_shared<const FormExpr>(FormExpr{FormExpr::PolyNode{a, true, std::move(coeffs), {}}});
}
FormExprPtr make_poly(FormAtom a, std::vector<BigComplex> coeffs) {
  return std::make_shared<const FormExpr>(FormExpr{FormExpr::PolyNode{a, false, {}, std::move(coeffs)}});
}

Rational predicted_leading_exponent(const FormExprPtr& e) {
  if (const auto* at = std::get_if<FormExpr::AtomNode>(&e->node)) return atom_leading_exponent(at->atom);
  if (const auto* pw = std::get_if<FormExpr::PowNode>(&e->node))
    return predicted_leading_exponent(pw->base) * pw->exponent;
  if (const auto* pr = std::get_if<FormExpr::ProductNode>(&e->node)) {
    Rational s(0);
    for (const auto& f : pr->factors) s += predicted_leading_exponent(f);
    return s;
  }
  const auto& pn = std::get<FormExpr::PolyNode>(e->node);
  Rational lo = atom_leading_exponent(pn.atom);
  bool first = true;
  Rational best(0);
  size_t deg = pn.exact ? pn.qcoeffs.size() : pn.ccoeffs.size();
  for (size_t k = 0; k < deg; ++k) {
    bool nonzero = pn.exact ? (sgn(pn.qcoeffs[k]) != 0) : !pn.ccoeffs[k].is_zero();
    if (!nonzero) continue;
    Rational cand = lo * static_cast<long>(k);
    if (first || cand < best) best = cand;
    first = false;
  }
  if (first) throw std::invalid_argument("zero polynomial in expression");
  return best;
}

std::string expr_to_string(const FormExprPtr& e) {
  if (const auto* at = std::get_if<FormExpr::AtomNode>(&e->node)) return atom_name(at->atom);
  if (const auto* pw = std::get_if<FormExpr::PowNode>(&e->node))
    return expr_to_string(pw->base) + "^" + std::to_string(pw->exponent);
  if (const auto* pr = std::get_if<FormExpr::ProductNode>(&e->node)) {
    if (pr->factors.empty()) return "1";
    std::string s;
    for (const auto& f : pr->factors) {
      if (!s.empty()) s += "*";
      s += expr_to_string(f);
    }
    return s;
  }
  const auto& pn = std::get<FormExpr::PolyNode>(e->node);
  std::string s = "(";
  size_t deg = pn.exact ? pn.qcoeffs.size() : pn.ccoeffs.size();
  bool any = false;
  for (size_t k = deg; k-- > 0;) {
    std::string c = pn.exact ? pn.qcoeffs[k].get_str() : "c";
    bool nonzero = pn.exact ? (sgn(pn.qcoeffs[k]) != 0) : !pn.ccoeffs[k].is_zero();
    if (!nonzero) continue;
    if (any) s += " + ";
    any = true;
    if (k == 0) {
      s += c;
    } else {
      if (c != "1") s += c + "*";
      s += atom_name(pn.atom);
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s + ")";
}

namespace {

long rounded_order(long order) { return ((order + 15) / 16) * 16; }

SeriesQ eisenstein_uncached(int weight, long order) {
  if (weight != 2 && weight != 4 && weight != 6) throw std::invalid_argument("Eisenstein weight must be 2, 4 or 6");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const int k = weight - 1;
  std::vector<Rational> sig(static_cast<size_t>(order), Rational(0));
  for (long d = 1; d < order; ++d) {
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    for (long m = d; m < order; m += d) sig[static_cast<size_t>(m)] += Rational(dk);
  }
  long mult = weight == 2 ? -24 : (weight == 4 ? 240 : -504);
  std::vector<Rational> c(static_cast<size_t>(order), Rational(0));
  c[0] = 1;
  for (long m = 1; m < order; ++m) c[static_cast<size_t>(m)] = Rational(mult) * sig[static_cast<size_t>(m)];
  return SeriesQ::from_coeffs(std::move(c), 0, 1, order);
}

// Euler pentagonal-number expansion of the eta product.
SeriesQ eta_uncached(long order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const long tn = 24 * order;
  std::vector<Rational> c(static_cast<size_t>(tn - 1), Rational(0));
  c[0] = 1;  // exponent 1/24
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 >= order && g2 >= order) break;
    Rational s((k % 2) ? -1 : 1);
    if (g1 < order) c[static_cast<size_t>(24 * g1)] = s;
    if (g2 < order) c[static_cast<size_t>(24 * g2)] = s;
  }
  return SeriesQ::from_coeffs(std::move(c), 1, 24, tn);
}

SeriesQ theta_uncached(int which, long order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (which == 2) {
    // sum over half-integers: 2 q^{(2n+1)^2/8}
    const long tn = 8 * order;
    std::vector<Rational> c(static_cast<size_t>(tn - 1), Rational(0));
    for (long n = 0;; ++n) {
      long e = (2 * n + 1) * (2 * n + 1);
      if (e >= tn) break;
      c[static_cast<size_t>(e - 1)] = 2;
    }
    return SeriesQ::from_coeffs(std::move(c), 1, 8, tn);
  }
  if (which != 3 && which != 4) throw std::invalid_argument("theta index must be 2, 3 or 4");
  const long tn = 2 * order;
  std::vector<Rational> c(static_cast<size_t>(tn), Rational(0));
  c[0] = 1;
  for (long n = 1;; ++n) {
    long e = n * n;
    if (e >= tn) break;
    c[static_cast<size_t>(e)] = (which == 3 || n % 2 == 0) ? 2 : -2;
  }
  return SeriesQ::from_coeffs(std::move(c), 0, 2, tn);
}

struct AtomCache {
  std::shared_mutex mu;
  std::map<std::pair<int, long>, SeriesQ> exact;
  std::map<std::tuple<int, long, long>, SeriesC> complexified;
};

AtomCache& cache() {
  static AtomCache c;
  return c;
}

}  // namespace

SeriesQ eisenstein(int weight, long order) {
  FormAtom a = weight == 2 ? FormAtom::E2 : (weight == 4 ? FormAtom::E4 : FormAtom::E6);
  if (weight != 2 && weight != 4 && weight != 6) throw std::invalid_argument("Eisenstein weight must be 2, 4 or 6");
  return atom_series(a, order);
}
SeriesQ eta_series(long order) { return atom_series(FormAtom::Eta, order); }
SeriesQ delta_series(long order) { return atom_series(FormAtom::Delta, order); }
SeriesQ j_series(long order) { return atom_series(FormAtom::J, order); }
SeriesQ theta_series(int which, long order) {
  FormAtom a = which == 2 ? FormAtom::Theta2 : (which == 3 ? FormAtom::Theta3 : FormAtom::Theta4);
  if (which < 2 || which > 4) throw std::invalid_argument("theta index must be 2, 3 or 4");
  return atom_series(a, order);
}
SeriesQ lambda_q_series(long order) { return atom_series(FormAtom::Lambda, order); }
SeriesQ hauptmodul_t_series(long order) { return atom_series(FormAtom::T, order); }

static SeriesQ atom_series_build(FormAtom a, long order) {
  switch (a) {
    case FormAtom::E2: return eisenstein_uncached(2, order);
    case FormAtom::E4: return eisenstein_uncached(4, order);
    case FormAtom::E6: return eisenstein_uncached(6, order);
    case FormAtom::Eta: return eta_uncached(order);
    case FormAtom::Delta: {
      // Built both ways; exact agreement is asserted at construction time.
      SeriesQ from_eta = pow_int(atom_series(FormAtom::Eta, order), 24);
      SeriesQ e4 = atom_series(FormAtom::E4, order), e6 = atom_series(FormAtom::E6, order);
      SeriesQ from_eis = (pow_int(e4, 3) - pow_int(e6, 2)) * SeriesQ::constant(Rational(1, 1728), order);
      if (!equal_through(from_eta, from_eis, Rational(order)))
        throw std::logic_error("discriminant cross-construction mismatch");
      return from_eta.truncated(Rational(order));
    }
    case FormAtom::J: {
      SeriesQ e4 = atom_series(FormAtom::E4, order + 2);
      SeriesQ dlt = atom_series(FormAtom::Delta, order + 2);
      SeriesQ j = pow_int(e4, 3) * reciprocal(dlt) * SeriesQ::constant(Rational(1, 1728), order + 2);
      return j;
    }
    case FormAtom::Lambda: {
      SeriesQ t2 = atom_series(FormAtom::Theta2, order + 1);
      SeriesQ t3 = atom_series(FormAtom::Theta3, order + 1);
      return pow_int(t2, 4) * reciprocal(pow_int(t3, 4));
    }
    case FormAtom::Theta2: return theta_uncached(2, order);
    case FormAtom::Theta3: return theta_uncached(3, order);
    case FormAtom::Theta4: return theta_uncached(4, order);
    case FormAtom::T: return reciprocal(atom_series(FormAtom::Lambda, order + 1));
    case FormAtom::DT: return derive(atom_series(FormAtom::T, order));
  }
  throw std::logic_error("unknown atom");
}

SeriesQ atom_series(FormAtom a, long order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const long ord = rounded_order(order);
  auto key = std::make_pair(static_cast<int>(a), ord);
  {
    std::shared_lock lk(cache().mu);
    auto it = cache().exact.find(key);
    if (it != cache().exact.end()) return it->second;
  }
  SeriesQ s = atom_series_build(a, ord);
  if (s.trunc_exponent() < ord) throw std::logic_error("atom series built short of requested order");
  std::unique_lock lk(cache().mu);
  return cache().exact.emplace(key, std::move(s)).first->second;
}

SeriesC atom_series_c(FormAtom a, long order, mpfr_prec_t prec) {
  const long ord = rounded_order(order);
  auto key = std::make_tuple(static_cast<int>(a), ord, static_cast<long>(prec));
  {
    std::shared_lock lk(cache().mu);
    auto it = cache().complexified.find(key);
    if (it != cache().complexified.end()) return it->second;
  }
  SeriesC s = atom_series(a, ord).to_complex(prec);
  std::unique_lock lk(cache().mu);
  return cache().complexified.emplace(key, std::move(s)).first->second;
}

namespace {

template <class T>
PuiseuxSeries<T> get_atom(FormAtom a, long order, mpfr_prec_t prec) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)prec;
    return atom_series(a, order);
  } else {
    return atom_series_c(a, order, prec);
  }
}

template <class T>
PuiseuxSeries<T> eval_tree(const FormExprPtr& e, long order, mpfr_prec_t prec) {
  if (const auto* at = std::get_if<FormExpr::AtomNode>(&e->node)) return get_atom<T>(at->atom, order, prec);
  if (const auto* pw = std::get_if<FormExpr::PowNode>(&e->node))
    return pow_int(eval_tree<T>(pw->base, order, prec), pw->exponent);
  if (const auto* pr = std::get_if<FormExpr::ProductNode>(&e->node)) {
    PuiseuxSeries<T> acc =
        PuiseuxSeries<T>::monomial(detail::scalar_from_rational<T>(Rational(1), prec), 0, 1, order, prec);
    for (const auto& f : pr->factors) acc = acc * eval_tree<T>(f, order, prec);
    return acc;
  }
  const auto& pn = std::get<FormExpr::PolyNode>(e->node);
  if (std::is_same_v<T, Rational> && !pn.exact)
    throw std::invalid_argument("polynomial coefficients not available in the exact domain");
  PuiseuxSeries<T> A = get_atom<T>(pn.atom, order, prec);
  size_t deg = pn.exact ? pn.qcoeffs.size() : pn.ccoeffs.size();
  if (deg == 0) throw std::invalid_argument("empty polynomial");
  auto coeff_at = [&](size_t k) -> T {
    if constexpr (std::is_same_v<T, Rational>) {
      return pn.qcoeffs[k];
    } else {
      return pn.exact ? BigComplex::from_rational(pn.qcoeffs[k], prec) : pn.ccoeffs[k];
    }
  };
  PuiseuxSeries<T> acc = PuiseuxSeries<T>::monomial(coeff_at(deg - 1), 0, 1, order, prec);
  for (size_t k = deg - 1; k-- > 0;) {
    acc = acc * A;
    T c = coeff_at(k);
    if (!detail::scalar_is_zero(c))
      acc = acc + PuiseuxSeries<T>::monomial(std::move(c), 0, 1, order, prec);
  }
  return acc;
}

template <class T>
PuiseuxSeries<T> compile_impl(const FormExprPtr& e, long order, mpfr_prec_t prec) {
  for (long pad = 4; pad <= 8192; pad *= 2) {
    PuiseuxSeries<T> s = eval_tree<T>(e, order + pad, prec);
    if (s.trunc_exponent() >= order) return s;
  }
  throw std::runtime_error("compilation failed to reach the requested order");
}

}  // namespace

SeriesQ compile_exact(const FormExprPtr& e, long order) { return compile_impl<Rational>(e, order, 256); }
SeriesC compile_complex(const FormExprPtr& e, long order, mpfr_prec_t prec) {
  return compile_impl<BigComplex>(e, order, prec);
}

namespace {

VerificationReport exact_identity_report(const std::string& name, const SeriesQ& lhs, const SeriesQ& rhs,
                                         long order) {
  VerificationReport r;
  r.check = name;
  r.order = order;
  r.tolerance_provenance = "exact rational equality";
  bool eq = equal_through(lhs, rhs, Rational(order));
  r.pass = eq;
  r.max_deviation = eq ? "0" : max_abs_diff(lhs, rhs, Rational(order)).to_decimal();
  return r;
}

}  // namespace

std::vector<VerificationReport> catalog_identity_reports(long order) {
  std::vector<VerificationReport> out;
  const long ord = order + 4;
  SeriesQ e4 = atom_series(FormAtom::E4, ord), e6 = atom_series(FormAtom::E6, ord);
  SeriesQ eta = atom_series(FormAtom::Eta, ord), dlt = atom_series(FormAtom::Delta, ord);
  SeriesQ j = atom_series(FormAtom::J, ord);
  SeriesQ dj = derive(j), d2j = derive(dj), one = SeriesQ::constant(Rational(1), ord);
  SeriesQ jm1 = j - one;

  out.push_back(exact_identity_report("1728*Delta == E4^3 - E6^2",
                                      SeriesQ::constant(Rational(1728), ord) * dlt,
                                      pow_int(e4, 3) - pow_int(e6, 2), order));
  out.push_back(exact_identity_report("E4 == (DJ)^2 / (J(J-1))", e4, pow_int(dj, 2) / (j * jm1), order));
  // DJ = -J E6/E4, so the cube carries a sign the squared identity does not.
  out.push_back(exact_identity_report("E6 == -(DJ)^3 / (J^2(J-1))", e6,
                                      -(pow_int(dj, 3) / (pow_int(j, 2) * jm1)), order));
  out.push_back(exact_identity_report(
      "Delta == (1/1728) (DJ)^6 / (J^4(J-1)^3)", dlt,
      SeriesQ::constant(Rational(1, 1728), ord) * pow_int(dj, 6) / (pow_int(j, 4) * pow_int(jm1, 3)),
      order));
  {
    SeriesQ lhs = SeriesQ::constant(Rational(24), ord) * derive(eta) / eta;
    SeriesQ rhs = SeriesQ::constant(Rational(6), ord) * d2j / dj -
                  SeriesQ::constant(Rational(4), ord) * dj / j -
                  SeriesQ::constant(Rational(3), ord) * dj / jm1;
    out.push_back(exact_identity_report("24 Deta/eta == 6 D2J/DJ - 4 DJ/J - 3 DJ/(J-1)", lhs, rhs, order));
  }
  {
    SeriesQ lhs = derive(e4) / e4;
    SeriesQ rhs = SeriesQ::constant(Rational(2), ord) * d2j / dj - dj / j - dj / jm1;
    out.push_back(exact_identity_report("DE4/E4 == 2 D2J/DJ - DJ/J - DJ/(J-1)", lhs, rhs, order));
  }
  {
    SeriesQ lam = atom_series(FormAtom::Lambda, ord);
    SeriesQ th4 = atom_series(FormAtom::Theta4, ord);
    SeriesQ lhs = derive(lam);
    SeriesQ rhs = SeriesQ::constant(Rational(1, 2), ord) * pow_int(th4, 4) * lam;
    out.push_back(exact_identity_report("Dlambda == (1/2) theta4^4 lambda", lhs, rhs, order));
  }
  {
    // The eta-quotient display for lambda has a pole at i*infinity, so it
    // cannot equal lambda itself; it equals 16(1-lambda)/lambda instead.
    SeriesQ lam = atom_series(FormAtom::Lambda, ord);
    SeriesQ eta_half = scale_exponents(atom_series(FormAtom::Eta, 2 * ord + 2), Rational(1, 2));
    SeriesQ eta_twice = scale_exponents(atom_series(FormAtom::Eta, ord + 2), Rational(2));
    SeriesQ quot = pow_int(eta_half / eta_twice, 8);
    SeriesQ sixteen = SeriesQ::constant(Rational(16), ord);
    SeriesQ conj = sixteen * (SeriesQ::constant(Rational(1), ord) - lam) / lam;
    VerificationReport r;
    r.check = "eta-quotient(tau/2,2tau)^8 == 16(1-lambda)/lambda (and != lambda)";
    r.order = order;
    r.tolerance_provenance = "exact rational equality";
    bool matches_conjugate = equal_through(quot, conj, Rational(order));
    bool differs_from_lambda = !equal_through(quot.truncated(Rational(order)),
                                              lam.truncated(Rational(order)),
                                              Rational(std::min<long>(order, 4)));
    r.pass = matches_conjugate && differs_from_lambda;
    r.max_deviation = matches_conjugate ? "0" : max_abs_diff(quot, conj, Rational(order)).to_decimal();
    r.details["eta_quotient_leading_exponent"] = quot.leading() ? quot.leading()->first.get_str() : "none";
    r.details["lambda_leading_exponent"] = lam.leading() ? lam.leading()->first.get_str() : "none";
    r.details["mismatch_vs_lambda_at_q^-1/2"] =
        (quot - lam).coeff(Rational(-1, 2)).get_str();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mdeq
