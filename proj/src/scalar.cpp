#include "mdeq/scalar.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace mdeq {

Rational rational_from_string(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational literal");

  if (t.find('/') != std::string::npos) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), t.c_str(), 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
      throw std::invalid_argument("zero denominator: " + s);
    return r;
  }

  // Decimal / scientific form: mantissa [.frac] [e exp]
  long exp10 = 0;
  std::string mant = t;
  auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = t.substr(0, epos);
    exp10 = std::strtol(t.c_str() + epos + 1, nullptr, 10);
  }
  std::string digits;
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  } else {
    digits = mant;
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad numeric literal: " + s);
  Rational r;
  mpz_class z;
  if (mpz_set_str(z.get_mpz_t(), digits.c_str(), 10) != 0)
    throw std::invalid_argument("bad numeric literal: " + s);
  r = Rational(z);
  mpz_class ten5;
  mpz_ui_pow_ui(ten5.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0)
    r *= Rational(ten5);
  else
    r /= Rational(ten5);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& x) { return x.get_str(); }

bool rational_sqrt(const Rational& x, Rational& root) {
  if (sgn(x) < 0) return false;
  if (sgn(x) == 0) { root = 0; return true; }
  const mpz_class num(mpq_numref(x.get_mpq_t())), den(mpq_denref(x.get_mpq_t()));
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rational(rn) / Rational(rd);
  root.canonicalize();
  return true;
}

BigFloat BigFloat::from_long(long x, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_si(r.v_, x, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_rational(const Rational& x, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_double(double x, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_d(r.v_, x, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_decimal(const std::string& s, mpfr_prec_t prec) {
  BigFloat r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("bad decimal literal: " + s);
  return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_decimal() const {
  if (mpfr_zero_p(v_)) return "0";
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits.erase(0, 1);
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = neg ? "-" : "";
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
  return std::min(a.prec(), b.prec());
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}
BigFloat sqrt(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}
BigFloat exp(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  return r;
}
BigFloat log(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  return r;
}
BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat mul_rational(const BigFloat& a, const Rational& q) {
  BigFloat r(a.prec());
  mpfr_mul_q(r.v_, a.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}
void sin_cos(const BigFloat& a, BigFloat& s, BigFloat& c) {
  BigFloat rs(a.prec()), rc(a.prec());
  mpfr_sin_cos(rs.raw(), rc.raw(), a.raw(), MPFR_RNDN);
  s = std::move(rs);
  c = std::move(rc);
}

BigComplex inverse(const BigComplex& a) {
  BigFloat d = a.re_ * a.re_ + a.im_ * a.im_;
  if (d.is_zero()) throw std::domain_error("division by complex zero");
  return BigComplex(a.re_ / d, -(a.im_ / d));
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) { return a * inverse(b); }

BigComplex sqrt(const BigComplex& a) {
  const mpfr_prec_t p = a.prec();
  if (a.is_zero()) return BigComplex(p);
  BigFloat r = abs(a);
  BigFloat two = BigFloat::from_long(2, p);
  if (a.re_.sgn() >= 0) {
    BigFloat x = sqrt((r + a.re_) / two);
    if (x.is_zero()) return BigComplex(p);
    BigFloat y = a.im_ / (two * x);
    return BigComplex(x, y);
  }
  BigFloat y = sqrt((r - a.re_) / two);
  if (a.im_.sgn() < 0) y = -y;
  if (a.im_.is_zero()) y = abs(y);  // negative real axis: pick +i branch
  BigFloat x = a.im_.is_zero() ? BigFloat(p) : a.im_ / (two * y);
  return BigComplex(x, y);
}

BigComplex exp(const BigComplex& a) {
  BigFloat m = exp(a.re_);
  BigFloat s(a.prec()), c(a.prec());
  sin_cos(a.im_, s, c);
  return BigComplex(m * c, m * s);
}

BigComplex pow_int(const BigComplex& a, long n) {
  const mpfr_prec_t p = a.prec();
  if (n == 0) return BigComplex::from_long(1, p);
  bool inv = n < 0;
  unsigned long k = inv ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  BigComplex base = a, acc = BigComplex::from_long(1, p);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return inv ? inverse(acc) : acc;
}

}  // namespace mdeq
