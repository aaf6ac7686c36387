#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace mdeq {

using Rational = mpq_class;

/// Parse "4", "-3/7", "1.25" or "1e-30" into an exact rational.
Rational rational_from_string(const std::string& s);

std::string rational_to_string(const Rational& x);

/// Exact square root of a rational; returns false unless x is a perfect square.
bool rational_sqrt(const Rational& x, Rational& root);

/// Arbitrary-precision real number backed by MPFR. Every value carries its own
/// precision in bits; binary operations round to the smaller of the two.
class BigFloat {
public:
  BigFloat() { mpfr_init2(v_, 128); mpfr_set_zero(v_, 1); }
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_long(long x, mpfr_prec_t prec);
  static BigFloat from_rational(const Rational& x, mpfr_prec_t prec);
  static BigFloat from_double(double x, mpfr_prec_t prec);
  static BigFloat from_decimal(const std::string& s, mpfr_prec_t prec);
  static BigFloat pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sgn() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Decimal string with full round-trip precision (deterministic).
  std::string to_decimal() const;

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat& operator+=(const BigFloat& o) { *this = *this + o; return *this; }
  BigFloat& operator-=(const BigFloat& o) { *this = *this - o; return *this; }
  BigFloat& operator*=(const BigFloat& o) { *this = *this * o; return *this; }
  BigFloat& operator/=(const BigFloat& o) { *this = *this / o; return *this; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

  friend BigFloat abs(const BigFloat& a);
  friend BigFloat sqrt(const BigFloat& a);
  friend BigFloat exp(const BigFloat& a);
  friend BigFloat log(const BigFloat& a);
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b);
  friend BigFloat max(const BigFloat& a, const BigFloat& b);
  friend BigFloat mul_rational(const BigFloat& a, const Rational& q);
  friend void sin_cos(const BigFloat& a, BigFloat& s, BigFloat& c);

private:
  mpfr_t v_;
};

/// Complex number over two BigFloats.
class BigComplex {
public:
  BigComplex() = default;
  explicit BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

  static BigComplex from_long(long x, mpfr_prec_t prec) {
    return BigComplex(BigFloat::from_long(x, prec), BigFloat(prec));
  }
  static BigComplex from_rational(const Rational& x, mpfr_prec_t prec) {
    return BigComplex(BigFloat::from_rational(x, prec), BigFloat(prec));
  }
  static BigComplex i_unit(mpfr_prec_t prec) {
    return BigComplex(BigFloat(prec), BigFloat::from_long(1, prec));
  }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  mpfr_prec_t prec() const { return std::min(re_.prec(), im_.prec()); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  BigComplex conj() const { return BigComplex(re_, -im_); }
  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex& operator+=(const BigComplex& o) { *this = *this + o; return *this; }
  BigComplex& operator-=(const BigComplex& o) { *this = *this - o; return *this; }
  BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }
  BigComplex& operator/=(const BigComplex& o) { *this = *this / o; return *this; }

  friend BigComplex inverse(const BigComplex& a);
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re_, a.im_); }
  /// Principal branch: result has nonnegative real part; positive imaginary
  /// part when the real part vanishes.
  friend BigComplex sqrt(const BigComplex& a);
  friend BigComplex exp(const BigComplex& a);
  friend BigComplex pow_int(const BigComplex& a, long n);
  friend BigComplex mul_rational(const BigComplex& a, const Rational& q) {
    return BigComplex(mul_rational(a.re_, q), mul_rational(a.im_, q));
  }

  std::string to_string() const { return re_.to_decimal() + (im_.sgn() < 0 ? "" : "+") + im_.to_decimal() + "i"; }

private:
  BigFloat re_, im_;
};

}  // namespace mdeq
