#pragma once

#include "mdeq/scalar.hpp"

#include <optional>
#include <vector>

namespace mdeq {

/// Dense polynomial over exact rationals; coefficient k multiplies t^k.
class PolyQ {
public:
  PolyQ() = default;
  explicit PolyQ(Rational c) { c_.push_back(std::move(c)); trim(); }
  explicit PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static PolyQ x() { return PolyQ(std::vector<Rational>{Rational(0), Rational(1)}); }
  /// Monic polynomial with the given roots.
  static PolyQ from_roots(const std::vector<Rational>& roots);

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rational& coeff(size_t k) const {
    static const Rational kZero(0);
    return k < c_.size() ? c_[k] : kZero;
  }
  const Rational& lead() const {
    if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const Rational& s, const PolyQ& a);
  PolyQ operator-() const;
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<PolyQ, PolyQ> divmod(const PolyQ& num, const PolyQ& den);
  friend PolyQ gcd(PolyQ a, PolyQ b);  // monic gcd
  friend PolyQ derivative(const PolyQ& a);
  PolyQ monic() const;

  Rational eval(const Rational& t) const;
  std::string to_string(const std::string& var = "t") const;

private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Quotient of two PolyQ, kept reduced with a monic denominator.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(PolyQ num, PolyQ den);
  explicit RationalFunction(Rational c) : num_(std::move(c)), den_(Rational(1)) {}

  static RationalFunction t() { return RationalFunction(PolyQ::x(), PolyQ(Rational(1))); }

  const PolyQ& num() const { return num_; }
  const PolyQ& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// d/dt by the exact quotient rule.
  friend RationalFunction derivative(const RationalFunction& f);

  /// Limit as t -> infinity: 0 when deg num < deg den, ratio of leading
  /// coefficients at equal degrees, nullopt (pole) otherwise.
  std::optional<Rational> limit_at_infinity() const;

  std::string to_string(const std::string& var = "t") const;

private:
  PolyQ num_, den_;
};

}  // namespace mdeq
