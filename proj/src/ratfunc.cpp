#include "mdeq/ratfunc.hpp"

namespace mdeq {

PolyQ PolyQ::from_roots(const std::vector<Rational>& roots) {
  PolyQ p(Rational(1));
  for (const auto& r : roots) p = p * PolyQ(std::vector<Rational>{-r, Rational(1)});
  return p;
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return PolyQ(std::move(c));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

PolyQ PolyQ::operator-() const {
  std::vector<Rational> c = c_;
  for (auto& v : c) v = -v;
  return PolyQ(std::move(c));
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return PolyQ();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyQ(std::move(c));
}

PolyQ operator*(const Rational& s, const PolyQ& a) {
  std::vector<Rational> c = a.c_;
  for (auto& v : c) v *= s;
  return PolyQ(std::move(c));
}

std::pair<PolyQ, PolyQ> PolyQ::divmod(const PolyQ& num, const PolyQ& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = num.c_;
  long dd = den.degree();
  if (static_cast<long>(r.size()) - 1 < dd) return {PolyQ(), num};
  std::vector<Rational> q(r.size() - static_cast<size_t>(dd), Rational(0));
  for (long k = static_cast<long>(r.size()) - 1; k >= dd; --k) {
    Rational f = r[static_cast<size_t>(k)] / den.lead();
    if (sgn(f) == 0) continue;
    q[static_cast<size_t>(k - dd)] = f;
    for (long j = 0; j <= dd; ++j) r[static_cast<size_t>(k - dd + j)] -= f * den.c_[static_cast<size_t>(j)];
  }
  return {PolyQ(std::move(q)), PolyQ(std::move(r))};
}

PolyQ gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ r = PolyQ::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

PolyQ derivative(const PolyQ& a) {
  if (a.c_.size() <= 1) return PolyQ();
  std::vector<Rational> c(a.c_.size() - 1);
  for (size_t k = 1; k < a.c_.size(); ++k) c[k - 1] = Rational(static_cast<long>(k)) * a.c_[k];
  return PolyQ(std::move(c));
}

PolyQ PolyQ::monic() const {
  if (is_zero()) throw std::domain_error("monic of zero polynomial");
  return (Rational(1) / lead()) * *this;
}

Rational PolyQ::eval(const Rational& t) const {
  Rational v(0);
  for (size_t k = c_.size(); k-- > 0;) v = v * t + c_[k];
  return v;
}

std::string PolyQ::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t k = c_.size(); k-- > 0;) {
    if (sgn(c_[k]) == 0) continue;
    if (!s.empty()) s += " + ";
    if (k == 0 || c_[k] != 1) s += c_[k].get_str();
    if (k > 0) {
      if (c_[k] != 1) s += "*";
      s += var;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

RationalFunction::RationalFunction(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = PolyQ(Rational(1));
    return;
  }
  PolyQ g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = PolyQ::divmod(num_, g).first;
    den_ = PolyQ::divmod(den_, g).first;
  }
  Rational lead = den_.lead();
  if (lead != 1) {
    num_ = (Rational(1) / lead) * num_;
    den_ = (Rational(1) / lead) * den_;
  }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
RationalFunction RationalFunction::operator-() const {
  RationalFunction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction derivative(const RationalFunction& f) {
  return RationalFunction(derivative(f.num_) * f.den_ - f.num_ * derivative(f.den_),
                          f.den_ * f.den_);
}

std::optional<Rational> RationalFunction::limit_at_infinity() const {
  if (num_.is_zero()) return Rational(0);
  if (num_.degree() < den_.degree()) return Rational(0);
  if (num_.degree() == den_.degree()) return num_.lead() / den_.lead();
  return std::nullopt;
}

std::string RationalFunction::to_string(const std::string& var) const {
  return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

}  // namespace mdeq
