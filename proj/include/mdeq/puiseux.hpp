#pragma once

#include "mdeq/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace mdeq {

namespace detail {

inline bool scalar_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool scalar_is_zero(const BigComplex& x) { return x.is_zero(); }

template <class T>
T scalar_from_rational(const Rational& q, mpfr_prec_t prec);
template <>
inline Rational scalar_from_rational<Rational>(const Rational& q, mpfr_prec_t) { return q; }
template <>
inline BigComplex scalar_from_rational<BigComplex>(const Rational& q, mpfr_prec_t prec) {
  return BigComplex::from_rational(q, prec);
}

inline Rational scalar_inverse(const Rational& x) {
  if (sgn(x) == 0) throw std::domain_error("rational division by zero");
  return Rational(1) / x;
}
inline BigComplex scalar_inverse(const BigComplex& x) { return inverse(x); }

inline Rational scalar_sqrt(const Rational& x) {
  Rational r;
  if (!rational_sqrt(x, r))
    throw std::domain_error("leading coefficient is not a rational square; promote to complex first");
  return r;
}
inline BigComplex scalar_sqrt(const BigComplex& x) { return sqrt(x); }

inline BigFloat scalar_abs(const Rational& x, mpfr_prec_t prec) {
  return abs(BigFloat::from_rational(x, prec));
}
inline BigFloat scalar_abs(const BigComplex& x, mpfr_prec_t) { return abs(x); }

}  // namespace detail

/// Truncated Laurent-Puiseux series in u = q^(1/denom). Stored coefficients
/// cover exponent numerators [lo, trunc); everything at or above trunc/denom
/// is unknown. The representation is dense on its own grid and the grid is
/// reduced to the coarsest one containing the support.
template <class T>
class PuiseuxSeries {
public:
  PuiseuxSeries() : denom_(1), lo_(0), trunc_(0) {}

  /// Zero series known through exponents < trunc_num/denom.
  static PuiseuxSeries zero(long denom, long trunc_num, mpfr_prec_t prec = 256) {
    PuiseuxSeries s;
    s.denom_ = denom;
    s.lo_ = trunc_num;
    s.trunc_ = trunc_num;
    s.prec_ = prec;
    return s;
  }

  /// c * u^k on grid 1/denom, known through < trunc_num/denom.
  static PuiseuxSeries monomial(T c, long k, long denom, long trunc_num, mpfr_prec_t prec = 256) {
    if (trunc_num <= k) throw std::invalid_argument("monomial truncated below its own exponent");
    PuiseuxSeries s;
    s.denom_ = denom;
    s.lo_ = k;
    s.trunc_ = trunc_num;
    s.prec_ = prec;
    s.c_.assign(static_cast<size_t>(trunc_num - k), T{});
    s.c_[0] = std::move(c);
    s.normalize();
    return s;
  }

  static PuiseuxSeries constant(T c, long trunc_num, mpfr_prec_t prec = 256) {
    return monomial(std::move(c), 0, 1, trunc_num, prec);
  }

  /// Build from explicit coefficients c[j] for exponent numerators lo+j.
  static PuiseuxSeries from_coeffs(std::vector<T> coeffs, long lo, long denom, long trunc_num,
                                   mpfr_prec_t prec = 256) {
    if (lo + static_cast<long>(coeffs.size()) > trunc_num)
      throw std::invalid_argument("coefficients extend past truncation");
    PuiseuxSeries s;
    s.denom_ = denom;
    s.lo_ = lo;
    s.trunc_ = trunc_num;
    s.prec_ = prec;
    s.c_ = std::move(coeffs);
    s.c_.resize(static_cast<size_t>(trunc_num - lo), T{});
    s.normalize();
    return s;
  }

  long denom() const { return denom_; }
  long lo_num() const { return lo_; }
  long trunc_num() const { return trunc_; }
  mpfr_prec_t prec() const { return prec_; }
  bool is_zero() const { return c_.empty(); }

  Rational lo_exponent() const { return Rational(lo_) / Rational(denom_); }
  Rational trunc_exponent() const { return Rational(trunc_) / Rational(denom_); }

  /// Stored coefficient at exponent numerator k (on this grid).
  const T& at_num(long k) const {
    static const T kZero{};
    if (k < lo_ || k >= lo_ + static_cast<long>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k - lo_)];
  }

  /// Coefficient at rational exponent e. Exact stored value; zero if e is
  /// off-grid or unstored but below the truncation order.
  T coeff(const Rational& e) const {
    Rational en = e * denom_;
    if (en >= Rational(trunc_)) throw std::out_of_range("coefficient query at or above truncation order");
    if (mpz_cmp_ui(mpq_denref(en.get_mpq_t()), 1) != 0) return T{};
    long k = static_cast<long>(mpz_get_si(mpq_numref(en.get_mpq_t())));
    return at_num(k);
  }

  /// (exponent, coefficient) of the lowest-order term, if any.
  std::optional<std::pair<Rational, T>> leading() const {
    if (is_zero()) return std::nullopt;
    return std::make_pair(lo_exponent(), c_.front());
  }

  /// Rescale the exponent grid to a finer denominator (new_denom multiple of denom).
  PuiseuxSeries with_denominator(long new_denom) const {
    if (new_denom % denom_ != 0) throw std::invalid_argument("grid refinement must be a multiple");
    long m = new_denom / denom_;
    if (m == 1) return *this;
    PuiseuxSeries s;
    s.denom_ = new_denom;
    s.lo_ = lo_ * m;
    s.trunc_ = trunc_ * m;
    s.prec_ = prec_;
    s.c_.assign(static_cast<size_t>(s.trunc_ - s.lo_), T{});
    for (size_t j = 0; j < c_.size(); ++j) s.c_[j * static_cast<size_t>(m)] = c_[j];
    return s;
  }

  /// Forget all terms with exponent >= e (e must be representable on the grid).
  PuiseuxSeries truncated(const Rational& e) const {
    Rational en = e * denom_;
    if (mpz_cmp_ui(mpq_denref(en.get_mpq_t()), 1) != 0)
      throw std::invalid_argument("truncation exponent off grid");
    long t = static_cast<long>(mpz_get_si(mpq_numref(en.get_mpq_t())));
    if (t >= trunc_) return *this;
    PuiseuxSeries s = *this;
    if (t <= lo_) {
      s.c_.clear();
      s.lo_ = s.trunc_ = t;
      return s;
    }
    s.trunc_ = t;
    s.c_.resize(static_cast<size_t>(t - lo_));
    s.normalize();
    s.compress();
    return s;
  }

  friend PuiseuxSeries operator+(const PuiseuxSeries& f, const PuiseuxSeries& g) {
    auto [a, b] = on_common_grid(f, g);
    PuiseuxSeries s;
    s.denom_ = a.denom_;
    s.prec_ = std::min(f.prec_, g.prec_);
    s.trunc_ = std::min(a.trunc_, b.trunc_);
    s.lo_ = std::min(std::min(a.lo_, b.lo_), s.trunc_);
    s.c_.assign(static_cast<size_t>(s.trunc_ - s.lo_), T{});
    for (long k = s.lo_; k < s.trunc_; ++k) {
      T v = a.at_num(k);
      const T& w = b.at_num(k);
      if (!detail::scalar_is_zero(w)) v = detail::scalar_is_zero(v) ? w : T(v + w);
      s.c_[static_cast<size_t>(k - s.lo_)] = std::move(v);
    }
    s.normalize();
    s.compress();
    return s;
  }

  friend PuiseuxSeries operator-(const PuiseuxSeries& f, const PuiseuxSeries& g) { return f + (-g); }

  PuiseuxSeries operator-() const {
    PuiseuxSeries s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  friend PuiseuxSeries operator*(const PuiseuxSeries& f, const PuiseuxSeries& g) {
    auto [a, b] = on_common_grid(f, g);
    PuiseuxSeries s;
    s.denom_ = a.denom_;
    s.prec_ = std::min(f.prec_, g.prec_);
    // Tightest truncation implied by the operands.
    s.trunc_ = std::min(a.trunc_ + b.lo_, b.trunc_ + a.lo_);
    s.lo_ = std::min(a.lo_ + b.lo_, s.trunc_);
    if (a.is_zero() || b.is_zero()) {
      s.lo_ = s.trunc_;
      s.compress();
      return s;
    }
    s.c_.assign(static_cast<size_t>(s.trunc_ - s.lo_), T{});
    // Outer loop over the sparser operand, skipping zero coefficients.
    const PuiseuxSeries& u = a.nonzero_count() <= b.nonzero_count() ? a : b;
    const PuiseuxSeries& v = &u == &a ? b : a;
    for (size_t i = 0; i < u.c_.size(); ++i) {
      if (detail::scalar_is_zero(u.c_[i])) continue;
      long ku = u.lo_ + static_cast<long>(i);
      long jmax = std::min<long>(static_cast<long>(v.c_.size()), s.trunc_ - ku - v.lo_);
      for (long j = 0; j < jmax; ++j) {
        if (detail::scalar_is_zero(v.c_[static_cast<size_t>(j)])) continue;
        size_t idx = static_cast<size_t>(ku + v.lo_ + j - s.lo_);
        T prod = u.c_[i] * v.c_[static_cast<size_t>(j)];
        if (detail::scalar_is_zero(s.c_[idx]))
          s.c_[idx] = std::move(prod);
        else
          s.c_[idx] = s.c_[idx] + prod;
      }
    }
    s.normalize();
    s.compress();
    return s;
  }

  /// Multiplicative inverse; requires a nonzero leading coefficient.
  friend PuiseuxSeries reciprocal(const PuiseuxSeries& f) {
    if (f.is_zero()) throw std::domain_error("reciprocal of the zero series");
    const long m = f.lo_;
    const long rel = f.trunc_ - f.lo_;  // relative order of knowledge
    T inv0 = detail::scalar_inverse(f.c_.front());
    std::vector<T> b(static_cast<size_t>(rel), T{});
    b[0] = inv0;
    for (long j = 1; j < rel; ++j) {
      T acc{};
      bool any = false;
      for (long k = 1; k <= j; ++k) {
        const T& fk = f.c_[static_cast<size_t>(k)];
        if (detail::scalar_is_zero(fk) || detail::scalar_is_zero(b[static_cast<size_t>(j - k)])) continue;
        T term = fk * b[static_cast<size_t>(j - k)];
        acc = any ? T(acc + term) : std::move(term);
        any = true;
      }
      if (any) b[static_cast<size_t>(j)] = -(inv0 * acc);
    }
    PuiseuxSeries s;
    s.denom_ = f.denom_;
    s.prec_ = f.prec_;
    s.lo_ = -m;
    s.trunc_ = rel - m;  // = f.trunc - 2*lo
    s.c_ = std::move(b);
    s.normalize();
    s.compress();
    return s;
  }

  friend PuiseuxSeries operator/(const PuiseuxSeries& f, const PuiseuxSeries& g) {
    return f * reciprocal(g);
  }

  friend PuiseuxSeries pow_int(const PuiseuxSeries& f, long n) {
    if (n == 0) {
      if (f.is_zero()) throw std::domain_error("0^0 series");
      return monomial(detail::scalar_from_rational<T>(Rational(1), f.prec_), 0, f.denom_,
                      f.trunc_ - f.lo_, f.prec_);
    }
    if (n < 0) return reciprocal(pow_int(f, -n));
    if (f.is_zero()) {
      PuiseuxSeries s = f;
      return s;
    }
    PuiseuxSeries acc = f;
    long k = n - 1;
    PuiseuxSeries base = f;
    while (k) {
      if (k & 1) acc = acc * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return acc;
  }

  /// Square root with the principal branch. The leading exponent numerator
  /// must be even on the current grid (refine the grid first otherwise).
  friend PuiseuxSeries sqrt_series(const PuiseuxSeries& f) {
    if (f.is_zero()) throw std::domain_error("sqrt of the zero series (unknown branch)");
    if (f.lo_ % 2 != 0)
      throw std::domain_error("sqrt needs an even leading exponent numerator on the working grid");
    const long rel = f.trunc_ - f.lo_;
    T s0 = detail::scalar_sqrt(f.c_.front());
    T inv2s0 = detail::scalar_inverse(T(s0 + s0));
    std::vector<T> b(static_cast<size_t>(rel), T{});
    b[0] = s0;
    for (long j = 1; j < rel; ++j) {
      T acc = f.c_[static_cast<size_t>(j)];
      for (long k = 1; k < j; ++k) {
        if (detail::scalar_is_zero(b[static_cast<size_t>(k)]) ||
            detail::scalar_is_zero(b[static_cast<size_t>(j - k)]))
          continue;
        acc = acc - b[static_cast<size_t>(k)] * b[static_cast<size_t>(j - k)];
      }
      b[static_cast<size_t>(j)] = acc * inv2s0;
    }
    PuiseuxSeries s;
    s.denom_ = f.denom_;
    s.prec_ = f.prec_;
    s.lo_ = f.lo_ / 2;
    s.trunc_ = rel + f.lo_ / 2;
    s.c_ = std::move(b);
    s.normalize();
    s.compress();
    return s;
  }

  /// D = q d/dq: multiplies the u^k term by k/denom.
  friend PuiseuxSeries derive(const PuiseuxSeries& f) {
    PuiseuxSeries s = f;
    for (size_t j = 0; j < s.c_.size(); ++j) {
      long k = s.lo_ + static_cast<long>(j);
      if (k == 0 || detail::scalar_is_zero(s.c_[j])) {
        s.c_[j] = T{};
        continue;
      }
      Rational factor = Rational(k) / Rational(s.denom_);
      if constexpr (std::is_same_v<T, Rational>)
        s.c_[j] = s.c_[j] * factor;
      else
        s.c_[j] = mul_rational(s.c_[j], factor);
    }
    s.normalize();
    s.compress();
    return s;
  }

  /// Exponent rescaling e -> r*e for positive rational r (argument rescaling
  /// tau -> r*tau on q-expansions).
  friend PuiseuxSeries scale_exponents(const PuiseuxSeries& f, const Rational& r) {
    if (sgn(r) <= 0) throw std::invalid_argument("scale_exponents needs a positive ratio");
    long p = static_cast<long>(mpz_get_si(mpq_numref(r.get_mpq_t())));
    long q = static_cast<long>(mpz_get_si(mpq_denref(r.get_mpq_t())));
    PuiseuxSeries s;
    s.denom_ = f.denom_ * q;
    s.prec_ = f.prec_;
    s.lo_ = f.lo_ * p;
    s.trunc_ = f.trunc_ * p;
    s.c_.assign(static_cast<size_t>(s.trunc_ - s.lo_), T{});
    for (size_t j = 0; j < f.c_.size(); ++j) s.c_[static_cast<size_t>(j) * static_cast<size_t>(p)] = f.c_[j];
    s.normalize();
    s.compress();
    return s;
  }

  PuiseuxSeries<BigComplex> to_complex(mpfr_prec_t prec) const {
    PuiseuxSeries<BigComplex> s;
    s.denom_ = denom_;
    s.lo_ = lo_;
    s.trunc_ = trunc_;
    s.prec_ = prec;
    s.c_.reserve(c_.size());
    for (const auto& c : c_) {
      if constexpr (std::is_same_v<T, Rational>)
        s.c_.push_back(BigComplex::from_rational(c, prec));
      else
        s.c_.push_back(c);
    }
    return s;
  }

  long nonzero_count() const {
    long n = 0;
    for (const auto& c : c_)
      if (!detail::scalar_is_zero(c)) ++n;
    return n;
  }

  /// Largest |coefficient| of f-g over shared known exponents below through_order.
  friend BigFloat max_abs_diff(const PuiseuxSeries& f, const PuiseuxSeries& g,
                               const Rational& through_order, mpfr_prec_t prec = 256) {
    PuiseuxSeries d = f - g;
    BigFloat m(prec);
    for (size_t j = 0; j < d.c_.size(); ++j) {
      long k = d.lo_ + static_cast<long>(j);
      if (Rational(k) > through_order * d.denom_) break;
      BigFloat a = detail::scalar_abs(d.c_[j], prec);
      if (m < a) m = a;
    }
    return m;
  }

  /// True when f-g vanishes identically below through_order (both must be
  /// known at least that far).
  friend bool equal_through(const PuiseuxSeries& f, const PuiseuxSeries& g,
                            const Rational& through_order) {
    PuiseuxSeries d = f - g;
    if (d.trunc_exponent() < through_order)
      throw std::invalid_argument("operands not known through the requested order");
    for (size_t j = 0; j < d.c_.size(); ++j) {
      long k = d.lo_ + static_cast<long>(j);
      if (Rational(k) >= through_order * d.denom_) break;
      if (!detail::scalar_is_zero(d.c_[j])) return false;
    }
    return true;
  }

  std::string to_string(size_t max_terms = 12) const;

  template <class U>
  friend class PuiseuxSeries;

private:
  void normalize() {
    size_t skip = 0;
    while (skip < c_.size() && detail::scalar_is_zero(c_[skip])) ++skip;
    if (skip == c_.size()) {
      c_.clear();
      lo_ = trunc_;
      return;
    }
    if (skip) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(skip));
      lo_ += static_cast<long>(skip);
    }
  }

  void compress() {
    if (denom_ == 1) return;
    long g = std::gcd(denom_, trunc_ == 0 ? denom_ : trunc_);
    if (c_.empty()) {
      g = std::gcd(g, lo_ == 0 ? g : lo_);
    } else {
      for (size_t j = 0; j < c_.size() && g > 1; ++j) {
        if (detail::scalar_is_zero(c_[j])) continue;
        long k = lo_ + static_cast<long>(j);
        g = std::gcd(g, k == 0 ? g : (k < 0 ? -k : k));
      }
      g = std::gcd(g, lo_ == 0 ? g : lo_);
    }
    if (g <= 1) return;
    PuiseuxSeries s;
    s.denom_ = denom_ / g;
    s.lo_ = lo_ / g;
    s.trunc_ = trunc_ / g;
    s.prec_ = prec_;
    s.c_.assign(static_cast<size_t>(s.trunc_ - s.lo_), T{});
    for (size_t j = 0; j < c_.size(); ++j)
      if (!detail::scalar_is_zero(c_[j])) s.c_[j / static_cast<size_t>(g)] = c_[j];
    *this = std::move(s);
  }

  static std::pair<PuiseuxSeries, PuiseuxSeries> on_common_grid(const PuiseuxSeries& f,
                                                                const PuiseuxSeries& g) {
    long L = std::lcm(f.denom_, g.denom_);
    return {f.with_denominator(L), g.with_denominator(L)};
  }

  long denom_;
  long lo_;
  long trunc_;
  mpfr_prec_t prec_ = 256;
  std::vector<T> c_;
};

using SeriesQ = PuiseuxSeries<Rational>;
using SeriesC = PuiseuxSeries<BigComplex>;

template <class T>
std::string PuiseuxSeries<T>::to_string(size_t max_terms) const {
  if (is_zero()) return "0 + O(q^" + trunc_exponent().get_str() + ")";
  std::string out;
  size_t shown = 0;
  for (size_t j = 0; j < c_.size() && shown < max_terms; ++j) {
    if (detail::scalar_is_zero(c_[j])) continue;
    long k = lo_ + static_cast<long>(j);
    Rational e = Rational(k) / Rational(denom_);
    std::string cs;
    if constexpr (std::is_same_v<T, Rational>)
      cs = c_[j].get_str();
    else
      cs = "(" + c_[j].to_string() + ")";
    if (!out.empty()) out += " + ";
    out += cs;
    if (sgn(e) != 0) out += "*q^(" + e.get_str() + ")";
    ++shown;
  }
  out += " + O(q^" + trunc_exponent().get_str() + ")";
  return out;
}

}  // namespace mdeq
