#include "mdeq/solver.hpp"

#include "mdeq/ratfunc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mdeq {

Json SolutionSet::to_json() const {
  Json j;
  j["a"] = system.a.get_str();
  j["b"] = system.b.get_str();
  j["c"] = system.c.get_str();
  j["n"] = system.n;
  Json pts = Json::array();
  for (const auto& p : points) {
    Json pt;
    pt["re"] = p.re().to_decimal();
    pt["im"] = p.im().to_decimal();
    pts.push_back(pt);
  }
  j["points"] = pts;
  j["residual"] = residual_norm.to_decimal();
  j["domain"] = domain == SolutionDomain::RealUnitInterval ? "real-unit-interval" : "complex";
  if (exact_points) {
    Json ex = Json::array();
    for (const auto& r : *exact_points) ex.push_back(r.get_str());
    j["points_exact"] = ex;
  }
  return j;
}

namespace {

void check_admissible(const std::vector<BigComplex>& x, mpfr_prec_t prec) {
  BigFloat eps = BigFloat::from_decimal("1e-60", prec);
  BigFloat one = BigFloat::from_long(1, prec);
  for (size_t i = 0; i < x.size(); ++i) {
    if (abs(x[i]) < eps || abs(x[i] - BigComplex::from_long(1, prec)) < eps)
      throw std::invalid_argument("system point at a forbidden anchor (0 or 1)");
    for (size_t j = i + 1; j < x.size(); ++j)
      if (abs(x[i] - x[j]) < eps) throw std::invalid_argument("coincident system points");
  }
  (void)one;
}

}  // namespace

std::vector<BigComplex> residual(const AlgebraicSystem& sys, const std::vector<BigComplex>& x,
                                 mpfr_prec_t prec) {
  if (static_cast<long>(x.size()) != sys.n) throw std::invalid_argument("point count mismatch");
  check_admissible(x, prec);
  BigComplex a = BigComplex::from_rational(sys.a, prec);
  BigComplex b = BigComplex::from_rational(sys.b, prec);
  BigComplex c = BigComplex::from_rational(sys.c, prec);
  BigComplex one = BigComplex::from_long(1, prec);
  std::vector<BigComplex> F;
  F.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    BigComplex f = a / x[i] + b / (x[i] - one);
    for (size_t j = 0; j < x.size(); ++j) {
      if (j == i) continue;
      f += c / (x[i] - x[j]);
    }
    F.push_back(f);
  }
  return F;
}

BigFloat residual_norm(const AlgebraicSystem& sys, const std::vector<BigComplex>& x, mpfr_prec_t prec) {
  BigFloat m(prec);
  for (const auto& f : residual(sys, x, prec)) m = max(m, abs(f));
  return m;
}

std::vector<std::vector<BigComplex>> jacobian(const AlgebraicSystem& sys,
                                              const std::vector<BigComplex>& x, mpfr_prec_t prec) {
  if (static_cast<long>(x.size()) != sys.n) throw std::invalid_argument("point count mismatch");
  check_admissible(x, prec);
  BigComplex a = BigComplex::from_rational(sys.a, prec);
  BigComplex b = BigComplex::from_rational(sys.b, prec);
  BigComplex c = BigComplex::from_rational(sys.c, prec);
  BigComplex one = BigComplex::from_long(1, prec);
  size_t n = x.size();
  std::vector<std::vector<BigComplex>> J(n, std::vector<BigComplex>(n, BigComplex(prec)));
  for (size_t i = 0; i < n; ++i) {
    BigComplex diag = -(a / (x[i] * x[i])) - b / ((x[i] - one) * (x[i] - one));
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      BigComplex d2 = (x[i] - x[j]) * (x[i] - x[j]);
      diag -= c / d2;
      J[i][j] = c / d2;
    }
    J[i][i] = diag;
  }
  return J;
}

std::vector<Rational> residual_exact(const AlgebraicSystem& sys, const std::vector<Rational>& x) {
  std::vector<Rational> F;
  F.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0 || x[i] == 1) throw std::invalid_argument("system point at a forbidden anchor");
    Rational f = sys.a / x[i] + sys.b / (x[i] - 1);
    for (size_t j = 0; j < x.size(); ++j) {
      if (j == i) continue;
      if (x[i] == x[j]) throw std::invalid_argument("coincident system points");
      f += sys.c / (x[i] - x[j]);
    }
    F.push_back(f);
  }
  return F;
}

namespace {

// Gaussian elimination with partial pivoting; A is overwritten.
std::vector<BigComplex> linsolve(std::vector<std::vector<BigComplex>> A, std::vector<BigComplex> rhs,
                                 mpfr_prec_t prec) {
  const size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    BigFloat best = abs(A[col][col]);
    for (size_t r = col + 1; r < n; ++r) {
      BigFloat cand = abs(A[r][col]);
      if (best < cand) {
        best = cand;
        piv = r;
      }
    }
    if (best.is_zero()) throw std::runtime_error("singular Jacobian");
    std::swap(A[col], A[piv]);
    std::swap(rhs[col], rhs[piv]);
    BigComplex inv = inverse(A[col][col]);
    for (size_t r = col + 1; r < n; ++r) {
      if (A[r][col].is_zero()) continue;
      BigComplex f = A[r][col] * inv;
      for (size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<BigComplex> x(n, BigComplex(prec));
  for (size_t r = n; r-- > 0;) {
    BigComplex s = rhs[r];
    for (size_t k = r + 1; k < n; ++k) s -= A[r][k] * x[k];
    x[r] = s / A[r][r];
  }
  return x;
}

bool ordered_in_unit_box(const std::vector<BigComplex>& x, mpfr_prec_t prec) {
  BigFloat zero(prec), one = BigFloat::from_long(1, prec);
  for (size_t i = 0; i < x.size(); ++i) {
    if (!x[i].im().is_zero()) return false;
    if (!(zero < x[i].re() && x[i].re() < one)) return false;
    if (i + 1 < x.size() && !(x[i].re() < x[i + 1].re())) return false;
  }
  return true;
}

// Newton with residual-decrease damping; box/ordering constraint optional.
// Complex runs reject iterates escaping the search region (the residual of
// these systems also vanishes as the points run off to infinity) and fall
// back to a Levenberg step when the Jacobian is singular.
bool newton_run(const AlgebraicSystem& sys, std::vector<BigComplex>& x, mpfr_prec_t prec,
                bool keep_in_box, int max_iter, const BigFloat& target) {
  const BigFloat escape = BigFloat::from_long(40, prec);
  BigFloat fres = residual_norm(sys, x, prec);
  for (int it = 0; it < max_iter; ++it) {
    if (fres <= target) return true;
    std::vector<BigComplex> F = residual(sys, x, prec);
    for (auto& f : F) f = -f;
    std::vector<BigComplex> step;
    try {
      step = linsolve(jacobian(sys, x, prec), std::vector<BigComplex>(F), prec);
    } catch (const std::runtime_error&) {
      // Levenberg fallback: (J + mu I) step = -F with mu tied to the residual.
      auto J = jacobian(sys, x, prec);
      BigComplex mu(max(fres, BigFloat::from_decimal("1e-40", prec)), BigFloat(prec));
      for (size_t i = 0; i < J.size(); ++i) J[i][i] += mu;
      try {
        step = linsolve(std::move(J), std::vector<BigComplex>(F), prec);
      } catch (const std::runtime_error&) {
        return false;
      }
    }
    bool accepted = false;
    BigFloat lam = BigFloat::from_long(1, prec);
    for (int h = 0; h < 40; ++h) {
      std::vector<BigComplex> cand = x;
      for (size_t i = 0; i < cand.size(); ++i)
        cand[i] += BigComplex(lam, BigFloat(prec)) * step[i];
      bool ok = !keep_in_box || ordered_in_unit_box(cand, prec);
      if (ok && !keep_in_box) {
        for (const auto& p : cand)
          if (escape < abs(p)) ok = false;
      }
      if (ok) {
        BigFloat cres(prec);
        try {
          cres = residual_norm(sys, cand, prec);
        } catch (const std::invalid_argument&) {
          ok = false;
        }
        if (ok && cres < fres) {
          x = std::move(cand);
          fres = cres;
          accepted = true;
          break;
        }
      }
      lam = lam / BigFloat::from_long(2, prec);
    }
    if (!accepted) return fres <= target;
  }
  return fres <= target;
}

BigFloat polish_target(mpfr_prec_t prec) {
  BigFloat t = BigFloat::from_long(1, prec);
  mpfr_mul_2si(t.raw(), t.raw(), -static_cast<long>(prec - 24), MPFR_RNDN);
  return t;
}

}  // namespace

std::optional<SolutionSet> solve_closed_small(const AlgebraicSystem& sys, const SolveOptions& opts) {
  if (sys.n == 0) {
    SolutionSet s{sys, {}, BigFloat(opts.prec), SolutionDomain::RealUnitInterval,
                  std::vector<Rational>{}};
    return s;
  }
  if (sys.n != 1) return std::nullopt;
  Rational den = sys.a + sys.b;
  if (sgn(den) == 0) return std::nullopt;
  Rational x = sys.a / den;
  if (sgn(x) == 0 || x == 1) return std::nullopt;
  SolutionSet s{sys,
                {BigComplex::from_rational(x, opts.prec)},
                BigFloat(opts.prec),
                (sgn(x) > 0 && x < 1) ? SolutionDomain::RealUnitInterval : SolutionDomain::Complex,
                std::vector<Rational>{x}};
  return s;
}

SolutionSet solve_positive(const AlgebraicSystem& sys, const SolveOptions& opts) {
  if (!sys.positive()) throw std::invalid_argument("solve_positive needs a, b, c > 0");
  if (auto closed = solve_closed_small(sys, opts)) {
    if (closed->domain == SolutionDomain::RealUnitInterval) return *closed;
  }
  const mpfr_prec_t prec = opts.prec;
  const long n = sys.n;
  BigFloat target = polish_target(prec);

  std::mt19937_64 rng(opts.rng_seed ^ 0x9e3779b97f4a7c15ull);
  for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
    std::vector<BigComplex> x;
    x.reserve(static_cast<size_t>(n));
    for (long i = 1; i <= n; ++i) {
      double base = static_cast<double>(i) / static_cast<double>(n + 1);
      if (attempt > 0) {
        std::uniform_real_distribution<double> jitter(-0.35, 0.35);
        base += jitter(rng) / static_cast<double>(n + 1);
        base = std::min(std::max(base, 1e-3), 1.0 - 1e-3);
      }
      x.push_back(BigComplex(BigFloat::from_double(base, prec), BigFloat(prec)));
    }
    std::sort(x.begin(), x.end(),
              [](const BigComplex& u, const BigComplex& v) { return u.re() < v.re(); });
    bool distinct = true;
    for (long i = 0; i + 1 < n; ++i)
      if (!(x[static_cast<size_t>(i)].re() < x[static_cast<size_t>(i) + 1].re())) distinct = false;
    if (!distinct) continue;
    if (newton_run(sys, x, prec, /*keep_in_box=*/true, 400, target)) {
      SolutionSet s{sys, std::move(x), BigFloat(prec), SolutionDomain::RealUnitInterval, std::nullopt};
      s.residual_norm = residual_norm(sys, s.points, prec);
      if (s.residual_norm <= opts.certification_tol && ordered_in_unit_box(s.points, prec)) return s;
    }
  }
  throw std::runtime_error("positive-system solve did not converge: " + sys.label());
}

namespace {

std::vector<BigComplex> canonical_points(std::vector<BigComplex> pts) {
  std::sort(pts.begin(), pts.end(), [](const BigComplex& u, const BigComplex& v) {
    if (u.re() < v.re()) return true;
    if (v.re() < u.re()) return false;
    return u.im() < v.im();
  });
  return pts;
}

bool poly_admissible(const std::vector<Rational>& asc) {
  PolyQ p(asc);
  if (sgn(p.eval(Rational(0))) == 0 || sgn(p.eval(Rational(1))) == 0) return false;
  return gcd(p, derivative(p)).degree() == 0;
}

}  // namespace

std::vector<std::vector<Rational>> eigen_solution_polynomials(const AlgebraicSystem& sys) {
  EigenPolySpace space = heine_stieltjes_polynomials(sys);
  if (!space.exists) return {};
  std::vector<std::vector<Rational>> out;
  if (space.directions.empty()) {
    if (poly_admissible(space.base)) out.push_back(space.base);
    return out;
  }
  if (space.directions.size() == 1) {
    for (long t = -6; t <= 6; ++t) {
      std::vector<Rational> asc = space.base;
      for (size_t k = 0; k < asc.size(); ++k) asc[k] += Rational(t) * space.directions[0][k];
      if (poly_admissible(asc)) out.push_back(std::move(asc));
      if (out.size() >= 8) break;
    }
  }
  return out;
}

std::vector<SolutionSet> solve_complex_multistart(const AlgebraicSystem& sys, const SolveOptions& opts) {
  const mpfr_prec_t prec = opts.prec;
  const long n = sys.n;
  BigFloat target = polish_target(prec);
  BigFloat dedupe_tol = BigFloat::from_decimal("1e-12", prec);

  if (auto closed = solve_closed_small(sys, opts)) {
    closed->residual_norm = n == 0 ? BigFloat(prec) : residual_norm(sys, closed->points, prec);
    return {*closed};
  }

  std::vector<SolutionSet> found;
  auto consider = [&](std::vector<BigComplex> pts) {
    pts = canonical_points(std::move(pts));
    BigFloat res(prec);
    try {
      res = residual_norm(sys, pts, prec);
    } catch (const std::invalid_argument&) {
      return;
    }
    if (!(res <= opts.certification_tol)) return;
    for (const auto& s : found) {
      BigFloat worst(prec);
      for (size_t i = 0; i < pts.size(); ++i) worst = max(worst, abs(pts[i] - s.points[i]));
      if (worst < dedupe_tol) return;
    }
    SolutionSet s{sys, std::move(pts), res, SolutionDomain::Complex, std::nullopt};
    if (ordered_in_unit_box(s.points, prec)) s.domain = SolutionDomain::RealUnitInterval;
    found.push_back(std::move(s));
  };

  // The exact route first: random-seed Newton alone is unreliable here
  // because the residual also vanishes as the points escape to infinity.
  for (const auto& asc : eigen_solution_polynomials(sys)) {
    std::vector<BigComplex> monic;
    monic.reserve(asc.size());
    for (const auto& c : asc) monic.push_back(BigComplex::from_rational(c, prec));
    try {
      consider(complex_poly_roots(monic, prec));
    } catch (const std::runtime_error&) {
    }
  }

  // Random-seed Newton as a supplementary scan.
  if (found.empty()) {
    for (int t = 0; t < opts.multistart_tries; ++t) {
      // Per-try generator: reproducible regardless of scheduling.
      std::mt19937_64 rng(opts.rng_seed * 0x100000001b3ull + static_cast<unsigned long>(t) + 1);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<BigComplex> x;
      x.reserve(static_cast<size_t>(n));
      for (long i = 0; i < n; ++i) {
        double r = 3.0 * std::sqrt(unit(rng));
        double ang = 2.0 * 3.14159265358979323846 * unit(rng);
        x.push_back(BigComplex(BigFloat::from_double(r * std::cos(ang), prec),
                               BigFloat::from_double(r * std::sin(ang), prec)));
      }
      bool bad = false;
      try {
        residual_norm(sys, x, prec);
      } catch (const std::invalid_argument&) {
        bad = true;
      }
      if (bad) continue;
      if (!newton_run(sys, x, prec, /*keep_in_box=*/false, 200, target)) continue;
      consider(std::move(x));
    }
  }
  if (found.empty()) throw std::runtime_error("no certified solutions found: " + sys.label());
  return found;
}

std::vector<BigComplex> to_polynomial(const SolutionSet& sol, mpfr_prec_t prec) {
  std::vector<BigComplex> coeffs{BigComplex::from_long(1, prec)};
  for (const auto& root : sol.points) {
    std::vector<BigComplex> next(coeffs.size() + 1, BigComplex(prec));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= coeffs[i] * root;
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

std::optional<std::vector<Rational>> to_polynomial_exact(const SolutionSet& sol, mpfr_prec_t prec,
                                                         const BigFloat& tol) {
  if (sol.exact_points) {
    std::vector<Rational> coeffs{Rational(1)};
    for (const auto& r : *sol.exact_points) {
      std::vector<Rational> next(coeffs.size() + 1, Rational(0));
      for (size_t i = 0; i < coeffs.size(); ++i) {
        next[i] += coeffs[i];
        next[i + 1] -= coeffs[i] * r;
      }
      coeffs = std::move(next);
    }
    return coeffs;
  }
  std::vector<BigComplex> num = to_polynomial(sol, prec);
  std::vector<Rational> out;
  out.reserve(num.size());
  for (const auto& c : num) {
    if (tol < abs(c.im())) return std::nullopt;
    auto r = rational_reconstruct(c.re(), 1000000UL, tol);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

VerificationReport scale_equivalence_check(const SolutionSet& sol, const Rational& alpha,
                                           const SolveOptions& opts) {
  if (sgn(alpha) == 0) throw std::invalid_argument("scale factor must be nonzero");
  AlgebraicSystem scaled(sol.system.a * alpha, sol.system.b * alpha, sol.system.c * alpha,
                         sol.system.n);
  BigFloat res = sol.system.n == 0 ? BigFloat(opts.prec)
                                   : residual_norm(scaled, sol.points, opts.prec);
  BigFloat bound = abs(BigFloat::from_rational(alpha, opts.prec)) *
                   max(sol.residual_norm, opts.certification_tol);
  VerificationReport rep;
  rep.check = "scale equivalence " + sol.system.label() + " -> " + scaled.label();
  rep.order = 0;
  rep.max_deviation = res.to_decimal();
  rep.pass = res <= bound;
  rep.tolerance_provenance = "|alpha| * certification tolerance";
  rep.details["alpha"] = alpha.get_str();
  rep.details["bound"] = bound.to_decimal();
  return rep;
}

EigenPolySpace heine_stieltjes_polynomials(const AlgebraicSystem& sys) {
  const long n = sys.n;
  Rational half_c = sys.c / 2;
  auto lambda = [&](long k) -> Rational { return half_c * k * (k - 1) + (sys.a + sys.b) * k; };
  auto sub = [&](long k) -> Rational {  // multiplier of p_{k+1} in the x^k coefficient
    return half_c * (k + 1) * k + sys.a * (k + 1);
  };
  const Rational ln = lambda(n);

  // The x^k coefficient of the eigen-equation reads
  //   (lambda(k) - lambda(n)) p_k - sub(k) p_{k+1} = 0,
  // solved from p_n = 1 downward. A collision lambda(k) = lambda(n) either
  // kills the space (sub(k) p_{k+1} != 0) or frees p_k.
  std::vector<Rational> base(static_cast<size_t>(n + 1), Rational(0));
  base[static_cast<size_t>(n)] = 1;
  std::vector<std::vector<Rational>> dirs;
  std::vector<std::vector<Rational>> carriers;  // one row per active solution vector
  carriers.push_back(base);

  for (long k = n - 1; k >= 0; --k) {
    Rational gap = ln - lambda(k);
    if (sgn(gap) != 0) {
      for (auto& v : carriers)
        v[static_cast<size_t>(k)] = -(sub(k) * v[static_cast<size_t>(k + 1)]) / gap;
      continue;
    }
    // Defective level: consistency requires sub(k) p_{k+1} = 0.
    for (auto& v : carriers) {
      if (sgn(sub(k) * v[static_cast<size_t>(k + 1)]) != 0) {
        EigenPolySpace none;
        none.exists = false;
        return none;
      }
      v[static_cast<size_t>(k)] = 0;
    }
    std::vector<Rational> dir(static_cast<size_t>(n + 1), Rational(0));
    dir[static_cast<size_t>(k)] = 1;
    carriers.push_back(dir);
  }
  EigenPolySpace out;
  out.base = carriers.front();
  for (size_t i = 1; i < carriers.size(); ++i) out.directions.push_back(carriers[i]);
  return out;
}

std::vector<BigComplex> complex_poly_roots(const std::vector<BigComplex>& ascending_monic,
                                           mpfr_prec_t prec) {
  const long n = static_cast<long>(ascending_monic.size()) - 1;
  if (n < 1) return {};
  auto eval = [&](const BigComplex& z) {
    BigComplex v = ascending_monic.back();
    for (long k = n - 1; k >= 0; --k) v = v * z + ascending_monic[static_cast<size_t>(k)];
    return v;
  };
  // Durand-Kerner from a slightly irrational starting spiral.
  std::vector<BigComplex> z;
  BigFloat scale(prec);
  for (const auto& c : ascending_monic) scale = max(scale, abs(c));
  scale = BigFloat::from_long(1, prec) + scale;
  for (long i = 0; i < n; ++i) {
    double ang = 2.0 * 3.14159265358979323846 * (0.3607 + static_cast<double>(i)) /
                 static_cast<double>(n);
    double rad = 0.4 + 0.9 * (static_cast<double>(i) + 1.0) / static_cast<double>(n);
    z.push_back(BigComplex(BigFloat::from_double(rad * std::cos(ang), prec) * scale,
                           BigFloat::from_double(rad * std::sin(ang), prec) * scale));
  }
  BigFloat tol = polish_target(prec);
  for (int it = 0; it < 400; ++it) {
    BigFloat worst(prec);
    for (long i = 0; i < n; ++i) {
      BigComplex denom = BigComplex::from_long(1, prec);
      for (long j = 0; j < n; ++j)
        if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      BigComplex delta = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= delta;
      worst = max(worst, abs(delta));
    }
    if (worst <= tol) break;
  }
  for (const auto& r : z)
    if (tol * BigFloat::from_long(4, prec) < abs(eval(r)) &&
        BigFloat::from_decimal("1e-30", prec) < abs(eval(r)))
      throw std::runtime_error("polynomial root iteration did not converge (multiple roots?)");
  std::sort(z.begin(), z.end(), [](const BigComplex& u, const BigComplex& v) {
    if (u.re() < v.re()) return true;
    if (v.re() < u.re()) return false;
    return u.im() < v.im();
  });
  return z;
}

SolutionSet certify_points(const AlgebraicSystem& sys, std::vector<BigComplex> points,
                           const SolveOptions& opts) {
  std::sort(points.begin(), points.end(), [](const BigComplex& u, const BigComplex& v) {
    if (u.re() < v.re()) return true;
    if (v.re() < u.re()) return false;
    return u.im() < v.im();
  });
  SolutionSet s{sys, std::move(points), BigFloat(opts.prec), SolutionDomain::Complex, std::nullopt};
  s.residual_norm = sys.n == 0 ? BigFloat(opts.prec) : residual_norm(sys, s.points, opts.prec);
  if (!(s.residual_norm <= opts.certification_tol))
    throw std::runtime_error("points do not certify for " + sys.label() + " (residual " +
                             s.residual_norm.to_decimal() + ")");
  if (ordered_in_unit_box(s.points, opts.prec)) s.domain = SolutionDomain::RealUnitInterval;
  return s;
}

std::optional<Rational> rational_reconstruct(const BigFloat& x, unsigned long max_den,
                                             const BigFloat& tol) {
  const mpfr_prec_t prec = x.prec();
  // Continued fraction expansion of x, stopping at the first convergent
  // within tol.
  BigFloat cur = x;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    BigFloat fl(prec);
    mpfr_floor(fl.raw(), cur.raw());
    mpz_class a;
    mpfr_get_z(a.get_mpz_t(), fl.raw(), MPFR_RNDN);
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > static_cast<long>(max_den)) return std::nullopt;
    Rational cand = Rational(p2) / Rational(q2);
    cand.canonicalize();
    if (abs(x - BigFloat::from_rational(cand, prec)) <= tol) return cand;
    BigFloat frac = cur - fl;
    if (frac.is_zero()) return std::nullopt;
    cur = BigFloat::from_long(1, prec) / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

}  // namespace mdeq
