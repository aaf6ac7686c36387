#pragma once

#include "mdeq/report.hpp"
#include "mdeq/scalar.hpp"

#include <optional>
#include <vector>

namespace mdeq {

/// The residue system E^n_{a,b,c}: n equations in n unknowns,
///   F_i(x) = a/x_i + b/(x_i - 1) + c * sum_{j != i} 1/(x_i - x_j) = 0.
/// The mutual term is oriented so that positive (a,b,c) acts as mutual
/// repulsion between the x_i with anchors at 0 and 1, which is the
/// orientation under which the system is solvable inside (0,1)^n and under
/// which vanishing of the adjoined-pole residues reduces to it.
struct AlgebraicSystem {
  Rational a, b, c;
  long n = 0;

  AlgebraicSystem(Rational a_, Rational b_, Rational c_, long n_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), n(n_) {
    if (n < 0) throw std::invalid_argument("system size must be nonnegative");
    if (sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0)
      throw std::invalid_argument("system parameters must not all vanish");
  }

  bool positive() const { return sgn(a) > 0 && sgn(b) > 0 && sgn(c) > 0; }
  std::string label() const {
    return "E^" + std::to_string(n) + "_{" + a.get_str() + "," + b.get_str() + "," + c.get_str() + "}";
  }
};

enum class SolutionDomain { RealUnitInterval, Complex };

struct SolutionSet {
  AlgebraicSystem system;
  std::vector<BigComplex> points;
  BigFloat residual_norm;
  SolutionDomain domain = SolutionDomain::Complex;
  std::optional<std::vector<Rational>> exact_points;  // set for closed-form n<=1 solves

  Json to_json() const;
};

/// F_i(x) as defined above; entries must be distinct and avoid {0,1}.
std::vector<BigComplex> residual(const AlgebraicSystem& sys, const std::vector<BigComplex>& x,
                                 mpfr_prec_t prec);
BigFloat residual_norm(const AlgebraicSystem& sys, const std::vector<BigComplex>& x, mpfr_prec_t prec);
/// Analytic Jacobian d F_i / d x_j.
std::vector<std::vector<BigComplex>> jacobian(const AlgebraicSystem& sys,
                                              const std::vector<BigComplex>& x, mpfr_prec_t prec);

/// Exact rational residual for exact points (n small); used by closed-form paths.
std::vector<Rational> residual_exact(const AlgebraicSystem& sys, const std::vector<Rational>& x);

struct SolveOptions {
  mpfr_prec_t prec = 256;
  BigFloat certification_tol = BigFloat::from_decimal("1e-30", 256);
  unsigned long rng_seed = 0;
  int max_restarts = 24;
  int multistart_tries = 96;
};

/// Closed form x = a/(a+b) for n = 1 (exact); empty solution for n = 0.
std::optional<SolutionSet> solve_closed_small(const AlgebraicSystem& sys, const SolveOptions& opts);

/// Damped Newton from the equispaced interior guess; keeps iterates strictly
/// ordered inside (0,1)^n. Requires a, b, c > 0.
SolutionSet solve_positive(const AlgebraicSystem& sys, const SolveOptions& opts);

/// Newton from random complex seeds; solutions deduplicated as unordered
/// sets and certified by their residual norm.
std::vector<SolutionSet> solve_complex_multistart(const AlgebraicSystem& sys, const SolveOptions& opts);

/// Coefficients (monic, degree-descending) of prod_i (X - x_i).
std::vector<BigComplex> to_polynomial(const SolutionSet& sol, mpfr_prec_t prec);
/// Same, with coefficients snapped to nearby small rationals when every
/// coefficient admits one within `tol`; nullopt otherwise.
std::optional<std::vector<Rational>> to_polynomial_exact(const SolutionSet& sol, mpfr_prec_t prec,
                                                         const BigFloat& tol);

/// The certified points of E^n_{a,b,c} certify for E^n_{alpha a, alpha b, alpha c}.
VerificationReport scale_equivalence_check(const SolutionSet& sol, const Rational& alpha,
                                           const SolveOptions& opts);

/// Best rational p/q with q <= max_den within tol of x, via continued fractions.
std::optional<Rational> rational_reconstruct(const BigFloat& x, unsigned long max_den, const BigFloat& tol);

/// Exact reduction of E^n_{a,b,c} to polynomial space: x solves the system
/// iff P(X) = prod (X - x_i) satisfies
///   (c/2) X(X-1) P'' + (a(X-1) + bX) P' = lambda_n P,
/// an eigenproblem that is triangular in the monomial basis with eigenvalues
/// lambda_k = (c/2)k(k-1) + (a+b)k. The degree-n eigenspace is computed
/// exactly: either one monic polynomial, or (when lambda_n collides with a
/// lower eigenvalue) an affine family base + t * direction.
struct EigenPolySpace {
  std::vector<Rational> base;                     // monic, ascending coefficients
  std::vector<std::vector<Rational>> directions;  // free directions (defective case)
  bool exists = true;                             // false: no degree-n eigenpolynomial
};
EigenPolySpace heine_stieltjes_polynomials(const AlgebraicSystem& sys);

/// Admissible candidate polynomials from the eigen-reduction: the unique one
/// when the top eigenvalue is simple, or low-height integer-parameter members
/// of the family in the defective case. Admissible means square-free with no
/// root at 0 or 1.
std::vector<std::vector<Rational>> eigen_solution_polynomials(const AlgebraicSystem& sys);

/// All roots of a monic polynomial (ascending coefficients) by the
/// Durand-Kerner iteration; requires a square-free polynomial.
std::vector<BigComplex> complex_poly_roots(const std::vector<BigComplex>& ascending_monic,
                                           mpfr_prec_t prec);

/// Certified solution set from explicit points (residual recomputed).
SolutionSet certify_points(const AlgebraicSystem& sys, std::vector<BigComplex> points,
                           const SolveOptions& opts);

}  // namespace mdeq
