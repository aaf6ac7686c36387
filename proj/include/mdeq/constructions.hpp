#pragma once

#include "mdeq/point_eval.hpp"
#include "mdeq/ratfunc.hpp"
#include "mdeq/solver.hpp"

namespace mdeq {

/// Residue classes alpha mod 12 coprime to 6 and their residue systems:
/// alpha=1 <-> E^n_{4,3,12}, alpha=7 <-> E^n_{4,9,12},
/// alpha=5 <-> E^n_{8,3,12}, alpha=11 <-> E^n_{8,9,12}.
AlgebraicSystem class_system(int alpha, long n);
/// r = (12n + alpha)/6.
Rational class_r(int alpha, long n);

struct ResidueClassSpec {
  int alpha;
  long n;
  SolutionSet sols;
};

/// The weight-2 family member for the class:
///   alpha=1:  eta^4 / prod (J-x_i)^2
///   alpha=7:  eta^28 / (E6^2 prod (J-x_i)^2)
///   alpha=5:  eta^20 / (E4^2 prod (J-x_i)^2)
///   alpha=11: eta^44 / (E4^2 E6^2 prod (J-x_i)^2)
FormExprPtr build_f(const ResidueClassSpec& spec);

/// Solution y1 = eta^-2 prod (J-x_i) of the companion second-order equation.
FormExprPtr build_y1(const ResidueClassSpec& spec);

/// D-normalized Schwarzian check: with L = D(f)/f, verifies
/// D(L) - L^2/2 == -(r^2/2) E4 coefficientwise through `order`.
VerificationReport schwarz_check_exact(const FormExprPtr& f, const Rational& r, long order);
VerificationReport schwarz_check_numeric(const FormExprPtr& f, const Rational& r, long order,
                                         mpfr_prec_t prec, const BigFloat& tol);

/// D-normalized form of y'' + pi^2 r^2 E4 y = 0: verifies D^2 y == (r^2/4) E4 y.
VerificationReport mde_check_exact(const FormExprPtr& y, const Rational& r, long order);
VerificationReport mde_check_numeric(const FormExprPtr& y, const Rational& r, long order,
                                     mpfr_prec_t prec, const BigFloat& tol);

/// Admissible pole/cusp counts (a, b) for level m and ramification n.
struct CuspData {
  int m = 0;
  long n = 0;
  int nu_inf = 0;
  std::vector<std::pair<long, long>> pairs;
  std::vector<std::pair<long, long>> discarded;  // family members with a < 0
  Json to_json() const;
};
CuspData enumerate_ab(int m, long n);

enum class Level2Variant { Case1, Case2Cusp0, Case2Cusp1 };
const char* level2_variant_name(Level2Variant v);

/// Residue system for the level-2 variants. Case 2 systems come straight
/// from the derivative formulas: cusp0 <-> E^a_{1-n,n+1,2},
/// cusp1 <-> E^a_{n+1,1-n,2}. Case 1 has two sign candidates (see
/// level2_case1_candidates); the resolved one is E^a_{n-1,n-1,-2}.
AlgebraicSystem level2_system(long n, Level2Variant v);
std::pair<AlgebraicSystem, AlgebraicSystem> level2_case1_candidates(long n);

/// Number of half-plane poles a for the variant: (3n-1)/2 for case 1,
/// (n-1)/2 for case 2.
long level2_pole_count(long n, Level2Variant v);

/// h' over the t-line:
///   case 1:      Dt t^{n-1}(t-1)^{n-1} / prod (t-x_j)^2
///   case2-cusp0: Dt t^{n-1} / ((t-1)^{n+1} prod (t-x_j)^2)
///   case2-cusp1: Dt (t-1)^{n-1} / (t^{n+1} prod (t-x_j)^2)
FormExprPtr level2_hprime(long n, Level2Variant v, const SolutionSet& sols, mpfr_prec_t prec);

/// Schwarz check for a level-2 derivative with r = n/2 (r = 1/2 for Dt itself).
VerificationReport level2_schwarz_check(const FormExprPtr& hprime, const Rational& r, long order,
                                        bool exact, mpfr_prec_t prec, const BigFloat& tol);

/// Exact check d(h)/dt == h'/t' as reduced rational functions.
VerificationReport ratfunc_derivative_check(const std::string& name, const RationalFunction& h,
                                            const RationalFunction& hprime_over_tprime);

/// The closed forms for the (m=2, n=3) example: h1, h2, h3 and the
/// corresponding h'/t'.
RationalFunction level2_example_h(int which);
RationalFunction level2_example_hprime_over_tprime(int which);

/// h2 == h1/(6h1+1), h3 == (6h1+1)/(-72h1+12), and h3(infinity) == 1/12.
VerificationReport moebius_relation_check();

/// Contour-residue suite: checks |residue| <= tol at each listed pole with
/// the dual-radius guard. Pole names are carried into the report details.
struct PolePoint {
  std::string name;
  HalfPlanePoint center;
};
VerificationReport residue_report(const std::string& check_name, const FormExprPtr& f,
                                  const std::vector<PolePoint>& poles,
                                  const std::vector<BigComplex>& other_singularities,
                                  const EvalOptions& opts, const BigFloat& tol);

/// Half-plane pole list for a class construction: J-arc preimages of the
/// solution points plus the elliptic points carried by the class.
std::vector<PolePoint> class_pole_points(const ResidueClassSpec& spec, const EvalOptions& opts);

/// Preimages t(w) = x_j for a level-2 construction.
std::vector<PolePoint> level2_pole_points(const SolutionSet& sols, const EvalOptions& opts);

struct Case1Resolution {
  AlgebraicSystem winner;
  SolutionSet winning_solutions;
  VerificationReport report;
};
/// Solves both case-1 sign candidates, builds h' from each certified
/// solution set and keeps the candidate whose residues vanish.
Case1Resolution resolve_case1(long n, const EvalOptions& eopts, const SolveOptions& sopts,
                              const BigFloat& residue_tol);

}  // namespace mdeq
