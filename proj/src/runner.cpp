#include "mdeq/runner.hpp"

namespace mdeq {

void RunConfig::validate() const {
  if (prec_bits < 128) throw std::invalid_argument("precision must be at least 128 bits");
  if (order < 16) throw std::invalid_argument("series order must be at least 16");
  BigFloat t = BigFloat::from_decimal(tol, 128);
  if (!(t.sgn() > 0)) throw std::invalid_argument("tolerance must parse to a positive real");
}

EvalOptions RunConfig::eval_options() const {
  EvalOptions o;
  o.prec = static_cast<mpfr_prec_t>(prec_bits);
  o.order = order;
  return o;
}

SolveOptions RunConfig::solve_options() const {
  SolveOptions o;
  o.prec = static_cast<mpfr_prec_t>(prec_bits);
  o.rng_seed = static_cast<unsigned long>(rng_seed);
  o.certification_tol = BigFloat::from_decimal("1e-30", o.prec);
  return o;
}

BigFloat RunConfig::tolerance() const {
  return BigFloat::from_decimal(tol, static_cast<mpfr_prec_t>(prec_bits));
}

Json RunConfig::to_json() const {
  Json j;
  j["prec_bits"] = prec_bits;
  j["order"] = order;
  j["tol"] = tol;
  j["rng_seed"] = rng_seed;
  return j;
}

namespace {

Json bundle(const std::string& command, const RunConfig& cfg, std::vector<VerificationReport> reports) {
  Json j;
  j["command"] = command;
  j["config"] = cfg.to_json();
  Json rs = Json::array();
  bool pass = true;
  for (const auto& r : reports) {
    rs.push_back(r.to_json());
    pass = pass && r.pass;
  }
  j["reports"] = rs;
  j["pass"] = pass;
  return j;
}

SolutionSet class_solutions(const RunConfig& cfg, int alpha, long n, mpfr_prec_t prec) {
  AlgebraicSystem sys = class_system(alpha, n);
  SolveOptions sopts = cfg.solve_options();
  sopts.prec = prec;
  sopts.certification_tol = BigFloat::from_decimal("1e-30", prec);
  if (auto closed = solve_closed_small(sys, sopts)) return *closed;
  return solve_positive(sys, sopts);
}

// Coefficients of 1/(J - x) grow like exp(2 pi n im(w)); the cancellation in
// the q-expansion checks is only visible with precision beyond that growth.
mpfr_prec_t coefficient_growth_bits(long order) {
  return static_cast<mpfr_prec_t>(((10 * (order + 4) + 300) / 64 + 1) * 64);
}

}  // namespace

Json run_special_values(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport rep = special_value_report(cfg.eval_options(), cfg.tolerance());
  return bundle("special-values", cfg, {rep});
}

Json run_solve(const RunConfig& cfg, const std::string& a, const std::string& b,
               const std::string& c, long n) {
  cfg.validate();
  AlgebraicSystem sys(rational_from_string(a), rational_from_string(b), rational_from_string(c), n);
  SolveOptions sopts = cfg.solve_options();
  std::vector<SolutionSet> sols;
  if (auto closed = solve_closed_small(sys, sopts)) {
    sols.push_back(*closed);
  } else if (sys.positive()) {
    sols.push_back(solve_positive(sys, sopts));
  } else {
    sols = solve_complex_multistart(sys, sopts);
  }
  Json j;
  j["command"] = "solve";
  j["config"] = cfg.to_json();
  j["system"] = sys.label();
  Json arr = Json::array();
  for (const auto& s : sols) arr.push_back(s.to_json());
  j["solutions"] = arr;
  j["pass"] = !sols.empty();
  return j;
}

Json run_verify_class(const RunConfig& cfg, int alpha, long n) {
  cfg.validate();
  EvalOptions eopts = cfg.eval_options();
  const long check_order = std::min<long>(cfg.order - 4, 40);
  BigFloat tol = cfg.tolerance();

  const bool exact = n <= 1;
  const mpfr_prec_t check_prec =
      exact ? eopts.prec : std::max(eopts.prec, coefficient_growth_bits(check_order));
  ResidueClassSpec spec{alpha, n, class_solutions(cfg, alpha, n, check_prec)};
  FormExprPtr f = build_f(spec);
  Rational r = class_r(alpha, n);

  std::vector<VerificationReport> reports;
  reports.push_back(exact ? schwarz_check_exact(f, r, check_order)
                          : schwarz_check_numeric(f, r, check_order, check_prec, tol));
  if (alpha == 1) {
    FormExprPtr y1 = build_y1(spec);
    reports.push_back(exact ? mde_check_exact(y1, r, check_order)
                            : mde_check_numeric(y1, r, check_order, check_prec, tol));
  }
  std::vector<PolePoint> poles = class_pole_points(spec, eopts);
  if (!poles.empty()) {
    // Arc poles see their own mirror image across the imaginary axis.
    std::vector<BigComplex> others;
    for (const auto& p : poles)
      others.push_back(BigComplex(-p.center.re, p.center.im));
    reports.push_back(residue_report("residues of " + expr_to_string(f), f, poles, others, eopts,
                                     BigFloat::from_decimal("1e-15", eopts.prec)));
  }
  return bundle("verify", cfg, std::move(reports));
}

Json run_level2(const RunConfig& cfg, long n, const std::string& variant) {
  cfg.validate();
  EvalOptions eopts = cfg.eval_options();
  SolveOptions sopts = cfg.solve_options();
  const long check_order = std::min<long>(cfg.order - 4, 40);
  BigFloat residue_tol = BigFloat::from_decimal("1e-15", eopts.prec);

  Level2Variant v;
  if (variant == "case1")
    v = Level2Variant::Case1;
  else if (variant == "case2-cusp0")
    v = Level2Variant::Case2Cusp0;
  else if (variant == "case2-cusp1")
    v = Level2Variant::Case2Cusp1;
  else
    throw std::invalid_argument("variant must be case1, case2-cusp0 or case2-cusp1");

  std::vector<VerificationReport> reports;
  SolutionSet sols = [&]() {
    if (v == Level2Variant::Case1) {
      Case1Resolution res = resolve_case1(n, eopts, sopts, residue_tol);
      reports.push_back(res.report);
      return res.winning_solutions;
    }
    AlgebraicSystem sys = level2_system(n, v);
    if (auto closed = solve_closed_small(sys, sopts)) return *closed;
    auto all = solve_complex_multistart(sys, sopts);
    return all.front();
  }();

  FormExprPtr hp = level2_hprime(n, v, sols, eopts.prec);
  bool exact = sols.exact_points.has_value() ||
               to_polynomial_exact(sols, eopts.prec, BigFloat::from_decimal("1e-20", eopts.prec))
                   .has_value();
  reports.push_back(
      level2_schwarz_check(hp, Rational(n) / 2, check_order, exact, eopts.prec, cfg.tolerance()));

  std::vector<PolePoint> poles = level2_pole_points(sols, eopts);
  if (!poles.empty()) {
    std::vector<BigComplex> others;
    for (const auto& p : poles) {
      BigComplex w(p.center.re, p.center.im);
      BigComplex two = BigComplex::from_long(2, eopts.prec);
      BigComplex one = BigComplex::from_long(1, eopts.prec);
      others.push_back(w + two);
      others.push_back(w - two);
      others.push_back(w / (two * w + one));
      others.push_back(w / (one - two * w));
    }
    reports.push_back(
        residue_report("residues of " + expr_to_string(hp), hp, poles, others, eopts, residue_tol));
  }

  if (n == 3) {
    int which = v == Level2Variant::Case2Cusp0 ? 1 : (v == Level2Variant::Case2Cusp1 ? 2 : 3);
    reports.push_back(ratfunc_derivative_check(
        "d(h" + std::to_string(which) + ")/dt equals the constructed h'/t'",
        level2_example_h(which), level2_example_hprime_over_tprime(which)));
    if (v == Level2Variant::Case1) reports.push_back(moebius_relation_check());
  }
  return bundle("level2", cfg, std::move(reports));
}

Json run_enumerate(const RunConfig& cfg, int m, long n) {
  cfg.validate();
  CuspData data = enumerate_ab(m, n);
  Json j;
  j["command"] = "enumerate";
  j["config"] = cfg.to_json();
  j["cusp_data"] = data.to_json();
  j["pass"] = true;
  return j;
}

}  // namespace mdeq
