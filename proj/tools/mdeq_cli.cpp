// Batch verification CLI. Talks to the toolkit exclusively through the
// shared-library C interface; every subcommand emits one JSON document.

#include <mdeq.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct CommonFlags {
  unsigned prec_bits = 256;
  unsigned order = 60;
  std::string tol = "1e-20";
  unsigned long long seed = 0;
  std::string out;
  bool json = true;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--prec-bits", f.prec_bits, "working precision in bits (>= 128)");
  cmd->add_option("--order", f.order, "q-expansion truncation order");
  cmd->add_option("--tol", f.tol, "numeric tolerance as a decimal string");
  cmd->add_option("--seed", f.seed, "RNG seed for multistart solves");
  cmd->add_option("--out", f.out, "write the JSON report to this path instead of stdout");
  cmd->add_flag("--json,!--no-json", f.json, "JSON output (always on; reports are JSON only)");
}

int emit(const CommonFlags& f, const char* json) {
  if (f.out.empty()) {
    std::cout << json << std::endl;
    return 0;
  }
  std::ofstream os(f.out);
  if (!os) {
    std::cerr << "cannot open output file: " << f.out << std::endl;
    return 1;
  }
  os << json << std::endl;
  return 0;
}

// exit 0: all checks passed; 1: a check failed or no solution; 2: bad usage.
int finish(mdeq_ctx* ctx, const CommonFlags& f, mdeq_status st, char* json) {
  int rc = 2;
  if (st == MDEQ_OK || st == MDEQ_CHECK_FAILED) {
    if (json && emit(f, json) != 0)
      rc = 2;
    else
      rc = st == MDEQ_OK ? 0 : 1;
  } else {
    std::cerr << "error: " << mdeq_last_error(ctx) << std::endl;
    rc = st == MDEQ_NO_CONVERGENCE ? 1 : 2;
  }
  mdeq_string_free(json);
  return rc;
}

mdeq_ctx* configure(const CommonFlags& f, int& rc) {
  mdeq_ctx* ctx = mdeq_ctx_new();
  if (!ctx) {
    std::cerr << "error: context allocation failed" << std::endl;
    rc = 2;
    return nullptr;
  }
  if (!f.json) {
    std::cerr << "error: reports are JSON only; --no-json is not supported" << std::endl;
    mdeq_ctx_free(ctx);
    rc = 2;
    return nullptr;
  }
  if (mdeq_ctx_set_precision_bits(ctx, f.prec_bits) != MDEQ_OK ||
      mdeq_ctx_set_order(ctx, f.order) != MDEQ_OK ||
      mdeq_ctx_set_tolerance(ctx, f.tol.c_str()) != MDEQ_OK ||
      mdeq_ctx_set_seed(ctx, f.seed) != MDEQ_OK) {
    std::cerr << "error: " << mdeq_last_error(ctx) << std::endl;
    mdeq_ctx_free(ctx);
    rc = 2;
    return nullptr;
  }
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for modular differential equations built from algebraic residue systems"};
  app.require_subcommand(1);

  CommonFlags f_special, f_solve, f_verify, f_level2, f_enum;

  auto* c_special = app.add_subcommand("special-values",
                                       "check the derivative ratios at the elliptic points i and rho");
  add_common(c_special, f_special);

  auto* c_solve = app.add_subcommand("solve", "solve the residue system E^n_{a,b,c}");
  std::string sa, sb, sc;
  unsigned sn = 0;
  c_solve->add_option("a", sa, "parameter a (integer, p/q or decimal)")->required();
  c_solve->add_option("b", sb, "parameter b")->required();
  c_solve->add_option("c", sc, "parameter c")->required();
  c_solve->add_option("n", sn, "number of unknowns")->required();
  add_common(c_solve, f_solve);

  auto* c_verify = app.add_subcommand("verify", "build and verify a residue-class family member");
  unsigned valpha = 1, vn = 0;
  c_verify->add_option("--class", valpha, "residue class alpha in {1,5,7,11}")->required();
  c_verify->add_option("--n", vn, "number of adjoined pole orbits")->required();
  add_common(c_verify, f_verify);

  auto* c_level2 = app.add_subcommand("level2", "build and verify a level-2 solution");
  unsigned ln = 3;
  std::string lvariant = "case2-cusp1";
  c_level2->add_option("--n", ln, "odd ramification index")->required();
  c_level2->add_option("--variant", lvariant, "case1 | case2-cusp0 | case2-cusp1")->required();
  add_common(c_level2, f_level2);

  auto* c_enum = app.add_subcommand("enumerate", "admissible (a,b) pole/cusp counts for a level");
  unsigned em = 2, en = 1;
  c_enum->add_option("--m", em, "level in 2..5")->required();
  c_enum->add_option("--n", en, "ramification index coprime to m")->required();
  add_common(c_enum, f_enum);

  CLI11_PARSE(app, argc, argv);

  int rc = 2;
  char* json = nullptr;
  if (c_special->parsed()) {
    mdeq_ctx* ctx = configure(f_special, rc);
    if (!ctx) return rc;
    mdeq_status st = mdeq_run_special_values(ctx, &json);
    rc = finish(ctx, f_special, st, json);
    mdeq_ctx_free(ctx);
  } else if (c_solve->parsed()) {
    mdeq_ctx* ctx = configure(f_solve, rc);
    if (!ctx) return rc;
    mdeq_status st = mdeq_run_solve(ctx, sa.c_str(), sb.c_str(), sc.c_str(), sn, &json);
    rc = finish(ctx, f_solve, st, json);
    mdeq_ctx_free(ctx);
  } else if (c_verify->parsed()) {
    mdeq_ctx* ctx = configure(f_verify, rc);
    if (!ctx) return rc;
    mdeq_status st = mdeq_run_verify_class(ctx, valpha, vn, &json);
    rc = finish(ctx, f_verify, st, json);
    mdeq_ctx_free(ctx);
  } else if (c_level2->parsed()) {
    mdeq_ctx* ctx = configure(f_level2, rc);
    if (!ctx) return rc;
    mdeq_status st = mdeq_run_level2(ctx, ln, lvariant.c_str(), &json);
    rc = finish(ctx, f_level2, st, json);
    mdeq_ctx_free(ctx);
  } else if (c_enum->parsed()) {
    mdeq_ctx* ctx = configure(f_enum, rc);
    if (!ctx) return rc;
    mdeq_status st = mdeq_run_enumerate(ctx, em, en, &json);
    rc = finish(ctx, f_enum, st, json);
    mdeq_ctx_free(ctx);
  }
  return rc;
}
