#pragma once

#include "mdeq/constructions.hpp"

#include <string>

namespace mdeq {

struct RunConfig {
  long prec_bits = 256;
  long order = 60;
  std::string tol = "1e-20";
  unsigned long long rng_seed = 0;

  void validate() const;
  EvalOptions eval_options() const;
  SolveOptions solve_options() const;
  BigFloat tolerance() const;
  Json to_json() const;
};

/// Each runner returns {"command", "config", ..., "pass"}; "pass" is the
/// conjunction over all contained reports.
Json run_special_values(const RunConfig& cfg);
Json run_solve(const RunConfig& cfg, const std::string& a, const std::string& b,
               const std::string& c, long n);
Json run_verify_class(const RunConfig& cfg, int alpha, long n);
Json run_level2(const RunConfig& cfg, long n, const std::string& variant);
Json run_enumerate(const RunConfig& cfg, int m, long n);

}  // namespace mdeq
