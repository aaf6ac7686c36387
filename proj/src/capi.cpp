#include "mdeq.h"

#include "mdeq/runner.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct mdeq_ctx {
  mdeq::RunConfig cfg;
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
mdeq_status run_command(mdeq_ctx* ctx, char** json_out, Fn&& fn) {
  if (!ctx) return MDEQ_INVALID_ARGUMENT;
  if (!json_out) {
    ctx->last_error = "null output pointer";
    return MDEQ_INVALID_ARGUMENT;
  }
  *json_out = nullptr;
  try {
    mdeq::Json j = fn();
    bool pass = j.value("pass", false);
    *json_out = dup_string(j.dump(2));
    if (!*json_out) {
      ctx->last_error = "out of memory";
      return MDEQ_INTERNAL_ERROR;
    }
    ctx->last_error.clear();
    return pass ? MDEQ_OK : MDEQ_CHECK_FAILED;
  } catch (const std::invalid_argument& ex) {
    ctx->last_error = ex.what();
    return MDEQ_INVALID_ARGUMENT;
  } catch (const std::domain_error& ex) {
    ctx->last_error = ex.what();
    return MDEQ_INVALID_ARGUMENT;
  } catch (const std::runtime_error& ex) {
    ctx->last_error = ex.what();
    return MDEQ_NO_CONVERGENCE;
  } catch (const std::exception& ex) {
    ctx->last_error = ex.what();
    return MDEQ_INTERNAL_ERROR;
  }
}

}  // namespace

extern "C" {

int mdeq_abi_version(void) { return 1; }

mdeq_ctx* mdeq_ctx_new(void) {
  try {
    return new mdeq_ctx();
  } catch (...) {
    return nullptr;
  }
}

void mdeq_ctx_free(mdeq_ctx* ctx) { delete ctx; }

mdeq_status mdeq_ctx_set_precision_bits(mdeq_ctx* ctx, unsigned bits) {
  if (!ctx) return MDEQ_INVALID_ARGUMENT;
  if (bits < 128) {
    ctx->last_error = "precision must be at least 128 bits";
    return MDEQ_INVALID_ARGUMENT;
  }
  ctx->cfg.prec_bits = bits;
  return MDEQ_OK;
}

mdeq_status mdeq_ctx_set_order(mdeq_ctx* ctx, unsigned order) {
  if (!ctx) return MDEQ_INVALID_ARGUMENT;
  if (order < 16) {
    ctx->last_error = "series order must be at least 16";
    return MDEQ_INVALID_ARGUMENT;
  }
  ctx->cfg.order = order;
  return MDEQ_OK;
}

mdeq_status mdeq_ctx_set_tolerance(mdeq_ctx* ctx, const char* decimal) {
  if (!ctx) return MDEQ_INVALID_ARGUMENT;
  if (!decimal) {
    ctx->last_error = "null tolerance";
    return MDEQ_INVALID_ARGUMENT;
  }
  try {
    mdeq::BigFloat t = mdeq::BigFloat::from_decimal(decimal, 128);
    if (!(t.sgn() > 0)) throw std::invalid_argument("tolerance must be positive");
  } catch (const std::exception& ex) {
    ctx->last_error = ex.what();
    return MDEQ_INVALID_ARGUMENT;
  }
  ctx->cfg.tol = decimal;
  return MDEQ_OK;
}

mdeq_status mdeq_ctx_set_seed(mdeq_ctx* ctx, unsigned long long seed) {
  if (!ctx) return MDEQ_INVALID_ARGUMENT;
  ctx->cfg.rng_seed = seed;
  return MDEQ_OK;
}

const char* mdeq_last_error(const mdeq_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

void mdeq_string_free(char* s) { std::free(s); }

mdeq_status mdeq_run_special_values(mdeq_ctx* ctx, char** json_out) {
  return run_command(ctx, json_out, [&] { return mdeq::run_special_values(ctx->cfg); });
}

mdeq_status mdeq_run_solve(mdeq_ctx* ctx, const char* a, const char* b, const char* c, unsigned n,
                           char** json_out) {
  if (!ctx) return MDEQ_INVALID_ARGUMENT;
  if (!a || !b || !c) {
    ctx->last_error = "null system parameter";
    return MDEQ_INVALID_ARGUMENT;
  }
  return run_command(ctx, json_out, [&] { return mdeq::run_solve(ctx->cfg, a, b, c, n); });
}

mdeq_status mdeq_run_verify_class(mdeq_ctx* ctx, unsigned alpha, unsigned n, char** json_out) {
  return run_command(ctx, json_out,
                     [&] { return mdeq::run_verify_class(ctx->cfg, static_cast<int>(alpha), n); });
}

mdeq_status mdeq_run_level2(mdeq_ctx* ctx, unsigned n, const char* variant, char** json_out) {
  if (!ctx) return MDEQ_INVALID_ARGUMENT;
  if (!variant) {
    ctx->last_error = "null variant";
    return MDEQ_INVALID_ARGUMENT;
  }
  return run_command(ctx, json_out, [&] { return mdeq::run_level2(ctx->cfg, n, variant); });
}

mdeq_status mdeq_run_enumerate(mdeq_ctx* ctx, unsigned m, unsigned n, char** json_out) {
  return run_command(ctx, json_out,
                     [&] { return mdeq::run_enumerate(ctx->cfg, static_cast<int>(m), n); });
}

}  // extern "C"
