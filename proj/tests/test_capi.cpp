#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mdeq.h>

#include <json.hpp>

#include <string>

namespace {

struct Ctx {
  mdeq_ctx* p;
  Ctx() : p(mdeq_ctx_new()) {}
  ~Ctx() { mdeq_ctx_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  mdeq_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("context lifecycle and configuration errors") {
  Ctx ctx;
  REQUIRE(ctx.p != nullptr);
  CHECK(mdeq_abi_version() == 1);
  CHECK(mdeq_ctx_set_precision_bits(ctx.p, 64) == MDEQ_INVALID_ARGUMENT);
  CHECK(mdeq_ctx_set_precision_bits(ctx.p, 192) == MDEQ_OK);
  CHECK(mdeq_ctx_set_order(ctx.p, 2) == MDEQ_INVALID_ARGUMENT);
  CHECK(mdeq_ctx_set_order(ctx.p, 32) == MDEQ_OK);
  CHECK(mdeq_ctx_set_tolerance(ctx.p, "not-a-number") == MDEQ_INVALID_ARGUMENT);
  CHECK(mdeq_ctx_set_tolerance(ctx.p, "-1e-5") == MDEQ_INVALID_ARGUMENT);
  CHECK(mdeq_ctx_set_tolerance(ctx.p, "1e-18") == MDEQ_OK);
  CHECK(mdeq_ctx_set_seed(ctx.p, 42) == MDEQ_OK);
  CHECK(std::string(mdeq_last_error(ctx.p)).size() > 0);
}

TEST_CASE("special values through the shared library") {
  Ctx ctx;
  REQUIRE(mdeq_ctx_set_order(ctx.p, 48) == MDEQ_OK);
  char* json = nullptr;
  mdeq_status st = mdeq_run_special_values(ctx.p, &json);
  CHECK(st == MDEQ_OK);
  auto j = nlohmann::json::parse(take(json));
  CHECK(j["pass"] == true);
  CHECK(j["command"] == "special-values");
  CHECK(j["reports"].size() == 1);
  CHECK(j["reports"][0].contains("max_deviation"));
}

TEST_CASE("solve: closed form, invariant violations, no-solution path") {
  Ctx ctx;
  char* json = nullptr;
  CHECK(mdeq_run_solve(ctx.p, "4", "3", "12", 1, &json) == MDEQ_OK);
  auto j = nlohmann::json::parse(take(json));
  CHECK(j["solutions"][0]["points_exact"][0] == "4/7");

  json = nullptr;
  CHECK(mdeq_run_solve(ctx.p, "0", "0", "0", 1, &json) == MDEQ_INVALID_ARGUMENT);
  CHECK(json == nullptr);
  CHECK(std::string(mdeq_last_error(ctx.p)).find("vanish") != std::string::npos);

  CHECK(mdeq_run_solve(ctx.p, "4", nullptr, "12", 1, &json) == MDEQ_INVALID_ARGUMENT);
  CHECK(mdeq_run_solve(ctx.p, "x", "3", "12", 1, &json) == MDEQ_INVALID_ARGUMENT);
}

TEST_CASE("enumerate and its JSON schema") {
  Ctx ctx;
  char* json = nullptr;
  CHECK(mdeq_run_enumerate(ctx.p, 2, 5, &json) == MDEQ_OK);
  auto j = nlohmann::json::parse(take(json));
  CHECK(j["cusp_data"]["nu_inf"] == 3);
  CHECK(j["cusp_data"]["pairs"][0]["a"] == 7);
  CHECK(j["cusp_data"]["pairs"][1]["a"] == 2);
  CHECK(mdeq_run_enumerate(ctx.p, 2, 4, &json) == MDEQ_INVALID_ARGUMENT);
  CHECK(mdeq_run_enumerate(ctx.p, 7, 2, &json) == MDEQ_INVALID_ARGUMENT);
}

TEST_CASE("verify pipeline for the base class") {
  Ctx ctx;
  REQUIRE(mdeq_ctx_set_order(ctx.p, 48) == MDEQ_OK);
  char* json = nullptr;
  mdeq_status st = mdeq_run_verify_class(ctx.p, 1, 0, &json);
  CHECK(st == MDEQ_OK);
  auto j = nlohmann::json::parse(take(json));
  CHECK(j["pass"] == true);
  CHECK(j["reports"].size() == 2);  // schwarz + companion equation; no poles at n=0
  CHECK(mdeq_run_verify_class(ctx.p, 2, 0, &json) == MDEQ_INVALID_ARGUMENT);
}

TEST_CASE("level2 rejects unknown variants") {
  Ctx ctx;
  char* json = nullptr;
  CHECK(mdeq_run_level2(ctx.p, 3, "case3", &json) == MDEQ_INVALID_ARGUMENT);
  CHECK(mdeq_run_level2(ctx.p, 3, nullptr, &json) == MDEQ_INVALID_ARGUMENT);
}

TEST_CASE("reports are byte-identical across repeated runs") {
  Ctx a, b;
  for (auto* c : {a.p, b.p}) {
    REQUIRE(mdeq_ctx_set_order(c, 40) == MDEQ_OK);
    REQUIRE(mdeq_ctx_set_seed(c, 13) == MDEQ_OK);
  }
  char* ja = nullptr;
  char* jb = nullptr;
  REQUIRE(mdeq_run_special_values(a.p, &ja) == MDEQ_OK);
  REQUIRE(mdeq_run_special_values(b.p, &jb) == MDEQ_OK);
  CHECK(take(ja) == take(jb));

  ja = jb = nullptr;
  REQUIRE(mdeq_run_solve(a.p, "-2", "4", "2", 2, &ja) == MDEQ_OK);
  REQUIRE(mdeq_run_solve(b.p, "-2", "4", "2", 2, &jb) == MDEQ_OK);
  CHECK(take(ja) == take(jb));
}
