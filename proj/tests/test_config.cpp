#include "doctest.h"

#include "ballneedlets/acceptance.hpp"

using namespace ballneedlets;

TEST_CASE("config parsing") {
  const RunConfig c = parse_config("# comment\nmu = 0.5\n\nseed=42  # trailing\ntol_kernel = 1e-9\ncutoff = b\n");
  CHECK(c.mu == 0.5);
  CHECK(c.seed == 42u);
  CHECK(c.tol_kernel == 1e-9);
  CHECK(c.cutoff == "b");
  CHECK(c.tol_jacobi == RunConfig{}.tol_jacobi);
  RunConfig base;
  base.n = 12;
  CHECK(parse_config("d = 3", base).n == 12);
  CHECK_THROWS_AS(parse_config("bogus = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("mu = abc"), ConfigError);
  CHECK_THROWS_AS(parse_config("mu"), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(RunConfig{}));
  RunConfig c;
  c.tol_kernel = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.tol_metric = -1.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.d = 1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.cutoff = "z";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.frame_levels = 4;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("criterion selection") {
  CHECK(criterion_names().size() == 10u);
  CHECK(criterion_names().front() == "jacobi");
  CHECK_THROWS_AS(run_acceptance(RunConfig{}, {"nonsense"}), ConfigError);
  const auto res = run_acceptance(RunConfig{}, {"metric"});
  REQUIRE(res.size() == 1u);
  CHECK(res[0].id == 9);
  CHECK(res[0].passed);
  const Json j = to_json(res[0]);
  CHECK_FALSE(j.contains("seconds"));
  CHECK(format_line(res[0]).rfind("[PASS]", 0) == 0);
  CHECK(format_line(res[0]).find("metric") != std::string::npos);
}
