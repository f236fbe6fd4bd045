#include <cstdlib>
#include <limits>

#include "doctest.h"

#include "ballneedlets/io.hpp"

using namespace ballneedlets;

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("dump sorts keys and ends with a newline") {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = Json::array({1.5, 2});
  j["mid"] = {{"b", true}, {"a", "x"}};
  const std::string s = dump(j);
  CHECK(s.back() == '\n');
  CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
  CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(Json::parse(s) == j);
  CHECK(dump(j) == s);
}

TEST_CASE("envelope and artifacts") {
  const Json e = envelope(RunInfo{"ballneedlets points", 7}, "points");
  CHECK(e["schema_version"] == kSchemaVersion);
  CHECK(e["kind"] == "points");
  CHECK(e["seed"] == 7);
  CHECK(e["command_line"] == "ballneedlets points");

  const PointSet ps = build_point_set(0.8, 2, 0.5);
  const Json jp = to_json(ps);
  const std::string s = dump(jp);
  const Json back = Json::parse(s);
  CHECK(back == jp);

  const CubatureRule rule = build_cubature(0.5, 2, 4);
  const Json jr = Json::parse(dump(to_json(rule)));
  CHECK(jr == to_json(rule));
  CHECK(dump(to_json(rule)) == dump(to_json(build_cubature(0.5, 2, 4))));
}

TEST_CASE("vector and matrix helpers") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  const Json jm = matrix_columns(m);
  CHECK(jm.size() == 2);
  CHECK(jm[0][1] == 3.0);
  CHECK(vector_values(Eigen::Vector3d(1, 2, 3)).size() == 3);
}
