#include <limits>

#include "doctest.h"

#include "ballneedlets/lp.hpp"
#include "ballneedlets/random.hpp"

using namespace ballneedlets;

TEST_CASE("lp: small feasible system") {
  Eigen::MatrixXd A(2, 3);
  A << 1, 1, 1,
       1, -1, 0;
  Eigen::VectorXd r(2);
  r << 1, 0.2;
  const LPResult res = solve_phase_one(A, r);
  REQUIRE(res.feasible);
  CHECK(res.status == "feasible");
  CHECK(res.x.minCoeff() >= 0.0);
  CHECK(res.residual < 1e-14);
}

TEST_CASE("lp: infeasible systems are reported") {
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  Eigen::VectorXd r(1);
  r << -1;
  CHECK_FALSE(solve_phase_one(A, r).feasible);
  // bounds cut off the only solutions
  r << 1;
  CHECK_FALSE(solve_phase_one(A, r, Eigen::Vector2d(0.3, 0.3)).feasible);
  CHECK(solve_phase_one(A, r, Eigen::Vector2d(0.3, 0.8)).feasible);
}

TEST_CASE("lp: random feasible systems with bounds") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 3 + static_cast<int>(rng.below(12)), n = m + 5 + static_cast<int>(rng.below(40));
    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-1, 1);
    Eigen::VectorXd upper(n), x0(n);
    for (int j = 0; j < n; ++j) {
      upper[j] = rng.below(4) == 0 ? std::numeric_limits<double>::infinity() : rng.uniform(0.5, 2);
      x0[j] = rng.uniform(0, 0.5);
    }
    const Eigen::VectorXd r = A * x0;
    const LPResult res = solve_phase_one(A, r, upper);
    REQUIRE(res.feasible);
    CHECK(res.residual < 1e-9);
    for (int j = 0; j < n; ++j) {
      CHECK(res.x[j] >= 0.0);
      CHECK(res.x[j] <= upper[j]);
    }
    // deterministic
    const LPResult again = solve_phase_one(A, r, upper);
    CHECK(again.x == res.x);
    CHECK(again.iterations == res.iterations);
  }
}

TEST_CASE("lp: degenerate system with many ties") {
  // identical columns and a zero right-hand side row
  Eigen::MatrixXd A = Eigen::MatrixXd::Ones(3, 20);
  A.row(1).setZero();
  A.row(2).head(10).setConstant(-1.0);
  const Eigen::Vector3d r(2.0, 0.0, 0.0);
  const LPResult res = solve_phase_one(A, r);
  REQUIRE(res.feasible);
  CHECK(res.residual < 1e-13);
}

TEST_CASE("lp: argument checks") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Ones(2, 2);
  CHECK_THROWS_AS(solve_phase_one(A, Eigen::VectorXd::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(solve_phase_one(A, Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(solve_phase_one(A, Eigen::VectorXd::Ones(2), Eigen::Vector2d(1, -1)), std::invalid_argument);
}
