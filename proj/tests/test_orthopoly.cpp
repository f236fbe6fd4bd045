#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ballneedlets/basis.hpp"
#include "ballneedlets/orthopoly.hpp"
#include "ballneedlets/random.hpp"

using namespace ballneedlets;

TEST_CASE("jacobi: low degrees match closed forms") {
  const JacobiParams p(0.7, -0.3);
  for (double x : {-1.0, -0.4, 0.0, 0.55, 1.0}) {
    CHECK(jacobi_eval(p, 0, x) == 1.0);
    CHECK(jacobi_eval(p, 1, x) == doctest::Approx(1.7 + 2.4 * (x - 1) / 2).epsilon(1e-15));
  }
  const JacobiParams leg(0.0, 0.0);
  for (double x : {-0.9, 0.1, 0.8}) {
    CHECK(jacobi_eval(leg, 2, x) == doctest::Approx((3 * x * x - 1) / 2).epsilon(1e-14));
    CHECK(jacobi_eval(leg, 3, x) == doctest::Approx((5 * x * x * x - 3 * x) / 2).epsilon(1e-14));
  }
}

TEST_CASE("jacobi: value at one and symmetry") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(-0.9, 3.0), b = rng.uniform(-0.9, 3.0);
    const JacobiParams p(a, b), q(b, a);
    const int n = static_cast<int>(rng.below(30));
    CHECK(jacobi_eval(p, n, 1.0) == doctest::Approx(std::exp(log_jacobi_at_one(p, n))).epsilon(1e-11));
    const double x = rng.uniform(-1, 1);
    const double sign = n % 2 ? -1.0 : 1.0;
    CHECK(jacobi_eval(p, n, -x) == doctest::Approx(sign * jacobi_eval(q, n, x)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("jacobi_all agrees with single evaluations") {
  const JacobiParams p(1.5, 0.5);
  const Eigen::VectorXd v = jacobi_all(p, 25, 0.3);
  for (int n = 0; n <= 25; ++n) CHECK(v[n] == doctest::Approx(jacobi_eval(p, n, 0.3)).epsilon(1e-13));
}

TEST_CASE("jacobi: invalid input") {
  CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(JacobiParams(0.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_eval(JacobiParams(0, 0), -1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_h(JacobiParams(0, 0), -1), std::invalid_argument);
  CHECK_THROWS_AS(gauss_jacobi(JacobiParams(0, 0), 0), std::invalid_argument);
}

TEST_CASE("gauss-jacobi: weight mass, node range and one-point rule") {
  const JacobiParams p(0.5, 2.0);
  const QuadratureRule1D one = gauss_jacobi(p, 1);
  CHECK(one.nodes[0] == doctest::Approx((2.0 - 0.5) / (0.5 + 2.0 + 2)).epsilon(1e-14));
  for (int m : {2, 7, 40}) {
    const QuadratureRule1D r = gauss_jacobi(p, m);
    CHECK(r.weights.sum() == doctest::Approx(jacobi_weight_mass(p)).epsilon(1e-13));
    CHECK(r.weights.minCoeff() > 0.0);
    for (Eigen::Index i = 0; i < m; ++i) {
      CHECK(std::abs(r.nodes[i]) < 1.0);
      if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
  }
  // Legendre mass 2, Chebyshev mass pi
  CHECK(jacobi_weight_mass(JacobiParams(0, 0)) == doctest::Approx(2.0));
  CHECK(jacobi_weight_mass(JacobiParams(-0.5, -0.5)) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("gauss-jacobi: exact through degree 2m-1, not beyond") {
  const JacobiParams p(-0.5, 1.5);
  const int m = 6;
  const QuadratureRule1D r = gauss_jacobi(p, m);
  const double mass = jacobi_weight_mass(p);
  const double h_top = jacobi_h(p, m);
  // <P_i, P_j> is exact while i + j <= 2m - 1
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      const double g = r.integrate([&](double t) { return jacobi_eval(p, i, t) * jacobi_eval(p, j, t); }) / mass;
      if (i + j <= 2 * m - 1) {
        const double expect = i == j ? jacobi_h(p, i) : 0.0;
        CHECK(g == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
      }
    }
  const double top = r.integrate([&](double t) { return std::pow(jacobi_eval(p, m, t), 2); }) / mass;
  CHECK(std::abs(top - h_top) > 1e-3 * h_top);
}

TEST_CASE("jacobi orthonormality oracle, random parameters") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const JacobiParams p(rng.uniform(-0.95, 4), rng.uniform(-0.95, 4));
    const QuadratureRule1D r = gauss_jacobi(p, 45);
    const double mass = jacobi_weight_mass(p);
    double worst = 0.0;
    for (int i = 0; i <= 40; i += 3)
      for (int j = 0; j <= 40; j += 4) {
        const double g = r.integrate([&](double t) { return jacobi_eval(p, i, t) * jacobi_eval(p, j, t); }) /
                         (mass * std::sqrt(jacobi_h(p, i) * jacobi_h(p, j)));
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("gegenbauer: closed forms and recurrence") {
  for (double lambda : {0.5, 1.0, 2.25}) {
    const GegenbauerIndex g(lambda);
    const double c1 = std::tgamma(2 + 2 * lambda) / (2 * std::tgamma(2 * lambda));
    CHECK(gegenbauer_eval(g, 2, 1.0) == doctest::Approx(c1).epsilon(1e-12));
    std::vector<double> all(21);
    gegenbauer_all(lambda, 20, 0.37, all.data());
    for (int n = 0; n <= 20; ++n) CHECK(all[n] == doctest::Approx(gegenbauer_eval(g, n, 0.37)).epsilon(1e-11));
    CHECK(gegenbauer_eval(g, 1, 0.3) == doctest::Approx(2 * lambda * 0.3));
  }
  // lambda = 1: Chebyshev of the second kind
  const double th = 0.7;
  for (int n = 0; n < 12; ++n)
    CHECK(gegenbauer_eval(GegenbauerIndex(1.0), n, std::cos(th)) ==
          doctest::Approx(std::sin((n + 1) * th) / std::sin(th)).epsilon(1e-12));
  CHECK_THROWS_AS(GegenbauerIndex(0.0), std::invalid_argument);
}

TEST_CASE("ball quadrature: normalized and exact on moments") {
  const BallQuadrature q = ball_quadrature(0.5, 2, 6);
  CHECK(q.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
  // Lebesgue / pi on the disk
  CHECK(q.integrate([](const auto& x) { return x[0] * x[0]; }) == doctest::Approx(0.25).epsilon(1e-14));
  SplitMix64 rng(3);
  for (int d : {2, 3}) {
    for (double mu : {0.0, 0.5, 1.0, 2.5}) {
      const int deg = 8;
      const BallQuadrature r = ball_quadrature(mu, d, deg);
      CHECK(r.weights.minCoeff() > 0.0);
      for (const Eigen::VectorXi& a : graded_indices(d, deg)) {
        const double v = r.integrate([&](const auto& x) { return monomial(x, a); });
        CHECK(v == doctest::Approx(monomial_moment(mu, a)).epsilon(1e-12).scale(1.0));
      }
    }
  }
  CHECK_THROWS(ball_quadrature(-0.1, 2, 4));
}
