#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ballneedlets/basis.hpp"
#include "ballneedlets/christoffel.hpp"
#include "ballneedlets/random.hpp"

using namespace ballneedlets;

TEST_CASE("christoffel function equals one over the basis square sum") {
  SplitMix64 rng(6);
  for (double mu : {0.0, 0.5, 1.0, 2.5}) {
    const BallWeightParams p = BallWeightParams::make(mu, 2);
    const BallBasis basis(mu, 2, 9);
    const ChristoffelEvaluator ev(p, 9);
    for (int i = 0; i < 20; ++i) {
      const Point x = rng.ball_point(2), y = rng.ball_point(2);
      const Eigen::VectorXd vx = basis.evaluate(PointRef(x)), vy = basis.evaluate(PointRef(y));
      CHECK(christoffel_lambda(ev, x) == doctest::Approx(1.0 / vx.squaredNorm()).epsilon(1e-10));
      CHECK(kernel_K(ev, x, y) == doctest::Approx(vx.dot(vy)).epsilon(1e-10).scale(1.0));
    }
  }
  CHECK(ChristoffelEvaluator(BallWeightParams::make(1.0, 2), 0).lambda(Point::Zero(2)) == doctest::Approx(1.0));
}

TEST_CASE("christoffel function decreases with n and towards the boundary") {
  const BallWeightParams p = BallWeightParams::make(1.0, 2);
  Point x(2);
  x << 0.3, 0.1;
  double prev = 2.0;
  for (int n = 0; n < 12; ++n) {
    const double v = ChristoffelEvaluator(p, n).lambda(x);
    CHECK(v < prev);
    prev = v;
  }
  const ChristoffelEvaluator ev(p, 10);
  Point inner(2), outer(2);
  inner << 0.2, 0.0;
  outer << 0.95, 0.0;
  CHECK(ev.lambda(outer) < ev.lambda(inner));
}

TEST_CASE("fejer power and localized polynomials") {
  CHECK(fejer_power(2, 5, 0.0) == 1.0);
  CHECK(fejer_power(1, 4, 2 * std::numbers::pi / 4) == doctest::Approx(0.0).scale(1.0));
  CHECK(fejer_power(3, 6, 0.7) >= 0.0);
  SplitMix64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Point xi = rng.ball_point(2);
    CHECK(localized_poly(2, 4, xi, xi) == doctest::Approx(1.0).epsilon(1e-12));
    const Point x = rng.ball_point(2);
    const double v = localized_poly(2, 4, xi, x);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("competitor bounds the christoffel function") {
  for (double mu : {0.0, 1.0, 2.0}) {
    const BallWeightParams p = BallWeightParams::make(mu, 2);
    const int n = 16;
    const CompetitorParams c = competitor_params(p, n);
    CHECK(c.k > std::max(1.0, mu));
    CHECK(2 * c.k * c.m <= n);
    const ChristoffelEvaluator ev(p, n);
    const BallQuadrature q = ball_quadrature(mu, 2, 4 * c.k * c.m);
    for (double r : {0.0, 0.5, 0.9, 0.999}) {
      Point xi(2);
      xi << r, 0.0;
      const double bound = q.integrate([&](const auto& x) { return std::pow(localized_poly(c.k, c.m, xi, x), 2); });
      CHECK(ev.lambda(xi) <= bound * (1 + 1e-9));
    }
  }
  CHECK(competitor_params(BallWeightParams::make(1.0, 2), 16).k == 2);
}
