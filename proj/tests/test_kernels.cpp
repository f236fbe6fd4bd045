#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ballneedlets/basis.hpp"
#include "ballneedlets/kernels.hpp"
#include "ballneedlets/polynomial.hpp"
#include "ballneedlets/random.hpp"

using namespace ballneedlets;

namespace {

// sum over the degree-n block of phi_k(x) phi_k(y)
double block_sum(const BallBasis& basis, int n, const Point& x, const Point& y) {
  const Eigen::VectorXd vx = basis.evaluate(PointRef(x)), vy = basis.evaluate(PointRef(y));
  const Eigen::Index lo = basis.block_start(n), hi = n < basis.n() ? basis.block_start(n + 1) : basis.size();
  return vx.segment(lo, hi - lo).dot(vy.segment(lo, hi - lo));
}

}  // namespace

TEST_CASE("weight parameters") {
  const BallWeightParams p = BallWeightParams::make(0.5, 2);
  CHECK(p.lambda == doctest::Approx(1.0));
  CHECK(p.b == doctest::Approx(1.0 / std::numbers::pi));
  // W_0 on the disk: int (1-r^2)^{-1/2} = 2 pi
  CHECK(BallWeightParams::make(0.0, 2).b == doctest::Approx(0.5 / std::numbers::pi));
  CHECK(BallWeightParams::make(1.0, 3).lambda == doctest::Approx(2.0));
  CHECK_THROWS(BallWeightParams::make(-0.5, 2));
  CHECK_THROWS(BallWeightParams::make(1.0, 0));
  const Point x = Point::Constant(2, 0.5);
  CHECK(weight_W(BallWeightParams::make(1.5, 2), x) == doctest::Approx(0.5));
  CHECK(weight_calW(BallWeightParams::make(1.0, 2), 2.0, x) == doctest::Approx(std::pow(std::sqrt(0.5) + 0.5, 2)));
}

TEST_CASE("ball distance is a metric bounded by pi") {
  SplitMix64 rng(21);
  for (int d : {1, 2, 3}) {
    for (int i = 0; i < 300; ++i) {
      const Point x = rng.ball_point(d), y = rng.ball_point(d), z = rng.ball_point(d);
      const double xy = ball_distance(x, y);
      CHECK(xy >= 0.0);
      CHECK(xy <= std::numbers::pi + 1e-15);
      CHECK(xy == doctest::Approx(ball_distance(y, x)).epsilon(1e-15));
      CHECK(xy <= ball_distance(x, z) + ball_distance(z, y) + 1e-12);
      CHECK(ball_distance(x, x) < 1e-7);
    }
  }
  Point e(2), f(2);
  e << 1, 0;
  f << -1, 0;
  CHECK(ball_distance(e, f) == doctest::Approx(std::numbers::pi));
  CHECK(lift(e).norm() == doctest::Approx(1.0));
}

TEST_CASE("P_n equals the block sum of the orthonormal basis") {
  SplitMix64 rng(4);
  for (double mu : {0.0, 0.5, 1.0, 2.0}) {
    for (int d : {2, 3}) {
      const BallWeightParams p = BallWeightParams::make(mu, d);
      const BallBasis basis(mu, d, 7);
      for (int i = 0; i < 15; ++i) {
        const Point x = rng.ball_point(d), y = rng.ball_point(d);
        const int n = static_cast<int>(rng.below(8));
        const double ref = block_sum(basis, n, x, y);
        CHECK(kernel_P_n(p, n, x, y) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("localized kernel coefficients and type a reproduction") {
  const BallWeightParams p = BallWeightParams::make(1.0, 2);
  const LocalizedKernel k(p, 6, make_type_a());
  CHECK(k.degree() == 11);
  for (int j = 0; j <= 6; ++j) CHECK(k.cutoff_weight(j) == 1.0);
  CHECK(k.cutoff_weight(11) > 0.0);
  const BallQuadrature quad = ball_quadrature(1.0, 2, 6 + k.degree() + 2);
  SplitMix64 rng(9);
  for (int i = 0; i < 5; ++i) {
    const Polynomial f = random_polynomial(rng, 2, 6);
    const Point x = rng.ball_point(2);
    CHECK(apply_operator(k, f.as_function(), quad, x) == doctest::Approx(f(x)).epsilon(1e-10).scale(1.0));
  }
  // a rule too weak for the declared degree is refused
  const BallQuadrature weak = ball_quadrature(1.0, 2, 8);
  CHECK_THROWS(apply_operator(k, random_polynomial(rng, 2, 6).as_function(), weak, Point::Zero(2)));
}

TEST_CASE("localized kernel: two evaluation routes agree") {
  SplitMix64 rng(12);
  for (double mu : {0.0, 0.5, 1.5}) {
    const BallWeightParams p = BallWeightParams::make(mu, 2);
    const LocalizedKernel k(p, 5, make_type_b());
    for (int i = 0; i < 10; ++i) {
      const Point x = rng.ball_point(2), y = rng.ball_point(2);
      double ref = 0.0;
      for (int j = 0; j <= k.degree(); ++j) ref += k.cutoff_weight(j) * kernel_P_n(p, j, x, y);
      CHECK(kernel_L_mu(k, x, y) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
      CHECK(kernel_L_mu(k, x, y) == doctest::Approx(kernel_L_mu(k, y, x)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("gegenbauer series by hand") {
  const BallWeightParams p = BallWeightParams::make(0.5, 2);  // lambda = 1
  for (double t : {-0.7, 0.0, 0.4}) {
    // type a, n = 1: C_0 + 2 C_1(t) a(1)
    CHECK(kernel_L_lambda(LocalizedKernel(p, 1, make_type_a()), t) == doctest::Approx(1.0 + 4.0 * t));
    // type b, n = 1: only j = 1 survives
    CHECK(kernel_L_lambda(LocalizedKernel(p, 1, make_type_b()), t) == doctest::Approx(4.0 * t).scale(1.0));
  }
  // type b kills constants
  BallFunction one{[](const PointRef&) { return 1.0; }, 0};
  const LocalizedKernel k(p, 4, make_type_b());
  CHECK(std::abs(apply_operator(k, one, ball_quadrature(0.5, 2, 10), Point::Zero(2))) < 1e-13);
}

TEST_CASE("t parameter is clamped") {
  Point x(2), y(2);
  x << 0.6, 0.0;
  y << 0.6, 0.0;
  CHECK(t_param(x, y, 1.0) == doctest::Approx(1.0));
  CHECK(t_param(x, y, -1.0) == doctest::Approx(0.36 - 0.64));
  CHECK(t_param(x, y, 1.0) <= 1.0);
}

TEST_CASE("jacobi localized kernel: gamma form matches direct sum") {
  const Cutoff a = make_type_a();
  for (auto [al, be] : {std::pair{0.5, 0.5}, {0.0, 0.0}, {1.5, -0.5}, {3.0, 1.0}}) {
    const JacobiParams jp(al, be);
    for (int n : {3, 8, 20})
      for (double x : {-0.9, -0.2, 0.4, 0.95, 1.0}) {
        const double direct = jacobi_localized_direct(jp, a, n, x);
        CHECK(jacobi_localized(jp, a, n, x) ==
              doctest::Approx(direct).epsilon(1e-10).scale(jacobi_localized_direct(jp, a, n, 1.0)));
      }
  }
}
