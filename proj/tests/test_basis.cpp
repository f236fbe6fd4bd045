#include <cmath>

#include "doctest.h"

#include "ballneedlets/basis.hpp"
#include "ballneedlets/random.hpp"

using namespace ballneedlets;

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("graded indices: count and order") {
  for (int d : {1, 2, 3, 4})
    for (int n : {0, 1, 5, 9}) {
      const auto idx = graded_indices(d, n);
      CHECK(static_cast<long>(idx.size()) == binom(n + d, d));
      for (std::size_t i = 1; i < idx.size(); ++i) CHECK(idx[i].sum() >= idx[i - 1].sum());
    }
}

TEST_CASE("monomial moments: closed forms") {
  Eigen::VectorXi a(2);
  a << 0, 0;
  CHECK(monomial_moment(0.7, a) == doctest::Approx(1.0));
  a << 1, 0;
  CHECK(monomial_moment(0.7, a) == 0.0);
  // Lebesgue on the disk: mean of x^2 is 1/4, of x^2 y^2 is 1/24
  a << 2, 0;
  CHECK(monomial_moment(0.5, a) == doctest::Approx(0.25));
  a << 2, 2;
  CHECK(monomial_moment(0.5, a) == doctest::Approx(1.0 / 24));
  Point x(2);
  x << 0.5, -2.0;
  CHECK(monomial(x, a) == doctest::Approx(1.0));
}

TEST_CASE("basis is orthonormal") {
  for (int d : {1, 2, 3})
    for (double mu : {0.0, 0.5, 1.0, 3.0}) {
      const int n = d == 3 ? 6 : 10;
      BallBasis basis = build_basis(mu, d, n, true);
      CHECK(basis.size() == binom(n + d, d));
      CHECK(basis.gram_residual() < 1e-12);
    }
}

TEST_CASE("basis: degree blocks and sign-invariant rows") {
  const BallBasis basis(1.0, 2, 8);
  for (int k = 0; k <= 8; ++k) CHECK(basis.degree_of(basis.block_start(k)) == k);
  const auto rows = basis.sign_invariant_indices();
  CHECK(rows.size() == 15u);  // both exponents even, total degree <= 8
  SplitMix64 rng(17);
  const Point x = rng.ball_point(2);
  Point y = x;
  y[0] = -y[0];
  const Eigen::VectorXd vx = basis.evaluate(PointRef(x)), vy = basis.evaluate(PointRef(y));
  for (Eigen::Index k : rows) CHECK(vx[k] == doctest::Approx(vy[k]).epsilon(1e-14));
  Eigen::MatrixXd pts(2, 3);
  for (int i = 0; i < 3; ++i) pts.col(i) = rng.ball_point(2);
  const Eigen::MatrixXd all = basis.evaluate(pts);
  const Eigen::MatrixXd sub = basis.evaluate_rows(pts, rows);
  for (std::size_t r = 0; r < rows.size(); ++r) CHECK((sub.row(r) - all.row(rows[r])).norm() < 1e-14);
  CHECK(basis.evaluate(PointRef(Point::Zero(2)))[0] == doctest::Approx(1.0));
}

TEST_CASE("basis reproduces monomial moments") {
  // phi_0 = 1, so the mean of phi_k phi_0 vanishes for k > 0 under any exact rule
  const BallBasis basis(0.5, 2, 6);
  const BallQuadrature q = ball_quadrature(0.5, 2, 12);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(basis.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) mean += q.weights[i] * basis.evaluate(PointRef(q.nodes.col(i)));
  CHECK(mean[0] == doctest::Approx(1.0));
  CHECK(mean.tail(basis.size() - 1).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THROWS(BallBasis(0.5, 2, -1));
}
