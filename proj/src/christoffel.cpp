#include "ballneedlets/christoffel.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ballneedlets {

namespace {

std::vector<double> partial_sum_coefficients(const BallWeightParams& p, int n) {
  if (n < 0) throw std::invalid_argument("ChristoffelEvaluator: negative degree");
  std::vector<double> c(n + 1);
  for (int j = 0; j <= n; ++j) c[j] = (j + p.lambda) / p.lambda;
  return c;
}

}  // namespace

ChristoffelEvaluator::ChristoffelEvaluator(const BallWeightParams& params, int n)
    : n_(n), zonal_(params, partial_sum_coefficients(params, n)) {}

double kernel_K(const ChristoffelEvaluator& e, const PointRef& x, const PointRef& y) {
  return e.kernel(x, y);
}

double christoffel_lambda(const ChristoffelEvaluator& e, const PointRef& x) { return e.lambda(x); }

double fejer_power(int k, int m, double theta) {
  if (k < 1 || m < 1) throw std::invalid_argument("fejer_power: k and m must be positive");
  double ratio;
  if (std::abs(theta) < 1e-6) {
    ratio = 1.0 - (static_cast<double>(m) * m - 1.0) * theta * theta / 24.0;
  } else {
    const double den = m * std::sin(0.5 * theta);
    ratio = std::sin(0.5 * m * theta) / den;
    // theta near a multiple of 2 pi
    if (!std::isfinite(ratio)) ratio = 1.0;
  }
  return std::pow(ratio, 2 * k);
}

double localized_univariate(int k, int m, double alpha, double t) {
  const double theta = std::acos(std::clamp(t, -1.0, 1.0));
  return (fejer_power(k, m, theta - alpha) + fejer_power(k, m, theta + alpha)) /
         (1.0 + fejer_power(k, m, 2.0 * alpha));
}

double localized_poly(int k, int m, const PointRef& xi, const PointRef& x) {
  if (xi.size() != x.size()) throw std::invalid_argument("localized_poly: dimension mismatch");
  const double r = xi.norm();
  Eigen::VectorXd y = x;
  if (r > 0.0) {
    // reflection H = I - 2 v v^T / |v|^2 with H xi = r e_1
    Eigen::VectorXd v = xi;
    v[0] -= r;
    const double vv = v.squaredNorm();
    if (vv > 1e-30 * r * r) y -= (2.0 * v.dot(x) / vv) * v;
  }
  const double alpha = std::acos(std::min(1.0, r));
  const double rest = y.tail(y.size() - 1).norm();
  return localized_univariate(k, m, alpha, y[0]) *
         localized_univariate(k, m, 0.5 * std::numbers::pi, rest);
}

CompetitorParams competitor_params(const BallWeightParams& p, int n) {
  CompetitorParams c;
  c.k = static_cast<int>(std::floor(std::max(0.5 * p.d, p.mu))) + 1;
  c.m = n / (2 * c.k);
  if (c.m < 1) throw std::invalid_argument("competitor_params: degree too small for the competitor");
  return c;
}

}  // namespace ballneedlets
