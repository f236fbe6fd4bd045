#include "ballneedlets/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ballneedlets {

BallWeightParams BallWeightParams::make(double mu, int d) {
  if (!(mu >= 0.0)) throw std::invalid_argument("BallWeightParams: mu must be nonnegative");
  if (d < 1) throw std::invalid_argument("BallWeightParams: d must be positive");
  BallWeightParams p;
  p.mu = mu;
  p.d = d;
  p.lambda = mu + 0.5 * (d - 1);
  if (!(p.lambda > 0.0)) throw std::invalid_argument("BallWeightParams: lambda must be positive");
  p.b = std::exp(std::lgamma(mu + 0.5 * (d + 1)) - std::lgamma(mu + 0.5) -
                 0.5 * d * std::log(std::numbers::pi));
  return p;
}

double BallWeightParams::b_one() const {
  if (!(mu > 0.0)) throw std::domain_error("b_one: defined for mu > 0 only");
  return std::exp(std::lgamma(mu + 0.5) - std::lgamma(0.5) - std::lgamma(mu));
}

namespace {

double boundary_factor(const PointRef& x) { return std::sqrt(std::max(0.0, 1.0 - x.squaredNorm())); }

}  // namespace

double ball_distance(const PointRef& x, const PointRef& y) {
  const double c = x.dot(y) + boundary_factor(x) * boundary_factor(y);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

Eigen::VectorXd lift(const PointRef& x) {
  Eigen::VectorXd out(x.size() + 1);
  out.head(x.size()) = x;
  out[x.size()] = boundary_factor(x);
  return out;
}

double weight_W(const BallWeightParams& p, const PointRef& x) {
  const double s = 1.0 - x.squaredNorm();
  const double e = p.mu - 0.5;
  if (e == 0.0) return 1.0;
  if (s <= 0.0) return e > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::pow(s, e);
}

double weight_calW(const BallWeightParams& p, double n, const PointRef& x) {
  if (!(n >= 1.0)) throw std::invalid_argument("weight_calW: n must be at least 1");
  if (p.mu == 0.0) return 1.0;
  return std::pow(boundary_factor(x) + 1.0 / n, 2.0 * p.mu);
}

double t_param(const PointRef& x, const PointRef& y, double u) {
  return std::clamp(x.dot(y) + u * boundary_factor(x) * boundary_factor(y), -1.0, 1.0);
}

ZonalKernel::ZonalKernel(const BallWeightParams& params, std::vector<double> coefficients)
    : params_(params), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (params_.mu > 0.0) {
    const int m = degree() + 6;
    const QuadratureRule1D r = gauss_jacobi(JacobiParams(params_.mu - 1.0, params_.mu - 1.0), m);
    u_nodes_ = r.nodes;
    u_weights_ = r.weights / r.weights.sum();
  } else {
    u_nodes_ = Eigen::Vector2d(-1.0, 1.0);
    u_weights_ = Eigen::Vector2d(0.5, 0.5);
  }
}

double ZonalKernel::univariate(double t) const {
  const double lambda = params_.lambda;
  const int n = degree();
  double prev = 1.0;
  double sum = coeffs_[0];
  if (n == 0) return sum;
  double cur = 2.0 * lambda * t;
  sum += coeffs_[1] * cur;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * (k + lambda - 1.0) * t * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
    prev = cur;
    cur = next;
    sum += coeffs_[k] * cur;
  }
  return sum;
}

double ZonalKernel::operator()(const PointRef& x, const PointRef& y) const {
  const double inner = x.dot(y);
  const double a = boundary_factor(x) * boundary_factor(y);
  double s = 0.0;
  for (Eigen::Index i = 0; i < u_nodes_.size(); ++i)
    s += u_weights_[i] * univariate(std::clamp(inner + u_nodes_[i] * a, -1.0, 1.0));
  return s;
}

namespace {

std::vector<double> localized_coefficients(const BallWeightParams& p, int n, const Cutoff& c) {
  if (n < 1) throw std::invalid_argument("LocalizedKernel: n must be at least 1");
  std::vector<double> coeffs(2 * n);
  for (int j = 0; j < 2 * n; ++j)
    coeffs[j] = c(static_cast<double>(j) / n) * (j + p.lambda) / p.lambda;
  return coeffs;
}

}  // namespace

LocalizedKernel::LocalizedKernel(const BallWeightParams& params, int n, Cutoff cutoff)
    : n_(n), cutoff_(cutoff), zonal_(params, localized_coefficients(params, n, cutoff)) {}

double LocalizedKernel::cutoff_weight(int j) const {
  if (j < 0 || j > degree()) return 0.0;
  return cutoff_(static_cast<double>(j) / n_);
}

double kernel_L_lambda(const LocalizedKernel& k, double t) { return k.lambda_series(t); }

double kernel_L_mu(const LocalizedKernel& k, const PointRef& x, const PointRef& y) { return k(x, y); }

double kernel_P_n(const BallWeightParams& p, int n, const PointRef& x, const PointRef& y) {
  if (n < 0) throw std::invalid_argument("kernel_P_n: negative degree");
  std::vector<double> c(n + 1, 0.0);
  c[n] = (n + p.lambda) / p.lambda;
  return ZonalKernel(p, std::move(c))(x, y);
}

double apply_operator(const LocalizedKernel& k, const BallFunction& f, const BallQuadrature& quad,
                      const PointRef& x) {
  if (quad.mu != k.params().mu || quad.d != k.params().d)
    throw std::invalid_argument("apply_operator: quadrature built for a different weight");
  if (f.degree && *f.degree + k.degree() > quad.degree)
    throw std::invalid_argument("apply_operator: quadrature degree " + std::to_string(quad.degree) +
                                " cannot integrate degree " +
                                std::to_string(*f.degree + k.degree()) + " exactly");
  double s = 0.0;
  for (Eigen::Index q = 0; q < quad.size(); ++q) {
    const auto y = quad.nodes.col(q);
    s += quad.weights[q] * f.f(y) * k(x, y);
  }
  return s;
}

double jacobi_localized(const JacobiParams& p, const Cutoff& c, int n, double x) {
  const double a = p.alpha, b = p.beta;
  const double log_c0 = std::lgamma(b + 1) - std::lgamma(a + b + 2);
  const int jmax = 2 * n - 1;
  const Eigen::VectorXd P = jacobi_all(p, jmax, x);
  double s = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    const double w = c(static_cast<double>(j) / n);
    if (w == 0.0) continue;
    // at j = 0, (a+b+1) Gamma(a+b+1) = Gamma(a+b+2) also covers a+b = -1
    double log_g;
    if (j == 0)
      log_g = std::lgamma(a + b + 2) - std::lgamma(b + 1);
    else
      log_g = std::log(2 * j + a + b + 1) + std::lgamma(j + a + b + 1) - std::lgamma(j + b + 1);
    s += w * std::exp(log_c0 + log_g) * P[j];
  }
  return s;
}

double jacobi_localized_direct(const JacobiParams& p, const Cutoff& c, int n, double x) {
  const int jmax = 2 * n - 1;
  const Eigen::VectorXd P = jacobi_all(p, jmax, x);
  double s = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    const double w = c(static_cast<double>(j) / n);
    if (w == 0.0) continue;
    s += w * std::exp(log_jacobi_at_one(p, j)) / jacobi_h(p, j) * P[j];
  }
  return s;
}

}  // namespace ballneedlets
