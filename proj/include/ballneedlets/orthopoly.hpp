#pragma once

// Jacobi and Gegenbauer polynomials, Gauss-Jacobi rules and exact product
// quadrature on the unit ball.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ballneedlets {

/// Parameters (alpha, beta) of the Jacobi weight (1-t)^alpha (1+t)^beta.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  JacobiParams() = default;
  JacobiParams(double a, double b) : alpha(a), beta(b) {
    if (!(a > -1.0) || !(b > -1.0))
      throw std::invalid_argument("JacobiParams: alpha and beta must exceed -1");
  }
};

/// Gegenbauer index lambda > 0.
struct GegenbauerIndex {
  double lambda = 1.0;

  GegenbauerIndex() = default;
  explicit GegenbauerIndex(double l) : lambda(l) {
    if (!(l > 0.0)) throw std::invalid_argument("GegenbauerIndex: lambda must be positive");
  }
};

/// Evaluates P_n^{(alpha,beta)}(x) by the three-term recurrence.
template <typename Scalar>
Scalar jacobi_eval(const JacobiParams& p, int n, Scalar x) {
  if (n < 0) throw std::invalid_argument("jacobi_eval: negative degree");
  const Scalar a = p.alpha, b = p.beta;
  if (n == 0) return Scalar(1);
  Scalar prev = Scalar(1);
  Scalar cur = (a + 1) + (a + b + 2) * (x - 1) / 2;
  for (int k = 2; k <= n; ++k) {
    const Scalar s = 2 * k + a + b;
    const Scalar c1 = 2 * k * (k + a + b) * (s - 2);
    const Scalar c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b);
    const Scalar c3 = 2 * (k + a - 1) * (k + b - 1) * s;
    const Scalar next = (c2 * cur - c3 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// All values P_0..P_nmax at x in one recurrence pass.
Eigen::VectorXd jacobi_all(const JacobiParams& p, int nmax, double x);

/// Squared-norm constant h_n under the normalized Jacobi weight, via log-Gamma.
double jacobi_h(const JacobiParams& p, int n);

/// log of Gamma(n+alpha+1) / (Gamma(alpha+1) Gamma(n+1)), i.e. log P_n(1).
double log_jacobi_at_one(const JacobiParams& p, int n);

/// Integral of (1-t)^alpha (1+t)^beta over [-1,1].
double jacobi_weight_mass(const JacobiParams& p);

/// C_n^lambda(x) through the Jacobi conversion with log-Gamma ratios.
double gegenbauer_eval(const GegenbauerIndex& g, int n, double x);

/// C_0^lambda..C_nmax^lambda at x by the Gegenbauer recurrence.
template <typename Scalar>
void gegenbauer_all(double lambda, int nmax, Scalar x, Scalar* out) {
  out[0] = Scalar(1);
  if (nmax == 0) return;
  out[1] = 2 * lambda * x;
  for (int k = 2; k <= nmax; ++k)
    out[k] = (2 * (k + lambda - 1) * x * out[k - 1] - (k + 2 * lambda - 2) * out[k - 2]) / k;
}

struct QuadratureRule1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  JacobiParams param;

  Eigen::Index size() const { return nodes.size(); }

  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// m-point Gauss-Jacobi rule (Golub-Welsch), exact to degree 2m-1 against
/// the unnormalized weight w_{alpha,beta}.
QuadratureRule1D gauss_jacobi(const JacobiParams& p, int m);

/// Positive product rule on B^d for the weight (1-|x|^2)^{mu-1/2},
/// exact on polynomials of total degree <= degree. Weights are normalized
/// to sum to one.
struct BallQuadrature {
  int d = 0;
  double mu = 0.0;
  int degree = 0;
  Eigen::MatrixXd nodes;  // d x Q
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }

  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (Eigen::Index q = 0; q < weights.size(); ++q) s += weights[q] * f(nodes.col(q));
    return s;
  }
};

BallQuadrature ball_quadrature(double mu, int d, int degree);

}  // namespace ballneedlets
