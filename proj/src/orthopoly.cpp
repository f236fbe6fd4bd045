#include "ballneedlets/orthopoly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <sstream>

namespace ballneedlets {

Eigen::VectorXd jacobi_all(const JacobiParams& p, int nmax, double x) {
  if (nmax < 0) throw std::invalid_argument("jacobi_all: negative degree");
  Eigen::VectorXd out(nmax + 1);
  const double a = p.alpha, b = p.beta;
  out[0] = 1.0;
  if (nmax == 0) return out;
  out[1] = (a + 1) + (a + b + 2) * (x - 1) / 2;
  for (int k = 2; k <= nmax; ++k) {
    const double s = 2 * k + a + b;
    const double c1 = 2 * k * (k + a + b) * (s - 2);
    const double c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b);
    const double c3 = 2 * (k + a - 1) * (k + b - 1) * s;
    out[k] = (c2 * out[k - 1] - c3 * out[k - 2]) / c1;
  }
  return out;
}

double log_jacobi_at_one(const JacobiParams& p, int n) {
  return std::lgamma(n + p.alpha + 1) - std::lgamma(p.alpha + 1) - std::lgamma(n + 1.0);
}

double jacobi_h(const JacobiParams& p, int n) {
  if (n < 0) throw std::invalid_argument("jacobi_h: negative degree");
  if (n == 0) return 1.0;
  const double a = p.alpha, b = p.beta;
  const double log_h = std::lgamma(a + b + 2) - std::lgamma(a + 1) - std::lgamma(b + 1) +
                       std::lgamma(n + a + 1) + std::lgamma(n + b + 1) - std::lgamma(n + 1.0) -
                       std::lgamma(n + a + b + 1);
  return std::exp(log_h) / (2 * n + a + b + 1);
}

double jacobi_weight_mass(const JacobiParams& p) {
  const double a = p.alpha, b = p.beta;
  return std::exp((a + b + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) -
                  std::lgamma(a + b + 2));
}

double gegenbauer_eval(const GegenbauerIndex& g, int n, double x) {
  if (n < 0) throw std::invalid_argument("gegenbauer_eval: negative degree");
  if (n == 0) return 1.0;
  const double l = g.lambda;
  const double log_ratio =
      std::lgamma(l + 0.5) - std::lgamma(2 * l) + std::lgamma(n + 2 * l) - std::lgamma(n + l + 0.5);
  return std::exp(log_ratio) * jacobi_eval(JacobiParams(l - 0.5, l - 0.5), n, x);
}

QuadratureRule1D gauss_jacobi(const JacobiParams& p, int m) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  const double a = p.alpha, b = p.beta;
  Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) {
    const double s = 2 * k + a + b;
    if (k == 0)
      diag[k] = (b - a) / (a + b + 2);
    else
      diag[k] = (b * b - a * a) / (s * (s + 2));
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2 * k + a + b;
    double bk;
    if (k == 1)
      bk = 4 * (1 + a) * (1 + b) / ((2 + a + b) * (2 + a + b) * (3 + a + b));
    else
      bk = 4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1));
    sub[k - 1] = std::sqrt(bk);
  }

  QuadratureRule1D rule;
  rule.param = p;
  if (m == 1) {
    rule.nodes = diag;
    rule.weights = Eigen::VectorXd::Constant(1, jacobi_weight_mass(p));
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "gauss_jacobi: tridiagonal eigen-solve failed for alpha=" << a << " beta=" << b
        << " m=" << m;
    throw std::runtime_error(msg.str());
  }
  const double mass = jacobi_weight_mass(p);
  rule.nodes = solver.eigenvalues();
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mass * v * v;
  }
  // symmetric weights: enforce exact antisymmetry of the nodes
  if (a == b) {
    for (int i = 0; i < m / 2; ++i) {
      const double x = 0.5 * (rule.nodes[m - 1 - i] - rule.nodes[i]);
      const double w = 0.5 * (rule.weights[m - 1 - i] + rule.weights[i]);
      rule.nodes[i] = -x;
      rule.nodes[m - 1 - i] = x;
      rule.weights[i] = rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  }
  return rule;
}

namespace {

// Rule for (1-|x|^2)^kappa on B^d; exactness degree `degree`. Weights unnormalized.
void ball_rule_recursive(int d, double kappa, int degree, Eigen::MatrixXd& nodes,
                         Eigen::VectorXd& weights) {
  const int m = degree / 2 + 1;
  if (d == 1) {
    const QuadratureRule1D r = gauss_jacobi(JacobiParams(kappa, kappa), m);
    nodes = r.nodes.transpose();
    weights = r.weights;
    return;
  }
  const double e = kappa + 0.5 * (d - 1);
  const QuadratureRule1D outer = gauss_jacobi(JacobiParams(e, e), m);
  Eigen::MatrixXd inner_nodes;
  Eigen::VectorXd inner_weights;
  ball_rule_recursive(d - 1, kappa, degree, inner_nodes, inner_weights);
  const Eigen::Index qi = inner_weights.size();
  nodes.resize(d, m * qi);
  weights.resize(m * qi);
  for (int i = 0; i < m; ++i) {
    const double x1 = outer.nodes[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - x1 * x1));
    for (Eigen::Index q = 0; q < qi; ++q) {
      const Eigen::Index col = i * qi + q;
      nodes(0, col) = x1;
      nodes.block(1, col, d - 1, 1) = r * inner_nodes.col(q);
      weights[col] = outer.weights[i] * inner_weights[q];
    }
  }
}

}  // namespace

BallQuadrature ball_quadrature(double mu, int d, int degree) {
  if (d < 1) throw std::invalid_argument("ball_quadrature: dimension must be positive");
  if (mu < 0) throw std::invalid_argument("ball_quadrature: mu must be nonnegative");
  if (degree < 0) throw std::invalid_argument("ball_quadrature: negative degree");
  BallQuadrature q;
  q.d = d;
  q.mu = mu;
  q.degree = degree;
  ball_rule_recursive(d, mu - 0.5, degree, q.nodes, q.weights);
  q.weights /= q.weights.sum();
  return q;
}

}  // namespace ballneedlets
