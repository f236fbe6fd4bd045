#pragma once

// Positive cubature on almost uniformly distributed points, exact on Pi_n^d
// for W_mu. Weights come from a phase-one simplex solve of
//   V a = m - gamma V s,  l <= a <= u,   lambda = a + gamma s,
// where s holds the cell masses and the bounds l, u keep lambda_xi inside a
// fixed band of multiples of n^{-d} calW_mu(n; xi).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ballneedlets/basis.hpp"
#include "ballneedlets/geometry.hpp"
#include "ballneedlets/lp.hpp"

namespace ballneedlets {

/// Mass vector s in the solve: cell measures int_R W_mu, or the closed-form surrogates.
enum class CellMass { Measure, Surrogate };

struct CubatureOptions {
  double gamma = 1.0 / 3.0;
  std::optional<double> delta_hint;  ///< starting delta, epsilon = delta / n
  int max_retries = 6;               ///< delta halvings after the first attempt
  double max_matrix_entries = 5e7;   ///< retries stop before the LP matrix would exceed this
  CellMass mass = CellMass::Measure;
  bool use_symmetry = true;          ///< solve on one orthant with sign-invariant rows
  /// Band imposed in the solve: weight_lower <= lambda_xi / (n^{-d} calW_mu(n; xi)) <= weight_upper.
  /// The lower side only lifts a_xi above zero; 0 and +inf disable the two sides.
  double weight_lower = 0.02;
  double weight_upper = 1.0;
  LPOptions lp;
};

struct CubatureRule {
  PointSet points;
  Eigen::VectorXd weights;             ///< lambda_xi, sum = 1/b
  Eigen::VectorXd normalized_weights;  ///< b lambda_xi, sum = 1
  int degree = 0;
  double mu = 0.0;
  int d = 0;
  double delta = 0.0;
  double gamma = 1.0 / 3.0;
  double residual_max = 0.0;  ///< max_k |sum b lambda phi_k(xi) - delta_k0| over the orthonormal basis
  double ratio_lo = 0.0;      ///< min lambda / (n^{-d} calW_mu(n; xi))
  double ratio_hi = 0.0;      ///< max of the same ratio
  long lp_iterations = 0;
  double lp_condition = 0.0;
  int attempts = 0;

  Eigen::Index size() const { return weights.size(); }
  const Eigen::MatrixXd& nodes() const { return points.points; }

  /// int f dm_mu under the normalized measure.
  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < size(); ++k) s += normalized_weights[k] * f(points.points.col(k));
    return s;
  }
};

/// Infeasible systems throw CubatureInfeasible.
struct CubatureInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CubatureRule solve_weights(const PointSet& points, const BallBasis& basis, double gamma,
                           const CubatureOptions& opts = {});

CubatureRule build_cubature(double mu, int d, int n, const CubatureOptions& opts = {});

/// Exactness residuals against the orthonormal basis, evaluated point by point.
/// Returns sum_xi b lambda_xi phi_k(xi) - delta_k0 for k < basis.size().
Eigen::VectorXd exactness_residuals(const CubatureRule& rule, const BallBasis& basis);

struct RuleReport {
  double residual_in_degree = 0.0;  ///< max residual over degrees <= n
  std::vector<double> residual_by_extra_degree;  ///< max residual of each degree n+1..n+extra
  double weight_min = 0.0;
  double weight_max = 0.0;
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
  double weight_sum = 0.0;
};

RuleReport verify_rule(const CubatureRule& rule, int extra_degree);

/// lambda / (n^{-d} calW_mu(n; xi)) for every node.
Eigen::VectorXd weight_ratios(const CubatureRule& rule);

}  // namespace ballneedlets
