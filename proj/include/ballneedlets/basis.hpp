#pragma once

// Orthonormal polynomial basis of Pi_n^d in L^2(B^d, W_mu) under the
// normalized measure, graded by total degree.
//
// The functions are the classical product polynomials
//   P_alpha(x) = prod_j rho_j^{alpha_j} G_{alpha_j}^{(lambda_j)}(x_j / rho_j),
//   rho_j^2 = 1 - x_1^2 - ... - x_{j-1}^2,  lambda_j = mu + alpha_{j+1} + ... + alpha_d + (d-j)/2,
// with G^{(lambda)} the symmetric Jacobi polynomial P^{(lambda-1/2, lambda-1/2)},
// rescaled numerically to unit norm.

#include <vector>

#include <Eigen/Dense>

#include "ballneedlets/kernels.hpp"

namespace ballneedlets {

class BallBasis {
 public:
  BallBasis() = default;
  BallBasis(double mu, int d, int n);

  double mu() const { return mu_; }
  int d() const { return d_; }
  int n() const { return n_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices_.size()); }

  const Eigen::VectorXi& index(Eigen::Index k) const { return indices_[k]; }
  int degree_of(Eigen::Index k) const { return indices_[k].sum(); }
  /// First basis index of total degree k; block_start(n+1) == size().
  Eigen::Index block_start(int k) const { return offsets_[k]; }
  /// True when every alpha_j is even, i.e. phi_k is invariant under all sign flips.
  bool sign_invariant(Eigen::Index k) const;
  std::vector<Eigen::Index> sign_invariant_indices() const;

  /// All N values phi_0(x)..phi_{N-1}(x).
  Eigen::VectorXd evaluate(const PointRef& x) const;
  void evaluate_into(const PointRef& x, double* out) const;
  /// N x P matrix of values at the columns of `pts`.
  Eigen::MatrixXd evaluate(const Eigen::MatrixXd& pts) const;
  /// Rows restricted to `rows` (basis indices), |rows| x P.
  Eigen::MatrixXd evaluate_rows(const Eigen::MatrixXd& pts, const std::vector<Eigen::Index>& rows) const;

  /// max |<phi_i, phi_j> - delta_ij| under a reference rule of degree 2n+10,
  /// or -1 when certification was not run.
  double gram_residual() const { return gram_residual_; }
  double certify();

 private:
  double mu_ = 0.5;
  int d_ = 2;
  int n_ = 0;
  std::vector<Eigen::VectorXi> indices_;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXd scale_;      // unit-norm factors per basis function
  // recurrence coefficients of P_k / P_k(1), indexed by (factor, tail, k)
  std::vector<double> rec_a_;
  std::vector<double> rec_c_;
  double gram_residual_ = -1.0;

  std::size_t slot(int j, int tail, int k) const {
    return (static_cast<std::size_t>(j) * (n_ + 1) + tail) * (n_ + 1) + k;
  }
  void factor_tables(const PointRef& x, std::vector<double>& tables) const;
  void raw_values(const PointRef& x, std::vector<double>& tables, double* out) const;
};

BallBasis build_basis(double mu, int d, int n, bool certify = false);

/// Graded-lexicographic multi-indices of total degree <= n in d variables.
std::vector<Eigen::VectorXi> graded_indices(int d, int n);

/// int x^alpha dm_mu for the normalized measure b W_mu(x) dx; zero for odd exponents.
double monomial_moment(double mu, const Eigen::VectorXi& alpha);

/// x^alpha.
double monomial(const PointRef& x, const Eigen::VectorXi& alpha);

}  // namespace ballneedlets
