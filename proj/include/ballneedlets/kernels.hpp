#pragma once

// Ball metric, weights, projector kernels P_n(W_mu; x, y) and the localized
// kernels L_n built from them.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ballneedlets/cutoff.hpp"
#include "ballneedlets/orthopoly.hpp"

namespace ballneedlets {

using Point = Eigen::VectorXd;
using PointRef = Eigen::Ref<const Eigen::VectorXd>;

/// Weight (1-|x|^2)^{mu-1/2} on B^d with lambda = mu + (d-1)/2 and the
/// normalization b = 1 / int_{B^d} W_mu.
struct BallWeightParams {
  double mu = 0.5;
  int d = 2;
  double lambda = 1.0;
  double b = 1.0;

  static BallWeightParams make(double mu, int d);
  /// b_1^{mu-1/2}: normalization of (1-u^2)^{mu-1} on [-1,1]; mu > 0.
  double b_one() const;
};

/// Geodesic distance of the hemisphere lifts, in [0, pi].
double ball_distance(const PointRef& x, const PointRef& y);

/// x -> (x, sqrt(1-|x|^2)).
Eigen::VectorXd lift(const PointRef& x);

/// W_mu(x); +infinity on the boundary when mu < 1/2.
double weight_W(const BallWeightParams& p, const PointRef& x);

/// (sqrt(1-|x|^2) + 1/n)^{2 mu}.
double weight_calW(const BallWeightParams& p, double n, const PointRef& x);

/// t(x,y;u) = <x,y> + u sqrt(1-|x|^2) sqrt(1-|y|^2), clamped to [-1,1].
double t_param(const PointRef& x, const PointRef& y, double u);

/// Finite Gegenbauer series sum_j c_j C_j^lambda(t) and its zonal ball kernel
/// b_1 int L(t(x,y;u)) (1-u^2)^{mu-1} du (two-point average when mu = 0).
class ZonalKernel {
 public:
  ZonalKernel(const BallWeightParams& params, std::vector<double> coefficients);

  const BallWeightParams& params() const { return params_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double univariate(double t) const;
  double operator()(const PointRef& x, const PointRef& y) const;

 private:
  BallWeightParams params_;
  std::vector<double> coeffs_;
  Eigen::VectorXd u_nodes_;
  Eigen::VectorXd u_weights_;  // normalized
};

/// L_n^mu(x,y) = sum_j a(j/n) P_j(W_mu; x, y), evaluated through the
/// one-dimensional Gegenbauer integral.
class LocalizedKernel {
 public:
  LocalizedKernel(const BallWeightParams& params, int n, Cutoff cutoff);

  int n() const { return n_; }
  const Cutoff& cutoff() const { return cutoff_; }
  const BallWeightParams& params() const { return zonal_.params(); }
  /// Highest j with a nonzero coefficient bound: j < 2n.
  int degree() const { return zonal_.degree(); }
  /// a(j/n) for j = 0..degree().
  double cutoff_weight(int j) const;

  double lambda_series(double t) const { return zonal_.univariate(t); }
  double operator()(const PointRef& x, const PointRef& y) const { return zonal_(x, y); }

 private:
  int n_;
  Cutoff cutoff_;
  ZonalKernel zonal_;
};

double kernel_L_lambda(const LocalizedKernel& k, double t);
double kernel_L_mu(const LocalizedKernel& k, const PointRef& x, const PointRef& y);

/// Reproducing kernel of V_n (orthogonal polynomials of exact degree n).
double kernel_P_n(const BallWeightParams& p, int n, const PointRef& x, const PointRef& y);

/// Signature of a function on the ball, possibly with a declared polynomial degree.
struct BallFunction {
  std::function<double(const PointRef&)> f;
  std::optional<int> degree;
};

/// (L_n f)(x) = b int f(y) L_n(x,y) W_mu(y) dy using the given normalized rule.
/// Throws when f declares a degree the rule cannot integrate exactly.
double apply_operator(const LocalizedKernel& k, const BallFunction& f, const BallQuadrature& quad,
                      const PointRef& x);

/// Univariate Jacobi localized kernel L_n^{alpha,beta}(x) = L_n^{alpha,beta}(x, 1)
/// in the Gamma-ratio form of the series.
double jacobi_localized(const JacobiParams& p, const Cutoff& c, int n, double x);

/// The same kernel summed directly as sum a(j/n) h_j^{-1} P_j(1) P_j(x).
double jacobi_localized_direct(const JacobiParams& p, const Cutoff& c, int n, double x);

}  // namespace ballneedlets
