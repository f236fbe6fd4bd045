#pragma once

// Dense multivariate polynomials in the monomial basis, for test inputs.

#include <vector>

#include <Eigen/Dense>

#include "ballneedlets/kernels.hpp"
#include "ballneedlets/random.hpp"

namespace ballneedlets {

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int d, std::vector<Eigen::VectorXi> exponents, std::vector<double> coefficients);

  int dim() const { return d_; }
  /// Highest total degree with a nonzero coefficient (0 for the zero polynomial).
  int degree() const;
  const std::vector<Eigen::VectorXi>& exponents() const { return exps_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(const PointRef& x) const;
  /// Wraps as a BallFunction declaring degree().
  BallFunction as_function() const;

 private:
  int d_ = 0;
  std::vector<Eigen::VectorXi> exps_;
  std::vector<double> coeffs_;
};

/// Standard normal coefficients on every monomial of degree <= degree.
Polynomial random_polynomial(SplitMix64& rng, int d, int degree);

}  // namespace ballneedlets
