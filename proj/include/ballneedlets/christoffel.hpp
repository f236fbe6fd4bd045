#pragma once

// Partial-sum kernels K_n, the Christoffel function and the localized
// competitor polynomials used to bound it from above.

#include <Eigen/Dense>

#include "ballneedlets/kernels.hpp"

namespace ballneedlets {

class ChristoffelEvaluator {
 public:
  ChristoffelEvaluator(const BallWeightParams& params, int n);

  int n() const { return n_; }
  const BallWeightParams& params() const { return zonal_.params(); }

  /// K_n(x,y) = sum_{nu <= n} P_nu(x,y), normalized measure.
  double kernel(const PointRef& x, const PointRef& y) const { return zonal_(x, y); }
  /// 1 / K_n(x,x).
  double lambda(const PointRef& x) const { return 1.0 / zonal_(x, x); }

 private:
  int n_;
  ZonalKernel zonal_;
};

double kernel_K(const ChristoffelEvaluator& e, const PointRef& x, const PointRef& y);
double christoffel_lambda(const ChristoffelEvaluator& e, const PointRef& x);

/// (sin(m theta/2) / (m sin(theta/2)))^{2k}, with value 1 at theta = 0.
double fejer_power(int k, int m, double theta);

/// Q_alpha(cos theta) = (q(theta-alpha) + q(theta+alpha)) / (1 + q(2 alpha)), t = cos theta.
double localized_univariate(int k, int m, double alpha, double t);

/// P_xi(x) = Q_alpha(x_1) Q_{pi/2}(|x_*|) after a Householder reflection taking xi
/// to (|xi|, 0, ..., 0); cos(alpha) = |xi|. Degree below 2km.
double localized_poly(int k, int m, const PointRef& xi, const PointRef& x);

/// k = floor(max(d/2, mu)) + 1 and m = floor(n / 2k) for the degree-n competitor.
struct CompetitorParams {
  int k = 1;
  int m = 1;
};
CompetitorParams competitor_params(const BallWeightParams& p, int n);

}  // namespace ballneedlets
