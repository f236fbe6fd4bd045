#pragma once

// Tight polynomial frame on the ball: level kernels
//   L_0 = 1,  L_j = sum_nu a(nu / 2^{j-1}) P_nu  (band-pass cutoff),
// level cubature rules X_j exact to degree 2^{j+2}, and needlets
//   psi_xi(x) = sqrt(lambda_xi) L_j(x, xi)
// with weights taken in the normalized measure.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ballneedlets/basis.hpp"
#include "ballneedlets/cubature.hpp"
#include "ballneedlets/kernels.hpp"

namespace ballneedlets {

inline CubatureOptions frame_cubature_defaults() {
  CubatureOptions c;
  c.delta_hint = 4.0;
  c.weight_lower = 0.0;
  c.weight_upper = std::numeric_limits<double>::infinity();
  return c;
}

struct FrameOptions {
  /// Levels whose rule degree 2^{j+2} exceeds this keep their kernel but get no rule.
  int max_rule_degree = 64;
  /// Level rules start at delta = 4 without the weight band; the banded delta = 1
  /// systems are too large at degree 128.
  CubatureOptions cubature = frame_cubature_defaults();
  /// Per-level overrides of the starting delta.
  std::map<int, double> delta_hints;
};

struct FrameLevel {
  int j = 0;
  int kernel_n = 0;     ///< 2^{j-1}; 0 at level 0
  int rule_degree = 0;  ///< 2^{j+2}
  /// a(nu / 2^{j-1}) for nu = 0..kernel_degree(); {1} at level 0.
  Eigen::VectorXd coefficients;
  std::optional<LocalizedKernel> kernel;  ///< absent at level 0
  std::optional<CubatureRule> rule;

  int kernel_degree() const { return static_cast<int>(coefficients.size()) - 1; }
  bool has_rule() const { return rule.has_value(); }
  Eigen::Index knot_count() const { return rule ? rule->size() : 0; }
  /// L_j(x, y).
  double kernel_value(const PointRef& x, const PointRef& y) const;
  /// Lowest degree with a nonzero coefficient.
  int lowest_degree() const;
};

class NeedletFrame {
 public:
  BallWeightParams params;
  Cutoff cutoff{CutoffKind::TypeB};
  int J = 0;
  std::vector<FrameLevel> levels;

  std::uint64_t fingerprint() const;
  /// Highest kernel degree over levels that carry a rule.
  int max_ruled_degree() const;

  /// Orthonormal basis of degree max_ruled_degree() evaluated at the level knots
  /// (N x P_j), built on first use.
  const Eigen::MatrixXd& knot_basis(int j) const;
  const BallBasis& basis() const;

 private:
  mutable std::optional<BallBasis> basis_;
  mutable std::map<int, Eigen::MatrixXd> knot_basis_;
};

NeedletFrame build_frame(double mu, int d, int J, const FrameOptions& opts = {});

/// sqrt(lambda_xi) L_j(x, xi); throws std::out_of_range for an unknown knot.
double needlet_eval(const NeedletFrame& frame, int j, Eigen::Index knot, const PointRef& x);

/// ||psi_xi||_{L^2_mu} by an exact product rule.
double needlet_norm(const NeedletFrame& frame, int j, Eigen::Index knot);

enum class AnalysisMethod { Spectral, Direct };

struct CoefficientSet {
  std::uint64_t frame_fingerprint = 0;
  /// Per level j = 0..J_used; empty for levels without a rule (identically zero there).
  std::vector<Eigen::VectorXd> levels;
  std::optional<int> integrand_degree;
  std::string method;
  double integration_error = 0.0;  ///< black-box input: degree-doubling estimate

  int levels_used() const { return static_cast<int>(levels.size()); }
  double l2_norm() const;

  CoefficientSet& operator+=(const CoefficientSet& other);
  CoefficientSet& operator*=(double s);
};

CoefficientSet operator+(CoefficientSet a, const CoefficientSet& b);
CoefficientSet operator*(double s, CoefficientSet a);

/// Inner products <f, psi_xi> for levels 0..J_used (default: all levels).
/// A polynomial f needs a rule at every level whose coefficients do not vanish
/// identically for its degree; black-box f (no declared degree) uses product
/// rules of degree 2 * 2^{J_used} + 16 and reports a doubling error estimate.
CoefficientSet analyze(const NeedletFrame& frame, const BallFunction& f,
                       std::optional<int> J_used = std::nullopt,
                       AnalysisMethod method = AnalysisMethod::Spectral);

/// sum_xi c_xi psi_xi as coefficients in the orthonormal basis.
Eigen::VectorXd synthesis_expansion(const NeedletFrame& frame, const CoefficientSet& c);

/// sum_xi c_xi psi_xi(x).
double synthesize(const NeedletFrame& frame, const CoefficientSet& c, const PointRef& x);
Eigen::VectorXd synthesize(const NeedletFrame& frame, const CoefficientSet& c,
                           const Eigen::MatrixXd& pts);

/// Direct sum over knots of c_xi sqrt(lambda_xi) L_j(x, xi).
double synthesize_direct(const NeedletFrame& frame, const CoefficientSet& c, const PointRef& x);

struct ParsevalReport {
  double norm_f = 0.0;
  double norm_coeffs = 0.0;
  double rel_gap = 0.0;
};

/// Requires a declared degree with 2^{J_used - 2} > deg f.
ParsevalReport parseval_check(const NeedletFrame& frame, const BallFunction& f,
                              std::optional<int> J_used = std::nullopt);

/// sum_{j <= J_used} (L_j * (L_j * f))(x) with both convolutions by exact product rules.
double semidiscrete_sum(const NeedletFrame& frame, const BallFunction& f, const PointRef& x,
                        std::optional<int> J_used = std::nullopt);

}  // namespace ballneedlets
