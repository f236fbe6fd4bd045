#pragma once

// Phase-one revised simplex for the feasibility problem A x = r, 0 <= x <= u.

#include <string>

#include <Eigen/Dense>

namespace ballneedlets {

struct LPOptions {
  double feasibility_tol = 1e-11;  ///< phase-one objective (relative to |r|_1) treated as zero
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-11;
  int refactor_interval = 0;  ///< pivots between refactorizations; 0 picks max(64, rows / 4)
  int stall_limit = 2000;     ///< degenerate pivots before switching to the smallest-index rule
  long pricing_segment = 0;  ///< columns priced per segment; 0 prices all columns every iteration
  long max_iterations = 0;   ///< 0: 200 * rows + 20 * columns + 1000
};

struct LPResult {
  bool feasible = false;
  Eigen::VectorXd x;          ///< length = columns of A, within bounds
  double residual = 0.0;      ///< max |A x - r|
  double phase1_objective = 0.0;
  long iterations = 0;
  long degenerate_pivots = 0;
  long bound_flips = 0;
  double basis_condition = 0.0;  ///< 1-norm condition estimate of the final basis
  std::string status;
};

/// Finds x >= 0 with A x = r. Entering columns by most negative reduced cost
/// (lowest index on ties), falling back to the smallest-index rule after a
/// run of degenerate pivots. Deterministic for identical input.
LPResult solve_phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& r,
                         const LPOptions& opts = {});

/// Bounded variant: `upper` holds one bound per column (+inf allowed).
LPResult solve_phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& r,
                         const Eigen::VectorXd& upper, const LPOptions& opts = {});

}  // namespace ballneedlets
