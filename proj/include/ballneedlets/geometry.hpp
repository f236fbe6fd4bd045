#pragma once

// Almost uniformly epsilon-distributed points on B^d: the upper hemisphere is
// split into 2^d orthant simplices, each mapped centrally onto the flat simplex
// T = {t >= 0, sum t = 1} in R^{d+1} and subdivided into M^d congruent pieces
// (Freudenthal subdivision of the staircase coordinates).

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ballneedlets/kernels.hpp"

namespace ballneedlets {

struct PartitionCell {
  Point center;              ///< xi in B^d
  Eigen::MatrixXd vertices;  ///< (d+1) x (d+1), columns are unit vectors on S^d_+
  double epsilon = 0.0;
  double measure_surrogate = 0.0;  ///< eps^d (sqrt(1-|xi|^2) + eps)^{2 mu}, normalized
  int orthant = 0;                 ///< bit i set: coordinate i is negative
  Eigen::VectorXi corner;          ///< Freudenthal cube corner (staircase coords)
  Eigen::VectorXi perm;            ///< descending order of fractional coordinates
};

struct PointSet {
  double epsilon = 0.0;
  int d = 0;
  double mu = 0.0;
  int M = 0;
  Eigen::MatrixXd points;       ///< d x P, column k is the center of cells[k]
  Eigen::VectorXd surrogates;   ///< measure surrogates, sum = 1/b (unnormalized)
  std::vector<PartitionCell> cells;

  /// Cells are stored orthant-major: index = orthant * cells_per_orthant + local,
  /// and cell (o, local) is the mirror image of cell (0, local).
  int cells_per_orthant = 0;

  Eigen::Index size() const { return points.cols(); }
  int orthant_count() const { return 1 << d; }

  /// Index of a cell containing x (ties resolved deterministically).
  int locate(const PointRef& x) const;
  /// All cells whose closed region contains x within `tol` in subdivision coordinates.
  std::vector<int> containing_cells(const PointRef& x, double tol = 1e-10) const;
};

/// (d+1)-vector on S^d_+.
Eigen::VectorXd lift_to_hemisphere(const PointRef& x);

/// Central map xi -> xi / <xi, (1,...,1)> onto the flat simplex.
Eigen::VectorXd simplex_map(const PointRef& xi);
/// Inverse: normalization to unit length.
Eigen::VectorXd simplex_unmap(const PointRef& t);

/// M = ceil(2 sqrt(d) / epsilon).
int subdivision_count(double epsilon, int d);

PointSet build_point_set(double epsilon, int d, double mu);

struct InclusionRadii {
  double r_inner = 0.0;  ///< distance from the center to the cell boundary
  double r_outer = 0.0;  ///< largest distance from the center to a cell point
};

InclusionRadii cell_inclusion_check(const PartitionCell& cell);

/// int_{R} W_mu(x) dx by a conical product rule on the flat cell.
double cell_measure(const PartitionCell& cell, double mu, int order = 6);

}  // namespace ballneedlets
