#include "ballneedlets/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/LU>

namespace ballneedlets {

namespace {

enum class State : char { Lower, Upper, Basic };

struct Problem {
  const Eigen::MatrixXd& A;
  Eigen::VectorXd sign;  // row signs making the right-hand side nonnegative
  Eigen::VectorXd rhs;   // |r|
  Eigen::Index m, n;

  Eigen::VectorXd column(Eigen::Index var) const {
    if (var < n) return sign.cwiseProduct(A.col(var));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[var - n] = 1.0;
    return e;
  }
};

}  // namespace

LPResult solve_phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& r, const LPOptions& opts) {
  return solve_phase_one(
      A, r, Eigen::VectorXd::Constant(A.cols(), std::numeric_limits<double>::infinity()), opts);
}

LPResult solve_phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& r,
                         const Eigen::VectorXd& upper, const LPOptions& opts) {
  if (A.rows() != r.size()) throw std::invalid_argument("solve_phase_one: dimension mismatch");
  if (upper.size() != A.cols()) throw std::invalid_argument("solve_phase_one: bound size mismatch");
  if ((upper.array() < 0.0).any()) throw std::invalid_argument("solve_phase_one: negative upper bound");
  const Eigen::Index m = A.rows(), n = A.cols();
  const double inf = std::numeric_limits<double>::infinity();
  Problem prob{A, Eigen::VectorXd(m), r.cwiseAbs(), m, n};
  for (Eigen::Index i = 0; i < m; ++i) prob.sign[i] = r[i] >= 0.0 ? 1.0 : -1.0;
  auto bound = [&](Eigen::Index var) { return var < n ? upper[var] : inf; };

  std::vector<Eigen::Index> basis(m);
  std::vector<State> state(n, State::Lower);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;
  Eigen::MatrixXd binv = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd xb = prob.rhs;
  std::vector<char> excluded(n, 0);

  const double scale = std::max(1.0, prob.rhs.lpNorm<1>());
  const double target = opts.feasibility_tol * scale;
  const long refactor_every =
      opts.refactor_interval > 0 ? opts.refactor_interval : std::max<long>(64, m / 4);
  const long max_iter = opts.max_iterations > 0 ? opts.max_iterations : 200L * m + 20L * n + 1000;

  auto objective = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (basis[i] >= n) s += xb[i];
    return s;
  };

  double rcond = 1.0;
  auto refactor = [&] {
    Eigen::MatrixXd bm(m, m);
    for (Eigen::Index i = 0; i < m; ++i) bm.col(i) = prob.column(basis[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
    rcond = lu.rcond();
    binv = lu.inverse();
    Eigen::VectorXd shifted = prob.rhs;
    for (Eigen::Index j = 0; j < n; ++j)
      if (state[j] == State::Upper) shifted -= upper[j] * prob.column(j);
    xb = lu.solve(shifted);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (xb[i] < 0.0 && xb[i] > -1e3 * target) xb[i] = 0.0;
      const double u = bound(basis[i]);
      if (xb[i] > u && xb[i] < u + 1e3 * target) xb[i] = u;
    }
  };

  LPResult res;
  bool bland = false;
  int stall = 0;
  double obj = objective();
  long since_refactor = 0;
  Eigen::VectorXd cb(m), y(m), g(n), u(m);
  bool prices_valid = false;  // a bound flip leaves the basis, hence the prices, unchanged
  Eigen::VectorXd ys(m);
  const Eigen::Index seg_len =
      opts.pricing_segment > 0 ? std::min<Eigen::Index>(opts.pricing_segment, n) : std::max<Eigen::Index>(n, 1);
  const Eigen::Index segments = std::max<Eigen::Index>(1, (n + seg_len - 1) / seg_len);
  Eigen::Index segment = 0;
  // reduced costs are compared per unit column length
  Eigen::VectorXd inv_norm = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < n; ++j) inv_norm[j] = inv_norm[j] > 0.0 ? 1.0 / inv_norm[j] : 0.0;
  std::vector<char> priced(segments, 0);

  while (true) {
    if (obj <= target) {
      res.feasible = true;
      res.status = "feasible";
      break;
    }
    if (res.iterations >= max_iter) {
      res.status = "iteration limit";
      break;
    }
    // partial pricing: scan fixed column segments cyclically, best candidate in the first
    // segment that has one; a full unsuccessful cycle proves optimality of phase one
    Eigen::Index enter = -1;
    if (!prices_valid) {
      for (Eigen::Index i = 0; i < m; ++i) cb[i] = basis[i] >= n ? 1.0 : 0.0;
      y.noalias() = binv.transpose() * cb;
      ys = prob.sign.cwiseProduct(y);
      priced.assign(segments, 0);
      prices_valid = true;
    }
    for (Eigen::Index step = 0; step < segments && enter < 0; ++step) {
      const Eigen::Index seg = ((bland ? 0 : segment) + step) % segments;
      const Eigen::Index lo = seg * seg_len, len = std::min(seg_len, n - lo);
      if (!priced[seg]) {
        g.segment(lo, len).noalias() = A.middleCols(lo, len).transpose() * ys;
        priced[seg] = 1;
      }
      double best = opts.optimality_tol;
      for (Eigen::Index j = lo; j < lo + len; ++j) {
        if (state[j] == State::Basic || excluded[j]) continue;
        const double score = (state[j] == State::Lower ? g[j] : -g[j]) * inv_norm[j];
        if (score > best) {
          enter = j;
          if (bland) break;
          best = score;
        }
      }
      if (enter >= 0) segment = seg;
    }
    if (enter < 0) {
      res.status = "infeasible";
      break;
    }
    const double dir = state[enter] == State::Lower ? 1.0 : -1.0;

    u.noalias() = binv * prob.column(enter);
    Eigen::Index leave = -1;
    bool leave_to_upper = false;
    double theta = upper[enter];
    auto better = [&](Eigen::Index i, double ratio) {
      if (ratio < theta * (1.0 - 1e-12)) return true;
      if (leave < 0 || ratio > theta * (1.0 + 1e-12)) return false;
      // ties: artificial variables leave first, then the smallest index
      if (bland) return basis[i] < basis[leave];
      const bool art_i = basis[i] >= n, art_l = basis[leave] >= n;
      return (art_i && !art_l) || (art_i == art_l && basis[i] < basis[leave]);
    };
    for (Eigen::Index i = 0; i < m; ++i) {
      const double rate = dir * u[i];  // basic value moves by -rate * theta
      double ratio;
      bool to_upper = false;
      if (rate > opts.pivot_tol) {
        ratio = std::max(0.0, xb[i]) / rate;
      } else if (rate < -opts.pivot_tol && std::isfinite(bound(basis[i]))) {
        ratio = std::max(0.0, bound(basis[i]) - xb[i]) / -rate;
        to_upper = true;
      } else {
        continue;
      }
      if (better(i, ratio)) {
        theta = std::min(theta, ratio);
        leave = i;
        leave_to_upper = to_upper;
      }
    }
    if (leave < 0 && std::isinf(theta)) {
      excluded[enter] = 1;
      continue;
    }

    xb.noalias() -= (dir * theta) * u;
    if (leave < 0) {
      // entering variable reaches its other bound
      state[enter] = dir > 0 ? State::Upper : State::Lower;
      ++res.bound_flips;
    } else {
      prices_valid = false;
      const Eigen::Index out = basis[leave];
      if (out < n) state[out] = leave_to_upper ? State::Upper : State::Lower;
      xb[leave] = dir > 0 ? theta : upper[enter] - theta;
      basis[leave] = enter;
      state[enter] = State::Basic;
      const Eigen::RowVectorXd pivot_row = binv.row(leave) / u[leave];
      binv.noalias() -= u * pivot_row;
      binv.row(leave) = pivot_row;
    }
    ++res.iterations;

    if (leave >= 0 && ++since_refactor >= refactor_every) {
      refactor();
      prices_valid = false;
      since_refactor = 0;
    }
    const double next = objective();
    if (next < obj - 1e-14 * scale) {
      stall = 0;
      bland = false;
    } else {
      ++res.degenerate_pivots;
      if (++stall >= opts.stall_limit) bland = true;
    }
    obj = next;
  }

  refactor();
  obj = objective();
  res.phase1_objective = obj;
  res.basis_condition = rcond > 0.0 ? 1.0 / rcond : inf;
  if (res.status == "feasible" && obj > target) {
    res.feasible = false;
    res.status = "lost feasibility";
  }
  res.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
    if (state[j] == State::Upper) res.x[j] = upper[j];
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = std::clamp(xb[i], 0.0, upper[basis[i]]);
  res.residual = (A * res.x - r).cwiseAbs().maxCoeff();
  return res;
}

}  // namespace ballneedlets
