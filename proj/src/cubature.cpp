#include "ballneedlets/cubature.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "ballneedlets/parallel.hpp"

namespace ballneedlets {

Eigen::VectorXd weight_ratios(const CubatureRule& rule) {
  const BallWeightParams p = BallWeightParams::make(rule.mu, rule.d);
  const double n = std::max(1, rule.degree);
  const double scale = std::pow(n, -rule.d);
  Eigen::VectorXd out(rule.size());
  for (Eigen::Index k = 0; k < rule.size(); ++k)
    out[k] = rule.weights[k] / (scale * weight_calW(p, n, rule.points.points.col(k)));
  return out;
}

Eigen::VectorXd exactness_residuals(const CubatureRule& rule, const BallBasis& basis) {
  const Eigen::Index N = basis.size();
  const Eigen::Index P = rule.size();
  const int workers = std::max(1, thread_count());
  std::vector<Eigen::VectorXd> partial(workers, Eigen::VectorXd::Zero(N));
  // fixed blocks summed in order keep the result independent of scheduling
  parallel_for<Eigen::Index>(workers, [&](Eigen::Index w) {
    Eigen::VectorXd buf(N);
    const Eigen::Index lo = P * w / workers, hi = P * (w + 1) / workers;
    for (Eigen::Index p = lo; p < hi; ++p) {
      basis.evaluate_into(rule.points.points.col(p), buf.data());
      partial[w].noalias() += rule.normalized_weights[p] * buf;
    }
  }, Eigen::Index(1));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(N);
  for (const auto& v : partial) acc += v;
  acc[0] -= 1.0;
  return acc;
}

CubatureRule solve_weights(const PointSet& points, const BallBasis& basis, double gamma,
                           const CubatureOptions& opts) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("solve_weights: gamma must lie in (0,1)");
  if (!(opts.weight_lower >= 0.0 && opts.weight_upper > opts.weight_lower))
    throw std::invalid_argument("solve_weights: need 0 <= weight_lower < weight_upper");
  if (points.d != basis.d() || points.mu != basis.mu())
    throw std::invalid_argument("solve_weights: point set and basis disagree on (mu, d)");
  const BallWeightParams p = BallWeightParams::make(points.mu, points.d);
  Eigen::VectorXd s = p.b * points.surrogates;
  if (opts.mass == CellMass::Measure) {
    // mirror images share the measure of their orthant-0 cell
    const Eigen::Index C = points.cells_per_orthant;
    Eigen::VectorXd first(C);
    parallel_for<Eigen::Index>(C, [&](Eigen::Index k) { first[k] = p.b * cell_measure(points.cells[k], points.mu, 8); });
    for (int o = 0; o < points.orthant_count(); ++o) s.segment(o * C, C) = first;
  }
  Eigen::VectorXd floor(points.size()), cap(points.size());
  {
    const double n = std::max(1, basis.n());
    for (Eigen::Index k = 0; k < points.size(); ++k) {
      const double size = p.b * std::pow(n, -points.d) * weight_calW(p, n, points.points.col(k));
      floor[k] = std::max(0.0, opts.weight_lower * size - gamma * s[k]);
      cap[k] = std::max(floor[k], opts.weight_upper * size - gamma * s[k]);
    }
  }
  // a = floor + z with 0 <= z <= cap - floor
  const Eigen::VectorXd base = gamma * s + floor;
  const Eigen::VectorXd room = cap - floor;

  Eigen::VectorXd lambda_n(points.size());
  LPResult lp;
  if (opts.use_symmetry) {
    const std::vector<Eigen::Index> rows = basis.sign_invariant_indices();
    const Eigen::Index C = points.cells_per_orthant;
    if (C < static_cast<Eigen::Index>(rows.size()))
      throw CubatureInfeasible("solve_weights: fewer cells than constraints; decrease delta");
    const double copies = points.orthant_count();
    Eigen::MatrixXd A = copies * basis.evaluate_rows(points.points.leftCols(C), rows);
    Eigen::VectorXd rhs = -(A * base.head(C));
    rhs[0] += 1.0;
    lp = solve_phase_one(A, rhs, room.head(C), opts.lp);
    if (lp.feasible)
      for (int o = 0; o < points.orthant_count(); ++o)
        lambda_n.segment(o * C, C) = lp.x + base.head(C);
  } else {
    if (points.size() < basis.size())
      throw CubatureInfeasible("solve_weights: fewer points than constraints; decrease delta");
    const Eigen::MatrixXd A = basis.evaluate(points.points);
    Eigen::VectorXd rhs = -(A * base);
    rhs[0] += 1.0;
    lp = solve_phase_one(A, rhs, room, opts.lp);
    if (lp.feasible) lambda_n = lp.x + base;
  }
  if (!lp.feasible) {
    std::ostringstream msg;
    msg << "epsilon too coarse for degree " << basis.n() << "; decrease delta (" << lp.status
        << ", phase-one objective " << lp.phase1_objective << ", basis condition "
        << lp.basis_condition << ", epsilon " << points.epsilon << ")";
    throw CubatureInfeasible(msg.str());
  }

  CubatureRule rule;
  rule.points = points;
  rule.degree = basis.n();
  rule.mu = points.mu;
  rule.d = points.d;
  rule.gamma = gamma;
  rule.delta = points.epsilon * std::max(1, basis.n());
  rule.normalized_weights = lambda_n;
  rule.weights = lambda_n / p.b;
  rule.lp_iterations = lp.iterations;
  rule.lp_condition = lp.basis_condition;
  rule.residual_max = exactness_residuals(rule, basis).cwiseAbs().maxCoeff();
  const Eigen::VectorXd ratios = weight_ratios(rule);
  rule.ratio_lo = ratios.minCoeff();
  rule.ratio_hi = ratios.maxCoeff();
  return rule;
}

CubatureRule build_cubature(double mu, int d, int n, const CubatureOptions& opts) {
  if (n < 1) throw std::invalid_argument("build_cubature: degree must be at least 1");
  const BallBasis basis(mu, d, n);
  double delta = opts.delta_hint.value_or(1.0);
  if (!(delta > 0.0)) throw std::invalid_argument("build_cubature: delta must be positive");
  std::string last_error;
  const double rows = opts.use_symmetry ? static_cast<double>(basis.sign_invariant_indices().size())
                                        : static_cast<double>(basis.size());
  int attempt = 0;
  for (; attempt <= opts.max_retries; ++attempt, delta *= 0.5) {
    const double eps = std::min(delta / n, 3.14159);
    const double cols = std::pow(static_cast<double>(subdivision_count(eps, d)), d) *
                        (opts.use_symmetry ? 1.0 : std::ldexp(1.0, d));
    if (rows * cols > opts.max_matrix_entries) {
      last_error = "system at epsilon " + std::to_string(eps) + " exceeds max_matrix_entries";
      break;
    }
    try {
      CubatureRule rule = solve_weights(build_point_set(eps, d, mu), basis, opts.gamma, opts);
      rule.delta = delta;
      rule.attempts = attempt + 1;
      return rule;
    } catch (const CubatureInfeasible& e) {
      last_error = e.what();
    }
  }
  std::ostringstream msg;
  msg << "build_cubature: no feasible delta after " << attempt << " attempts (mu=" << mu << ", d=" << d << ", n=" << n << "); last: " << last_error;
  throw CubatureInfeasible(msg.str());
}

RuleReport verify_rule(const CubatureRule& rule, int extra_degree) {
  if (extra_degree < 0) throw std::invalid_argument("verify_rule: negative extra degree");
  const BallBasis basis(rule.mu, rule.d, rule.degree + extra_degree);
  const Eigen::VectorXd res = exactness_residuals(rule, basis);
  RuleReport rep;
  rep.residual_in_degree = res.head(basis.block_start(rule.degree + 1)).cwiseAbs().maxCoeff();
  for (int k = rule.degree + 1; k <= rule.degree + extra_degree; ++k) {
    const Eigen::Index lo = basis.block_start(k), hi = basis.block_start(k + 1);
    rep.residual_by_extra_degree.push_back(res.segment(lo, hi - lo).cwiseAbs().maxCoeff());
  }
  rep.weight_min = rule.weights.minCoeff();
  rep.weight_max = rule.weights.maxCoeff();
  rep.weight_sum = rule.weights.sum();
  const Eigen::VectorXd ratios = weight_ratios(rule);
  rep.ratio_lo = ratios.minCoeff();
  rep.ratio_hi = ratios.maxCoeff();
  return rep;
}

}  // namespace ballneedlets
