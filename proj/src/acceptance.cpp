#include "ballneedlets/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "ballneedlets/basis.hpp"
#include "ballneedlets/christoffel.hpp"
#include "ballneedlets/cubature.hpp"
#include "ballneedlets/geometry.hpp"
#include "ballneedlets/kernels.hpp"
#include "ballneedlets/needlets.hpp"
#include "ballneedlets/orthopoly.hpp"
#include "ballneedlets/parallel.hpp"
#include "ballneedlets/polynomial.hpp"
#include "ballneedlets/random.hpp"

namespace ballneedlets {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: value for '" + key + "' is not a number: " + value);
  }
  if (used != value.size()) throw ConfigError("config: trailing characters in '" + key + "': " + value);
  return v;
}

long parse_integer(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError("config: '" + key + "' must be an integer");
  return static_cast<long>(v);
}

// Polar sample grid x = sin(phi) (cos t, sin t), phi uniform in [0, pi/2]: uniform in the ball metric's
// radial variable, so boundary layers are resolved.
Eigen::MatrixXd polar_grid(int radial, int angular) {
  Eigen::MatrixXd pts(2, radial * angular);
  int k = 0;
  for (int i = 0; i < radial; ++i) {
    const double r = std::sin(0.5 * std::numbers::pi * i / (radial - 1));
    for (int a = 0; a < angular; ++a) {
      const double t = 2.0 * std::numbers::pi * a / angular;
      pts(0, k) = r * std::cos(t);
      pts(1, k) = r * std::sin(t);
      ++k;
    }
  }
  return pts;
}

Point pt(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

struct Outcome {
  bool passed = false;
  std::string summary;
  Json measured = Json::object();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// 1. Orthonormality of the Jacobi polynomials under Gauss-Jacobi quadrature.
Outcome crit_jacobi(const RunConfig& cfg) {
  Outcome out;
  const std::vector<std::pair<double, double>> settings = {{0.0, 0.0}, {-0.5, 0.5}, {1.5, 2.5}};
  double worst = 0.0;
  for (auto [a, b] : settings) {
    const JacobiParams p(a, b);
    const int nmax = 50;
    const QuadratureRule1D rule = gauss_jacobi(p, nmax + 10);
    const double mass = jacobi_weight_mass(p);
    Eigen::MatrixXd V(nmax + 1, rule.size());
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const Eigen::VectorXd P = jacobi_all(p, nmax, rule.nodes[q]);
      for (int n = 0; n <= nmax; ++n) V(n, q) = P[n] / std::sqrt(jacobi_h(p, n));
    }
    const Eigen::MatrixXd G = V * (rule.weights / mass).asDiagonal() * V.transpose();
    const double r = (G - Eigen::MatrixXd::Identity(nmax + 1, nmax + 1)).cwiseAbs().maxCoeff();
    out.measured["residual"].push_back({{"alpha", a}, {"beta", b}, {"max_entry", r}});
    worst = std::max(worst, r);
  }
  out.passed = worst < cfg.tol_jacobi;
  out.summary = "max |G - I| = " + fmt(worst) + " (n, m <= 50, 3 settings; tol " + fmt(cfg.tol_jacobi) + ")";
  out.measured["worst"] = worst;
  return out;
}

// 2. Gegenbauer-integral kernel against the sum over an orthonormal basis of each V_j.
Outcome crit_kernel(const RunConfig& cfg) {
  Outcome out;
  SplitMix64 rng(cfg.seed ^ 0x2);
  const int nmax = 16;
  double worst = 0.0;
  for (double mu : {0.5, 1.0, 2.0}) {
    const BallWeightParams params = BallWeightParams::make(mu, 2);
    const BallBasis basis(mu, 2, 2 * nmax - 1);
    std::map<int, LocalizedKernel> kernels;
    double worst_mu = 0.0;
    for (int s = 0; s < 100; ++s) {
      const int n = 1 + static_cast<int>(rng.below(nmax));
      const Point x = rng.ball_point(2), y = rng.ball_point(2);
      auto it = kernels.find(n);
      if (it == kernels.end()) it = kernels.emplace(n, LocalizedKernel(params, n, Cutoff(CutoffKind::TypeA))).first;
      const LocalizedKernel& L = it->second;
      const Eigen::VectorXd px = basis.evaluate(PointRef(x)), py = basis.evaluate(PointRef(y));
      double direct = 0.0;
      for (int j = 0; j <= L.degree(); ++j) {
        const double w = L.cutoff_weight(j);
        if (w == 0.0) continue;
        const Eigen::Index lo = basis.block_start(j), len = basis.block_start(j + 1) - lo;
        direct += w * px.segment(lo, len).dot(py.segment(lo, len));
      }
      const double integral = kernel_L_mu(L, x, y);
      worst_mu = std::max(worst_mu, std::abs(integral - direct) / std::max(std::abs(direct), 1.0));
    }
    out.measured["relative_error"][fmt(mu)] = worst_mu;
    worst = std::max(worst, worst_mu);
  }
  out.passed = worst < cfg.tol_kernel;
  out.summary = "max relative gap = " + fmt(worst) + " (100 pairs per mu, n <= 16; tol " + fmt(cfg.tol_kernel) + ")";
  return out;
}

// 3. The type-a operator reproduces polynomials of degree <= n.
Outcome crit_reproduction(const RunConfig& cfg) {
  Outcome out;
  SplitMix64 rng(cfg.seed ^ 0x3);
  const BallWeightParams params = BallWeightParams::make(cfg.mu, 2);
  double worst = 0.0;
  for (int n : {4, 8, 16}) {
    const LocalizedKernel L(params, n, Cutoff(CutoffKind::TypeA));
    double worst_n = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Polynomial f = random_polynomial(rng, 2, n - i % 3);
      const BallFunction bf = f.as_function();
      const BallQuadrature quad = ball_quadrature(cfg.mu, 2, *bf.degree + L.degree());
      double err = 0.0, scale = 0.0;
      for (int s = 0; s < 4; ++s) {
        const Point x = rng.ball_point(2);
        const double fx = f(x);
        err = std::max(err, std::abs(apply_operator(L, bf, quad, x) - fx));
        scale = std::max(scale, std::abs(fx));
      }
      worst_n = std::max(worst_n, err / std::max(scale, 1e-300));
    }
    out.measured["relative_error"][std::to_string(n)] = worst_n;
    worst = std::max(worst, worst_n);
  }
  out.passed = worst < cfg.tol_reproduction;
  out.summary = "max relative error = " + fmt(worst) + " (mu " + fmt(cfg.mu) + ", 20 polynomials per n; tol " +
                fmt(cfg.tol_reproduction) + ")";
  return out;
}

// 4. Normalized localization ratio at n = 16, 32, 64.
Outcome crit_localization(const RunConfig& cfg) {
  Outcome out;
  const int k = 6;
  const Eigen::MatrixXd grid = polar_grid(61, 96);
  const std::vector<Point> centers = {pt(0, 0), pt(0.5, 0.3), pt(0.95, 0), pt(0.999, 0.02)};
  bool ok = true;
  std::ostringstream sum;
  for (double mu : {0.0, 1.0}) {
    const BallWeightParams params = BallWeightParams::make(mu, 2);
    std::map<int, double> ratio;
    for (int n : {16, 32, 64}) {
      const LocalizedKernel L(params, n, Cutoff(CutoffKind::TypeA));
      double sup = 0.0;
      for (const Point& y : centers) {
        Eigen::VectorXd vals(grid.cols());
        parallel_for<Eigen::Index>(grid.cols(), [&](Eigen::Index q) {
          const auto x = grid.col(q);
          const double v = std::abs(L(x, y)) * std::sqrt(weight_calW(params, n, x) * weight_calW(params, n, y)) *
                           std::pow(1.0 + n * ball_distance(x, y), k) / std::pow(n, 2);
          vals[q] = v;
        });
        sup = std::max(sup, vals.maxCoeff());
      }
      ratio[n] = sup;
      out.measured["ball"][fmt(mu)][std::to_string(n)] = sup;
    }
    const double growth = ratio[64] / ratio[16];
    out.measured["ball"][fmt(mu)]["growth_64_over_16"] = growth;
    ok = ok && growth <= cfg.localization_growth;
    sum << "ball mu=" << fmt(mu) << " growth " << fmt(growth) << "; ";
  }
  {
    const JacobiParams p(0.5, 0.5);
    const Cutoff c(CutoffKind::TypeA);
    std::map<int, double> ratio;
    for (int n : {16, 32, 64}) {
      double sup = 0.0;
      for (int i = 0; i <= 4000; ++i) {
        const double theta = std::numbers::pi * i / 4000;
        const double v = std::abs(jacobi_localized(p, c, n, std::cos(theta))) * std::pow(1.0 + n * theta, k) /
                         std::pow(n, 2 * p.alpha + 2);
        sup = std::max(sup, v);
      }
      ratio[n] = sup;
      out.measured["jacobi"][std::to_string(n)] = sup;
    }
    const double growth = ratio[64] / ratio[16];
    out.measured["jacobi"]["growth_64_over_16"] = growth;
    ok = ok && growth <= cfg.localization_growth;
    sum << "jacobi(0.5,0.5) growth " << fmt(growth);
  }
  out.passed = ok;
  out.summary = sum.str() + " (limit " + fmt(cfg.localization_growth) + ")";
  return out;
}

// 5. Positive exact cubature for n = 4..32 with stable weight-size constants.
Outcome crit_cubature(const RunConfig& cfg) {
  Outcome out;
  bool ok = true;
  std::ostringstream sum;
  double worst_res = 0.0, worst_chain = 0.0;
  for (double mu : {0.0, 0.5, 1.0}) {
    const BallWeightParams params = BallWeightParams::make(mu, 2);
    double lo4 = 0.0, hi4 = 0.0, lo_min = 1e300, hi_max = 0.0;
    Json per_n = Json::array();
    for (int n : {4, 8, 16, 32}) {
      CubatureRule rule;
      try {
        rule = build_cubature(mu, 2, n);
      } catch (const std::exception& e) {
        ok = false;
        per_n.push_back({{"n", n}, {"error", e.what()}});
        continue;
      }
      const RuleReport rep = verify_rule(rule, 2);
      const ChristoffelEvaluator chris(params, n / 2);
      double chain = 0.0;
      for (Eigen::Index k = 0; k < rule.size(); ++k)
        chain = std::max(chain, rule.normalized_weights[k] / chris.lambda(rule.nodes().col(k)));
      const bool positive = rule.weights.minCoeff() > 0.0;
      const bool exact = rep.residual_in_degree < cfg.tol_exactness;
      const bool chained = chain <= 1.0 + 1e-6;
      if (n == 4) {
        lo4 = rule.ratio_lo;
        hi4 = rule.ratio_hi;
      }
      const bool stable = rule.ratio_hi <= (1.0 + cfg.drift) * hi4 && rule.ratio_lo >= (1.0 - cfg.drift) * lo4;
      ok = ok && positive && exact && chained && stable;
      lo_min = std::min(lo_min, rule.ratio_lo);
      hi_max = std::max(hi_max, rule.ratio_hi);
      worst_res = std::max(worst_res, rep.residual_in_degree);
      worst_chain = std::max(worst_chain, chain);
      per_n.push_back({{"n", n},
                       {"points", rule.size()},
                       {"delta", rule.delta},
                       {"residual_max", rep.residual_in_degree},
                       {"residual_next_degrees", rep.residual_by_extra_degree},
                       {"weight_min", rep.weight_min},
                       {"ratio_lo", rule.ratio_lo},
                       {"ratio_hi", rule.ratio_hi},
                       {"max_weight_over_christoffel", chain},
                       {"lp_iterations", rule.lp_iterations}});
    }
    const bool endpoints = hi_max / lo_min < cfg.endpoint_ratio;
    ok = ok && endpoints;
    out.measured[fmt(mu)] = {{"rules", per_n}, {"interval", {lo_min, hi_max}}};
    sum << "mu=" << fmt(mu) << " ratios [" << fmt(lo_min) << ", " << fmt(hi_max) << "]; ";
  }
  out.passed = ok;
  out.summary = sum.str() + "max residual " + fmt(worst_res) + ", max lambda/Lambda_{n/2} " + fmt(worst_chain);
  return out;
}

// 6. Partition: coverage, disjointness, counts and inclusion radii.
Outcome crit_partition(const RunConfig& cfg) {
  Outcome out;
  SplitMix64 rng(cfg.seed ^ 0x6);
  bool ok = true;
  std::vector<double> inner_ratio;
  std::ostringstream sum;
  for (double eps : {0.2, 0.1, 0.05}) {
    const PointSet ps = build_point_set(eps, 2, cfg.mu);
    const long expect = 4L * ps.M * ps.M;
    double outer = 0.0, inner = 1e300;
    for (const PartitionCell& cell : ps.cells) {
      const InclusionRadii r = cell_inclusion_check(cell);
      outer = std::max(outer, r.r_outer);
      inner = std::min(inner, r.r_inner);
    }
    int uncovered = 0, shared = 0;
    for (int s = 0; s < 2000; ++s) {
      const Point x = rng.ball_point(2);
      const auto cells = ps.containing_cells(x, 1e-12);
      if (cells.empty()) ++uncovered;
      if (cells.size() > 1) ++shared;
    }
    const bool good = ps.size() == expect && outer <= eps * (1.0 + 1e-12) && inner > 0.0 && uncovered == 0 &&
                      shared == 0;
    ok = ok && good;
    inner_ratio.push_back(inner / eps);
    out.measured[fmt(eps)] = {{"points", ps.size()},          {"expected", expect},
                              {"max_r_outer_over_eps", outer / eps}, {"min_r_inner_over_eps", inner / eps},
                              {"uncovered_samples", uncovered}, {"multiply_covered_samples", shared}};
    sum << "eps " << fmt(eps) << ": r_out/eps " << fmt(outer / eps) << ", r_in/eps " << fmt(inner / eps) << "; ";
  }
  const double lo = *std::min_element(inner_ratio.begin(), inner_ratio.end());
  const double hi = *std::max_element(inner_ratio.begin(), inner_ratio.end());
  const bool stable = lo >= (1.0 - cfg.drift) * hi;
  out.measured["inner_ratio_spread"] = lo / hi;
  out.passed = ok && stable;
  out.summary = sum.str() + "inner spread " + fmt(lo / hi);
  return out;
}

FrameOptions frame_options(int max_degree) {
  FrameOptions fo;
  fo.max_rule_degree = max_degree;
  return fo;
}

// 7. Tight frame: Parseval and pointwise reconstruction.
Outcome crit_parseval(const RunConfig& cfg) {
  Outcome out;
  SplitMix64 rng(cfg.seed ^ 0x7);
  bool ok = true;
  double worst_gap = 0.0, worst_rec = 0.0;
  for (double mu : {0.0, 0.5, 1.0}) {
    const NeedletFrame frame = build_frame(mu, 2, cfg.frame_levels, frame_options(64));
    Eigen::MatrixXd grid(2, 200);
    for (int q = 0; q < 200; ++q) grid.col(q) = rng.ball_point(2);
    double gap_mu = 0.0, rec_mu = 0.0;
    for (int i = 0; i < cfg.polynomials; ++i) {
      const Polynomial f = random_polynomial(rng, 2, 8 - i % 9);
      const BallFunction bf = f.as_function();
      const ParsevalReport rep = parseval_check(frame, bf);
      const CoefficientSet c = analyze(frame, bf);
      const Eigen::VectorXd s = synthesize(frame, c, grid);
      double err = 0.0, scale = 0.0;
      for (int q = 0; q < 200; ++q) {
        const double fx = f(grid.col(q));
        err = std::max(err, std::abs(s[q] - fx));
        scale = std::max(scale, std::abs(fx));
      }
      gap_mu = std::max(gap_mu, rep.rel_gap);
      rec_mu = std::max(rec_mu, err / std::max(scale, 1e-300));
    }
    Json levels = Json::array();
    for (const FrameLevel& l : frame.levels)
      levels.push_back({{"j", l.j}, {"knots", l.knot_count()}, {"rule_degree", l.has_rule() ? l.rule_degree : 0}});
    out.measured[fmt(mu)] = {{"max_rel_gap", gap_mu}, {"max_reconstruction_error", rec_mu}, {"levels", levels}};
    worst_gap = std::max(worst_gap, gap_mu);
    worst_rec = std::max(worst_rec, rec_mu);
  }
  ok = worst_gap < cfg.tol_parseval && worst_rec < cfg.tol_reconstruction;
  out.passed = ok;
  out.summary = "max Parseval gap " + fmt(worst_gap) + ", max reconstruction error " + fmt(worst_rec) + " (" +
                std::to_string(cfg.polynomials) + " polynomials per mu, J = " + std::to_string(cfg.frame_levels) + ")";
  return out;
}

// 8. Needlet decay across levels 3..5 and norm bracket.
Outcome crit_decay(const RunConfig& cfg) {
  Outcome out;
  const int k = 5;
  const NeedletFrame frame = build_frame(cfg.mu, 2, 5, frame_options(128));
  const Eigen::MatrixXd grid = polar_grid(81, 160);
  const std::vector<Point> targets = {pt(0, 0), pt(0.5, 0.3), pt(0.9, 0), pt(0.99, 0.05)};
  std::map<int, double> ratio;
  double nmin = 1e300, nmax = 0.0;
  for (int j = 1; j <= 5; ++j) {
    const FrameLevel& level = frame.levels[j];
    const double scale = std::ldexp(1.0, j);
    double sup = 0.0;
    for (const Point& t : targets) {
      const Eigen::Index knot = level.rule->points.locate(t);
      const auto xi = level.rule->nodes().col(knot);
      const double norm = needlet_norm(frame, j, knot);
      nmin = std::min(nmin, norm);
      nmax = std::max(nmax, norm);
      out.measured["norms"].push_back({{"j", j}, {"knot", knot}, {"norm", norm}});
      if (j < 3) continue;
      Eigen::VectorXd vals(grid.cols());
      parallel_for<Eigen::Index>(grid.cols(), [&](Eigen::Index q) {
        const auto x = grid.col(q);
        vals[q] = std::abs(needlet_eval(frame, j, knot, x)) * std::sqrt(weight_calW(frame.params, scale, x)) *
                  std::pow(1.0 + scale * ball_distance(x, xi), k) / std::pow(scale, 0.5 * frame.params.d);
      });
      sup = std::max(sup, vals.maxCoeff());
    }
    if (j >= 3) {
      ratio[j] = sup;
      out.measured["ratio"][std::to_string(j)] = sup;
    }
  }
  const double growth = std::max(ratio[4], ratio[5]) / ratio[3];
  out.measured["growth"] = growth;
  out.measured["norm_range"] = {nmin, nmax};
  out.passed = growth < cfg.decay_growth && nmin >= cfg.norm_lo && nmax <= cfg.norm_hi;
  out.summary = "decay ratio j=3,4,5: " + fmt(ratio[3]) + ", " + fmt(ratio[4]) + ", " + fmt(ratio[5]) +
                " (growth " + fmt(growth) + "); needlet norms in [" + fmt(nmin) + ", " + fmt(nmax) + "]";
  return out;
}

// 9. Ball metric inequalities on random pairs.
Outcome crit_metric(const RunConfig& cfg) {
  Outcome out;
  SplitMix64 rng(cfg.seed ^ 0x9);
  const double slack = cfg.tol_metric;
  auto sample = [&] {
    // half the samples hug the boundary sphere
    if (rng.uniform() < 0.5) return Point(rng.ball_point(2));
    return Point(rng.direction(2) * (1.0 - std::pow(rng.uniform(), 4.0) * 1e-3));
  };
  long fails[4] = {0, 0, 0, 0};
  const double lowest = -std::numeric_limits<double>::infinity();
  double worst[4] = {lowest, lowest, lowest, lowest};
  for (int s = 0; s < 10000; ++s) {
    const Point x = sample(), y = sample(), z = sample();
    const double dxy = ball_distance(x, y), dyx = ball_distance(y, x);
    const double hx = std::sqrt(std::max(0.0, 1.0 - x.squaredNorm()));
    const double hy = std::sqrt(std::max(0.0, 1.0 - y.squaredNorm()));
    const double e1 = std::abs(x.norm() - y.norm()) - dxy * (hx + hy) / std::sqrt(2.0);
    const double e2 = std::abs(hx - hy) - std::sqrt(2.0) * dxy;
    const double e3 = std::abs(dxy - dyx);
    const double e4 = ball_distance(x, z) - dxy - ball_distance(y, z);
    const double e[4] = {e1, e2, e3, e4};
    for (int i = 0; i < 4; ++i) {
      worst[i] = std::max(worst[i], e[i]);
      if (e[i] > slack) ++fails[i];
    }
  }
  const char* names[4] = {"norm_dist1", "norm_dist2", "symmetry", "triangle"};
  for (int i = 0; i < 4; ++i) out.measured[names[i]] = {{"failures", fails[i]}, {"max_excess", worst[i]}};
  out.passed = fails[0] + fails[1] + fails[2] + fails[3] == 0;
  out.summary = "10000 triples: failures " + std::to_string(fails[0]) + "/" + std::to_string(fails[1]) + "/" +
                std::to_string(fails[2]) + "/" + std::to_string(fails[3]) + ", max excess " +
                fmt(std::max({worst[0], worst[1], worst[2], worst[3]})) + " (slack " + fmt(slack) + ")";
  return out;
}

// 10. Christoffel function against n^{-d} calW along a radius.
Outcome crit_christoffel(const RunConfig& cfg) {
  Outcome out;
  bool ok = true;
  std::ostringstream sum;
  for (double mu : {0.0, 0.5, 1.0}) {
    const BallWeightParams params = BallWeightParams::make(mu, 2);
    std::map<int, double> sup;
    double competitor_excess = 0.0;
    // n = 64 is reported only, to show where the sequence is heading
    for (int n : {8, 16, 32, 64}) {
      const ChristoffelEvaluator e(params, n);
      double s = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double r = std::sin(0.5 * std::numbers::pi * i / 200);
        const Point x = pt(r, 0);
        s = std::max(s, e.lambda(x) / (std::pow(n, -2.0) * weight_calW(params, n, x)));
      }
      sup[n] = s;
      out.measured[fmt(mu)]["ratio_sup"][std::to_string(n)] = s;
      if (n == 64) continue;
      // extremal property: Lambda_n(xi) <= int P_xi^2 dm for the competitor with P_xi(xi) = 1
      const CompetitorParams cp = competitor_params(params, n);
      const BallQuadrature quad = ball_quadrature(mu, 2, 2 * (2 * cp.k * cp.m));
      for (double r : {0.0, 0.7, 0.99}) {
        const Point xi = pt(r, 0);
        const double energy = quad.integrate([&](const auto& x) {
          const double v = localized_poly(cp.k, cp.m, xi, x);
          return v * v;
        });
        competitor_excess = std::max(competitor_excess, e.lambda(xi) / energy - 1.0);
      }
    }
    const bool trend = sup[16] <= (1.0 + cfg.drift) * sup[8] && sup[32] <= (1.0 + cfg.drift) * sup[16];
    const bool extremal = competitor_excess <= 1e-9;
    ok = ok && trend && extremal;
    out.measured[fmt(mu)]["competitor_excess"] = competitor_excess;
    sum << "mu=" << fmt(mu) << " sup " << fmt(sup[8]) << "/" << fmt(sup[16]) << "/" << fmt(sup[32]) << " ("
        << fmt(sup[64]) << " at 64)" << (trend ? "" : " GROWS") << "; ";
  }
  out.passed = ok;
  out.summary = sum.str() + "(n = 8/16/32, drift limit " + fmt(cfg.drift) + ")";
  return out;
}

using CriterionFn = Outcome (*)(const RunConfig&);

const std::vector<CriterionFn>& criterion_functions() {
  static const std::vector<CriterionFn> fns = {crit_jacobi,   crit_kernel,    crit_reproduction, crit_localization,
                                               crit_cubature, crit_partition, crit_parseval,     crit_decay,
                                               crit_metric,   crit_christoffel};
  return fns;
}

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = {"jacobi",    "kernel",   "reproduction", "localization",
                                                 "cubature",  "partition", "parseval",    "decay",
                                                 "metric",    "christoffel"};
  return names;
}

RunConfig parse_config(const std::string& text, RunConfig cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const std::map<std::string, double*> reals = {
      {"mu", &cfg.mu},
      {"tol_jacobi", &cfg.tol_jacobi},
      {"tol_kernel", &cfg.tol_kernel},
      {"tol_reproduction", &cfg.tol_reproduction},
      {"tol_exactness", &cfg.tol_exactness},
      {"tol_parseval", &cfg.tol_parseval},
      {"tol_reconstruction", &cfg.tol_reconstruction},
      {"tol_metric", &cfg.tol_metric},
      {"localization_growth", &cfg.localization_growth},
      {"decay_growth", &cfg.decay_growth},
      {"drift", &cfg.drift},
      {"endpoint_ratio", &cfg.endpoint_ratio},
      {"norm_lo", &cfg.norm_lo},
      {"norm_hi", &cfg.norm_hi},
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty value for " + key);
    if (auto it = reals.find(key); it != reals.end()) {
      *it->second = parse_number(key, value);
    } else if (key == "d") {
      cfg.d = static_cast<int>(parse_integer(key, value));
    } else if (key == "seed") {
      const long v = parse_integer(key, value);
      if (v < 0) throw ConfigError("config: seed must be nonnegative");
      cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "n") {
      cfg.n = static_cast<int>(parse_integer(key, value));
    } else if (key == "J") {
      cfg.J = static_cast<int>(parse_integer(key, value));
    } else if (key == "cutoff") {
      cfg.cutoff = value;
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "polynomials") {
      cfg.polynomials = static_cast<int>(parse_integer(key, value));
    } else if (key == "frame_levels") {
      cfg.frame_levels = static_cast<int>(parse_integer(key, value));
    } else if (key == "report") {
      cfg.report = value;
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.mu >= 0.0) || !std::isfinite(cfg.mu)) throw ConfigError("config: mu must be >= 0");
  if (cfg.d < 2) throw ConfigError("config: d must be >= 2");
  if (cfg.n < 0) throw ConfigError("config: n must be >= 0");
  if (cfg.J < 0) throw ConfigError("config: J must be >= 0");
  if (cfg.cutoff != "a" && cfg.cutoff != "b") throw ConfigError("config: cutoff must be a or b");
  const std::pair<const char*, double> positive[] = {
      {"tol_jacobi", cfg.tol_jacobi},       {"tol_kernel", cfg.tol_kernel},
      {"tol_reproduction", cfg.tol_reproduction}, {"tol_exactness", cfg.tol_exactness},
      {"tol_parseval", cfg.tol_parseval},   {"tol_reconstruction", cfg.tol_reconstruction},
      {"tol_metric", cfg.tol_metric},       {"localization_growth", cfg.localization_growth},
      {"decay_growth", cfg.decay_growth},   {"drift", cfg.drift},
      {"endpoint_ratio", cfg.endpoint_ratio}, {"norm_lo", cfg.norm_lo},
      {"norm_hi", cfg.norm_hi}};
  for (auto [name, v] : positive)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("config: ") + name + " must be positive");
  if (cfg.drift >= 1.0) throw ConfigError("config: drift must be below 1");
  if (cfg.norm_lo >= cfg.norm_hi) throw ConfigError("config: norm_lo must be below norm_hi");
  if (cfg.polynomials < 1) throw ConfigError("config: polynomials must be positive");
  if (cfg.frame_levels < 5 || cfg.frame_levels > 8)
    throw ConfigError("config: frame_levels must lie in [5, 8] (parseval needs 2^(J-2) > 8)");
}

std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const std::vector<std::string>& only,
                                            void (*on_result)(const CriterionResult&)) {
  validate(cfg);
  const auto& names = criterion_names();
  for (const std::string& n : only)
    if (std::find(names.begin(), names.end(), n) == names.end())
      throw ConfigError("unknown criterion '" + n + "'");
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), names[i]) == only.end()) continue;
    CriterionResult r;
    r.id = static_cast<int>(i) + 1;
    r.name = names[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = criterion_functions()[i](cfg);
      r.passed = o.passed;
      r.summary = std::move(o.summary);
      r.measured = std::move(o.measured);
    } catch (const std::exception& e) {
      r.passed = false;
      r.summary = std::string("error: ") + e.what();
      r.measured = {{"error", e.what()}};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

Json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"summary", r.summary}, {"measured", r.measured}};
}

std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "[%s] %2d %-13s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
  char tail[32];
  std::snprintf(tail, sizeof tail, " (%.1f s)", r.seconds);
  return std::string(head) + r.summary + tail;
}

}  // namespace ballneedlets
