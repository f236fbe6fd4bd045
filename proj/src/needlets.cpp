#include "ballneedlets/needlets.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "ballneedlets/orthopoly.hpp"
#include "ballneedlets/parallel.hpp"

namespace ballneedlets {

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

Eigen::VectorXd level_coefficients(const Cutoff& c, int j) {
  if (j == 0) return Eigen::VectorXd::Ones(1);
  const int n = 1 << (j - 1);
  Eigen::VectorXd out(2 * n);
  for (int nu = 0; nu < 2 * n; ++nu) out[nu] = c(static_cast<double>(nu) / n);
  return out;
}

// True when a(nu / 2^{j-1}) vanishes for every nu <= degree.
bool level_vanishes(const FrameLevel& level, int degree) {
  const int top = std::min(degree, level.kernel_degree());
  for (int nu = 0; nu <= top; ++nu)
    if (level.coefficients[nu] != 0.0) return false;
  return true;
}

// Coefficients of f in the first N basis functions, sum_q w_q f(x_q) phi_k(x_q).
Eigen::VectorXd spectral_coefficients(const BallBasis& basis, Eigen::Index N, const BallFunction& f,
                                      const BallQuadrature& quad) {
  const Eigen::Index Q = quad.size();
  const int workers = std::max(1, thread_count());
  std::vector<Eigen::VectorXd> partial(workers, Eigen::VectorXd::Zero(N));
  parallel_for<Eigen::Index>(workers, [&](Eigen::Index w) {
    Eigen::VectorXd buf(basis.size());
    const Eigen::Index lo = Q * w / workers, hi = Q * (w + 1) / workers;
    for (Eigen::Index q = lo; q < hi; ++q) {
      basis.evaluate_into(quad.nodes.col(q), buf.data());
      partial[w].noalias() += (quad.weights[q] * f.f(quad.nodes.col(q))) * buf.head(N);
    }
  }, Eigen::Index(1));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(N);
  for (const auto& v : partial) acc += v;
  return acc;
}

const FrameLevel& level_at(const NeedletFrame& frame, int j) {
  if (j < 0 || j >= static_cast<int>(frame.levels.size()))
    throw std::out_of_range("needlet frame: level " + std::to_string(j) + " out of range");
  return frame.levels[j];
}

int resolve_levels(const NeedletFrame& frame, std::optional<int> J_used) {
  const int J = J_used.value_or(frame.J);
  if (J < 0 || J > frame.J)
    throw std::invalid_argument("needlet frame: J_used must lie in [0, " + std::to_string(frame.J) + "]");
  return J;
}

}  // namespace

double FrameLevel::kernel_value(const PointRef& x, const PointRef& y) const {
  if (!kernel) return 1.0;
  return (*kernel)(x, y);
}

int FrameLevel::lowest_degree() const {
  for (int nu = 0; nu <= kernel_degree(); ++nu)
    if (coefficients[nu] != 0.0) return nu;
  return kernel_degree() + 1;
}

std::uint64_t NeedletFrame::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  fnv_mix(h, &params.mu, sizeof(double));
  fnv_mix(h, &params.d, sizeof(int));
  fnv_mix(h, &J, sizeof(int));
  for (const FrameLevel& level : levels) {
    fnv_mix(h, &level.j, sizeof(int));
    if (!level.rule) continue;
    const Eigen::Index n = level.rule->size();
    fnv_mix(h, &n, sizeof(n));
    fnv_mix(h, level.rule->normalized_weights.data(), sizeof(double) * n);
  }
  return h;
}

int NeedletFrame::max_ruled_degree() const {
  int deg = 0;
  for (const FrameLevel& level : levels)
    if (level.rule) deg = std::max(deg, level.kernel_degree());
  return deg;
}

const BallBasis& NeedletFrame::basis() const {
  if (!basis_) basis_.emplace(params.mu, params.d, max_ruled_degree());
  return *basis_;
}

const Eigen::MatrixXd& NeedletFrame::knot_basis(int j) const {
  auto it = knot_basis_.find(j);
  if (it != knot_basis_.end()) return it->second;
  const FrameLevel& level = level_at(*this, j);
  if (!level.rule) throw std::out_of_range("needlet frame: level " + std::to_string(j) + " has no rule");
  const BallBasis& b = basis();
  std::vector<Eigen::Index> rows(b.block_start(level.kernel_degree() + 1));
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = static_cast<Eigen::Index>(k);
  return knot_basis_.emplace(j, b.evaluate_rows(level.rule->nodes(), rows)).first->second;
}

NeedletFrame build_frame(double mu, int d, int J, const FrameOptions& opts) {
  if (J < 0) throw std::invalid_argument("build_frame: J must be nonnegative");
  if (J > 20) throw std::invalid_argument("build_frame: J too large");
  NeedletFrame frame;
  frame.params = BallWeightParams::make(mu, d);
  frame.J = J;
  for (int j = 0; j <= J; ++j) {
    FrameLevel level;
    level.j = j;
    level.kernel_n = j == 0 ? 0 : 1 << (j - 1);
    level.rule_degree = 1 << (j + 2);
    level.coefficients = level_coefficients(frame.cutoff, j);
    if (j > 0) level.kernel.emplace(frame.params, level.kernel_n, frame.cutoff);
    if (level.rule_degree <= opts.max_rule_degree) {
      CubatureOptions co = opts.cubature;
      if (auto it = opts.delta_hints.find(j); it != opts.delta_hints.end()) co.delta_hint = it->second;
      level.rule = build_cubature(mu, d, level.rule_degree, co);
    }
    frame.levels.push_back(std::move(level));
  }
  return frame;
}

double needlet_eval(const NeedletFrame& frame, int j, Eigen::Index knot, const PointRef& x) {
  const FrameLevel& level = level_at(frame, j);
  if (!level.rule || knot < 0 || knot >= level.rule->size())
    throw std::out_of_range("needlet_eval: unknown knot " + std::to_string(knot) + " at level " +
                            std::to_string(j));
  const double w = std::sqrt(level.rule->normalized_weights[knot]);
  return w * level.kernel_value(x, level.rule->nodes().col(knot));
}

double needlet_norm(const NeedletFrame& frame, int j, Eigen::Index knot) {
  const FrameLevel& level = level_at(frame, j);
  const BallQuadrature quad = ball_quadrature(frame.params.mu, frame.params.d, 2 * level.kernel_degree());
  const double sq = quad.integrate([&](const auto& x) {
    const double v = needlet_eval(frame, j, knot, x);
    return v * v;
  });
  return std::sqrt(sq);
}

double CoefficientSet::l2_norm() const {
  double s = 0.0;
  for (const auto& v : levels) s += v.squaredNorm();
  return std::sqrt(s);
}

CoefficientSet& CoefficientSet::operator+=(const CoefficientSet& other) {
  if (other.frame_fingerprint != frame_fingerprint || other.levels.size() != levels.size())
    throw std::invalid_argument("CoefficientSet: frame mismatch");
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (levels[j].size() != other.levels[j].size())
      throw std::invalid_argument("CoefficientSet: frame mismatch");
    levels[j] += other.levels[j];
  }
  return *this;
}

CoefficientSet& CoefficientSet::operator*=(double s) {
  for (auto& v : levels) v *= s;
  return *this;
}

CoefficientSet operator+(CoefficientSet a, const CoefficientSet& b) { return a += b; }
CoefficientSet operator*(double s, CoefficientSet a) { return a *= s; }

CoefficientSet analyze(const NeedletFrame& frame, const BallFunction& f, std::optional<int> J_used,
                       AnalysisMethod method) {
  const int J = resolve_levels(frame, J_used);
  if (!f.f) throw std::invalid_argument("analyze: empty function");
  if (f.degree && *f.degree < 0) throw std::invalid_argument("analyze: negative degree");

  CoefficientSet out;
  out.frame_fingerprint = frame.fingerprint();
  out.integrand_degree = f.degree;
  out.method = method == AnalysisMethod::Spectral ? "spectral" : "direct";
  out.levels.resize(J + 1);

  std::vector<int> active;
  for (int j = 0; j <= J; ++j) {
    const FrameLevel& level = frame.levels[j];
    if (f.degree && level_vanishes(level, *f.degree)) {
      if (level.rule) out.levels[j] = Eigen::VectorXd::Zero(level.rule->size());
      continue;
    }
    if (!level.rule) {
      std::ostringstream msg;
      msg << "analyze: level " << j << " has no cubature rule (degree " << level.rule_degree
          << " above the frame cap) but its coefficients do not vanish"
          << (f.degree ? " for degree " + std::to_string(*f.degree) : std::string(" for black-box input"));
      throw std::invalid_argument(msg.str());
    }
    active.push_back(j);
  }
  if (active.empty()) return out;

  const int mu_d = frame.params.d;
  const double mu = frame.params.mu;
  if (method == AnalysisMethod::Spectral) {
    int top = 0;
    for (int j : active) top = std::max(top, frame.levels[j].kernel_degree());
    if (f.degree) top = std::min(top, *f.degree);
    const BallBasis& basis = frame.basis();
    const Eigen::Index N = basis.block_start(top + 1);
    Eigen::VectorXd fhat;
    if (f.degree) {
      fhat = spectral_coefficients(basis, N, f, ball_quadrature(mu, mu_d, *f.degree + top));
    } else {
      const int q = 2 * (1 << J) + 16;
      fhat = spectral_coefficients(basis, N, f, ball_quadrature(mu, mu_d, q));
      const Eigen::VectorXd fine = spectral_coefficients(basis, N, f, ball_quadrature(mu, mu_d, 2 * q));
      out.integration_error = (fine - fhat).cwiseAbs().maxCoeff();
    }
    for (int j : active) {
      const FrameLevel& level = frame.levels[j];
      const Eigen::Index Nj = std::min(N, basis.block_start(level.kernel_degree() + 1));
      Eigen::VectorXd h = fhat.head(Nj);
      for (Eigen::Index k = 0; k < Nj; ++k) h[k] *= level.coefficients[basis.degree_of(k)];
      const Eigen::MatrixXd& kb = frame.knot_basis(j);
      out.levels[j] = level.rule->normalized_weights.cwiseSqrt().cwiseProduct(
          kb.topRows(Nj).transpose() * h);
    }
  } else {
    for (int j : active) {
      const FrameLevel& level = frame.levels[j];
      const CubatureRule& rule = *level.rule;
      auto coefficients_with = [&](const BallQuadrature& quad) {
        Eigen::VectorXd fv(quad.size());
        for (Eigen::Index q = 0; q < quad.size(); ++q) fv[q] = quad.weights[q] * f.f(quad.nodes.col(q));
        Eigen::VectorXd c(rule.size());
        parallel_for<Eigen::Index>(rule.size(), [&](Eigen::Index k) {
          const auto xi = rule.nodes().col(k);
          double s = 0.0;
          for (Eigen::Index q = 0; q < quad.size(); ++q) s += fv[q] * level.kernel_value(quad.nodes.col(q), xi);
          c[k] = std::sqrt(rule.normalized_weights[k]) * s;
        });
        return c;
      };
      if (f.degree) {
        out.levels[j] = coefficients_with(ball_quadrature(mu, mu_d, *f.degree + level.kernel_degree()));
      } else {
        const int q = 2 * (1 << J) + 16;
        out.levels[j] = coefficients_with(ball_quadrature(mu, mu_d, q));
        const Eigen::VectorXd fine = coefficients_with(ball_quadrature(mu, mu_d, 2 * q));
        out.integration_error =
            std::max(out.integration_error, (fine - out.levels[j]).cwiseAbs().maxCoeff());
      }
    }
  }
  return out;
}

namespace {

void check_coefficients(const NeedletFrame& frame, const CoefficientSet& c) {
  if (c.frame_fingerprint != frame.fingerprint() || c.levels_used() > frame.J + 1)
    throw std::invalid_argument("synthesize: coefficients belong to a different frame");
  for (int j = 0; j < c.levels_used(); ++j) {
    const Eigen::Index expect = frame.levels[j].knot_count();
    if (c.levels[j].size() != 0 && c.levels[j].size() != expect)
      throw std::invalid_argument("synthesize: coefficients belong to a different frame");
  }
}

}  // namespace

Eigen::VectorXd synthesis_expansion(const NeedletFrame& frame, const CoefficientSet& c) {
  check_coefficients(frame, c);
  const BallBasis& basis = frame.basis();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(basis.size());
  for (int j = 0; j < c.levels_used(); ++j) {
    if (c.levels[j].size() == 0) continue;
    const FrameLevel& level = frame.levels[j];
    const Eigen::MatrixXd& kb = frame.knot_basis(j);
    Eigen::VectorXd part = kb * level.rule->normalized_weights.cwiseSqrt().cwiseProduct(c.levels[j]);
    for (Eigen::Index k = 0; k < part.size(); ++k) g[k] += level.coefficients[basis.degree_of(k)] * part[k];
  }
  return g;
}

double synthesize(const NeedletFrame& frame, const CoefficientSet& c, const PointRef& x) {
  return frame.basis().evaluate(x).dot(synthesis_expansion(frame, c));
}

Eigen::VectorXd synthesize(const NeedletFrame& frame, const CoefficientSet& c, const Eigen::MatrixXd& pts) {
  const Eigen::VectorXd g = synthesis_expansion(frame, c);
  return frame.basis().evaluate(pts).transpose() * g;
}

double synthesize_direct(const NeedletFrame& frame, const CoefficientSet& c, const PointRef& x) {
  check_coefficients(frame, c);
  double s = 0.0;
  for (int j = 0; j < c.levels_used(); ++j)
    for (Eigen::Index k = 0; k < c.levels[j].size(); ++k)
      if (c.levels[j][k] != 0.0) s += c.levels[j][k] * needlet_eval(frame, j, k, x);
  return s;
}

ParsevalReport parseval_check(const NeedletFrame& frame, const BallFunction& f, std::optional<int> J_used) {
  const int J = resolve_levels(frame, J_used);
  if (!f.degree) throw std::invalid_argument("parseval_check: a declared polynomial degree is required");
  if (!(std::ldexp(1.0, J - 2) > *f.degree))
    throw std::invalid_argument("parseval_check: truncation requires 2^(J-2) > deg f");
  ParsevalReport rep;
  const BallQuadrature quad = ball_quadrature(frame.params.mu, frame.params.d, 2 * *f.degree);
  rep.norm_f = std::sqrt(quad.integrate([&](const auto& x) {
    const double v = f.f(x);
    return v * v;
  }));
  rep.norm_coeffs = analyze(frame, f, J).l2_norm();
  const double gap = std::abs(rep.norm_f - rep.norm_coeffs);
  rep.rel_gap = rep.norm_f > 0.0 ? gap / rep.norm_f : gap;
  return rep;
}

double semidiscrete_sum(const NeedletFrame& frame, const BallFunction& f, const PointRef& x,
                        std::optional<int> J_used) {
  const int J = resolve_levels(frame, J_used);
  if (!f.degree) throw std::invalid_argument("semidiscrete_sum: a declared polynomial degree is required");
  const double mu = frame.params.mu;
  const int d = frame.params.d;
  double total = 0.0;
  for (int j = 0; j <= J; ++j) {
    const FrameLevel& level = frame.levels[j];
    if (level_vanishes(level, *f.degree)) continue;
    const int kd = level.kernel_degree();
    const BallQuadrature inner = ball_quadrature(mu, d, *f.degree + kd);
    const BallQuadrature outer = ball_quadrature(mu, d, 2 * kd);
    Eigen::VectorXd fv(inner.size());
    for (Eigen::Index q = 0; q < inner.size(); ++q) fv[q] = inner.weights[q] * f.f(inner.nodes.col(q));
    Eigen::VectorXd g(outer.size());
    parallel_for<Eigen::Index>(outer.size(), [&](Eigen::Index p) {
      double s = 0.0;
      for (Eigen::Index q = 0; q < inner.size(); ++q)
        s += fv[q] * level.kernel_value(outer.nodes.col(p), inner.nodes.col(q));
      g[p] = s;
    });
    double s = 0.0;
    for (Eigen::Index p = 0; p < outer.size(); ++p)
      s += outer.weights[p] * g[p] * level.kernel_value(x, outer.nodes.col(p));
    total += s;
  }
  return total;
}

}  // namespace ballneedlets
