#include "ballneedlets/basis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ballneedlets/orthopoly.hpp"
#include "ballneedlets/parallel.hpp"

namespace ballneedlets {

namespace {

void compositions(int d, int k, int pos, Eigen::VectorXi& cur, std::vector<Eigen::VectorXi>& out) {
  if (pos == d - 1) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (int v = k; v >= 0; --v) {
    cur[pos] = v;
    compositions(d, k - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<Eigen::VectorXi> graded_indices(int d, int n) {
  std::vector<Eigen::VectorXi> out;
  Eigen::VectorXi cur(d);
  for (int k = 0; k <= n; ++k) compositions(d, k, 0, cur, out);
  return out;
}

double monomial_moment(double mu, const Eigen::VectorXi& alpha) {
  const int d = static_cast<int>(alpha.size());
  double log_num = std::lgamma(mu + 0.5);
  double half_sum = 0.0;
  for (int i = 0; i < d; ++i) {
    if (alpha[i] % 2 != 0) return 0.0;
    log_num += std::lgamma(0.5 * (alpha[i] + 1));
    half_sum += 0.5 * (alpha[i] + 1);
  }
  const double b = BallWeightParams::make(mu, d).b;
  return b * std::exp(log_num - std::lgamma(half_sum + mu + 0.5));
}

double monomial(const PointRef& x, const Eigen::VectorXi& alpha) {
  double v = 1.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) v *= std::pow(x[i], alpha[i]);
  return v;
}

BallBasis::BallBasis(double mu, int d, int n) : mu_(mu), d_(d), n_(n) {
  if (n < 0) throw std::invalid_argument("build_basis: negative degree");
  if (d < 1) throw std::invalid_argument("build_basis: dimension must be positive");
  if (!(mu >= 0.0)) throw std::invalid_argument("build_basis: mu must be nonnegative");
  indices_ = graded_indices(d, n);
  offsets_.assign(n + 2, 0);
  for (const auto& a : indices_) ++offsets_[a.sum() + 1];
  for (int k = 1; k <= n + 1; ++k) offsets_[k] += offsets_[k - 1];

  const std::size_t total = static_cast<std::size_t>(d) * (n + 1) * (n + 1);
  rec_a_.assign(total, 0.0);
  rec_c_.assign(total, 0.0);
  for (int j = 0; j < d; ++j) {
    for (int tail = 0; tail <= n; ++tail) {
      const double a = mu + tail + 0.5 * (d - 1 - j) - 0.5;
      for (int k = 2; k <= n - tail; ++k) {
        // 2k(k+2a)(2k+2a-2) P_k = (2k+2a-1)(2k+2a)(2k+2a-2) x P_{k-1} - 2(k+a-1)^2(2k+2a) P_{k-2},
        // then divided through by P_k(1) with P_{k-1}(1)/P_k(1) = k/(k+a).
        const double s = 2 * k + 2 * a;
        const double c1 = 2.0 * k * (k + 2 * a) * (s - 2);
        const double c2 = (s - 1) * s * (s - 2);
        const double c3 = 2.0 * (k + a - 1) * (k + a - 1) * s;
        const double r1 = k / (k + a);
        const double r2 = r1 * (k - 1) / (k - 1 + a);
        rec_a_[slot(j, tail, k)] = c2 / c1 * r1;
        rec_c_[slot(j, tail, k)] = c3 / c1 * r2;
      }
    }
  }

  scale_ = Eigen::VectorXd::Ones(size());
  const BallQuadrature quad = ball_quadrature(mu, d, 2 * n);
  const Eigen::MatrixXd v = evaluate(quad.nodes);
  for (Eigen::Index k = 0; k < size(); ++k) {
    const double h = v.row(k).array().square().matrix().dot(quad.weights);
    if (!(h > 0.0) || !std::isfinite(h)) {
      std::ostringstream msg;
      msg << "build_basis: basis function " << k << " has norm " << h
          << " at degree " << n << "; reduce the degree";
      throw std::runtime_error(msg.str());
    }
    scale_[k] = 1.0 / std::sqrt(h);
  }
}

bool BallBasis::sign_invariant(Eigen::Index k) const {
  const Eigen::VectorXi& a = indices_[k];
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] % 2 != 0) return false;
  return true;
}

std::vector<Eigen::Index> BallBasis::sign_invariant_indices() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index k = 0; k < size(); ++k)
    if (sign_invariant(k)) out.push_back(k);
  return out;
}

void BallBasis::factor_tables(const PointRef& x, std::vector<double>& t) const {
  t.assign(static_cast<std::size_t>(d_) * (n_ + 1) * (n_ + 1), 0.0);
  double rho2 = 1.0;
  for (int j = 0; j < d_; ++j) {
    const double xj = x[j];
    const int max_tail = (j == d_ - 1) ? 0 : n_;
    for (int tail = 0; tail <= max_tail; ++tail) {
      const int kmax = n_ - tail;
      double* h = &t[slot(j, tail, 0)];
      h[0] = 1.0;
      if (kmax >= 1) h[1] = xj;
      for (int k = 2; k <= kmax; ++k)
        h[k] = rec_a_[slot(j, tail, k)] * xj * h[k - 1] - rec_c_[slot(j, tail, k)] * rho2 * h[k - 2];
    }
    rho2 = std::max(0.0, rho2 - xj * xj);
  }
}

void BallBasis::raw_values(const PointRef& x, std::vector<double>& t, double* out) const {
  factor_tables(x, t);
  const Eigen::Index N = size();
  for (Eigen::Index k = 0; k < N; ++k) {
    const Eigen::VectorXi& a = indices_[k];
    double v = 1.0;
    int tail = 0;
    for (int j = d_ - 1; j >= 0; --j) {
      v *= t[slot(j, tail, a[j])];
      tail += a[j];
    }
    out[k] = v;
  }
}

void BallBasis::evaluate_into(const PointRef& x, double* out) const {
  if (x.size() != d_) throw std::invalid_argument("BallBasis: point dimension mismatch");
  std::vector<double> t;
  raw_values(x, t, out);
  for (Eigen::Index k = 0; k < size(); ++k) out[k] *= scale_[k];
}

Eigen::VectorXd BallBasis::evaluate(const PointRef& x) const {
  Eigen::VectorXd out(size());
  evaluate_into(x, out.data());
  return out;
}

Eigen::MatrixXd BallBasis::evaluate(const Eigen::MatrixXd& pts) const {
  if (pts.rows() != d_) throw std::invalid_argument("BallBasis: point dimension mismatch");
  Eigen::MatrixXd out(size(), pts.cols());
  parallel_for<Eigen::Index>(pts.cols(), [&](Eigen::Index p) {
    evaluate_into(pts.col(p), out.col(p).data());
  });
  return out;
}

Eigen::MatrixXd BallBasis::evaluate_rows(const Eigen::MatrixXd& pts,
                                         const std::vector<Eigen::Index>& rows) const {
  if (pts.rows() != d_) throw std::invalid_argument("BallBasis: point dimension mismatch");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), pts.cols());
  parallel_for<Eigen::Index>(pts.cols(), [&](Eigen::Index p) {
    Eigen::VectorXd all(size());
    evaluate_into(pts.col(p), all.data());
    for (std::size_t r = 0; r < rows.size(); ++r) out(static_cast<Eigen::Index>(r), p) = all[rows[r]];
  });
  return out;
}

double BallBasis::certify() {
  const BallQuadrature quad = ball_quadrature(mu_, d_, 2 * n_ + 10);
  const Eigen::MatrixXd v = evaluate(quad.nodes);
  const Eigen::MatrixXd gram = v * quad.weights.asDiagonal() * v.transpose();
  gram_residual_ = (gram - Eigen::MatrixXd::Identity(size(), size())).cwiseAbs().maxCoeff();
  if (!(gram_residual_ < 1e-9)) {
    std::ostringstream msg;
    msg << "build_basis: Gram residual " << gram_residual_ << " at degree " << n_
        << " exceeds 1e-9; reduce the degree";
    throw std::runtime_error(msg.str());
  }
  return gram_residual_;
}

BallBasis build_basis(double mu, int d, int n, bool certify) {
  BallBasis basis(mu, d, n);
  if (certify) basis.certify();
  return basis;
}

}  // namespace ballneedlets
