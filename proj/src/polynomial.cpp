#include "ballneedlets/polynomial.hpp"

#include <memory>
#include <stdexcept>

#include "ballneedlets/basis.hpp"

namespace ballneedlets {

Polynomial::Polynomial(int d, std::vector<Eigen::VectorXi> exponents, std::vector<double> coefficients)
    : d_(d), exps_(std::move(exponents)), coeffs_(std::move(coefficients)) {
  if (exps_.size() != coeffs_.size()) throw std::invalid_argument("Polynomial: size mismatch");
  for (const auto& e : exps_)
    if (e.size() != d || (e.array() < 0).any()) throw std::invalid_argument("Polynomial: bad exponent");
}

int Polynomial::degree() const {
  int deg = 0;
  for (std::size_t k = 0; k < exps_.size(); ++k)
    if (coeffs_[k] != 0.0) deg = std::max(deg, exps_[k].sum());
  return deg;
}

double Polynomial::operator()(const PointRef& x) const {
  if (x.size() != d_) throw std::invalid_argument("Polynomial: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < exps_.size(); ++k) s += coeffs_[k] * monomial(x, exps_[k]);
  return s;
}

BallFunction Polynomial::as_function() const {
  auto self = std::make_shared<const Polynomial>(*this);
  return BallFunction{[self](const PointRef& x) { return (*self)(x); }, degree()};
}

Polynomial random_polynomial(SplitMix64& rng, int d, int degree) {
  if (degree < 0) throw std::invalid_argument("random_polynomial: negative degree");
  std::vector<Eigen::VectorXi> exps = graded_indices(d, degree);
  std::vector<double> coeffs(exps.size());
  for (double& c : coeffs) c = rng.normal();
  return Polynomial(d, std::move(exps), std::move(coeffs));
}

}  // namespace ballneedlets
