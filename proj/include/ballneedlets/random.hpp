#pragma once

// SplitMix64: 64-bit state, state += 0x9e3779b97f4a7c15 and the standard
// xor-shift-multiply finalizer. Used for every randomized check so a failing
// seed reproduces exactly.

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace ballneedlets {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Standard normal by Box-Muller (one value per call).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform point in the closed unit ball of R^d.
  Eigen::VectorXd ball_point(int d) {
    Eigen::VectorXd v(d);
    double n2 = 0.0;
    do {
      for (int i = 0; i < d; ++i) v[i] = normal();
      n2 = v.squaredNorm();
    } while (n2 == 0.0);
    return v * (std::pow(uniform(), 1.0 / d) / std::sqrt(n2));
  }

  /// Uniform direction on S^{d-1}.
  Eigen::VectorXd direction(int d) {
    Eigen::VectorXd v(d);
    do {
      for (int i = 0; i < d; ++i) v[i] = normal();
    } while (v.squaredNorm() == 0.0);
    return v.normalized();
  }

 private:
  std::uint64_t state_;
};

}  // namespace ballneedlets
