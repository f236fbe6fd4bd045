#include <cmath>

#include "doctest.h"

#include "ballneedlets/cutoff.hpp"
#include "ballneedlets/random.hpp"

using namespace ballneedlets;

TEST_CASE("type a: flat on [0,1], zero from 2, monotone between") {
  const Cutoff a = make_type_a();
  for (double t : {0.0, 0.3, 1.0}) CHECK(a(t) == 1.0);
  for (double t : {2.0, 2.5, 100.0}) CHECK(a(t) == 0.0);
  double prev = 1.0;
  for (int i = 1; i < 200; ++i) {
    const double v = a(1.0 + i / 200.0);
    CHECK(v <= prev);
    CHECK(v > 0.0);
    prev = v;
  }
  CHECK(a(1.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("type b: support and dyadic partition of unity of squares") {
  const Cutoff b = make_type_b();
  CHECK(b(0.5) == 0.0);
  CHECK(b(2.0) == 0.0);
  CHECK(b(0.0) == 0.0);
  CHECK(b(1.0) == doctest::Approx(1.0));
  SplitMix64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double t = std::exp(rng.uniform(0.0, std::log(1e6)));
    double s = 0.0;
    for (int j = 0; j <= 25; ++j) s += std::pow(b(t / std::ldexp(1.0, j)), 2);
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("type b is positive on [3/5, 5/3]") {
  const Cutoff b = make_type_b();
  double lo = 1.0;
  for (double t = 0.6; t <= 5.0 / 3.0; t += 1e-3) lo = std::min(lo, b(t));
  CHECK(lo > 0.0);
  for (double t = 0.5; t <= 1.0; t += 0.01) CHECK(b(t) * b(t) + b(2 * t) * b(2 * t) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("smooth transition is symmetric and flat at the ends") {
  for (double s : {0.01, 0.2, 0.5, 0.77, 0.999})
    CHECK(smooth_transition(s) + smooth_transition(1.0 - s) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(smooth_transition(-1.0) == 0.0);
  CHECK(smooth_transition(1.5) == 1.0);
  CHECK(smooth_transition(1e-3) < 1e-300);
  CHECK(smooth_step_seed(0.0) == 0.0);
  CHECK(smooth_step_seed(1.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("cutoff parsing and errors") {
  CHECK(parse_cutoff_kind("a") == CutoffKind::TypeA);
  CHECK(parse_cutoff_kind("B") == CutoffKind::TypeB);
  CHECK(to_string(CutoffKind::TypeB) == "b");
  CHECK_THROWS_AS(parse_cutoff_kind("c"), std::invalid_argument);
  CHECK_THROWS_AS(make_type_a()(-0.1), std::invalid_argument);
  CHECK(make_type_b().support_lo() == 0.5);
  CHECK(make_type_a().smoothness() == Cutoff::kInfiniteSmoothness);
}
