#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "ballneedlets/needlets.hpp"
#include "ballneedlets/polynomial.hpp"
#include "ballneedlets/random.hpp"

using namespace ballneedlets;

namespace {

const NeedletFrame& small_frame() {
  static const NeedletFrame frame = [] {
    FrameOptions o;
    o.max_rule_degree = 32;
    return build_frame(1.0, 2, 4, o);
  }();
  return frame;
}

}  // namespace

TEST_CASE("frame layout") {
  const NeedletFrame& f = small_frame();
  REQUIRE(f.levels.size() == 5u);
  for (int j = 0; j <= 4; ++j) {
    CHECK(f.levels[j].j == j);
    CHECK(f.levels[j].rule_degree == (4 << j));
    CHECK(f.levels[j].has_rule() == (j <= 3));
  }
  CHECK(f.levels[0].kernel_degree() == 0);
  CHECK(f.levels[3].kernel_degree() == 7);
  CHECK(f.levels[3].lowest_degree() == 3);
  CHECK(f.max_ruled_degree() == 7);
  // squared level coefficients sum to one in every degree
  for (int nu = 0; nu <= 7; ++nu) {
    double s = 0.0;
    for (const FrameLevel& l : f.levels)
      if (nu <= l.kernel_degree()) s += l.coefficients[nu] * l.coefficients[nu];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("parseval identity and reconstruction for low-degree polynomials") {
  const NeedletFrame& f = small_frame();
  SplitMix64 rng(41);
  for (int i = 0; i < 10; ++i) {
    const Polynomial p = random_polynomial(rng, 2, i % 4);
    const BallFunction bf = p.as_function();
    const ParsevalReport rep = parseval_check(f, bf);
    CHECK(rep.rel_gap < 1e-10);
    const CoefficientSet c = analyze(f, bf);
    for (int q = 0; q < 5; ++q) {
      const Point x = rng.ball_point(2);
      CHECK(synthesize(f, c, PointRef(x)) == doctest::Approx(p(x)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("spectral and direct analysis agree; synthesis routes agree") {
  const NeedletFrame& f = small_frame();
  SplitMix64 rng(43);
  const Polynomial p = random_polynomial(rng, 2, 3);
  const CoefficientSet a = analyze(f, p.as_function(), std::nullopt, AnalysisMethod::Spectral);
  const CoefficientSet b = analyze(f, p.as_function(), std::nullopt, AnalysisMethod::Direct);
  REQUIRE(a.levels_used() == b.levels_used());
  for (int j = 0; j < a.levels_used(); ++j) {
    REQUIRE(a.levels[j].size() == b.levels[j].size());
    if (a.levels[j].size()) CHECK((a.levels[j] - b.levels[j]).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(a.frame_fingerprint == f.fingerprint());
  const Point x = rng.ball_point(2);
  CHECK(synthesize(f, a, PointRef(x)) == doctest::Approx(synthesize_direct(f, a, x)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("constants live on level 0; low degrees vanish on fine levels") {
  const NeedletFrame& f = small_frame();
  BallFunction c{[](const PointRef&) { return 2.5; }, 0};
  const CoefficientSet cc = analyze(f, c);
  const FrameLevel& l0 = f.levels[0];
  for (Eigen::Index k = 0; k < l0.knot_count(); ++k)
    CHECK(cc.levels[0][k] == doctest::Approx(2.5 * std::sqrt(l0.rule->normalized_weights[k])).epsilon(1e-12));
  for (int j = 1; j < cc.levels_used(); ++j)
    if (cc.levels[j].size()) CHECK(cc.levels[j].cwiseAbs().maxCoeff() < 1e-13);
  // <psi_xi, q> = 0 for deg q < 2^{j-2}: degree 1 at level 3
  SplitMix64 rng(61);
  const Polynomial q = random_polynomial(rng, 2, 1);
  const CoefficientSet cq = analyze(f, q.as_function(), 3, AnalysisMethod::Direct);
  CHECK(cq.levels[3].cwiseAbs().maxCoeff() < 1e-9);
  CHECK(cq.levels[1].cwiseAbs().maxCoeff() > 1e-6);
  const CoefficientSet zero = analyze(f, BallFunction{[](const PointRef&) { return 0.0; }, 0});
  CHECK(zero.l2_norm() == 0.0);
}

TEST_CASE("coefficients are linear") {
  const NeedletFrame& f = small_frame();
  SplitMix64 rng(47);
  const Polynomial p = random_polynomial(rng, 2, 3), q = random_polynomial(rng, 2, 3);
  BallFunction sum{[&](const PointRef& x) { return 2.0 * p(x) + q(x); }, 3};
  const CoefficientSet lhs = analyze(f, sum);
  const CoefficientSet rhs = 2.0 * analyze(f, p.as_function()) + analyze(f, q.as_function());
  for (int j = 0; j < lhs.levels_used(); ++j)
    if (lhs.levels[j].size()) CHECK((lhs.levels[j] - rhs.levels[j]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("needlet evaluation and norms") {
  const NeedletFrame& f = small_frame();
  const FrameLevel& l = f.levels[2];
  const Point xi = l.rule->nodes().col(0);
  const double lam = l.rule->normalized_weights[0];
  CHECK(needlet_eval(f, 2, 0, xi) == doctest::Approx(std::sqrt(lam) * l.kernel_value(xi, xi)));
  const double norm = needlet_norm(f, 2, 0);
  CHECK(norm > 0.0);
  CHECK(norm <= 1.0 + 1e-12);  // tight frame elements have norm at most one
  CHECK_THROWS_AS(needlet_eval(f, 2, l.knot_count(), xi), std::out_of_range);
  CHECK_THROWS_AS(needlet_eval(f, 4, 0, xi), std::out_of_range);
}

TEST_CASE("analysis refuses what it cannot compute exactly") {
  const NeedletFrame& f = small_frame();
  SplitMix64 rng(53);
  // degree 6 reaches level 4, which has no rule
  CHECK_THROWS(analyze(f, random_polynomial(rng, 2, 6).as_function()));
  CHECK_THROWS(parseval_check(f, random_polynomial(rng, 2, 4).as_function()));
  // with fewer levels it is fine
  CHECK_NOTHROW(analyze(f, random_polynomial(rng, 2, 6).as_function(), 3));
}

TEST_CASE("black-box input reports an integration error estimate") {
  const NeedletFrame& f = small_frame();
  BallFunction g{[](const PointRef& x) { return std::exp(-x.squaredNorm()); }, std::nullopt};
  const CoefficientSet c = analyze(f, g, 3);
  CHECK(c.integration_error >= 0.0);
  CHECK(c.integration_error < 1e-8);
  CHECK_FALSE(c.integrand_degree.has_value());
}

TEST_CASE("semidiscrete sum reproduces polynomials") {
  const NeedletFrame& f = small_frame();
  SplitMix64 rng(59);
  const Polynomial p = random_polynomial(rng, 2, 3);
  const Point x = rng.ball_point(2);
  CHECK(semidiscrete_sum(f, p.as_function(), x) == doctest::Approx(p(x)).epsilon(1e-9).scale(1.0));
}
