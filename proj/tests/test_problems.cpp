#include <doctest.h>

#include <cmath>
#include <random>

#include "cwave/analysis.hpp"
#include "cwave/errors.hpp"
#include "cwave/problems.hpp"
#include "cwave/schemes.hpp"

using namespace cwave;

namespace {

double residual(const ProblemSpec& p, double x, double t, double h) {
  auto u = [&](double xx, double tt) { return p.exact({xx, 0, 0}, tt); };
  const double utt = (u(x, t + h) - 2 * u(x, t) + u(x, t - h)) / (h * h);
  const double uxx = (u(x + h, t) - 2 * u(x, t) + u(x - h, t)) / (h * h);
  return utt - p.a[0] * p.a[0] * uxx - p.f({x, 0, 0}, t);
}

} // namespace

TEST_CASE("catalog problems: traces and initial data") {
  for (double alpha : {0.5, 1.5, 2.5, 3.5, 4.5, 5.5}) {
    CAPTURE(alpha);
    const ProblemSpec p = make_example(alpha);
    if (alpha < 2) CHECK(p.g({-0.5, 0, 0}, 0.0) == doctest::Approx(0).epsilon(1e-15));
    CHECK(p.g({-0.5, 0, 0}, 0.0) == doctest::Approx(p.u0({-0.5, 0, 0})));
    for (int i = 1; i <= 100; ++i) {
      const double t = i / 100.0;
      CHECK(std::abs(p.exact({-0.5, 0, 0}, t) - p.g({-0.5, 0, 0}, t)) <= 1e-11);
      CHECK(std::abs(p.exact({0.5, 0, 0}, t) - p.g({0.5, 0, 0}, t)) <= 1e-11);
    }
    for (double x : {-0.4, -0.1, 0.2, 0.45}) CHECK(p.exact({x, 0, 0}, 0.0) == doctest::Approx(p.u0({x, 0, 0})));
  }
}

TEST_CASE("catalog coefficients") {
  const ProblemSpec p = make_example(4.5);
  REQUIRE(p.pieces);
  CHECK(p.pieces->u1[0].coef == 3.7);
  CHECK(p.pieces->f[0].coef == 13);
  CHECK(p.pieces->f[1].coef == 31);
  CHECK(p.a[0] == doctest::Approx(1 / std::sqrt(5.0)));

  const ProblemSpec q = make_example(0.5);
  CHECK(q.pieces->u1_has_atom());
  CHECK(q.pieces->f_has_atom());
  CHECK_FALSE(q.u1);
  CHECK_FALSE(q.f);
  CHECK(q.u0({0.1, 0, 0}) == 1.0);
  CHECK(q.u0({-0.1, 0, 0}) == 0.0);

  CHECK_THROWS_AS(make_example(1.0), Unsupported);
  CHECK_THROWS_AS(make_example(6.5), Unsupported);
}

TEST_CASE("exact solutions satisfy the equation") {
  const ProblemSpec s = make_smooth_nonuniform_problem();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> X(-0.45, 0.45), T(0.05, 0.95);
  for (int i = 0; i < 20; ++i) CHECK(std::abs(residual(s, X(rng), T(rng), 1e-3)) <= 1e-3);
  for (double x : {-0.5, 0.5})
    for (double t : {0.1, 0.7}) CHECK(s.exact({x, 0, 0}, t) == doctest::Approx(s.g({x, 0, 0}, t)).epsilon(1e-13));

  for (double alpha : {3.5, 4.5, 5.5}) {
    CAPTURE(alpha);
    const ProblemSpec p = make_example(alpha);
    const double scale = std::abs(p.exact({0.3, 0, 0}, 0.6)) + 1;
    for (int i = 0; i < 20; ++i) CHECK(std::abs(residual(p, X(rng), T(rng), 1e-3)) <= 1e-3 * scale * 100);
  }
}

TEST_CASE("explicit characteristic scheme reproduces the catalog solutions") {
  for (double alpha : {1.5, 2.5, 3.5}) {
    CAPTURE(alpha);
    const ProblemSpec p = make_example(alpha);
    TimeMesh tm;
    const GridPtr g = uniform_grid(p, 20);
    NormObserver obs(p.exact, g, characteristic_time_mesh(p, 20, 10));
    run_explicit_characteristic(p, 20, 10, obs.as_observer(), &tm);
    CHECK(obs.result().Ch <= 1e-12);
  }
}

TEST_CASE("sine-mode problems") {
  const ProblemSpec p = make_sine_mode_problem(2, {1.0, 0.5}, {1, 2, 0});
  CHECK(p.exact({0.0, 0.3, 0}, 0.4) == doctest::Approx(0).epsilon(1e-15));
  CHECK(p.exact({0.3, 0.2, 0}, 0.0) == doctest::Approx(p.u0({0.3, 0.2, 0})));
  CHECK_THROWS_AS(make_sine_mode_problem(4, {1, 1, 1, 1}, {1, 1, 1}), Unsupported);
  CHECK_THROWS_AS(make_sine_mode_problem(2, {1.0}, {1, 1, 0}), ConfigError);
  CHECK_THROWS_AS(make_smooth_nonuniform_problem(1.0), ConfigError);
}

TEST_CASE("problem lookup") {
  for (const auto& n : problem_names()) CHECK(problem_by_name(n).name == n);
  CHECK_THROWS_AS(problem_by_name("E_x"), ConfigError);
  CHECK_THROWS_AS(problem_by_name("nope"), ConfigError);
  CHECK_THROWS_AS(problem_by_name("E_1.0"), Unsupported);
  const GridPtr g = uniform_grid(problem_by_name("sine3d"), 4);
  CHECK(g->dim() == 3);
  CHECK(g->size() == 125);
}
