#include <doctest.h>

#include <cmath>
#include <variant>

#include "cwave/errors.hpp"
#include "cwave/piecewise.hpp"

using namespace cwave;

TEST_CASE("piece values") {
  CHECK(P(0, -1) == 0.0);
  CHECK(P(0, 0) == 0.5);
  CHECK(P(0, 2) == 1.0);
  CHECK(P(1, 0.25) == doctest::Approx(0.5));
  CHECK(P(1, -0.25) == doctest::Approx(0.5));
  CHECK(P(2, 0.5) == doctest::Approx(1));
  CHECK(P(2, -0.5) == doctest::Approx(-1));
  CHECK(P(3, -0.5) == doctest::Approx(1));
  CHECK(Q(0, 0) == 0.5);
  CHECK(Q(0, -1e-9) == 0.0);
  CHECK(Q(2, -1) == 0.0);
  CHECK(Q(2, 0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(P(-1, 0.1), std::invalid_argument);
  CHECK(std::holds_alternative<Atom>(eval_P(-1, 0.3)));
  const auto q = eval_Q(-1, 0.2, 0.5);
  REQUIRE(std::holds_alternative<Atom>(q));
  CHECK(std::get<Atom>(q).location == 0.5);
}

TEST_CASE("antiderivatives differentiate back") {
  const double d = 1e-6;
  for (int k = -1; k <= 4; ++k)
    for (double y : {-0.4, -0.13, 0.07, 0.31}) {
      const double lower = k < 0 ? 0.0 : P(k, y);
      if (k >= 0) CHECK((P_int1(k, y + d) - P_int1(k, y - d)) / (2 * d) == doctest::Approx(lower).epsilon(1e-6));
      CHECK((P_int2(k, y + d) - P_int2(k, y - d)) / (2 * d) == doctest::Approx(P_int1(k, y)).epsilon(1e-6));
    }
  for (int l = 0; l <= 3; ++l)
    for (double tau : {0.05, 0.4}) {
      CHECK((Q_int1(l, tau + d) - Q_int1(l, tau - d)) / (2 * d) == doctest::Approx(Q(l, tau)).epsilon(1e-6));
      CHECK((Q_int2(l, tau + d) - Q_int2(l, tau - d)) / (2 * d) == doctest::Approx(Q_int1(l, tau)).epsilon(1e-6));
    }
}

TEST_CASE("hat averages in space") {
  const AxisMesh ax = build_uniform_axis(10, 1.0, -0.5); // node 5 sits at 0
  const double h = 0.1;
  CHECK(hat_average_P(-1, ax, 5) == doctest::Approx(1 / h));
  CHECK(hat_average_P(-1, ax, 3) == 0.0);
  CHECK(hat_average_P(0, ax, 5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(hat_average_P(0, ax, 8) == doctest::Approx(1).epsilon(1e-14));
  CHECK(hat_average_P(0, ax, 2) == doctest::Approx(0).epsilon(1e-14));
  // linear pieces away from the kink are reproduced, quadratics pick up h^2/6
  const double x = ax.x(7);
  CHECK(hat_average_P(1, ax, 7) == doctest::Approx(P(1, x)).epsilon(1e-13));
  CHECK(hat_average_P(2, ax, 7) == doctest::Approx(4 * (x * x + h * h / 6)).epsilon(1e-13));
  CHECK(hat_average_x({{2.0, 0}, {-1.0, 1}}, ax, 8) == doctest::Approx(2 - P(1, ax.x(8))).epsilon(1e-13));

  const AxisMesh off = build_uniform_axis(11, 1.1, -0.55);
  CHECK_THROWS_AS(hat_average_P(-1, off, 5), MeshError);
  CHECK(hat_average_P(-1, off, 2) == 0.0);
}

TEST_CASE("hat averages in time") {
  const TimeMesh tm = TimeMesh::uniform(1.0, 10);
  const double ht = 0.1;
  CHECK(hat_average_Q(-1, 0.5, tm, 5) == doctest::Approx(1 / ht));
  CHECK(hat_average_Q(-1, 0.5, tm, 4) == 0.0);
  for (int l = 0; l <= 4; ++l)
    CHECK(hat_average_Q(l, 0.5, tm, 5) == doctest::Approx(std::pow(ht, l) / ((l + 1.0) * (l + 2.0))).epsilon(1e-12));
  CHECK(hat_average_Q(0, 0.5, tm, 8) == doctest::Approx(1));
  CHECK(hat_average_Q(2, 0.5, tm, 2) == 0.0);
  CHECK_THROWS_AS(hat_average_Q(0, 0.5, tm, 0), std::out_of_range);
  CHECK_THROWS_AS(hat_average_Q(-1, 0.55, tm, 5), MeshError);
  CHECK(one_sided_average_Q(0, 0.0, tm) == doctest::Approx(1));
  CHECK(one_sided_average_Q(-1, 0.5, tm) == 0.0);
}

TEST_CASE("box average of a quadratic") {
  const double x = 0.3, h = 0.05;
  CHECK(box_average({{1.0, 2}}, x, h) == doctest::Approx(4 * (x * x + h * h / 3)).epsilon(1e-13));
  CHECK(box_average({{3.0, 0}}, x, h) == doctest::Approx(3));
}

TEST_CASE("whole-line solution matches the data") {
  PiecewiseData d;
  d.u0 = {{1.0, 2}, {0.3, 1}};
  d.u1 = {{0.7, 1}};
  d.f = {{1.5, 0, 1}};
  d.t_star = 0.4;
  const double a = 0.6, e = 1e-5;
  for (double x : {-0.3, -0.07, 0.11, 0.42}) {
    CHECK(whole_line_solution(d, a, x, 0) == doctest::Approx(eval_terms(d.u0, x)).epsilon(1e-13));
    const double ut = (whole_line_solution(d, a, x, e) - whole_line_solution(d, a, x, -e)) / (2 * e);
    CHECK(ut == doctest::Approx(eval_terms(d.u1, x)).epsilon(1e-6));
  }
  // PDE residual off the characteristics
  const double hh = 1e-3;
  for (auto [x, t] : {std::pair{0.37, 0.1}, std::pair{0.3, 0.8}, std::pair{-0.45, 0.9}}) {
    auto u = [&](double xx, double tt) { return whole_line_solution(d, a, xx, tt); };
    const double utt = (u(x, t + hh) - 2 * u(x, t) + u(x, t - hh)) / (hh * hh);
    const double uxx = (u(x + hh, t) - 2 * u(x, t) + u(x - hh, t)) / (hh * hh);
    CHECK(std::abs(utt - a * a * uxx - eval_terms(d.f, x, t, d.t_star)) <= 1e-4);
  }
  CHECK_THROWS_AS(whole_line_solution(PiecewiseData{{{1.0, -1}}, {}, {}, 0.5}, a, 0.1, 0.1), Unsupported);
}
