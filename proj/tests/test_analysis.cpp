#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "cwave/analysis.hpp"
#include "cwave/errors.hpp"
#include "helpers.hpp"

using namespace cwave;
using cwave::test::box;

TEST_CASE("order fit recovers an exact power law") {
  std::vector<std::pair<int, double>> pts;
  for (int N : {50, 100, 200, 400}) pts.emplace_back(N, 3.0 * std::pow(2.0 / N, 2.5));
  const FitResult f = fit_order(pts, 2.0);
  CHECK(f.gamma == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(f.c0 == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.used == 4);
  CHECK(f.max_residual <= 1e-12);
  CHECK(f.warnings.empty());

  const FitResult g = fit_order(pts, 2.0, 100);
  CHECK(g.used == 3);
  CHECK(g.gamma == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("order fit errors and exclusions") {
  CHECK_THROWS_AS(fit_order({{10, 1e-2}, {20, 1e-3}}), ConfigError);
  CHECK_THROWS_AS(fit_order({{10, 1e-2}, {10, 1e-3}, {10, 1e-4}}), ConfigError);
  CHECK_THROWS_AS(fit_order({{10, 1e-2}, {20, 0.0}, {40, 1e-4}}), ConfigError);
  const double inf = std::numeric_limits<double>::infinity();
  const FitResult f = fit_order({{10, 1e-2}, {20, 1e-3}, {40, 1e-4}, {80, 0.0}, {160, inf}});
  CHECK(f.used == 3);
  CHECK(f.warnings.size() == 2);
  CHECK(f.gamma == doctest::Approx(1 / std::log10(2.0)).epsilon(1e-10));
}

TEST_CASE("theoretical orders") {
  const auto t = theoretical_orders(1.5, 4);
  CHECK(t.gamma[0] == doctest::Approx(1.2));
  CHECK(t.gamma[1] == doctest::Approx(0.8));
  CHECK(t.gamma[2] == doctest::Approx(0.4));
  const auto u = theoretical_orders(5.5, 4);
  CHECK(u.gamma[0] == doctest::Approx(4));
  CHECK(u.gamma[1] == doctest::Approx(4));
  CHECK(u.gamma[2] == doctest::Approx(3.6));
  CHECK(u.in_range[1]);
  CHECK_FALSE(theoretical_orders(6.5, 4).in_range[1]);
  const auto s = theoretical_orders(1.5, 2);
  CHECK(s.gamma[0] == doctest::Approx(1));
  CHECK(s.gamma[1] == doctest::Approx(2.0 / 3));
  CHECK(s.gamma[2] == doctest::Approx(1.0 / 3));
  CHECK(theoretical_orders(5.5, 2).gamma[0] == doctest::Approx(2));
  CHECK_THROWS_AS(theoretical_orders(1.5, 3), ConfigError);
}

TEST_CASE("scientific format of the tables") {
  CHECK(short_sci(0.00475) == ".475E-2");
  CHECK(short_sci(0.201) == ".201");
  CHECK(short_sci(0.0000406) == ".406E-4");
  CHECK(short_sci(123.4) == ".123E3");
  CHECK(short_sci(0.99996) == ".100E1");
  CHECK(short_sci(-0.00475) == "-.475E-2");
  CHECK(short_sci(0.0) == "0");
  CHECK(short_sci(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("report layout") {
  CHECK(build_report({}, "csv") == "label,scheme,norm,c0,gamma_pr,gamma_th,gamma_th2\n");
  const std::string md = build_report({}, "md");
  CHECK(std::count(md.begin(), md.end(), '\n') == 2);
  CHECK_THROWS_AS(build_report({}, "xml"), ConfigError);

  ConvergenceReport r;
  r.label = "phi1";
  r.scheme = "nonuniform";
  r.Ns = {100, 200, 400};
  r.errors = {{1e-3, 2e-3, 3e-3}, {1e-4, 2e-4, 3e-4}, {1e-5, 2e-5, 3e-5}};
  r.th = theoretical_orders(5.5, 4);
  r.mesh = MeshStats{0.01, 1.0, 0.9, 1.1, 100};
  r.M_over_N = 2.5;
  r.starred = true;
  std::array<FitResult, 3> fits;
  for (auto& f : fits) {
    f.c0 = 12.5;
    f.gamma = 3.3219;
  }
  r.fits = fits;
  const std::string csv = build_report({r}, "csv");
  CHECK(csv.find("r_100,r_200,r_400,h_ratio,rho_min,rho_max,M_over_N") != std::string::npos);
  CHECK(csv.find("phi1,nonuniform,Ch,12.5*,3.322*,4.000,,2.000000e-03,2.000000e-04,2.000000e-05,100,0.9000,1.1000,2.5") !=
        std::string::npos);
  const std::string m = build_report({r}, "md");
  CHECK(m.find("| .200E-2 |") != std::string::npos);
}

TEST_CASE("error norms of known residuals") {
  const GridPtr g = box({10});
  const TimeMesh tm = TimeMesh::uniform(1.0, 5);
  SUBCASE("constant residual") {
    NormObserver obs([](const Point&, double) { return 0.25; }, g, tm);
    for (int m = 0; m <= 5; ++m) obs(m, GridFunction(g));
    CHECK(obs.result().Ch == doctest::Approx(0.25));
    CHECK(obs.result().L2h == doctest::Approx(norm_h(GridFunction(g, 0.25))));
    CHECK(obs.result().Eh == doctest::Approx(0).epsilon(1e-15));
  }
  SUBCASE("residual linear in time") {
    NormObserver obs([](const Point&, double t) { return t; }, g, tm);
    for (int m = 0; m <= 5; ++m) obs(m, GridFunction(g));
    CHECK(obs.result().Eh == doctest::Approx(norm_h(GridFunction(g, 1.0))));
    CHECK(obs.result().Ch == doctest::Approx(1));
  }
  SUBCASE("non-finite solution") {
    NormObserver obs([](const Point&, double) { return 0.0; }, g, tm);
    obs(0, GridFunction(g, std::numeric_limits<double>::quiet_NaN()));
    CHECK(std::isinf(obs.result().Ch));
  }
}

TEST_CASE("gradient norm of a linear function") {
  const GridPtr g = box({10});
  GridFunction w(g);
  w.sample([](const Point& x) { return 3 * x[0]; });
  CHECK(tilde_norm_gradient(w) == doctest::Approx(3));
  const GridPtr g2 = box({8, 8});
  GridFunction w2(g2);
  w2.sample([](const Point& x) { return x[0]; });
  // only nodes with interior y contribute: 7 of 8 rows of width 1/8
  CHECK(tilde_norm_gradient(w2) == doctest::Approx(std::sqrt(7.0 / 8)));
}

TEST_CASE("error norms grow with the trajectory") {
  const ProblemSpec p = make_smooth_nonuniform_problem();
  const GridPtr g = uniform_grid(p, 20);
  const TimeMesh tm = TimeMesh::uniform(p.T, 20);
  SchemeConfig cfg;
  cfg.store_trajectory = true;
  RunResult r = run(p, cfg, g, tm);
  const ErrorTriple full = error_norms(r, p.exact, g, tm);
  r.trajectory.resize(10);
  const ErrorTriple part = error_norms(r, p.exact, g, tm);
  CHECK(part.L2h <= full.L2h);
  CHECK(part.Ch <= full.Ch);
  CHECK(part.Eh <= full.Eh);
  CHECK(full.Ch > 0);
}

TEST_CASE("study guards") {
  CHECK_THROWS_AS(table1_study(1.5, SchemeKind::Compact1D, {101}), ConfigError);
  const ConvergenceReport r = table1_study(2.5, SchemeKind::Compact1D, {20, 40});
  CHECK(r.label == "2.5");
  CHECK_FALSE(r.fits);
  CHECK(r.errors.size() == 2);
}
