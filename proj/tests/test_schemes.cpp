#include <doctest.h>

#include <cmath>
#include <random>

#include "cwave/analysis.hpp"
#include "cwave/errors.hpp"
#include "cwave/schemes.hpp"
#include "helpers.hpp"

using namespace cwave;
using cwave::test::box;
using cwave::test::interior_max;
using cwave::test::max_diff;
using cwave::test::random_fn;

namespace {

StepInputs zero_inputs(const GridPtr& g) {
  StepInputs in;
  in.v0 = GridFunction(g);
  in.u1N = GridFunction(g);
  in.fN0 = GridFunction(g);
  in.fN = [g](int) { return GridFunction(g); };
  return in;
}

ErrorTriple smooth_errors(int N, SchemeKind kind = SchemeKind::Compact1D) {
  const ProblemSpec p = make_smooth_nonuniform_problem();
  const GridPtr g = uniform_grid(p, N);
  const TimeMesh tm = TimeMesh::uniform(p.T, N);
  NormObserver obs(p.exact, g, tm);
  SchemeConfig cfg;
  cfg.kind = kind;
  run(p, cfg, g, tm, obs.as_observer());
  return obs.result();
}

} // namespace

TEST_CASE("scheme names round trip") {
  for (auto k : {SchemeKind::Compact1D, SchemeKind::Compact2D_sN, SchemeKind::Compact3D_barsN,
                 SchemeKind::CompactND_barAN, SchemeKind::Splitting, SchemeKind::ExplicitCharacteristic,
                 SchemeKind::SecondOrderWeighted, SchemeKind::NonUniformCompact})
    CHECK(scheme_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(scheme_kind_from_string("crank"), ConfigError);
}

TEST_CASE("zero data stays zero") {
  for (auto [kind, g] : {std::pair{SchemeKind::Compact1D, box({10})}, std::pair{SchemeKind::Compact2D_sN, box({6, 7})},
                         std::pair{SchemeKind::Splitting, box({5, 4, 6})}}) {
    std::vector<double> a(static_cast<size_t>(g->dim()), 0.8);
    const StepOperator op(kind, g, a, 0.05);
    const RunResult r = run_steps(op, zero_inputs(g), 20, SchemeConfig{});
    CHECK(r.max_abs == 0.0);
    CHECK(r.levels == 20);
  }
}

TEST_CASE("characteristic step makes the 1D operator the identity") {
  const GridPtr g = box({10});
  const StepOperator op(SchemeKind::Compact1D, g, {0.5}, 0.1 / 0.5);
  std::mt19937_64 rng(1);
  const GridFunction w = random_fn(g, rng);
  CHECK(interior_max(op.apply_S(w) - w) <= 1e-15);
}

TEST_CASE("explicit scheme: d'Alembert recursion and exactness") {
  // with u1 = 0, f = 0, g = 0 the step is v^{m+1}_k = v^m_{k-1} + v^m_{k+1} - v^{m-1}_k
  const ProblemSpec p = make_sine_mode_problem(1, {1.0}, {2, 0, 0});
  std::vector<GridFunction> lv;
  run_explicit_characteristic(p, 16, 12, [&](int, const GridFunction& v) { lv.push_back(v); });
  REQUIRE(lv.size() == 13);
  for (size_t m = 1; m + 1 < lv.size(); ++m)
    for (size_t k = 1; k < 16; ++k)
      CHECK(lv[m + 1][k] == doctest::Approx(lv[m][k - 1] + lv[m][k + 1] - lv[m - 1][k]).epsilon(1e-12));
  TimeMesh tm;
  const GridPtr g = uniform_grid(p, 16);
  NormObserver obs(p.exact, g, characteristic_time_mesh(p, 16, 12));
  run_explicit_characteristic(p, 16, 12, obs.as_observer(), &tm);
  CHECK(obs.result().Ch <= 1e-12);
  CHECK(tm.step() == doctest::Approx(1.0 / 16));
}

TEST_CASE("non-uniform scheme on a uniform axis equals compact1d") {
  const ProblemSpec p = make_smooth_nonuniform_problem();
  const int N = 40;
  const TimeMesh tm = TimeMesh::uniform(p.T, N);
  const AxisMesh ax = build_graded_axis(builtin_distribution(0), N, 1.0, -0.5);
  std::vector<GridFunction> a, b;
  run_nonuniform(p, ax, tm, [&](int, const GridFunction& v) { a.push_back(v); });
  SchemeConfig cfg;
  cfg.fn0_mode = FN0Mode::Graded;
  run(p, cfg, uniform_grid(p, N), tm, [&](int, const GridFunction& v) { b.push_back(v); });
  REQUIRE(a.size() == b.size());
  for (size_t m = 0; m < a.size(); ++m) CHECK(max_diff(a[m], b[m]) <= 1e-12);
}

TEST_CASE("fourth-order convergence on the smooth problem") {
  const ErrorTriple e50 = smooth_errors(50), e100 = smooth_errors(100);
  CHECK(e50.Ch / e100.Ch == doctest::Approx(16).epsilon(0.15));
  CHECK(e50.L2h / e100.L2h == doctest::Approx(16).epsilon(0.15));
  const ErrorTriple s50 = smooth_errors(50, SchemeKind::SecondOrderWeighted),
                    s100 = smooth_errors(100, SchemeKind::SecondOrderWeighted);
  CHECK(s50.Ch / s100.Ch == doctest::Approx(4).epsilon(0.15));
}

TEST_CASE("catalog example with alpha = 3/2 at N = 200") {
  const ProblemSpec p = make_example(1.5);
  const GridPtr g = uniform_grid(p, 200);
  const TimeMesh tm = TimeMesh::uniform(p.T, 200);
  NormObserver obs(p.exact, g, tm);
  run(p, SchemeConfig{}, g, tm, obs.as_observer());
  CHECK(obs.result().Ch == doctest::Approx(0.475e-2).epsilon(0.02));
}

TEST_CASE("the three-level step is reversible") {
  const GridPtr g = box({9, 8});
  const StepOperator op(SchemeKind::CompactND_barAN, g, {1.0, 0.9}, 0.03);
  std::mt19937_64 rng(2);
  std::vector<GridFunction> v{random_fn(g, rng), random_fn(g, rng)};
  const GridFunction zero(g);
  for (int m = 0; m < 30; ++m) v.push_back(time_step(op, v[v.size() - 2], v.back(), zero, zero));
  GridFunction a = v.back(), b = v[v.size() - 2];
  for (int m = 0; m < 30; ++m) {
    GridFunction c = time_step(op, a, b, zero, zero);
    a = std::move(b);
    b = std::move(c);
  }
  CHECK(max_diff(a, v[1]) <= 1e-10);
  CHECK(max_diff(b, v[0]) <= 1e-10);
}

TEST_CASE("sine modes stay decoupled") {
  const ProblemSpec p = make_sine_mode_problem(2, {1.0, 0.8}, {1, 2, 0});
  const GridPtr g = uniform_grid(p, 16);
  for (auto kind : {SchemeKind::Compact2D_sN, SchemeKind::CompactND_barAN, SchemeKind::Splitting}) {
    SchemeConfig cfg;
    cfg.kind = kind;
    const RunResult r = run(p, cfg, g, TimeMesh::uniform(p.T, 64)); // well inside the stability limit
    GridFunction shape(g);
    shape.sample(p.u0);
    const size_t ref = g->flat({3, 3, 0});
    const double c = r.last[ref] / shape[ref];
    GridFunction scaled = shape;
    scaled *= c;
    CHECK(interior_max(r.last - scaled) <= 1e-12);
  }
}

TEST_CASE("serial and parallel runs agree") {
  const ProblemSpec p = make_sine_mode_problem(3, {1.0, 0.8, 0.6}, {1, 2, 1});
  const GridPtr g = uniform_grid(p, 10);
  SchemeConfig s, q;
  s.kind = q.kind = SchemeKind::Splitting;
  s.exec = Exec::Serial;
  const RunResult a = run(p, s, g, TimeMesh::uniform(p.T, 10)), b = run(p, q, g, TimeMesh::uniform(p.T, 10));
  CHECK(max_diff(a.last, b.last) <= 1e-13);
}

TEST_CASE("blow-up beyond the stability limit is flagged") {
  const ProblemSpec p = make_smooth_nonuniform_problem();
  const AxisMesh ax = build_uniform_axis(200, 1.0, -0.5);
  const int M = select_time_step_count(ax.step(), p.a[0], p.T, 1 / std::sqrt(2.0));
  const RunResult r = run_nonuniform(p, ax, TimeMesh::uniform(p.T, M));
  CHECK(r.blew_up);
  const RunResult ok = run_nonuniform(p, ax, TimeMesh::uniform(p.T, 200));
  CHECK_FALSE(ok.blew_up);
}

TEST_CASE("configuration errors") {
  const GridPtr g2 = box({6, 6});
  CHECK_THROWS_AS(StepOperator(SchemeKind::Compact1D, g2, {1.0, 1.0}, 0.1), ConfigError);
  CHECK_THROWS_AS(StepOperator(SchemeKind::Compact3D_barsN, g2, {1.0, 1.0}, 0.1), ConfigError);
  CHECK_THROWS_AS(StepOperator(SchemeKind::Splitting, g2, {1.0}, 0.1), ConfigError);
  CHECK_THROWS_AS(StepOperator(SchemeKind::Splitting, g2, {1.0, 1.0}, 0.0), ConfigError);
  CHECK_THROWS_AS(StepOperator(SchemeKind::ExplicitCharacteristic, box({6}), {1.0}, 0.1), ConfigError);
  const GridPtr graded = make_grid({build_graded_axis(builtin_distribution(1), 10, 1, 0)});
  CHECK_THROWS_AS(StepOperator(SchemeKind::Compact1D, graded, {1.0}, 0.1), Unsupported);
  CHECK_NOTHROW(StepOperator(SchemeKind::NonUniformCompact, graded, {1.0}, 0.1));

  const ProblemSpec p = make_smooth_nonuniform_problem();
  CHECK_THROWS_AS(build_inputs(p, SchemeConfig{}, g2, TimeMesh::uniform(1, 10)), ConfigError);
  SchemeConfig nodal;
  nodal.u1_mode = U1Mode::Compact;
  CHECK_THROWS_AS(build_inputs(make_example(0.5), nodal, uniform_grid(make_example(0.5), 10), TimeMesh::uniform(1, 10)),
                  ConfigError);
  SchemeConfig avg;
  avg.fn_mode = FNMode::Averaged;
  CHECK_THROWS_AS(build_inputs(p, avg, uniform_grid(p, 10), TimeMesh::uniform(1, 10)), ConfigError);
  CHECK_THROWS_AS(run_steps(StepOperator(SchemeKind::Compact1D, box({6}), {1.0}, 0.1), zero_inputs(box({6})), 0,
                            SchemeConfig{}),
                  ConfigError);
  CHECK_THROWS_AS(characteristic_time_mesh(make_sine_mode_problem(2, {1, 1}, {1, 1, 0}), 10, 5), Unsupported);
}
