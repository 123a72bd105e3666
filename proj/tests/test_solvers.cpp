#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "cwave/errors.hpp"
#include "cwave/operators.hpp"
#include "cwave/schemes.hpp"
#include "cwave/solvers.hpp"
#include "helpers.hpp"

using namespace cwave;
using cwave::test::box;
using cwave::test::random_fn;

TEST_CASE("sine spectrum") {
  const AxisMesh two = build_uniform_axis(2, 1.0, 0);
  const auto mu2 = sine_spectrum(two);
  REQUIRE(mu2.size() == 1);
  CHECK(mu2[0] == doctest::Approx(2 / 0.25));
  const AxisMesh ax = build_uniform_axis(17, 2.0, 0);
  const double h = ax.step();
  double last = 0;
  for (double m : sine_spectrum(ax)) {
    CHECK(m > last);
    CHECK(m < 4 / (h * h));
    last = m;
  }
  CHECK_THROWS_AS(sine_spectrum(AxisMesh({0.0, 0.1, 0.3})), Unsupported);
}

TEST_CASE("tridiagonal solve of the negative second difference against a dense oracle") {
  const GridPtr g = box({12});
  const TriFactor f = factor_from_stencil(lambda_stencil(g->axis(0)));
  const Eigen::MatrixXd L = assemble_dense(g, [](const GridFunction& w) { return lambda_axis(w, 0); });
  std::mt19937_64 rng(1);
  GridFunction rhs = random_fn(g, rng);
  const Eigen::VectorXd x = dense_solve_oracle(L, interior_vector(rhs));
  line_solve(rhs, f, 0);
  CHECK((interior_vector(rhs) - x).cwiseAbs().maxCoeff() <= 1e-12 * x.cwiseAbs().maxCoeff());

  std::vector<double> v(3, 1.0);
  CHECK_THROWS_AS(thomas_solve(f, v), SingularSystemError);
}

TEST_CASE("sine-diagonal solve against a dense oracle") {
  const GridPtr g = box({8, 6});
  const StepOperator op(SchemeKind::Compact2D_sN, g, {1.0, 0.7}, 0.05);
  CHECK(op.handle().kind() == SolverHandle::Kind::Spectral);
  const Eigen::MatrixXd S = assemble_dense(g, [&](const GridFunction& w) { return op.apply_S(w); });
  std::mt19937_64 rng(2);
  for (int i = 0; i < 5; ++i) {
    GridFunction rhs = random_fn(g, rng);
    const Eigen::VectorXd x = dense_solve_oracle(S, interior_vector(rhs));
    op.solve(rhs);
    CHECK((interior_vector(rhs) - x).cwiseAbs().maxCoeff() <= 1e-12);
  }
  GridFunction eig(g, 1.0);
  eig[g->flat({1, 1, 0})] = 0;
  CHECK_THROWS_AS(SolverHandle::spectral(eig), SingularSystemError);
}

TEST_CASE("splitting solve against a dense oracle, in any axis order") {
  for (auto g : {box({7, 9}), box({5, 6, 4})}) {
    std::vector<double> a{1.0, 0.6, 0.8};
    a.resize(static_cast<size_t>(g->dim()));
    const StepOperator op(SchemeKind::Splitting, g, a, 0.04);
    const Eigen::MatrixXd S = assemble_dense(g, [&](const GridFunction& w) { return op.apply_S(w); });
    std::mt19937_64 rng(3);
    const GridFunction rhs = random_fn(g, rng);
    const Eigen::VectorXd x = dense_solve_oracle(S, interior_vector(rhs));
    GridFunction fwd = rhs;
    op.solve(fwd);
    CHECK((interior_vector(fwd) - x).cwiseAbs().maxCoeff() <= 1e-12);

    std::vector<int> order(static_cast<size_t>(g->dim()));
    for (int k = 0; k < g->dim(); ++k) order[static_cast<size_t>(k)] = g->dim() - 1 - k;
    std::vector<TriFactor> rev;
    for (int k : order) rev.push_back(op.handle().factors()[static_cast<size_t>(k)]);
    GridFunction back = rhs;
    splitting_solve(back, rev, Exec::Serial, order);
    CHECK((interior_vector(back) - x).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("dense oracle") {
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, 1, 5);
  CHECK((dense_solve_oracle(Eigen::MatrixXd::Identity(5, 5), b) - b).norm() == 0.0);
  Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(5, 5);
  Z(2, 2) = 0;
  CHECK_THROWS_AS(dense_solve_oracle(Z, b), SingularSystemError);
}

TEST_CASE("interior vectors round trip") {
  const GridPtr g = box({4, 5});
  std::mt19937_64 rng(4);
  const GridFunction w = random_fn(g, rng);
  GridFunction z(g);
  set_interior(z, interior_vector(w));
  CHECK(cwave::test::max_diff(z, w) == 0.0);
  CHECK(interior_vector(w).size() == 12);
  CHECK_THROWS_AS(set_interior(z, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}
