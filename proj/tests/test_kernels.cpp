#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "cwave/errors.hpp"
#include "cwave/kernels.hpp"
#include "cwave/operators.hpp"
#include "helpers.hpp"

using namespace cwave;
using cwave::test::box;
using cwave::test::random_fn;

TEST_CASE("tridiagonal factor solves against a dense matrix") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n : {1, 2, 10, 33}) {
    std::vector<double> lo(static_cast<size_t>(n)), di(static_cast<size_t>(n)), up(static_cast<size_t>(n));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      lo[static_cast<size_t>(i)] = U(rng);
      up[static_cast<size_t>(i)] = U(rng);
      di[static_cast<size_t>(i)] = 3 + U(rng);
      A(i, i) = di[static_cast<size_t>(i)];
      if (i > 0) A(i, i - 1) = lo[static_cast<size_t>(i)];
      if (i + 1 < n) A(i, i + 1) = up[static_cast<size_t>(i)];
    }
    const TriFactor f(lo, di, up);
    Eigen::VectorXd b = Eigen::VectorXd::Random(n);
    Eigen::VectorXd x = b;
    f.solve(x.data(), 1);
    CHECK((A * x - b).norm() <= 1e-12 * b.norm());
    Eigen::VectorXd y(n);
    f.apply(x.data(), y.data(), 1);
    CHECK((y - b).norm() <= 1e-12 * b.norm());
  }
}

TEST_CASE("zero pivot is reported") {
  CHECK_THROWS_AS(TriFactor({0, 1}, {1, 1}, {1, 0}), SingularSystemError);
  CHECK_THROWS_AS(TriFactor({0}, {0}, {0}), SingularSystemError);
  CHECK_THROWS_AS(TriFactor({0, 0}, {1}, {0}), SingularSystemError);
}

TEST_CASE("fast and direct sine transforms agree") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1, 1);
  for (size_t n : {1u, 2u, 7u, 63u, 255u, 300u}) {
    std::vector<double> x(n), a(n), b(n), back(n);
    for (auto& v : x) v = U(rng);
    kernels::dst_direct(x.data(), a.data(), n);
    kernels::dst_fast(x.data(), b.data(), n);
    for (size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
    kernels::dst_fast(b.data(), back.data(), n);
    for (size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) <= 1e-12);
  }
}

TEST_CASE("sine transform diagonalizes the second difference") {
  const size_t n = 9;
  std::vector<double> e(n), out(n);
  for (size_t j = 0; j < n; ++j) e[j] = std::sin(std::numbers::pi * 3.0 * static_cast<double>(j + 1) / (n + 1));
  kernels::dst_direct(e.data(), out.data(), n);
  for (size_t k = 0; k < n; ++k) {
    if (k == 2)
      CHECK(std::abs(out[k]) > 1);
    else
      CHECK(std::abs(out[k]) <= 1e-13);
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(3);
  for (auto g : {box({40}), box({33, 41}), box({12, 9, 15}), box({60, 70, 5})}) {
    const GridFunction w = random_fn(g, rng, false);
    for (int k = 0; k < g->dim(); ++k) {
      const LineStencil st = s_stencil(g->axis(k));
      GridFunction a(g), b(g);
      kernels::apply_axis(w.data(), a.data(), g->shape(), k, st, 1.0, Exec::Serial);
      kernels::apply_axis(w.data(), b.data(), g->shape(), k, st, 1.0, Exec::Parallel);
      CHECK(cwave::test::max_diff(a, b) == 0.0);

      const TriFactor f = factor_from_stencil(st);
      GridFunction c = w, d = w;
      kernels::thomas_axis(c.data(), g->shape(), k, f, Exec::Serial);
      kernels::thomas_axis(d.data(), g->shape(), k, f, Exec::Parallel);
      CHECK(cwave::test::max_diff(c, d) == 0.0);

      GridFunction p = w, q = w;
      kernels::dst_axis(p.data(), g->shape(), k, Exec::Serial);
      kernels::dst_axis(q.data(), g->shape(), k, Exec::Parallel);
      CHECK(cwave::test::max_diff(p, q) <= 1e-12);
    }
  }
}

TEST_CASE("axis stencil needs three nodes") {
  std::vector<double> in(2), out(2);
  LineStencil st{{0, 0}, {1, 1}, {0, 0}};
  CHECK_THROWS_AS(kernels::apply_axis(in.data(), out.data(), Index3{2, 1, 1}, 0, st, 1.0, Exec::Serial), MeshError);
}
