#include "cwave/solvers.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cwave/errors.hpp"

namespace cwave {

std::vector<double> sine_spectrum(const AxisMesh& axis) {
  if (!axis.uniform()) throw Unsupported("sine spectrum needs a uniform axis");
  const int N = axis.N();
  const double h = axis.step();
  std::vector<double> mu(static_cast<size_t>(N - 1));
  for (int l = 1; l < N; ++l) {
    const double s = std::sin(std::numbers::pi * l / (2.0 * N));
    mu[static_cast<size_t>(l - 1)] = 4.0 / (h * h) * s * s;
  }
  return mu;
}

GridFunction spectrum_table(const GridPtr& g, const std::function<double(const std::array<double, 3>&)>& fn) {
  std::array<std::vector<double>, 3> mu;
  for (int k = 0; k < g->dim(); ++k) mu[static_cast<size_t>(k)] = sine_spectrum(g->axis(k));
  GridFunction t(g);
  for_each_node(*g, [&](size_t f, const Index3& i) {
    if (g->on_boundary(i)) return;
    std::array<double, 3> m{0, 0, 0};
    for (int k = 0; k < g->dim(); ++k) m[static_cast<size_t>(k)] = mu[static_cast<size_t>(k)][static_cast<size_t>(i[static_cast<size_t>(k)] - 1)];
    t[f] = fn(m);
  });
  return t;
}

void thomas_solve(const TriFactor& f, std::span<double> rhs) {
  if (rhs.size() != f.size()) throw SingularSystemError("right-hand side length does not match the factor");
  f.solve(rhs.data(), 1);
}

void line_solve(GridFunction& rhs, const TriFactor& f, int axis, Exec exec) {
  rhs.zero_boundary();
  kernels::thomas_axis(rhs.data(), rhs.grid().shape(), axis, f, exec);
  rhs.zero_boundary();
}

void dst_interior(GridFunction& w, Exec exec) {
  w.zero_boundary();
  for (int k = 0; k < w.dim(); ++k) kernels::dst_axis(w.data(), w.grid().shape(), k, exec);
}

void dst_diagonal_solve(GridFunction& rhs, const GridFunction& eig, Exec exec) {
  dst_interior(rhs, exec);
  const Grid& g = rhs.grid();
  for_each_node(g, [&](size_t f, const Index3& i) {
    if (g.on_boundary(i)) return;
    if (eig[f] == 0.0 || !std::isfinite(eig[f]))
      throw SingularSystemError("zero eigenvalue in the sine-diagonal solve");
    rhs[f] /= eig[f];
  });
  dst_interior(rhs, exec);
}

void splitting_solve(GridFunction& rhs, std::span<const TriFactor> factors, Exec exec, std::span<const int> order) {
  if (static_cast<int>(factors.size()) != rhs.dim()) throw SingularSystemError("one factor per axis required");
  rhs.zero_boundary();
  for (size_t j = 0; j < factors.size(); ++j) {
    const int axis = order.empty() ? static_cast<int>(j) : order[j];
    kernels::thomas_axis(rhs.data(), rhs.grid().shape(), axis, factors[j], exec);
  }
  rhs.zero_boundary();
}

SolverHandle SolverHandle::tridiagonal(TriFactor f) {
  SolverHandle h;
  h.kind_ = Kind::Tridiagonal;
  h.factors_.push_back(std::move(f));
  return h;
}

SolverHandle SolverHandle::splitting(std::vector<TriFactor> f) {
  SolverHandle h;
  h.kind_ = Kind::Splitting;
  h.factors_ = std::move(f);
  return h;
}

SolverHandle SolverHandle::spectral(GridFunction eig) {
  SolverHandle h;
  h.kind_ = Kind::Spectral;
  const Grid& g = eig.grid();
  for_each_node(g, [&](size_t f, const Index3& i) {
    if (!g.on_boundary(i) && (eig[f] == 0.0 || !std::isfinite(eig[f])))
      throw SingularSystemError("assembled operator has a zero eigenvalue");
  });
  h.eig_ = std::move(eig);
  return h;
}

void SolverHandle::solve(GridFunction& rhs, Exec exec) const {
  switch (kind_) {
  case Kind::Tridiagonal: line_solve(rhs, factors_.front(), 0, exec); break;
  case Kind::Splitting: splitting_solve(rhs, factors_, exec); break;
  case Kind::Spectral: dst_diagonal_solve(rhs, eig_, exec); break;
  }
}

Eigen::VectorXd interior_vector(const GridFunction& w) {
  const Grid& g = w.grid();
  Eigen::VectorXd v(static_cast<Eigen::Index>(g.interior_size()));
  Eigen::Index j = 0;
  for_each_node(g, [&](size_t f, const Index3& i) {
    if (!g.on_boundary(i)) v[j++] = w[f];
  });
  return v;
}

void set_interior(GridFunction& w, const Eigen::VectorXd& v) {
  const Grid& g = w.grid();
  if (static_cast<size_t>(v.size()) != g.interior_size()) throw std::invalid_argument("interior size mismatch");
  Eigen::Index j = 0;
  for_each_node(g, [&](size_t f, const Index3& i) {
    if (!g.on_boundary(i)) w[f] = v[j++];
  });
}

Eigen::MatrixXd assemble_dense(const GridPtr& g, const std::function<GridFunction(const GridFunction&)>& op) {
  const auto n = static_cast<Eigen::Index>(g->interior_size());
  Eigen::MatrixXd A(n, n);
  GridFunction e(g);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    unit.setZero();
    unit[c] = 1.0;
    set_interior(e, unit);
    A.col(c) = interior_vector(op(e));
  }
  return A;
}

Eigen::VectorXd dense_solve_oracle(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  if (A.rows() > 4096) throw std::invalid_argument("dense oracle limited to 4096 unknowns");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw SingularSystemError("dense oracle: singular matrix");
  return lu.solve(b);
}

} // namespace cwave
