#pragma once
#include <Eigen/Dense>
#include <array>
#include <functional>
#include <span>
#include <vector>

#include "cwave/grid.hpp"
#include "cwave/kernels.hpp"

namespace cwave {

// Eigenvalues mu_l = (4/h^2) sin^2(pi l / (2N)) of -Lambda on a uniform axis, l = 1..N-1.
std::vector<double> sine_spectrum(const AxisMesh& axis);

// Table of an operator's eigenvalues over the tensor sine basis, stored on the grid:
// the entry at interior node i belongs to the mode l = i. fn receives mu per axis (0 past dim).
GridFunction spectrum_table(const GridPtr& g, const std::function<double(const std::array<double, 3>&)>& fn);

// Solves T x = rhs for one interior vector.
void thomas_solve(const TriFactor& f, std::span<double> rhs);

// Interior solves in place; boundary entries of rhs are ignored and come back zero.
void line_solve(GridFunction& rhs, const TriFactor& f, int axis, Exec exec = Exec::Parallel);
void dst_diagonal_solve(GridFunction& rhs, const GridFunction& eig, Exec exec = Exec::Parallel);
// factors[k] acts along axis order[k] (default 0, 1, ...)
void splitting_solve(GridFunction& rhs, std::span<const TriFactor> factors, Exec exec = Exec::Parallel,
                     std::span<const int> order = {});

// Forward/inverse orthonormal sine transform of the interior (self-inverse).
void dst_interior(GridFunction& w, Exec exec = Exec::Parallel);

// The upper-level operator of a scheme in one of three solvable forms.
class SolverHandle {
public:
  enum class Kind { Tridiagonal, Splitting, Spectral };

  static SolverHandle tridiagonal(TriFactor f);
  static SolverHandle splitting(std::vector<TriFactor> f);
  static SolverHandle spectral(GridFunction eig);

  Kind kind() const { return kind_; }
  void solve(GridFunction& rhs, Exec exec = Exec::Parallel) const;
  const std::vector<TriFactor>& factors() const { return factors_; }
  const GridFunction& eigenvalues() const { return eig_; }

private:
  Kind kind_ = Kind::Tridiagonal;
  std::vector<TriFactor> factors_;
  GridFunction eig_;
};

// Dense plumbing for oracles: interior values in row-major order.
Eigen::VectorXd interior_vector(const GridFunction& w);
void set_interior(GridFunction& w, const Eigen::VectorXd& v);
// Matrix of a linear grid operator restricted to interior nodes (zero boundary input).
Eigen::MatrixXd assemble_dense(const GridPtr& g, const std::function<GridFunction(const GridFunction&)>& op);
Eigen::VectorXd dense_solve_oracle(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

} // namespace cwave
