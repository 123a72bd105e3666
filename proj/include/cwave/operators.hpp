#pragma once
#include <span>
#include <vector>

#include "cwave/grid.hpp"
#include "cwave/kernels.hpp"

namespace cwave {

// Operators read boundary values of their input and return values on interior
// nodes; boundary nodes of the result are zero. Multi-axis products are formed
// on the full tensor mesh before the boundary is cleared, so stencils touching
// faces and corners see the input's boundary data.

struct NonUniformWeights {
  double alpha, beta, gamma; // s_kN w_l = (alpha w_{l-1} + 10 gamma w_l + beta w_{l+1}) / 12
};
NonUniformWeights skN_weights(double h, double h_plus);

LineStencil lambda_stencil(const AxisMesh& axis);
LineStencil s_stencil(const AxisMesh& axis);
// I + c Lambda_k on a uniform axis
LineStencil identity_plus_lambda_stencil(const AxisMesh& axis, double c);

GridFunction lambda_axis(const GridFunction& w, int k, Exec exec = Exec::Parallel);
GridFunction apply_skN(const GridFunction& w, int k, Exec exec = Exec::Parallel);
GridFunction apply_sN(const GridFunction& w, Exec exec = Exec::Parallel);
GridFunction apply_bar_sN(const GridFunction& w, Exec exec = Exec::Parallel);
GridFunction apply_AN(const GridFunction& w, std::span<const double> a, Exec exec = Exec::Parallel);
GridFunction apply_bar_AN(const GridFunction& w, std::span<const double> a, Exec exec = Exec::Parallel);
GridFunction apply_R(const GridFunction& w, std::span<const double> a, double ht, Exec exec = Exec::Parallel);
GridFunction apply_BkN(const GridFunction& w, int k, double ak, double ht, Exec exec = Exec::Parallel);
GridFunction apply_bar_BN(const GridFunction& w, std::span<const double> a, double ht, Exec exec = Exec::Parallel);
// -sum_i a_i^2 Lambda_i
GridFunction apply_minus_a2_lambda(const GridFunction& w, std::span<const double> a, Exec exec = Exec::Parallel);

// Interior tridiagonal I + (h_k^2 - h_t^2 a_k^2)/12 Lambda_k of a uniform axis.
TriFactor factor_BkN(const AxisMesh& axis, double ht, double ak);
// Interior tridiagonal of an arbitrary axis stencil.
TriFactor factor_from_stencil(const LineStencil& st);

} // namespace cwave
