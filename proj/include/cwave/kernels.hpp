#pragma once
#include <cstddef>
#include <vector>

#include "cwave/grid.hpp"

namespace cwave {

// Serial is the plain reference path; Parallel splits lines over OpenMP threads
// and uses FFTW for sine transforms.
enum class Exec { Serial, Parallel };

// Three-point coefficients indexed by node position along one axis; entries at
// the two end positions are ignored.
struct LineStencil {
  std::vector<double> lo, di, up;
};

// Tridiagonal system over the n = N-1 interior positions of a line, factored once.
class TriFactor {
public:
  TriFactor() = default;
  TriFactor(std::vector<double> lo, std::vector<double> di, std::vector<double> up);

  size_t size() const { return di_.size(); }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& di() const { return di_; }
  const std::vector<double>& up() const { return up_; }

  // in-place solve on x[0], x[stride], ..., x[(n-1)*stride]
  void solve(double* x, size_t stride) const;
  // y = T x on the same layout (no aliasing)
  void apply(const double* x, double* y, size_t stride) const;

private:
  std::vector<double> lo_, di_, up_;
  std::vector<double> cprime_, inv_;
};

namespace kernels {

// out = stencil(in) at positions 1..n-2 of every line along `axis`; the two end
// positions get boundary_scale * in.
void apply_axis(const double* in, double* out, const Index3& shape, int axis, const LineStencil& st,
                double boundary_scale, Exec exec);

// Solves along every line over positions 1..n-2; end positions untouched.
void thomas_axis(double* data, const Index3& shape, int axis, const TriFactor& f, Exec exec);

// Orthonormal DST-I (self-inverse) over positions 1..n-2 of every line.
void dst_axis(double* data, const Index3& shape, int axis, Exec exec);

// Single-line transforms on a contiguous buffer of length n (interior count).
void dst_direct(const double* in, double* out, size_t n);
void dst_fast(const double* in, double* out, size_t n);

} // namespace kernels
} // namespace cwave
