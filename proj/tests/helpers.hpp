#pragma once
#include <random>

#include "cwave/grid.hpp"

namespace cwave::test {

inline GridPtr box(std::initializer_list<int> Ns, double X = 1.0) {
  std::vector<AxisMesh> axes;
  for (int N : Ns) axes.push_back(build_uniform_axis(N, X, 0.0));
  return make_grid(std::move(axes));
}

inline GridFunction random_fn(const GridPtr& g, std::mt19937_64& rng, bool zero_boundary = true) {
  std::uniform_real_distribution<double> U(-1, 1);
  GridFunction w(g);
  for (double& x : w.values()) x = U(rng);
  if (zero_boundary) w.zero_boundary();
  return w;
}

inline double max_diff(const GridFunction& a, const GridFunction& b) { return (a - b).max_abs(); }

inline double interior_max(const GridFunction& w) {
  GridFunction c = w;
  c.zero_boundary();
  return c.max_abs();
}

} // namespace cwave::test
