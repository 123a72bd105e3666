#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cwave/grid.hpp"
#include "cwave/piecewise.hpp"
#include "cwave/rhs.hpp"

namespace cwave {

struct ProblemSpec {
  std::string name;
  int dim = 1;
  std::vector<double> a;               // wave speed per axis
  std::vector<double> X, origin;       // box [origin, origin + X] per axis
  double T = 1;
  double alpha = 0;                    // smoothness label of a catalog example, 0 otherwise
  std::optional<PiecewiseData> pieces; // catalog data (1D)
  SpaceFn u0, u1;                      // u1 empty when it carries a Dirac atom
  SpaceTimeFn f;                       // empty when f carries an atom
  SpaceTimeFn g;                       // Dirichlet data
  SpaceTimeFn exact;

  bool catalog() const { return pieces.has_value(); }
};

// Examples E_alpha, alpha in {0.5, 1.5, ..., 5.5}
ProblemSpec make_example(double alpha);
// u0 = sin(2 pi (x+.5)), u1 = 4 sin(3 pi (x+.5)), f = exp(x + .5 - t) on (-1/2, 1/2)
ProblemSpec make_smooth_nonuniform_problem(double a = 0.4472135954999579);
// Standing sine mode on the unit box, zero u1, f and g; exact = cos(omega t) u0.
ProblemSpec make_sine_mode_problem(int dim, std::vector<double> a, std::array<int, 3> modes);

// "E_0.5" .. "E_5.5", "smooth1d", "sine1d", "sine2d", "sine3d"
ProblemSpec problem_by_name(const std::string& name);
std::vector<std::string> problem_names();

// Uniform grid over the problem box with N intervals per axis.
GridPtr uniform_grid(const ProblemSpec& p, int N);

} // namespace cwave
