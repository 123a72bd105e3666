#pragma once
#include <functional>
#include <span>

#include "cwave/grid.hpp"
#include "cwave/kernels.hpp"
#include "cwave/piecewise.hpp"

namespace cwave {

using SpaceFn = std::function<double(const Point&)>;
using SpaceTimeFn = std::function<double(const Point&, double)>;

enum class FN0Mode { ThreeLevel, TwoLevelHalf, Centered, Averaged, Graded };

// s_N on uniform grids, the product of the s_kN otherwise (they agree in 1D)
GridFunction compact_average(const GridFunction& w, Exec exec = Exec::Parallel);

// f + (1/12) h_t^2 Lambda_t f + compact spatial correction, from samples at level m and its neighbours
GridFunction build_fN_smooth(const SpaceTimeFn& f, const GridPtr& g, const TimeMesh& tm, int m,
                             Exec exec = Exec::Parallel);
// (q_x P_k)(q_t Q_l) summed over the terms, 1 <= m <= M-1; 1D only
GridFunction build_fN_averaged(const PiecewiseData& d, const GridPtr& g, const TimeMesh& tm, int m);

// (s_N + (1/12) h_t^2 a_i^2 Lambda_i) u1
GridFunction build_u1N_compact(const SpaceFn& u1, const GridPtr& g, double ht, std::span<const double> a,
                               Exec exec = Exec::Parallel);
// q_1 u1 (exact hat averages); 1D only
GridFunction build_u1N_averaged(const PiecewiseData& d, const GridPtr& g);
GridFunction build_u1N_nodal(const SpaceFn& u1, const GridPtr& g);

// f_N^0 for smooth f. Centered needs f at t = -h_t.
GridFunction build_fN0_smooth(const SpaceTimeFn& f, const GridPtr& g, double ht, FN0Mode mode,
                              Exec exec = Exec::Parallel);
// (q_x P_k)(q_t^0 Q_l), the one-sided time average; 1D only
GridFunction build_fN0_averaged(const PiecewiseData& d, const GridPtr& g, const TimeMesh& tm);

FN0Mode fn0_mode_from_string(const std::string& s);
std::string to_string(FN0Mode m);

} // namespace cwave
