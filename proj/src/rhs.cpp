#include "cwave/rhs.hpp"

#include <stdexcept>
#include <string>

#include "cwave/errors.hpp"
#include "cwave/operators.hpp"

namespace cwave {
namespace {

GridFunction sampled(const SpaceTimeFn& f, const GridPtr& g, double t) {
  GridFunction w(g);
  w.sample([&](const Point& p) { return f(p, t); });
  return w;
}

void require_1d(const GridPtr& g, const char* what) {
  if (g->dim() != 1) throw Unsupported(std::string(what) + " is implemented for 1D piecewise data");
}

} // namespace

GridFunction compact_average(const GridFunction& w, Exec exec) {
  return w.grid().uniform() ? apply_sN(w, exec) : apply_bar_sN(w, exec);
}

GridFunction build_fN_smooth(const SpaceTimeFn& f, const GridPtr& g, const TimeMesh& tm, int m, Exec exec) {
  if (m < 1 || m >= tm.M()) throw std::out_of_range("f_N level must lie in 1..M-1");
  const double hm = tm.h(m), hp = tm.h(m + 1), hs = 0.5 * (hm + hp);
  GridFunction fm = sampled(f, g, tm.t(m));
  GridFunction lo = sampled(f, g, tm.t(m - 1)), up = sampled(f, g, tm.t(m + 1));
  // h_t^2/12 Lambda_t f with h_t^2 -> h_- h_+ on a graded time mesh
  GridFunction out = compact_average(fm, exec);
  const double c = hm * hp / 12.0 / hs;
  GridFunction lt = up;
  lt *= 1.0 / hp;
  lt.axpy(-(1.0 / hp + 1.0 / hm), fm);
  lt.axpy(1.0 / hm, lo);
  out.axpy(c, lt);
  out.zero_boundary();
  return out;
}

GridFunction build_fN_averaged(const PiecewiseData& d, const GridPtr& g, const TimeMesh& tm, int m) {
  require_1d(g, "averaged f_N");
  GridFunction out(g);
  const auto& ax = g->axis(0);
  for (const auto& term : d.f) {
    const double qt = hat_average_Q(term.l, d.t_star, tm, m);
    if (qt == 0.0) continue;
    for (int k = 1; k < ax.N(); ++k) out[static_cast<size_t>(k)] += term.coef * hat_average_P(term.k, ax, k) * qt;
  }
  return out;
}

GridFunction build_u1N_compact(const SpaceFn& u1, const GridPtr& g, double ht, std::span<const double> a, Exec exec) {
  GridFunction w(g);
  w.sample(u1);
  GridFunction out = compact_average(w, exec);
  out.axpy(-ht * ht / 12.0, apply_minus_a2_lambda(w, a, exec));
  return out;
}

GridFunction build_u1N_averaged(const PiecewiseData& d, const GridPtr& g) {
  require_1d(g, "averaged u_1N");
  GridFunction out(g);
  const auto& ax = g->axis(0);
  for (int k = 1; k < ax.N(); ++k) out[static_cast<size_t>(k)] = hat_average_x(d.u1, ax, k);
  return out;
}

GridFunction build_u1N_nodal(const SpaceFn& u1, const GridPtr& g) {
  GridFunction out(g);
  out.sample(u1);
  out.zero_boundary();
  return out;
}

GridFunction build_fN0_smooth(const SpaceTimeFn& f, const GridPtr& g, double ht, FN0Mode mode, Exec exec) {
  GridFunction f0 = sampled(f, g, 0.0);
  GridFunction out = compact_average(f0, exec);
  out -= f0; // spatial correction only; the time part is added below
  switch (mode) {
  case FN0Mode::ThreeLevel:
    out.axpy(7.0 / 12, f0);
    out.axpy(0.5, sampled(f, g, ht));
    out.axpy(-1.0 / 12, sampled(f, g, 2 * ht));
    break;
  case FN0Mode::TwoLevelHalf:
  case FN0Mode::Graded: // s_N f^0 + (2/3)(f^{h_t/2} - f^0)
    out.axpy(1.0 / 3, f0);
    out.axpy(2.0 / 3, sampled(f, g, 0.5 * ht));
    break;
  case FN0Mode::Centered:
    out.axpy(-1.0 / 12, sampled(f, g, -ht));
    out.axpy(5.0 / 6, f0);
    out.axpy(0.25, sampled(f, g, ht));
    break;
  case FN0Mode::Averaged: throw ConfigError("averaged f_N^0 needs piecewise data");
  }
  out.zero_boundary();
  return out;
}

GridFunction build_fN0_averaged(const PiecewiseData& d, const GridPtr& g, const TimeMesh& tm) {
  require_1d(g, "averaged f_N^0");
  GridFunction out(g);
  const auto& ax = g->axis(0);
  for (const auto& term : d.f) {
    const double qt = one_sided_average_Q(term.l, d.t_star, tm);
    if (qt == 0.0) continue;
    for (int k = 1; k < ax.N(); ++k) out[static_cast<size_t>(k)] += term.coef * hat_average_P(term.k, ax, k) * qt;
  }
  return out;
}

FN0Mode fn0_mode_from_string(const std::string& s) {
  if (s == "three-level") return FN0Mode::ThreeLevel;
  if (s == "two-level-half") return FN0Mode::TwoLevelHalf;
  if (s == "centered") return FN0Mode::Centered;
  if (s == "averaged") return FN0Mode::Averaged;
  if (s == "graded") return FN0Mode::Graded;
  throw ConfigError("unknown f_N^0 mode '" + s + "'");
}

std::string to_string(FN0Mode m) {
  switch (m) {
  case FN0Mode::ThreeLevel: return "three-level";
  case FN0Mode::TwoLevelHalf: return "two-level-half";
  case FN0Mode::Centered: return "centered";
  case FN0Mode::Averaged: return "averaged";
  case FN0Mode::Graded: return "graded";
  }
  return "?";
}

} // namespace cwave
