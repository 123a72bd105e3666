#include "cwave/operators.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "cwave/errors.hpp"

namespace cwave {
namespace {

LineStencil make_stencil(size_t n) {
  LineStencil st;
  st.lo.assign(n, 0.0);
  st.di.assign(n, 0.0);
  st.up.assign(n, 0.0);
  return st;
}

void check_axis(const GridFunction& w, int k) {
  if (k < 0 || k >= w.dim()) throw std::out_of_range("axis " + std::to_string(k) + " out of range");
}

// Raw axis application: boundary positions along k get bscale * input.
GridFunction raw(const GridFunction& w, int k, const LineStencil& st, double bscale, Exec exec) {
  GridFunction out(w.grid_ptr());
  kernels::apply_axis(w.data(), out.data(), w.grid().shape(), k, st, bscale, exec);
  return out;
}

GridFunction raw_lambda(const GridFunction& w, int k, Exec exec) {
  return raw(w, k, lambda_stencil(w.grid().axis(k)), 0.0, exec);
}

GridFunction raw_s(const GridFunction& w, int k, Exec exec) { return raw(w, k, s_stencil(w.grid().axis(k)), 1.0, exec); }

// (s_k - I) w, zero at the k-boundary positions
GridFunction raw_s_minus_i(const GridFunction& w, int k, Exec exec) {
  LineStencil st = s_stencil(w.grid().axis(k));
  for (double& d : st.di) d -= 1.0;
  return raw(w, k, st, 0.0, exec);
}

GridFunction cleared(GridFunction g) {
  g.zero_boundary();
  return g;
}

void check_speeds(const GridFunction& w, std::span<const double> a) {
  if (static_cast<int>(a.size()) != w.dim()) throw std::invalid_argument("wave speed count does not match dimension");
}

} // namespace

NonUniformWeights skN_weights(double h, double hp) {
  const double hs = 0.5 * (h + hp);
  return {2.0 - hp * hp / (h * hs), 2.0 - h * h / (hp * hs), 1.0 + (hp - h) * (hp - h) / (5.0 * h * hp)};
}

LineStencil lambda_stencil(const AxisMesh& axis) {
  const size_t n = static_cast<size_t>(axis.N()) + 1;
  LineStencil st = make_stencil(n);
  if (axis.uniform()) {
    const double h = axis.step(), c = 1.0 / (h * h);
    for (size_t p = 1; p + 1 < n; ++p) {
      st.lo[p] = c;
      st.di[p] = -2 * c;
      st.up[p] = c;
    }
    return st;
  }
  for (int l = 1; l < axis.N(); ++l) {
    const double h = axis.h(l), hp = axis.h_plus(l), hs = axis.h_star(l);
    const auto p = static_cast<size_t>(l);
    st.lo[p] = 1.0 / (h * hs);
    st.up[p] = 1.0 / (hp * hs);
    st.di[p] = -(st.lo[p] + st.up[p]);
  }
  return st;
}

LineStencil s_stencil(const AxisMesh& axis) {
  const size_t n = static_cast<size_t>(axis.N()) + 1;
  LineStencil st = make_stencil(n);
  for (int l = 1; l < axis.N(); ++l) {
    const auto p = static_cast<size_t>(l);
    if (axis.uniform()) {
      st.lo[p] = 1.0 / 12;
      st.di[p] = 10.0 / 12;
      st.up[p] = 1.0 / 12;
    } else {
      const auto w = skN_weights(axis.h(l), axis.h_plus(l));
      st.lo[p] = w.alpha / 12;
      st.di[p] = 10 * w.gamma / 12;
      st.up[p] = w.beta / 12;
    }
  }
  return st;
}

LineStencil identity_plus_lambda_stencil(const AxisMesh& axis, double c) {
  LineStencil st = lambda_stencil(axis);
  for (size_t p = 1; p + 1 < st.di.size(); ++p) {
    st.lo[p] *= c;
    st.up[p] *= c;
    st.di[p] = 1.0 + c * st.di[p];
  }
  return st;
}

GridFunction lambda_axis(const GridFunction& w, int k, Exec exec) {
  check_axis(w, k);
  return cleared(raw_lambda(w, k, exec));
}

GridFunction apply_skN(const GridFunction& w, int k, Exec exec) {
  check_axis(w, k);
  return cleared(raw_s(w, k, exec));
}

GridFunction apply_sN(const GridFunction& w, Exec exec) {
  if (!w.grid().uniform()) throw Unsupported("s_N is defined on uniform meshes; use the per-axis s_kN path");
  GridFunction out = w;
  for (int k = 0; k < w.dim(); ++k) out += raw_s_minus_i(w, k, exec);
  return cleared(std::move(out));
}

GridFunction apply_bar_sN(const GridFunction& w, Exec exec) {
  GridFunction out = w;
  for (int k = 0; k < w.dim(); ++k) out = raw_s(out, k, exec);
  return cleared(std::move(out));
}

GridFunction apply_AN(const GridFunction& w, std::span<const double> a, Exec exec) {
  check_speeds(w, a);
  const int n = w.dim();
  if (n > 3) throw Unsupported("A_N for n > 3");
  GridFunction out(w.grid_ptr());
  for (int i = 0; i < n; ++i) {
    GridFunction li = raw_lambda(w, i, exec);
    GridFunction term = li;
    for (int j = 0; j < n; ++j)
      if (j != i) term += raw_s_minus_i(li, j, exec);
    out.axpy(-a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)], term);
  }
  return cleared(std::move(out));
}

GridFunction apply_bar_AN(const GridFunction& w, std::span<const double> a, Exec exec) {
  check_speeds(w, a);
  const int n = w.dim();
  GridFunction out(w.grid_ptr());
  for (int i = 0; i < n; ++i) {
    GridFunction term = raw_lambda(w, i, exec);
    for (int j = 0; j < n; ++j)
      if (j != i) term = raw_s(term, j, exec);
    out.axpy(-a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)], term);
  }
  return cleared(std::move(out));
}

GridFunction apply_R(const GridFunction& w, std::span<const double> a, double ht, Exec exec) {
  check_speeds(w, a);
  const int n = w.dim();
  const double c = ht * ht / 12;
  GridFunction out(w.grid_ptr());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    GridFunction term = w;
    double coef = std::pow(c, k);
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        term = raw_lambda(term, i, exec);
        term *= -1.0;
        coef *= a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
      } else {
        term = raw_s(term, i, exec);
      }
    }
    out.axpy(coef, term);
  }
  return cleared(std::move(out));
}

GridFunction apply_BkN(const GridFunction& w, int k, double ak, double ht, Exec exec) {
  check_axis(w, k);
  const auto& ax = w.grid().axis(k);
  const double h = ax.step();
  return cleared(raw(w, k, identity_plus_lambda_stencil(ax, (h * h - ht * ht * ak * ak) / 12), 1.0, exec));
}

GridFunction apply_bar_BN(const GridFunction& w, std::span<const double> a, double ht, Exec exec) {
  check_speeds(w, a);
  GridFunction out = w;
  for (int k = 0; k < w.dim(); ++k) {
    const auto& ax = w.grid().axis(k);
    const double h = ax.step(), ak = a[static_cast<size_t>(k)];
    out = raw(out, k, identity_plus_lambda_stencil(ax, (h * h - ht * ht * ak * ak) / 12), 1.0, exec);
  }
  return cleared(std::move(out));
}

GridFunction apply_minus_a2_lambda(const GridFunction& w, std::span<const double> a, Exec exec) {
  check_speeds(w, a);
  GridFunction out(w.grid_ptr());
  for (int i = 0; i < w.dim(); ++i)
    out.axpy(-a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)], raw_lambda(w, i, exec));
  return cleared(std::move(out));
}

TriFactor factor_from_stencil(const LineStencil& st) {
  const size_t n = st.di.size() - 2;
  std::vector<double> lo(n), di(n), up(n);
  for (size_t i = 0; i < n; ++i) {
    lo[i] = i > 0 ? st.lo[i + 1] : 0.0;
    di[i] = st.di[i + 1];
    up[i] = i + 1 < n ? st.up[i + 1] : 0.0;
  }
  return TriFactor(std::move(lo), std::move(di), std::move(up));
}

TriFactor factor_BkN(const AxisMesh& axis, double ht, double ak) {
  if (!axis.uniform()) throw Unsupported("B_kN factor on a non-uniform axis");
  const double h = axis.step();
  return factor_from_stencil(identity_plus_lambda_stencil(axis, (h * h - ht * ht * ak * ak) / 12));
}

} // namespace cwave
