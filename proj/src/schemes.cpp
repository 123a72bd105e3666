#include "cwave/schemes.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <string>

#include "cwave/errors.hpp"
#include "cwave/operators.hpp"

namespace cwave {
namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

bool one_dim_kind(SchemeKind k) {
  return k == SchemeKind::Compact1D || k == SchemeKind::NonUniformCompact || k == SchemeKind::ExplicitCharacteristic;
}

void check_dimension(SchemeKind k, int dim) {
  const int need = one_dim_kind(k) ? 1 : k == SchemeKind::Compact2D_sN ? 2 : k == SchemeKind::Compact3D_barsN ? 3 : 0;
  if (need != 0 && need != dim)
    throw ConfigError(to_string(k) + " requires n = " + std::to_string(need) + ", got n = " + std::to_string(dim));
}

// S = B + c Lambda on one axis: B = s_1N (compact) or I (second order)
LineStencil step_stencil(const AxisMesh& ax, bool compact, double c) {
  LineStencil st = compact ? s_stencil(ax) : LineStencil{};
  LineStencil lam = lambda_stencil(ax);
  if (!compact) {
    st.lo.assign(lam.lo.size(), 0.0);
    st.di.assign(lam.di.size(), 1.0);
    st.up.assign(lam.up.size(), 0.0);
  }
  for (size_t p = 1; p + 1 < st.di.size(); ++p) {
    st.lo[p] += c * lam.lo[p];
    st.di[p] += c * lam.di[p];
    st.up[p] += c * lam.up[p];
  }
  return st;
}

double s_eig(double h, double mu) { return 1.0 - h * h * mu / 12.0; }

} // namespace

SchemeKind scheme_kind_from_string(const std::string& s) {
  if (s == "compact1d") return SchemeKind::Compact1D;
  if (s == "compact2d-sN") return SchemeKind::Compact2D_sN;
  if (s == "compact3d-barsN") return SchemeKind::Compact3D_barsN;
  if (s == "compactnd-barAN") return SchemeKind::CompactND_barAN;
  if (s == "splitting") return SchemeKind::Splitting;
  if (s == "explicit") return SchemeKind::ExplicitCharacteristic;
  if (s == "second-order") return SchemeKind::SecondOrderWeighted;
  if (s == "nonuniform") return SchemeKind::NonUniformCompact;
  throw ConfigError("unknown scheme '" + s + "'");
}

std::string to_string(SchemeKind k) {
  switch (k) {
  case SchemeKind::Compact1D: return "compact1d";
  case SchemeKind::Compact2D_sN: return "compact2d-sN";
  case SchemeKind::Compact3D_barsN: return "compact3d-barsN";
  case SchemeKind::CompactND_barAN: return "compactnd-barAN";
  case SchemeKind::Splitting: return "splitting";
  case SchemeKind::ExplicitCharacteristic: return "explicit";
  case SchemeKind::SecondOrderWeighted: return "second-order";
  case SchemeKind::NonUniformCompact: return "nonuniform";
  }
  return "?";
}

bool is_fourth_order(SchemeKind k) { return k != SchemeKind::SecondOrderWeighted; }

OperatorPair operator_pair(SchemeKind kind, const Grid& g, std::span<const double> a, double ht, double sigma) {
  const int n = g.dim();
  std::array<double, 3> h{0, 0, 0}, a2{0, 0, 0};
  for (int k = 0; k < n; ++k) {
    h[static_cast<size_t>(k)] = g.axis(k).step();
    a2[static_cast<size_t>(k)] = a[static_cast<size_t>(k)] * a[static_cast<size_t>(k)];
  }
  auto bar_s = [=](const std::array<double, 3>& mu) {
    double p = 1;
    for (int k = 0; k < n; ++k) p *= s_eig(h[static_cast<size_t>(k)], mu[static_cast<size_t>(k)]);
    return p;
  };
  auto sN = [=](const std::array<double, 3>& mu) {
    double s = 1;
    for (int k = 0; k < n; ++k) s -= h[static_cast<size_t>(k)] * h[static_cast<size_t>(k)] * mu[static_cast<size_t>(k)] / 12;
    return s;
  };
  auto AN = [=](const std::array<double, 3>& mu) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double c = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) c -= h[static_cast<size_t>(j)] * h[static_cast<size_t>(j)] * mu[static_cast<size_t>(j)] / 12;
      s += a2[static_cast<size_t>(i)] * mu[static_cast<size_t>(i)] * c;
    }
    return s;
  };
  auto barAN = [=](const std::array<double, 3>& mu) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double c = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) c *= s_eig(h[static_cast<size_t>(j)], mu[static_cast<size_t>(j)]);
      s += a2[static_cast<size_t>(i)] * mu[static_cast<size_t>(i)] * c;
    }
    return s;
  };
  auto lap = [=](const std::array<double, 3>& mu) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a2[static_cast<size_t>(i)] * mu[static_cast<size_t>(i)];
    return s;
  };
  // R = sum over axis subsets of size >= 2 of (h_t^2/12)^|S| prod a^2 mu prod_{l not in S} s_l
  auto R = [=](const std::array<double, 3>& mu) {
    const double c = ht * ht / 12;
    double r = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int cnt = 0;
      double term = 1;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          ++cnt;
          term *= c * a2[static_cast<size_t>(i)] * mu[static_cast<size_t>(i)];
        } else {
          term *= s_eig(h[static_cast<size_t>(i)], mu[static_cast<size_t>(i)]);
        }
      }
      if (cnt >= 2) r += term;
    }
    return r;
  };

  switch (kind) {
  case SchemeKind::Compact1D:
  case SchemeKind::NonUniformCompact:
  case SchemeKind::CompactND_barAN: return {1.0 / 12, bar_s, barAN};
  case SchemeKind::Compact2D_sN: return {1.0 / 12, sN, AN};
  case SchemeKind::Compact3D_barsN: return {1.0 / 12, bar_s, AN};
  case SchemeKind::Splitting:
    return {1.0 / 12, [=](const std::array<double, 3>& mu) { return bar_s(mu) + R(mu); }, barAN};
  case SchemeKind::SecondOrderWeighted: return {sigma, [](const std::array<double, 3>&) { return 1.0; }, lap};
  case SchemeKind::ExplicitCharacteristic: break;
  }
  throw Unsupported("no operator pair for " + to_string(kind));
}

StepOperator::StepOperator(SchemeKind kind, GridPtr grid, std::vector<double> a, double ht, double sigma, Exec exec)
    : kind_(kind), grid_(std::move(grid)), a_(std::move(a)), ht_(ht),
      sigma_(kind == SchemeKind::SecondOrderWeighted ? sigma : 1.0 / 12), exec_(exec) {
  const int n = grid_->dim();
  check_dimension(kind, n);
  if (kind == SchemeKind::ExplicitCharacteristic)
    throw ConfigError("the explicit characteristic scheme has its own driver");
  if (static_cast<int>(a_.size()) != n) throw ConfigError("one wave speed per axis required");
  if (!(ht > 0)) throw ConfigError("time step must be positive");
  if (kind == SchemeKind::Compact1D && !grid_->uniform())
    throw Unsupported("compact1d needs a uniform axis; use the nonuniform scheme on graded meshes");

  if (n == 1 && kind != SchemeKind::Splitting) {
    const bool compact = kind != SchemeKind::SecondOrderWeighted;
    const double c = -sigma_ * ht * ht * a_[0] * a_[0];
    handle_ = SolverHandle::tridiagonal(factor_from_stencil(step_stencil(grid_->axis(0), compact, c)));
  } else if (kind == SchemeKind::Splitting) {
    std::vector<TriFactor> f;
    for (int k = 0; k < n; ++k) f.push_back(factor_BkN(grid_->axis(k), ht, a_[static_cast<size_t>(k)]));
    handle_ = SolverHandle::splitting(std::move(f));
  } else {
    if (!grid_->uniform()) throw Unsupported(to_string(kind) + " on non-uniform meshes");
    const OperatorPair p = pair();
    const double c = sigma_ * ht * ht;
    handle_ = SolverHandle::spectral(
        spectrum_table(grid_, [&](const std::array<double, 3>& mu) { return p.B(mu) + c * p.A(mu); }));
  }
}

OperatorPair StepOperator::pair() const { return operator_pair(kind_, *grid_, a_, ht_, sigma_); }

GridFunction StepOperator::apply_B(const GridFunction& w) const {
  switch (kind_) {
  case SchemeKind::Compact2D_sN: return apply_sN(w, exec_);
  case SchemeKind::SecondOrderWeighted: {
    GridFunction out = w;
    out.zero_boundary();
    return out;
  }
  case SchemeKind::Splitting: return apply_bar_sN(w, exec_) + apply_R(w, a_, ht_, exec_);
  default: return apply_bar_sN(w, exec_);
  }
}

GridFunction StepOperator::apply_A(const GridFunction& w) const {
  switch (kind_) {
  case SchemeKind::Compact2D_sN:
  case SchemeKind::Compact3D_barsN: return apply_AN(w, a_, exec_);
  case SchemeKind::CompactND_barAN:
  case SchemeKind::Splitting: return apply_bar_AN(w, a_, exec_);
  default: return apply_minus_a2_lambda(w, a_, exec_);
  }
}

GridFunction StepOperator::apply_S(const GridFunction& w) const {
  if (kind_ == SchemeKind::Splitting) return apply_bar_BN(w, a_, ht_, exec_);
  GridFunction out = apply_B(w);
  out.axpy(sigma_ * ht_ * ht_, apply_A(w));
  return out;
}

GridFunction boundary_extension(const GridPtr& g, const std::function<void(GridFunction&, int)>& bc, int m) {
  GridFunction e(g);
  if (bc) {
    bc(e, m);
    e.zero_interior();
  }
  return e;
}

GridFunction first_step(const StepOperator& op, const StepInputs& in) {
  const double ht = op.ht();
  GridFunction rhs = op.apply_S(in.v0);
  rhs.axpy(ht, in.u1N);
  GridFunction f = in.fN0;
  f -= op.apply_A(in.v0);
  rhs.axpy(0.5 * ht * ht, f);
  const GridFunction g1 = boundary_extension(op.grid(), in.boundary, 1);
  rhs -= op.apply_S(g1);
  op.solve(rhs);
  rhs += g1;
  return rhs;
}

GridFunction time_step(const StepOperator& op, const GridFunction& prev, const GridFunction& cur,
                       const GridFunction& fNm, const GridFunction& g_next) {
  // Solve for the small increment w = v^{m+1} - (2 v^m - v^{m-1}) to keep round-off relative to h_t^2.
  const double ht = op.ht();
  GridFunction z = cur;
  z *= 2.0;
  z -= prev;
  GridFunction w_bd = g_next;
  w_bd -= z;
  w_bd.zero_interior();
  GridFunction rhs = fNm;
  rhs -= op.apply_A(cur);
  rhs *= ht * ht;
  rhs -= op.apply_S(w_bd);
  op.solve(rhs);
  rhs += w_bd;
  rhs += z;
  return rhs;
}

namespace {

// Shared bookkeeping of the level loop.
struct LevelTracker {
  const SchemeConfig& cfg;
  const LevelObserver& obs;
  RunResult& res;

  // false when the run must stop
  bool accept(int m, const GridFunction& v) {
    res.levels = m;
    const double mx = v.max_abs();
    res.max_abs = std::max(res.max_abs, mx);
    if (cfg.store_trajectory) res.trajectory.push_back(v);
    if (obs) obs(m, v);
    if (!std::isfinite(mx) || mx > cfg.abort_level) {
      res.blew_up = res.aborted = true;
      return false;
    }
    if (mx > cfg.blowup_flag_level) res.blew_up = true;
    return true;
  }
};

} // namespace

RunResult run_steps(const StepOperator& op, const StepInputs& in, int M, const SchemeConfig& cfg,
                    const LevelObserver& obs) {
  if (M < 1) throw ConfigError("need at least one time step");
  RunResult res;
  LevelTracker track{cfg, obs, res};
  GridFunction prev = in.v0;
  if (!track.accept(0, prev)) {
    res.last = prev;
    return res;
  }
  GridFunction cur = first_step(op, in);
  res.previous = prev;
  res.last = cur;
  if (!track.accept(1, cur)) return res;
  for (int m = 1; m < M; ++m) {
    GridFunction next = time_step(op, prev, cur, in.fN(m), boundary_extension(op.grid(), in.boundary, m + 1));
    prev = std::move(cur);
    cur = std::move(next);
    res.previous = prev;
    res.last = cur;
    if (!track.accept(m + 1, cur)) break;
  }
  return res;
}

StepInputs build_inputs(const ProblemSpec& p, const SchemeConfig& cfg, const GridPtr& g, const TimeMesh& tm) {
  if (p.dim != g->dim()) throw ConfigError("problem and mesh dimensions differ");
  const double ht = tm.step();
  const bool fourth = is_fourth_order(cfg.kind);
  StepInputs in;
  in.v0 = GridFunction(g);
  in.v0.sample(p.u0);
  in.boundary = [gfn = p.g, tm](GridFunction& w, int m) {
    const double t = tm.t(m);
    w.sample_boundary([&](const Point& x) { return gfn(x, t); });
  };

  U1Mode u1 = cfg.u1_mode;
  if (u1 == U1Mode::Auto) {
    if (p.catalog())
      u1 = p.alpha <= (fourth ? 2.5 : 1.5) ? U1Mode::Averaged : (fourth ? U1Mode::Compact : U1Mode::Nodal);
    else
      u1 = fourth ? U1Mode::Compact : U1Mode::Nodal;
  }
  if ((u1 == U1Mode::Compact || u1 == U1Mode::Nodal) && !p.u1)
    throw ConfigError("u1 of " + p.name + " carries a Dirac atom; only the averaged u_1N applies");
  switch (u1) {
  case U1Mode::Compact: in.u1N = build_u1N_compact(p.u1, g, ht, p.a, cfg.exec); break;
  case U1Mode::Nodal: in.u1N = build_u1N_nodal(p.u1, g); break;
  case U1Mode::Averaged:
    if (!p.catalog()) throw ConfigError("averaged u_1N needs piecewise data");
    in.u1N = build_u1N_averaged(*p.pieces, g);
    break;
  case U1Mode::Auto: break;
  }

  FNMode fm = cfg.fn_mode;
  if (fm == FNMode::Auto) fm = p.catalog() ? FNMode::Averaged : (fourth ? FNMode::Smooth : FNMode::Nodal);
  if (fm != FNMode::Averaged && !p.f) throw ConfigError("f of " + p.name + " carries a Dirac atom; use averaged f_N");
  switch (fm) {
  case FNMode::Averaged: {
    if (!p.catalog()) throw ConfigError("averaged f_N needs piecewise data");
    auto d = *p.pieces;
    in.fN0 = build_fN0_averaged(d, g, tm);
    in.fN = [d, g, tm](int m) { return build_fN_averaged(d, g, tm, m); };
    break;
  }
  case FNMode::Smooth: {
    if (cfg.fn0_mode == FN0Mode::Averaged) throw ConfigError("averaged f_N^0 needs piecewise data");
    in.fN0 = build_fN0_smooth(p.f, g, ht, cfg.fn0_mode, cfg.exec);
    in.fN = [f = p.f, g, tm, exec = cfg.exec](int m) { return build_fN_smooth(f, g, tm, m, exec); };
    break;
  }
  case FNMode::Nodal:
  case FNMode::Auto: {
    auto nodal = [f = p.f, g](double t) {
      GridFunction w(g);
      w.sample([&](const Point& x) { return f(x, t); });
      w.zero_boundary();
      return w;
    };
    in.fN0 = nodal(0.0);
    in.fN = [nodal, tm](int m) { return nodal(tm.t(m)); };
    break;
  }
  }
  return in;
}

RunResult run(const ProblemSpec& p, const SchemeConfig& cfg, const GridPtr& g, const TimeMesh& tm,
              const LevelObserver& obs) {
  if (cfg.kind == SchemeKind::ExplicitCharacteristic)
    throw ConfigError("use run_explicit_characteristic for the characteristic-mesh scheme");
  if (!tm.uniform()) throw Unsupported("time stepping on graded time meshes");
  StepOperator op(cfg.kind, g, p.a, tm.step(), cfg.sigma, cfg.exec);
  StepInputs in = build_inputs(p, cfg, g, tm);
  return run_steps(op, in, tm.M(), cfg, obs);
}

RunResult run_nonuniform(const ProblemSpec& p, const AxisMesh& axis, const TimeMesh& tm, const LevelObserver& obs,
                         FN0Mode fn0) {
  SchemeConfig cfg;
  cfg.kind = SchemeKind::NonUniformCompact;
  cfg.fn_mode = FNMode::Smooth;
  cfg.u1_mode = U1Mode::Compact;
  cfg.fn0_mode = fn0;
  return run(p, cfg, make_grid({axis}), tm, obs);
}

namespace {

double integral_over(const std::function<double(double)>& fn, double lo, double hi) {
  return Gauss::integrate(fn, lo, hi);
}

// integral of f over {t0 <= t <= t1, |x - xc| <= w(t)}, w linear from w0 to w1
double smooth_region(const SpaceTimeFn& f, double xc, double t0, double t1, double w0, double w1) {
  return integral_over(
      [&](double t) {
        const double w = w0 + (w1 - w0) * (t - t0) / (t1 - t0);
        if (w <= 0) return 0.0;
        return integral_over([&](double x) { return f(Point{x, 0, 0}, t); }, xc - w, xc + w);
      },
      t0, t1);
}

double region(const ProblemSpec& p, double xc, double t0, double t1, double w0, double w1) {
  if (!p.catalog()) return smooth_region(p.f, xc, t0, t1, w0, w1);
  double s = 0;
  for (const auto& term : p.pieces->f) s += region_integral(term, p.pieces->t_star, xc, t0, t1, w0, w1);
  return s;
}

} // namespace

TimeMesh characteristic_time_mesh(const ProblemSpec& p, int N, int M) {
  if (p.dim != 1) throw Unsupported("the characteristic-mesh scheme is one-dimensional");
  const double ht = p.X[0] / N / p.a[0];
  return TimeMesh::uniform(M * ht, M);
}

RunResult run_explicit_characteristic(const ProblemSpec& p, int N, int M, const LevelObserver& obs, TimeMesh* tm_out) {
  if (p.dim != 1) throw Unsupported("the characteristic-mesh scheme is one-dimensional");
  GridPtr g = uniform_grid(p, N);
  const auto& ax = g->axis(0);
  const double h = ax.step();
  const TimeMesh tm = characteristic_time_mesh(p, N, M);
  const double ht = tm.step();
  if (tm_out) *tm_out = tm;

  GridFunction u1N(g), fN0(g);
  for (int k = 1; k < N; ++k) {
    const double x = ax.x(k);
    u1N[static_cast<size_t>(k)] =
        p.catalog() ? box_average(p.pieces->u1, x, h)
                    : integral_over([&](double s) { return p.u1(Point{s, 0, 0}); }, x - h, x + h) / (2 * h);
    fN0[static_cast<size_t>(k)] = region(p, x, 0.0, ht, h, 0.0) / (h * ht);
  }
  auto set_bc = [&](GridFunction& w, int m) {
    const double t = tm.t(m);
    w[0] = p.g(Point{ax.x(0), 0, 0}, t);
    w[static_cast<size_t>(N)] = p.g(Point{ax.x(N), 0, 0}, t);
  };

  SchemeConfig cfg;
  RunResult res;
  LevelTracker track{cfg, obs, res};
  GridFunction prev(g);
  prev.sample(p.u0);
  if (!track.accept(0, prev)) return res;
  GridFunction cur(g);
  for (int k = 1; k < N; ++k) {
    const auto i = static_cast<size_t>(k);
    cur[i] = 0.5 * (prev[i - 1] + prev[i + 1]) + ht * u1N[i] + 0.5 * ht * ht * fN0[i];
  }
  set_bc(cur, 1);
  res.previous = prev;
  res.last = cur;
  if (!track.accept(1, cur)) return res;
  for (int m = 1; m < M; ++m) {
    GridFunction next(g);
    const double tl = tm.t(m - 1), tc = tm.t(m), tu = tm.t(m + 1);
    for (int k = 1; k < N; ++k) {
      const auto i = static_cast<size_t>(k);
      const double x = ax.x(k);
      const double fN = (region(p, x, tl, tc, 0.0, h) + region(p, x, tc, tu, h, 0.0)) / (2 * h * ht);
      next[i] = cur[i - 1] + cur[i + 1] - prev[i] + ht * ht * fN;
    }
    set_bc(next, m + 1);
    prev = std::move(cur);
    cur = std::move(next);
    res.previous = prev;
    res.last = cur;
    if (!track.accept(m + 1, cur)) break;
  }
  return res;
}

} // namespace cwave
