#include "cwave/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cwave/errors.hpp"

namespace cwave {

double cfl_constant_C0(SchemeKind kind, int dim) { return (kind == SchemeKind::Compact2D_sN && dim == 2) ? 4.0 / 3 : 1.0; }

double alpha2_bound(SchemeKind kind, const Grid& g, std::span<const double> a) {
  double s = 0;
  for (int k = 0; k < g.dim(); ++k) {
    const auto& ax = g.axis(k);
    double hmin = ax.h(1);
    for (int l = 2; l <= ax.N(); ++l) hmin = std::min(hmin, ax.h(l));
    s += a[static_cast<size_t>(k)] * a[static_cast<size_t>(k)] / (hmin * hmin);
  }
  return (kind == SchemeKind::SecondOrderWeighted ? 4.0 : 6.0 * cfl_constant_C0(kind, g.dim())) * s;
}

double sharp_alpha2(SchemeKind kind, const Grid& g, std::span<const double> a, double ht, double sigma) {
  const OperatorPair p = operator_pair(kind, g, a, ht, sigma);
  const int n = g.dim();
  std::array<std::vector<double>, 3> mu;
  for (int k = 0; k < n; ++k) mu[static_cast<size_t>(k)] = sine_spectrum(g.axis(k));
  if (n == 1) {
    // A/B increases with mu for every 1D pair, so the top mode is sharp
    const double top = mu[0].back();
    return p.A({top, 0, 0}) / p.B({top, 0, 0});
  }
  for (int k = n; k < 3; ++k) mu[static_cast<size_t>(k)] = {0.0};
  double best = 0;
  for (double m0 : mu[0])
    for (double m1 : mu[1])
      for (double m2 : mu[2]) {
        const std::array<double, 3> m{m0, m1, m2};
        best = std::max(best, p.A(m) / p.B(m));
      }
  return best;
}

StabilityReport check_cfl(SchemeKind kind, const Grid& g, std::span<const double> a, double ht, double eps0,
                          double sigma) {
  if (!(eps0 > 0 && eps0 < 1)) throw ConfigError("eps0 must lie in (0, 1)");
  if (kind == SchemeKind::ExplicitCharacteristic) throw Unsupported("no CFL report for the characteristic-mesh scheme");
  StabilityReport r;
  r.eps0 = eps0;
  r.C0 = cfl_constant_C0(kind, g.dim());
  r.threshold = 1 - eps0 * eps0;
  const double s = kind == SchemeKind::SecondOrderWeighted ? sigma : 1.0 / 12;
  // (1/4 - sigma) h_t^2 alpha^2 with alpha^2 replaced by its guaranteed bound
  r.value = (0.25 - s) * ht * ht * alpha2_bound(kind, g, a);
  if (g.uniform()) r.alpha2 = sharp_alpha2(kind, g, a, ht, sigma);
  if (s >= 0.25) {
    r.unconditional = true;
    r.value = std::max(r.value, 0.0);
    r.margin = r.threshold - r.value;
    r.pass = true;
    return r;
  }
  r.margin = r.threshold - r.value;
  r.pass = r.value <= r.threshold;
  r.warning = r.margin < 0 && r.margin >= -0.01;
  return r;
}

std::string to_string(EnergyBound b) {
  switch (b) {
  case EnergyBound::Strong: return "strong";
  case EnergyBound::StrongAltF: return "strong-alt-f";
  case EnergyBound::Weak: return "weak";
  case EnergyBound::WeakDeltaG: return "weak-delta-g";
  }
  return "?";
}

SpectralNorms::SpectralNorms(const OperatorPair& pair, const GridPtr& g, double ht)
    : g_(g), ht_(ht), sigma_(pair.sigma) {
  b_ = spectrum_table(g, pair.B);
  a_ = spectrum_table(g, pair.A);
  s_ = b_;
  s_.axpy(sigma_ * ht * ht, a_);
  cell_ = 1;
  for (int k = 0; k < g->dim(); ++k) cell_ *= g->axis(k).step();
}

double SpectralNorms::weighted(const GridFunction& w, const GridFunction& tab, double power) const {
  GridFunction c = w;
  dst_interior(c, Exec::Serial);
  double s = 0;
  for_each_node(*g_, [&](size_t f, const Index3& i) {
    if (!g_->on_boundary(i)) s += std::pow(tab[f], power) * c[f] * c[f];
  });
  return std::sqrt(std::max(0.0, cell_ * s));
}

double SpectralNorms::B(const GridFunction& w) const { return weighted(w, b_, 1); }
double SpectralNorms::A(const GridFunction& w) const { return weighted(w, a_, 1); }
double SpectralNorms::B_inv_half(const GridFunction& w) const { return weighted(w, b_, -1); }
double SpectralNorms::A_inv_half(const GridFunction& w) const { return weighted(w, a_, -1); }
double SpectralNorms::S_inv_half(const GridFunction& w) const { return weighted(w, s_, -1); }

double SpectralNorms::norm_0h(const GridFunction& w) const {
  const double b = B(w), a = A(w);
  return std::sqrt(std::max(0.0, b * b + (sigma_ - 0.25) * ht_ * ht_ * a * a));
}

EnergyCertificate verify_energy_bound(const SpectralNorms& nrm, double ht, double eps0, EnergyBound which,
                                      const std::vector<GridFunction>& v, const GridFunction& u1N,
                                      const std::vector<GridFunction>& f, const std::vector<GridFunction>* g,
                                      double slack) {
  if (v.size() < 2) throw std::invalid_argument("energy certificate needs a stored trajectory");
  const int M = static_cast<int>(v.size()) - 1;
  if (static_cast<int>(f.size()) < M) throw std::invalid_argument("need f^0..f^{M-1}");
  const bool weighted = nrm.sigma() >= 0.25;
  if (weighted) eps0 = 1.0;
  // the lower energy norm: ||.||_{0,h} when sigma >= 1/4, eps0 ||.||_B otherwise
  auto low = [&](const GridFunction& w) { return weighted ? nrm.norm_0h(w) : eps0 * nrm.B(w); };
  auto L1 = [&](auto&& norm) {
    double s = 0.25 * ht * norm(f[0]);
    for (int m = 1; m < M; ++m) s += ht * norm(f[static_cast<size_t>(m)]);
    return s;
  };

  EnergyCertificate c;
  c.which = which;
  switch (which) {
  case EnergyBound::Strong:
  case EnergyBound::StrongAltF: {
    for (int m = 1; m <= M; ++m) {
      GridFunction d = v[static_cast<size_t>(m)] - v[static_cast<size_t>(m - 1)];
      d *= 1.0 / ht;
      GridFunction s = v[static_cast<size_t>(m)] + v[static_cast<size_t>(m - 1)];
      s *= 0.5;
      const double lo = low(d), a = nrm.A(s);
      c.lhs = std::max(c.lhs, std::sqrt(lo * lo + a * a));
    }
    const double a0 = nrm.A(v[0]), bu = nrm.B_inv_half(u1N);
    c.rhs = std::sqrt(a0 * a0 + bu * bu / (eps0 * eps0));
    if (which == EnergyBound::Strong) {
      c.rhs += 2.0 / eps0 * L1([&](const GridFunction& w) { return nrm.B_inv_half(w); });
    } else {
      double sum = 0, mx = 0;
      for (int m = 0; m < M; ++m) mx = std::max(mx, nrm.A_inv_half(f[static_cast<size_t>(m)]));
      for (int m = 1; m < M; ++m) sum += nrm.A_inv_half(f[static_cast<size_t>(m)] - f[static_cast<size_t>(m - 1)]);
      c.rhs += 2 * sum + 3 * mx; // h_t * ||delta f|| / h_t
    }
    break;
  }
  case EnergyBound::Weak:
  case EnergyBound::WeakDeltaG: {
    GridFunction I(v[0].grid_ptr());
    c.lhs = low(v[0]);
    for (int m = 1; m <= M; ++m) {
      I.axpy(0.5 * ht, v[static_cast<size_t>(m)] + v[static_cast<size_t>(m - 1)]);
      c.lhs = std::max({c.lhs, low(v[static_cast<size_t>(m)]), nrm.A(I)});
    }
    c.rhs = (weighted ? nrm.norm_0h(v[0]) : nrm.B(v[0])) + 2 * nrm.A_inv_half(u1N);
    if (which == EnergyBound::Weak) {
      c.rhs += 2 * L1([&](const GridFunction& w) { return nrm.A_inv_half(w); });
    } else {
      if (!g || static_cast<int>(g->size()) < M + 1) throw std::invalid_argument("need g^0..g^M");
      GridFunction st = (*g)[0] + (*g)[1];
      st *= 0.5;
      double s = 0;
      for (int m = 1; m <= M; ++m) s += ht * nrm.B_inv_half((*g)[static_cast<size_t>(m)] - st);
      c.rhs += 2.0 / eps0 * s;
    }
    break;
  }
  }
  c.holds = c.lhs <= c.rhs * (1 + slack) + slack;
  return c;
}

double u1_energy_term(const SpectralNorms& nrm, const GridFunction& u1) { return nrm.S_inv_half(u1); }

RandomInstance certify_random_instance(SchemeKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0), unit(0.0, 1.0);
  std::uniform_int_distribution<int> Nd(3, 8), Md(2, 20);
  RandomInstance r;
  r.kind = kind;
  switch (kind) {
  case SchemeKind::Compact1D:
  case SchemeKind::NonUniformCompact: r.dim = 1; break;
  case SchemeKind::Compact2D_sN: r.dim = 2; break;
  case SchemeKind::Compact3D_barsN: r.dim = 3; break;
  case SchemeKind::Splitting: r.dim = 2 + static_cast<int>(unit(rng) < 0.5); break;
  default: r.dim = 1 + std::uniform_int_distribution<int>(0, 2)(rng); break;
  }
  std::vector<AxisMesh> axes;
  std::vector<double> a;
  for (int k = 0; k < r.dim; ++k) {
    axes.push_back(build_uniform_axis(Nd(rng), 0.5 + 1.5 * unit(rng), 0.0));
    a.push_back(0.3 + 1.7 * unit(rng));
  }
  GridPtr g = make_grid(std::move(axes));
  const double sigma = kind == SchemeKind::SecondOrderWeighted ? unit(rng) : 0.5;
  r.eps0 = 0.1 + 0.8 * unit(rng);
  r.M = Md(rng);
  // pick h_t so the CFL value lands in [0.2, 1.05] * threshold (some instances fail)
  const double s = kind == SchemeKind::SecondOrderWeighted ? sigma : 1.0 / 12;
  const double per_ht2 = std::max(0.25 - s, 1e-3) * alpha2_bound(kind, *g, a);
  const double target = (0.2 + 0.85 * unit(rng)) * (1 - r.eps0 * r.eps0);
  const double ht = std::sqrt(target / per_ht2);
  r.cfl = check_cfl(kind, *g, a, ht, r.eps0, sigma);
  if (!r.cfl.pass) return r;

  StepOperator op(kind, g, a, ht, sigma, Exec::Serial);
  SpectralNorms nrm(op.pair(), g, ht);
  auto random_fn = [&] {
    GridFunction w(g);
    for (auto& x : w.values()) x = U(rng);
    w.zero_boundary();
    return w;
  };
  SchemeConfig cfg;
  cfg.store_trajectory = true;
  cfg.exec = Exec::Serial;

  auto trajectory = [&](const GridFunction& v0, const GridFunction& u1, const std::vector<GridFunction>& f) {
    StepInputs in{v0, u1, f[0], [&f](int m) { return f[static_cast<size_t>(m)]; }, {}};
    return run_steps(op, in, r.M, cfg).trajectory;
  };

  std::vector<GridFunction> f;
  for (int m = 0; m < r.M; ++m) f.push_back(random_fn());
  const GridFunction v0 = random_fn(), u1 = random_fn();
  const auto v = trajectory(v0, u1, f);
  for (EnergyBound b : {EnergyBound::Strong, EnergyBound::StrongAltF, EnergyBound::Weak})
    r.certificates.push_back(verify_energy_bound(nrm, ht, r.eps0, b, v, u1, f));

  std::vector<GridFunction> gl, fg;
  for (int m = 0; m <= r.M; ++m) gl.push_back(random_fn());
  for (int m = 0; m < r.M; ++m) {
    GridFunction d = gl[static_cast<size_t>(m + 1)] - gl[static_cast<size_t>(m)];
    d *= 1.0 / ht;
    fg.push_back(std::move(d));
  }
  const auto vg = trajectory(v0, u1, fg);
  r.certificates.push_back(verify_energy_bound(nrm, ht, r.eps0, EnergyBound::WeakDeltaG, vg, u1, fg, &gl));
  return r;
}

} // namespace cwave
