#include "cwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "cwave/errors.hpp"

namespace cwave {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

} // namespace

NormObserver::NormObserver(SpaceTimeFn exact, GridPtr g, TimeMesh tm)
    : exact_(std::move(exact)), g_(std::move(g)), tm_(std::move(tm)) {}

void NormObserver::operator()(int m, const GridFunction& v) {
  GridFunction r(g_);
  const double t = tm_.t(m);
  r.sample([&](const Point& x) { return exact_(x, t); });
  r -= v;
  if (!v.all_finite()) {
    e_ = {kInf, kInf, kInf};
    return;
  }
  e_.Ch = std::max(e_.Ch, r.max_abs());
  e_.L2h = std::max(e_.L2h, norm_h(r));
  e_.Eh = std::max(e_.Eh, tilde_norm_gradient(r));
  if (m >= 1 && last_ == m - 1) {
    GridFunction d = r - prev_;
    d *= 1.0 / tm_.h(m);
    e_.Eh = std::max(e_.Eh, norm_h(d));
  }
  prev_ = std::move(r);
  last_ = m;
}

LevelObserver NormObserver::as_observer() {
  return [this](int m, const GridFunction& v) { (*this)(m, v); };
}

double tilde_norm_gradient(const GridFunction& w) {
  const Grid& g = w.grid();
  double s = 0;
  for_each_node(g, [&](size_t f, const Index3& i) {
    for (int k = 0; k < g.dim(); ++k) {
      const auto uk = static_cast<size_t>(k);
      if (i[uk] == 0) continue;
      double weight = 1;
      bool inside = true;
      for (int j = 0; j < g.dim(); ++j) {
        if (j == k) continue;
        const int ij = i[static_cast<size_t>(j)];
        if (ij == 0 || ij == g.axis(j).N()) {
          inside = false;
          break;
        }
        weight *= g.axis(j).h_star(ij);
      }
      if (!inside) continue;
      const double h = g.axis(k).h(i[uk]);
      const double d = (w[f] - w[f - g.stride(k)]) / h;
      s += weight * h * d * d;
    }
  });
  return std::sqrt(s);
}

ErrorTriple error_norms(const RunResult& run, const SpaceTimeFn& exact, const GridPtr& g, const TimeMesh& tm) {
  if (run.aborted) return {kInf, kInf, kInf};
  if (run.trajectory.empty()) throw std::invalid_argument("error_norms needs a stored trajectory");
  NormObserver obs(exact, g, tm);
  for (size_t m = 0; m < run.trajectory.size(); ++m) obs(static_cast<int>(m), run.trajectory[m]);
  return obs.result();
}

FitResult fit_order(const std::vector<std::pair<int, double>>& points, double X, int min_N) {
  FitResult r;
  std::vector<double> xs, ys;
  for (const auto& [N, e] : points) {
    if (N < min_N) continue;
    if (!(e > 0) || !std::isfinite(e)) {
      r.warnings.push_back("N=" + std::to_string(N) + ": error " + fmt("%g", e) + " excluded from the fit");
      continue;
    }
    xs.push_back(std::log10(X / N));
    ys.push_back(std::log10(e));
  }
  r.used = static_cast<int>(xs.size());
  if (r.used < 3) throw ConfigError("order fit needs at least 3 usable points, got " + std::to_string(r.used));
  const double n = r.used;
  double sx = 0, sy = 0;
  for (int i = 0; i < r.used; ++i) {
    sx += xs[static_cast<size_t>(i)];
    sy += ys[static_cast<size_t>(i)];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < r.used; ++i) {
    const double dx = xs[static_cast<size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[static_cast<size_t>(i)] - my);
  }
  if (sxx == 0) throw ConfigError("order fit needs at least two distinct N");
  r.gamma = sxy / sxx;
  const double b = my - r.gamma * mx;
  r.c0 = std::pow(10.0, b);
  for (int i = 0; i < r.used; ++i)
    r.max_residual = std::max(r.max_residual, std::abs(ys[static_cast<size_t>(i)] - (b + r.gamma * xs[static_cast<size_t>(i)])));
  return r;
}

TheoreticalOrders theoretical_orders(double alpha, int method_order) {
  TheoreticalOrders t;
  if (method_order == 4) {
    t.gamma = {std::min(0.8 * alpha, 4.0), 0.8 * (alpha - 0.5), 0.8 * (alpha - 1)};
    t.in_range = {alpha >= 0, alpha > 0.5 && alpha <= 5.5, alpha >= 1 && alpha <= 6};
  } else if (method_order == 2) {
    t.gamma = {std::min(2.0 / 3 * alpha, 2.0), std::min(2.0 / 3 * (alpha - 0.5), 2.0), std::min(2.0 / 3 * (alpha - 1), 2.0)};
    t.in_range = {alpha >= 0, alpha > 0.5, alpha >= 1};
  } else {
    throw ConfigError("method order must be 2 or 4");
  }
  return t;
}

std::string short_sci(double x) {
  if (x == 0) return "0";
  if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  const std::string sign = x < 0 ? "-" : "";
  x = std::abs(x);
  int e = static_cast<int>(std::floor(std::log10(x))) + 1;
  long mi = std::lround(x / std::pow(10.0, e) * 1000);
  if (mi >= 1000) {
    mi = 100;
    ++e;
  }
  char buf[48];
  if (e == 0)
    std::snprintf(buf, sizeof buf, "%s.%03ld", sign.c_str(), mi);
  else
    std::snprintf(buf, sizeof buf, "%s.%03ldE%d", sign.c_str(), mi, e);
  return buf;
}

std::string build_report(const std::vector<ConvergenceReport>& reports, const std::string& format) {
  if (format != "csv" && format != "md" && format != "markdown") throw ConfigError("format must be csv or md");
  const bool md = format != "csv";
  std::set<int> allN;
  bool with_mesh = false;
  for (const auto& r : reports) {
    allN.insert(r.Ns.begin(), r.Ns.end());
    with_mesh = with_mesh || r.mesh.has_value();
  }
  std::vector<std::string> head{"label", "scheme", "norm", "c0", "gamma_pr", "gamma_th", "gamma_th2"};
  for (int N : allN) head.push_back("r_" + std::to_string(N));
  if (with_mesh) {
    for (const char* c : {"h_ratio", "rho_min", "rho_max", "M_over_N"}) head.emplace_back(c);
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    if (md) {
      out << "|";
      for (const auto& c : cells) out << " " << c << " |";
    } else {
      for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    }
    out << "\n";
  };
  emit(head);
  if (md) emit(std::vector<std::string>(head.size(), "---"));

  for (const auto& r : reports) {
    for (int norm = 0; norm < 3; ++norm) {
      std::vector<std::string> row{r.label, r.scheme, kNormNames[static_cast<size_t>(norm)]};
      if (r.fits) {
        const auto& f = (*r.fits)[static_cast<size_t>(norm)];
        const std::string star = r.starred ? "*" : "";
        row.push_back(fmt("%.4g", f.c0) + star);
        row.push_back(fmt("%.3f", f.gamma) + star);
      } else {
        row.insert(row.end(), {"", ""});
      }
      row.push_back(r.th ? fmt("%.3f", r.th->gamma[static_cast<size_t>(norm)]) : "");
      row.push_back(r.th2 ? fmt("%.3f", r.th2->gamma[static_cast<size_t>(norm)]) : "");
      for (int N : allN) {
        auto it = std::find(r.Ns.begin(), r.Ns.end(), N);
        if (it == r.Ns.end()) {
          row.emplace_back("");
          continue;
        }
        const double e = r.errors[static_cast<size_t>(it - r.Ns.begin())].get(norm);
        row.push_back(md ? short_sci(e) : fmt("%.6e", e));
      }
      if (with_mesh) {
        if (r.mesh) {
          row.push_back(fmt("%.4g", r.mesh->ratio));
          row.push_back(fmt("%.4f", r.mesh->rho_min));
          row.push_back(fmt("%.4f", r.mesh->rho_max));
          row.push_back(fmt("%.3g", r.M_over_N));
        } else {
          row.insert(row.end(), {"", "", "", ""});
        }
      }
      emit(row);
    }
  }
  return out.str();
}

namespace {

void finish_fits(ConvergenceReport& rep, int min_N) {
  if (rep.Ns.size() < 3) return;
  std::array<FitResult, 3> fits;
  for (int norm = 0; norm < 3; ++norm) {
    std::vector<std::pair<int, double>> pts;
    for (size_t i = 0; i < rep.Ns.size(); ++i) pts.emplace_back(rep.Ns[i], rep.errors[i].get(norm));
    fits[static_cast<size_t>(norm)] = fit_order(pts, 1.0, min_N);
  }
  rep.fits = fits;
}

} // namespace

ConvergenceReport table1_study(double alpha, SchemeKind kind, const std::vector<int>& Ns, Exec exec) {
  const ProblemSpec p = make_example(alpha);
  ConvergenceReport rep;
  rep.label = fmt("%.1f", alpha);
  rep.scheme = to_string(kind);
  SchemeConfig cfg;
  cfg.kind = kind;
  cfg.exec = exec;
  for (int N : Ns) {
    if (N % 2 != 0)
      throw ConfigError("N must be even for the catalog examples: x = 0 must be a node (Dirac data and breakpoints)");
    GridPtr g = uniform_grid(p, N);
    const TimeMesh tm = TimeMesh::uniform(p.T, N);
    NormObserver obs(p.exact, g, tm);
    const RunResult r = run(p, cfg, g, tm, obs.as_observer());
    rep.blew_up = rep.blew_up || r.blew_up;
    rep.Ns.push_back(N);
    rep.errors.push_back(r.aborted ? ErrorTriple{kInf, kInf, kInf} : obs.result());
  }
  rep.th = theoretical_orders(alpha, 4);
  rep.th2 = theoretical_orders(alpha, 2);
  finish_fits(rep, 0);
  return rep;
}

ConvergenceReport table2_study(const NodeDistribution& phi, const std::vector<int>& Ns, double factor, int min_N,
                               Exec exec) {
  const ProblemSpec p = make_smooth_nonuniform_problem();
  ConvergenceReport rep;
  rep.label = phi.name;
  rep.scheme = to_string(SchemeKind::NonUniformCompact);
  rep.starred = min_N > 0;
  int maxN = 0;
  for (int N : Ns) {
    const AxisMesh axis = build_graded_axis(phi, N, p.X[0], p.origin[0]);
    const MeshStats st = mesh_stats(axis);
    const int M = select_time_step_count(st.h_min, p.a[0], p.T, factor);
    const TimeMesh tm = TimeMesh::uniform(p.T, M);
    GridPtr g = make_grid({axis});
    NormObserver obs(p.exact, g, tm);
    SchemeConfig cfg;
    cfg.kind = SchemeKind::NonUniformCompact;
    cfg.fn_mode = FNMode::Smooth;
    cfg.u1_mode = U1Mode::Compact;
    cfg.fn0_mode = FN0Mode::Graded;
    cfg.exec = exec;
    const RunResult r = run(p, cfg, g, tm, obs.as_observer());
    rep.blew_up = rep.blew_up || r.blew_up;
    rep.Ns.push_back(N);
    rep.errors.push_back(r.aborted ? ErrorTriple{kInf, kInf, kInf} : obs.result());
    if (N >= maxN) {
      maxN = N;
      rep.mesh = st;
      rep.M_over_N = static_cast<double>(M) / N;
    }
  }
  finish_fits(rep, min_N);
  return rep;
}

} // namespace cwave
