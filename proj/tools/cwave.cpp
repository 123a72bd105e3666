// Command-line front end: single runs, the two convergence tables, stability reports.
#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "cwave/analysis.hpp"
#include "cwave/config.hpp"
#include "cwave/errors.hpp"
#include "cwave/operators.hpp"
#include "cwave/stability.hpp"

using namespace cwave;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kBlowUp = 3, kSingular = 4 };

struct Flags {
  std::string config, problem, scheme, mesh, Ns, M, format, out, fn0;
  double cfl_factor = 0, eps0 = 0, sigma = 0;
  int jobs = 1;
  unsigned long long seed = 0;
  bool serial = false;
};

// Options shared by every subcommand; values only override the config when given.
void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON run config");
  app->add_option("--problem", f.problem, "problem name (E_1.5, smooth1d, sine2d, ...)");
  app->add_option("--scheme", f.scheme, "scheme name");
  app->add_option("--mesh", f.mesh, "uniform or phi0..phi6");
  app->add_option("--N", f.Ns, "comma-separated interval counts");
  app->add_option("--M", f.M, "time steps, integer or auto");
  app->add_option("--cfl-factor", f.cfl_factor, "factor in M = floor(factor a T / h_min)");
  app->add_option("--eps0", f.eps0, "stability parameter eps0 in (0,1)");
  app->add_option("--sigma", f.sigma, "weight of the second-order scheme");
  app->add_option("--fn0", f.fn0, "f_N^0 rule for smooth data");
  app->add_option("--format", f.format, "csv or md");
  app->add_option("--out", f.out, "output file (default stdout)");
  app->add_option("--jobs", f.jobs, "sweep members run concurrently");
  app->add_option("--seed", f.seed, "random seed");
  app->add_flag("--serial", f.serial, "use the serial reference kernels");
}

RunConfig resolve(const CLI::App* app, const Flags& f, RunConfig c) {
  if (!f.config.empty()) c = load_run_config(f.config);
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--problem")) c.problem = f.problem;
  if (given("--scheme")) c.scheme = f.scheme;
  if (given("--mesh")) c.mesh = f.mesh;
  if (given("--N")) c.Ns = parse_int_list(f.Ns);
  if (given("--M")) {
    if (f.M == "auto") {
      c.M.reset();
    } else {
      const auto v = parse_int_list(f.M);
      if (v.size() != 1) throw ConfigError("--M takes one integer or auto");
      c.M = v[0];
    }
  }
  if (given("--cfl-factor")) c.cfl_factor = f.cfl_factor;
  if (given("--eps0")) c.eps0 = f.eps0;
  if (given("--sigma")) c.sigma = f.sigma;
  if (given("--fn0")) c.fn0 = fn0_mode_from_string(f.fn0);
  if (given("--format")) c.format = f.format;
  if (given("--out")) c.out = f.out;
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--seed")) c.seed = f.seed;
  if (given("--serial")) c.serial = f.serial;
  c.validate();
  return c;
}

void emit(const RunConfig& c, const std::string& body) {
  std::ostringstream s;
  s << (c.format == "md" ? "<!-- config: " : "# config: ") << to_json(c) << (c.format == "md" ? " -->" : "") << "\n";
  s << body;
  if (c.out.empty()) {
    std::cout << s.str();
    return;
  }
  std::ofstream o(c.out);
  if (!o) throw ConfigError("cannot write " + c.out);
  o << s.str();
}

// Runs task(i) for i < n on up to `jobs` threads; results stay in index order.
template <class R>
std::vector<R> sweep(size_t n, int jobs, const std::function<R(size_t)>& task) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> err(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < n;) {
      try {
        out[i] = task(i);
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < std::min<int>(jobs, static_cast<int>(n)); ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

GridPtr build_grid(const ProblemSpec& p, const RunConfig& c, int N) {
  if (c.mesh == "uniform") return uniform_grid(p, N);
  if (p.dim != 1) throw Unsupported("graded meshes are one-dimensional");
  return make_grid({build_graded_axis(distribution_by_name(c.mesh), N, p.X[0], p.origin[0])});
}

double min_step(const Grid& g) {
  double h = INFINITY;
  for (int k = 0; k < g.dim(); ++k) h = std::min(h, mesh_stats(g.axis(k)).h_min);
  return h;
}

double max_speed(const ProblemSpec& p) { return *std::max_element(p.a.begin(), p.a.end()); }

std::string stability_line(const StabilityReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "value=%.6g threshold=%.6g margin=%.6g C0=%.6g alpha2=%.6g %s%s", r.value,
                r.threshold, r.margin, r.C0, r.alpha2, r.pass ? "pass" : "FAIL",
                r.unconditional ? " (unconditional)" : r.warning ? " (marginal warning)" : "");
  return buf;
}

struct RunRow {
  ErrorTriple e;
  bool blew_up = false;
  std::string notes;
};

// Catalog data carries breakpoints and atoms at t = 1/2, which must be a time node: use M = N there.
int auto_steps(const ProblemSpec& p, const Grid& g, const RunConfig& c, int N) {
  if (p.catalog()) return N;
  return select_time_step_count(min_step(g), max_speed(p), p.T, c.cfl_factor);
}

RunRow run_one(const ProblemSpec& p, SchemeKind kind, const RunConfig& c, int N) {
  RunRow row;
  std::ostringstream notes;
  RunResult r;
  if (kind == SchemeKind::ExplicitCharacteristic) {
    const int M = c.M ? *c.M : N / 2;
    const TimeMesh tm = characteristic_time_mesh(p, N, M);
    NormObserver obs(p.exact, uniform_grid(p, N), tm);
    r = run_explicit_characteristic(p, N, M, obs.as_observer());
    row.e = obs.result();
    notes << "N=" << N << " M=" << M << " T=" << tm.T() << "\n";
  } else {
    GridPtr g = build_grid(p, c, N);
    const int M = c.M ? *c.M : auto_steps(p, *g, c, N);
    const TimeMesh tm = TimeMesh::uniform(p.T, M);
    SchemeConfig sc;
    sc.kind = kind;
    sc.sigma = c.sigma;
    sc.exec = c.exec();
    if (!g->uniform()) {
      sc.fn_mode = FNMode::Smooth;
      sc.u1_mode = U1Mode::Compact;
      sc.fn0_mode = c.fn0;
    }
    NormObserver obs(p.exact, g, tm);
    r = run(p, sc, g, tm, obs.as_observer());
    row.e = obs.result();
    notes << "N=" << N << " M=" << M;
    try {
      notes << " stability: " << stability_line(check_cfl(kind, *g, p.a, tm.step(), c.eps0, c.sigma));
    } catch (const Unsupported& ex) {
      notes << " stability: n/a (" << ex.what() << ")";
    }
    notes << "\n";
  }
  if (r.blew_up) notes << "N=" << N << " BLOW-UP: max|v| = " << r.max_abs << " at level " << r.levels << "\n";
  row.blew_up = r.blew_up;
  row.notes = notes.str();
  return row;
}

int cmd_run(const RunConfig& c) {
  const ProblemSpec p = problem_by_name(c.problem);
  const SchemeKind kind = scheme_kind_from_string(c.scheme);
  const auto rows =
      sweep<RunRow>(c.Ns.size(), c.jobs, [&](size_t i) { return run_one(p, kind, c, c.Ns[i]); });
  ConvergenceReport rep;
  rep.label = p.name;
  rep.scheme = c.scheme;
  std::string notes;
  for (size_t i = 0; i < rows.size(); ++i) {
    rep.Ns.push_back(c.Ns[i]);
    rep.errors.push_back(rows[i].e);
    rep.blew_up = rep.blew_up || rows[i].blew_up;
    notes += rows[i].notes;
  }
  if (rep.Ns.size() >= 3 && !rep.blew_up) {
    std::array<FitResult, 3> fits;
    for (int k = 0; k < 3; ++k) {
      std::vector<std::pair<int, double>> pts;
      for (size_t i = 0; i < rep.Ns.size(); ++i) pts.emplace_back(rep.Ns[i], rep.errors[i].get(k));
      fits[static_cast<size_t>(k)] = fit_order(pts, p.X[0]);
    }
    rep.fits = fits;
  }
  std::string body = build_report({rep}, c.format);
  std::istringstream ns(notes);
  for (std::string line; std::getline(ns, line);) body += "# " + line + "\n";
  emit(c, body);
  return rep.blew_up ? kBlowUp : kOk;
}

int cmd_table1(const RunConfig& c, std::vector<double> alphas, bool full) {
  std::vector<int> Ns = c.Ns;
  if (full) {
    Ns = {200, 400, 800, 1600, 3200};
    alphas = {0.5, 1.5, 2.5, 3.5, 4.5, 5.5};
  }
  const std::array kinds{SchemeKind::Compact1D, SchemeKind::SecondOrderWeighted};
  const auto reps = sweep<ConvergenceReport>(alphas.size() * 2, c.jobs, [&](size_t i) {
    return table1_study(alphas[i / 2], kinds[i % 2], Ns, c.exec());
  });
  bool blew = false;
  for (const auto& r : reps) blew = blew || r.blew_up;
  emit(c, build_report(reps, c.format));
  return blew ? kBlowUp : kOk;
}

int cmd_table2(const RunConfig& c, const std::vector<std::string>& phis, bool full) {
  std::vector<int> Ns = c.Ns;
  if (full) Ns = {100, 141, 200, 283, 400, 566, 800};
  std::vector<NodeDistribution> dists;
  for (const auto& name : phis) dists.push_back(distribution_by_name(name));
  const auto reps = sweep<ConvergenceReport>(dists.size(), c.jobs, [&](size_t i) {
    // the strongly graded meshes are fitted on N > 150 only
    const bool starred = full && (dists[i].name == "phi2" || dists[i].name == "phi6");
    return table2_study(dists[i], Ns, c.cfl_factor, starred ? 151 : 0, c.exec());
  });
  bool blew = false;
  for (const auto& r : reps) blew = blew || r.blew_up;
  emit(c, build_report(reps, c.format));
  return blew ? kBlowUp : kOk;
}

int cmd_stability(const RunConfig& c, int certify) {
  const ProblemSpec p = problem_by_name(c.problem);
  const SchemeKind kind = scheme_kind_from_string(c.scheme);
  std::ostringstream s;
  for (int N : c.Ns) {
    GridPtr g = build_grid(p, c, N);
    const int M = c.M ? *c.M : auto_steps(p, *g, c, N);
    s << "N=" << N << " M=" << M << " " << stability_line(check_cfl(kind, *g, p.a, p.T / M, c.eps0, c.sigma)) << "\n";
  }
  if (certify > 0) {
    std::mt19937_64 rng(c.seed);
    int checked = 0, violations = 0;
    for (int i = 0; i < certify; ++i) {
      const RandomInstance inst = certify_random_instance(kind, rng);
      for (const auto& cert : inst.certificates) {
        ++checked;
        if (!cert.holds) ++violations;
      }
    }
    s << "energy certificates: instances=" << certify << " checked=" << checked << " violations=" << violations
      << "\n";
  }
  emit(c, s.str());
  return kOk;
}

int cmd_selftest(const RunConfig& c) {
  std::ostringstream s;
  bool ok = true;
  auto report = [&](const char* name, bool pass, double value) {
    s << (pass ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
    ok = ok && pass;
  };
  {
    const ProblemSpec p = make_example(1.5);
    TimeMesh tm = characteristic_time_mesh(p, 20, 10);
    NormObserver obs(p.exact, uniform_grid(p, 20), tm);
    run_explicit_characteristic(p, 20, 10, obs.as_observer());
    report("explicit characteristic scheme is exact", obs.result().Ch <= 1e-12, obs.result().Ch);
  }
  {
    GridPtr g = make_grid({build_uniform_axis(6, 1, 0), build_uniform_axis(5, 1, 0)});
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> U(-1, 1);
    const std::vector<double> a{1.0, 0.7};
    StepOperator op(SchemeKind::Splitting, g, a, 0.05);
    GridFunction b(g);
    for (double& x : b.values()) x = U(rng);
    b.zero_boundary();
    const Eigen::MatrixXd S = assemble_dense(g, [&](const GridFunction& w) { return op.apply_S(w); });
    const Eigen::VectorXd ref = dense_solve_oracle(S, interior_vector(b));
    op.solve(b);
    const double err = (interior_vector(b) - ref).lpNorm<Eigen::Infinity>();
    report("splitting solve matches dense oracle", err <= 1e-11, err);
  }
  {
    const auto rep = table2_study(builtin_distribution(0), {50, 100, 200}, 1.4142135623730951, 0, c.exec());
    report("uniform smooth problem has order 4", std::abs(rep.fits->at(1).gamma - 4) < 0.1, rep.fits->at(1).gamma);
  }
  emit(c, s.str());
  return ok ? kOk : kOther;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact fourth-order schemes for the wave equation"};
  app.require_subcommand(1);
  Flags f;
  std::vector<double> alphas{1.5, 2.5, 3.5};
  std::vector<std::string> phis{"phi0", "phi1", "phi2", "phi3", "phi4", "phi5", "phi6"};
  bool full = false;
  int certify = 0;

  auto* run = app.add_subcommand("run", "single scheme over an N list");
  add_common(run, f);
  auto* t1 = app.add_subcommand("table1", "uniform-mesh study on the E_alpha examples");
  add_common(t1, f);
  t1->add_option("--alpha", alphas, "smoothness labels")->delimiter(',');
  t1->add_flag("--full", full, "the full N list up to 3200 and all alpha (round-off limited)");
  auto* t2 = app.add_subcommand("table2", "graded-mesh study on the smooth problem");
  add_common(t2, f);
  t2->add_option("--phi", phis, "node distributions")->delimiter(',');
  t2->add_flag("--full", full, "N from 100 to 800 in steps of sqrt 2, starred fits");
  auto* st = app.add_subcommand("stability", "CFL report and optional energy certificates");
  add_common(st, f);
  st->add_option("--certify", certify, "random energy-bound instances to check");
  auto* self = app.add_subcommand("selftest", "quick correctness checks");
  add_common(self, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (run->parsed()) return cmd_run(resolve(run, f, RunConfig{}));
    if (t1->parsed()) {
      RunConfig d;
      d.problem = "E_1.5";
      d.scheme = "compact1d";
      d.Ns = {200, 400, 800};
      return cmd_table1(resolve(t1, f, d), alphas, full);
    }
    if (t2->parsed()) {
      RunConfig d;
      d.scheme = "nonuniform";
      d.Ns = {200, 400, 800};
      return cmd_table2(resolve(t2, f, d), phis, full);
    }
    if (st->parsed()) return cmd_stability(resolve(st, f, RunConfig{}), certify);
    if (self->parsed()) return cmd_selftest(resolve(self, f, RunConfig{}));
  } catch (const SingularSystemError& e) {
    std::cerr << "error: singular system: " << e.what() << "\n";
    return kSingular;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const MeshError& e) {
    std::cerr << "error: mesh: " << e.what() << "\n";
    return kConfig;
  } catch (const Unsupported& e) {
    std::cerr << "error: unsupported: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
