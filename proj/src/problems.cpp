#include "cwave/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <string>

#include "cwave/errors.hpp"

namespace cwave {
namespace {

struct Coefs {
  double c1, c2, c3;
};

const std::map<int, Coefs>& catalog_coefs() {
  // keyed by 2*alpha
  static const std::map<int, Coefs> c{{1, {0.4, 0.4, 0}},   {3, {1.9, 1.1, 0}},  {5, {0.58, 2.1, 2.3}},
                                      {7, {2.8, 6.8, 7.3}}, {9, {3.7, 13, 31}}, {11, {4.6, 24, 51}}};
  return c;
}

double ipow(double x, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

} // namespace

ProblemSpec make_example(double alpha) {
  const int twice = static_cast<int>(std::lround(2 * alpha));
  const auto it = catalog_coefs().find(twice);
  if (it == catalog_coefs().end() || std::abs(2 * alpha - twice) > 1e-12)
    throw Unsupported("no catalog example for alpha = " + std::to_string(alpha));
  const auto [c1, c2, c3] = it->second;
  const int k = twice / 2;
  const double a = 1.0 / std::sqrt(5.0);

  PiecewiseData d;
  d.t_star = 0.5;
  d.u0 = {{1.0, k}};
  d.u1 = {{c1, k - 1}};
  if (k == 0) {
    d.f = {{c2, -1, -1}};
  } else if (k == 1) {
    d.f = {{c2, 0, -1}};
  } else {
    d.f = {{c2, 0, k - 2}, {c3, 1, k - 3}};
  }

  ProblemSpec p;
  char buf[32];
  std::snprintf(buf, sizeof buf, "E_%.1f", alpha);
  p.name = buf;
  p.a = {a};
  p.X = {1.0};
  p.origin = {-0.5};
  p.T = 1.0;
  p.alpha = alpha;
  p.pieces = d;

  p.u0 = [k](const Point& x) { return P(k, x[0]); };
  if (!d.u1_has_atom()) p.u1 = [c1 = c1, k](const Point& x) { return c1 * P(k - 1, x[0]); };
  if (!d.f_has_atom()) {
    p.f = [terms = d.f, ts = d.t_star](const Point& x, double t) { return eval_terms(terms, x[0], t, ts); };
  }

  std::function<double(double)> g0, g1;
  if (k <= 1) {
    g0 = [](double) { return 0.0; };
    g1 = [c1 = c1, k](double t) { return ipow(c1 * t, k); };
  } else {
    auto g0k = [a, k](double t) { return 0.5 * (ipow(1 - 2 * a * t, k) + ipow(1 + 2 * a * t, k)); };
    auto g1k = [a, k](double t) {
      return k == 2 ? 0.0 : (ipow(1 + 2 * a * t, k) - ipow(1 - 2 * a * t, k)) / (4 * a * k);
    };
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    g0 = [=, c1 = c1](double t) { return sign * (-g0k(t) + c1 * g1k(t)); };
    g1 = [=, c1 = c1](double t) { return g0k(t) + c1 * g1k(t); };
  }
  p.g = [g0, g1](const Point& x, double t) { return x[0] < 0 ? g0(t) : g1(t); };

  // Whole-line solution U plus the Dirichlet corrections driven by the trace
  // mismatches e = g - U at each end, with all reflections inside [0, t].
  auto data = std::make_shared<const PiecewiseData>(d);
  const double L = -0.5, R = 0.5, X = 1.0;
  auto U = [data, a](double x, double t) { return whole_line_solution(*data, a, x, t); };
  auto eR = [=](double s) { return s <= 0 ? 0.0 : g1(s) - U(R, s); };
  auto eL = [=](double s) { return s <= 0 ? 0.0 : g0(s) - U(L, s); };
  p.exact = [=](const Point& xp, double t) {
    const double x = xp[0];
    double u = U(x, t);
    for (int j = 0;; ++j) {
      const double base = t - 2.0 * j * X / a;
      if (base - std::min(R - x, x - L) / a <= 0) break;
      u += eR(base - (R - x) / a) - eR(base - X / a - (x - L) / a);
      u += eL(base - (x - L) / a) - eL(base - X / a - (R - x) / a);
    }
    return u;
  };
  return p;
}

ProblemSpec make_smooth_nonuniform_problem(double a) {
  if (std::abs(a - 1.0) < 1e-14) throw ConfigError("smooth problem formula is singular for a = 1");
  using std::numbers::pi;
  ProblemSpec p;
  p.name = "smooth1d";
  p.a = {a};
  p.X = {1.0};
  p.origin = {-0.5};
  p.T = 1.0;
  p.u0 = [](const Point& x) { return std::sin(2 * pi * (x[0] + 0.5)); };
  p.u1 = [](const Point& x) { return 4 * std::sin(3 * pi * (x[0] + 0.5)); };
  p.f = [](const Point& x, double t) { return std::exp(x[0] + 0.5 - t); };
  // G'' - a^2 G = e^{-t}, G(0) = G'(0) = 0
  auto G = [a](double t) {
    return (std::exp(a * t) / (a + 1) + std::exp(-a * t) / (a - 1) - 2 * a * std::exp(-t) / (a * a - 1)) / (2 * a);
  };
  p.g = [G](const Point& x, double t) { return std::exp(x[0] + 0.5) * G(t); };
  p.exact = [a, G](const Point& xp, double t) {
    const double x = xp[0] + 0.5;
    return 0.5 * (std::sin(2 * pi * (x - a * t)) + std::sin(2 * pi * (x + a * t))) +
           2.0 / (3 * pi * a) * (std::cos(3 * pi * (x - a * t)) - std::cos(3 * pi * (x + a * t))) +
           std::exp(x) * G(t);
  };
  return p;
}

ProblemSpec make_sine_mode_problem(int dim, std::vector<double> a, std::array<int, 3> modes) {
  using std::numbers::pi;
  if (dim < 1 || dim > 3) throw Unsupported("dimension must be 1, 2 or 3");
  if (static_cast<int>(a.size()) != dim) throw ConfigError("one wave speed per axis required");
  ProblemSpec p;
  p.name = "sine" + std::to_string(dim) + "d";
  p.dim = dim;
  p.X.assign(static_cast<size_t>(dim), 1.0);
  p.origin.assign(static_cast<size_t>(dim), 0.0);
  p.T = 1.0;
  double w2 = 0;
  for (int k = 0; k < dim; ++k) w2 += a[static_cast<size_t>(k)] * a[static_cast<size_t>(k)] * pi * pi * modes[static_cast<size_t>(k)] * modes[static_cast<size_t>(k)];
  const double omega = std::sqrt(w2);
  p.a = std::move(a);
  auto shape = [dim, modes](const Point& x) {
    double v = 1;
    for (int k = 0; k < dim; ++k) v *= std::sin(pi * modes[static_cast<size_t>(k)] * x[static_cast<size_t>(k)]);
    return v;
  };
  p.u0 = shape;
  p.u1 = [](const Point&) { return 0.0; };
  p.f = [](const Point&, double) { return 0.0; };
  p.g = [](const Point&, double) { return 0.0; };
  p.exact = [shape, omega](const Point& x, double t) { return std::cos(omega * t) * shape(x); };
  return p;
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "smooth1d") return make_smooth_nonuniform_problem();
  if (name == "sine1d") return make_sine_mode_problem(1, {1.0}, {1, 0, 0});
  if (name == "sine2d") return make_sine_mode_problem(2, {1.0, 0.8}, {1, 2, 0});
  if (name == "sine3d") return make_sine_mode_problem(3, {1.0, 0.8, 0.6}, {1, 2, 1});
  if (name.rfind("E_", 0) == 0) {
    try {
      return make_example(std::stod(name.substr(2)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw ConfigError("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
  return {"E_0.5", "E_1.5", "E_2.5", "E_3.5", "E_4.5", "E_5.5", "smooth1d", "sine1d", "sine2d", "sine3d"};
}

GridPtr uniform_grid(const ProblemSpec& p, int N) {
  std::vector<AxisMesh> axes;
  for (int k = 0; k < p.dim; ++k)
    axes.push_back(build_uniform_axis(N, p.X[static_cast<size_t>(k)], p.origin[static_cast<size_t>(k)]));
  return make_grid(std::move(axes));
}

} // namespace cwave
