#include "cwave/piecewise.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cwave/errors.hpp"

namespace cwave {
namespace {

using Gauss = boost::math::quadrature::gauss<double, 10>;

double sgn(double x) { return (x > 0) - (x < 0); }

double ipow(double x, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Integral over [a, b] of a function that is polynomial on each side of the given breakpoints.
template <class F>
double integrate_split(F f, double a, double b, std::vector<double> breaks) {
  if (!(b > a)) return 0.0;
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double s = 0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
    if (hi > lo) s += Gauss::integrate(f, lo, hi);
  }
  return s;
}

// hat average of a function with one breakpoint at `brk`, hat peak at x with left/right steps h, hp
template <class F>
double hat_integral(F w, double x, double h, double hp, double brk) {
  auto left = [&](double s) { return w(s) * (s - (x - h)) / h; };
  auto right = [&](double s) { return w(s) * ((x + hp) - s) / hp; };
  return (integrate_split(left, x - h, x, {brk}) + integrate_split(right, x, x + hp, {brk})) / (0.5 * (h + hp));
}

// hat value at `at` for a node at x with steps h, hp, divided by h_*; errors when the atom sits
// strictly inside the support but off the node
double atom_hat(double at, double x, double h, double hp, const char* what) {
  if (at == x) return 1.0 / (0.5 * (h + hp));
  if (at > x - h && at < x + hp)
    throw MeshError(std::string(what) + ": Dirac atom is not located at a mesh node");
  return 0.0;
}

} // namespace

double P(int k, double x) {
  switch (k) {
  case 0: return 0.5 * (sgn(x) + 1);
  case 1: return 1 - 2 * std::abs(x);
  default:
    if (k < 0) throw std::invalid_argument("P_k numeric value needs k >= 0");
    return sgn(x) * ipow(2 * x, k);
  }
}

double Q(int l, double tau) {
  if (l < 0) throw std::invalid_argument("Q_l numeric value needs l >= 0");
  if (tau < 0) return 0.0;
  if (tau == 0) return l == 0 ? 0.5 : 0.0;
  return ipow(tau, l);
}

PieceValue eval_P(int k, double x) {
  if (k == -1) return Atom{0.0, 1.0};
  return P(k, x);
}

PieceValue eval_Q(int l, double t, double t_star) {
  if (l == -1) return Atom{t_star, 1.0};
  return Q(l, t - t_star);
}

double P_int1(int k, double y) {
  switch (k) {
  case -1: return P(0, y);
  case 0: return std::max(y, 0.0);
  case 1: return y - y * std::abs(y);
  default: return P(k + 1, y) / (2.0 * (k + 1));
  }
}

double P_int2(int k, double y) {
  switch (k) {
  case -1: return std::max(y, 0.0);
  case 0: return 0.5 * std::max(y, 0.0) * std::max(y, 0.0);
  case 1: return 0.5 * y * y - std::abs(y) * y * y / 3.0;
  default: return P(k + 2, y) / (4.0 * (k + 1) * (k + 2));
  }
}

double Q_int1(int l, double tau) {
  if (l == -1) return P(0, tau);
  return tau > 0 ? ipow(tau, l + 1) / (l + 1) : 0.0;
}

double Q_int2(int l, double tau) {
  if (l == -1) return std::max(tau, 0.0);
  return tau > 0 ? ipow(tau, l + 2) / ((l + 1.0) * (l + 2.0)) : 0.0;
}

bool PiecewiseData::u1_has_atom() const {
  return std::any_of(u1.begin(), u1.end(), [](const XTerm& t) { return t.k < 0; });
}

bool PiecewiseData::f_has_atom() const {
  return std::any_of(f.begin(), f.end(), [](const SeparableTerm& t) { return t.k < 0 || t.l < 0; });
}

double eval_terms(const std::vector<XTerm>& terms, double x) {
  double s = 0;
  for (const auto& t : terms) {
    if (t.k < 0) throw std::invalid_argument("pointwise value of a Dirac atom");
    s += t.coef * P(t.k, x);
  }
  return s;
}

double eval_terms(const std::vector<SeparableTerm>& terms, double x, double t, double t_star) {
  double s = 0;
  for (const auto& term : terms) {
    if (term.k < 0 || term.l < 0) throw std::invalid_argument("pointwise value of a Dirac atom");
    s += term.coef * P(term.k, x) * Q(term.l, t - t_star);
  }
  return s;
}

double hat_average_P(int k, const AxisMesh& axis, int l) {
  const double x = axis.x(l), h = axis.h(l), hp = axis.h_plus(l);
  if (k < 0) return atom_hat(0.0, x, h, hp, "q_x");
  return hat_integral([k](double s) { return P(k, s); }, x, h, hp, 0.0);
}

double hat_average_x(const std::vector<XTerm>& terms, const AxisMesh& axis, int l) {
  double s = 0;
  for (const auto& t : terms) s += t.coef * hat_average_P(t.k, axis, l);
  return s;
}

double hat_average_Q(int l, double t_star, const TimeMesh& tm, int m) {
  if (m < 1 || m >= tm.M()) throw std::out_of_range("two-sided time average needs 1 <= m <= M-1");
  const double t = tm.t(m), h = tm.h(m), hp = tm.h(m + 1);
  if (l < 0) return atom_hat(t_star, t, h, hp, "q_t");
  return hat_integral([&](double s) { return Q(l, s - t_star); }, t, h, hp, t_star);
}

double one_sided_average_Q(int l, double t_star, const TimeMesh& tm) {
  const double h = tm.h(1);
  if (l < 0) {
    if (t_star < 0 || t_star > h) return 0.0;
    double w = 2.0 / h * (1 - t_star / h);
    return t_star == 0 ? 0.5 * w : w;
  }
  auto g = [&](double s) { return Q(l, s - t_star) * (1 - s / h); };
  return 2.0 / h * integrate_split(g, 0.0, h, {t_star});
}

double box_average(const std::vector<XTerm>& terms, double x, double h) {
  double s = 0;
  for (const auto& t : terms) s += t.coef * (P_int1(t.k, x + h) - P_int1(t.k, x - h));
  return s / (2 * h);
}

double region_integral(const SeparableTerm& term, double t_star, double xc, double t0, double t1, double w0,
                       double w1) {
  if (!(t1 > t0)) return 0.0;
  auto width = [&](double t) { return w0 + (w1 - w0) * (t - t0) / (t1 - t0); };
  auto inner = [&](double t) {
    double w = width(t);
    return P_int1(term.k, xc + w) - P_int1(term.k, xc - w);
  };
  if (term.l < 0) {
    if (t_star < t0 || t_star > t1) return 0.0;
    double v = term.coef * inner(t_star);
    return (t_star == t0 || t_star == t1) ? 0.5 * v : v;
  }
  std::vector<double> breaks{t_star};
  if (w1 != w0) breaks.push_back(t0 + (std::abs(xc) - w0) * (t1 - t0) / (w1 - w0));
  auto g = [&](double t) { return Q(term.l, t - t_star) * inner(t); };
  return term.coef * integrate_split(g, t0, t1, breaks);
}

double whole_line_solution(const PiecewiseData& d, double a, double x, double t) {
  double u = 0;
  for (const auto& p : d.u0) {
    if (p.k < 0) throw Unsupported("Dirac atom in u0");
    u += p.coef * 0.5 * (P(p.k, x - a * t) + P(p.k, x + a * t));
  }
  for (const auto& p : d.u1) u += p.coef / (2 * a) * (P_int1(p.k, x + a * t) - P_int1(p.k, x - a * t));
  const double tau = t - d.t_star;
  if (tau < 0) return u;
  for (const auto& term : d.f) {
    if (term.l < 0) {
      if (tau > 0) {
        u += term.coef / (2 * a) * (P_int1(term.k, x + a * tau) - P_int1(term.k, x - a * tau));
      } else if (term.k < 0 && x == 0) {
        u += term.coef / (4 * a); // apex of the light cone, average of one-sided limits
      }
      continue;
    }
    if (tau == 0) continue;
    auto g = [&](double r) {
      return ipow(tau - r, term.l) * (P_int1(term.k, x + a * r) - P_int1(term.k, x - a * r));
    };
    u += term.coef / (2 * a) * integrate_split(g, 0.0, tau, {std::abs(x) / a});
  }
  return u;
}

} // namespace cwave
