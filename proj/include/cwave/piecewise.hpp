#pragma once
#include <variant>
#include <vector>

#include "cwave/mesh.hpp"

namespace cwave {

// P_{-1} = delta(x) and Q_{-1} = delta(t - t*) are carried as atoms.
struct Atom {
  double location;
  double weight;
};
using PieceValue = std::variant<double, Atom>;

PieceValue eval_P(int k, double x);
PieceValue eval_Q(int l, double t, double t_star);

// numeric forms, k >= 0 / l >= 0
double P(int k, double x);
double Q(int l, double tau); // argument tau = t - t*
// antiderivatives from 0 of P_k (k >= -1): first and second
double P_int1(int k, double y);
double P_int2(int k, double y);
double Q_int1(int l, double tau);
double Q_int2(int l, double tau);

struct XTerm {
  double coef;
  int k; // coef * P_k(x)
};

struct SeparableTerm {
  double coef;
  int k; // coef * P_k(x) * Q_l(t)
  int l;
};

// 1D data of the catalog examples; every piece has its breakpoint at x = 0 or t = t*.
struct PiecewiseData {
  std::vector<XTerm> u0, u1;
  std::vector<SeparableTerm> f;
  double t_star = 0.5;

  bool u1_has_atom() const;
  bool f_has_atom() const;
};

double eval_terms(const std::vector<XTerm>& terms, double x);
double eval_terms(const std::vector<SeparableTerm>& terms, double x, double t, double t_star);

// Hat-weighted average at node l of `axis` (generalized q_k on non-uniform steps).
double hat_average_x(const std::vector<XTerm>& terms, const AxisMesh& axis, int l);
// Same for one spatial factor P_k alone.
double hat_average_P(int k, const AxisMesh& axis, int l);
// Two-sided average (q_t Q_l)^m, 1 <= m <= M-1, and the one-sided (q_t Q_l)^0.
double hat_average_Q(int l, double t_star, const TimeMesh& tm, int m);
double one_sided_average_Q(int l, double t_star, const TimeMesh& tm);
// (1/2h) * integral of the terms over [x-h, x+h]
double box_average(const std::vector<XTerm>& terms, double x, double h);

// Integral of coef P_k(x) Q_l(t) over {t0 <= t <= t1, |x - xc| <= w(t)}, w linear from w0 to w1.
double region_integral(const SeparableTerm& term, double t_star, double xc, double t0, double t1, double w0, double w1);

// Whole-line d'Alembert solution for data extended by their global formulas.
double whole_line_solution(const PiecewiseData& d, double a, double x, double t);

} // namespace cwave
