#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cwave/mesh.hpp"
#include "cwave/problems.hpp"
#include "cwave/schemes.hpp"

namespace cwave {

struct ErrorTriple {
  double L2h = 0, Ch = 0, Eh = 0;
  double get(int norm) const { return norm == 0 ? L2h : norm == 1 ? Ch : Eh; }
};
inline constexpr std::array<const char*, 3> kNormNames{"L2h", "Ch", "Eh"};

// Streams the three error norms of a run against an exact solution, level by level.
class NormObserver {
public:
  NormObserver(SpaceTimeFn exact, GridPtr g, TimeMesh tm);
  void operator()(int m, const GridFunction& v);
  ErrorTriple result() const { return e_; }
  LevelObserver as_observer();

private:
  SpaceTimeFn exact_;
  GridPtr g_;
  TimeMesh tm_;
  GridFunction prev_;
  ErrorTriple e_;
  int last_ = -1;
};

// Error triple of one run: the three maxima over all levels; infinite on blow-up.
ErrorTriple error_norms(const RunResult& run, const SpaceTimeFn& exact, const GridPtr& g, const TimeMesh& tm);
// Spatial part of E_h: [sum_k sum h_k * ((w_l - w_{l-1}) / h_k)^2 * other-axis weights]^{1/2}
double tilde_norm_gradient(const GridFunction& w);

struct FitResult {
  double c0 = 0, gamma = 0;
  int used = 0;
  double max_residual = 0;
  std::vector<std::string> warnings;
};

// least squares on log10 ||r|| = log10 c0 + gamma log10(X / N); points with N < min_N are dropped
FitResult fit_order(const std::vector<std::pair<int, double>>& points, double X = 1.0, int min_N = 0);

struct TheoreticalOrders {
  std::array<double, 3> gamma{}; // L2h, Ch, Eh
  std::array<bool, 3> in_range{true, true, true};
};
TheoreticalOrders theoretical_orders(double alpha, int method_order);

struct ConvergenceReport {
  std::string label;
  std::string scheme;
  std::vector<int> Ns;
  std::vector<ErrorTriple> errors;
  std::optional<std::array<FitResult, 3>> fits;
  std::optional<TheoreticalOrders> th, th2;
  std::optional<MeshStats> mesh; // graded-mesh columns, at the largest N
  double M_over_N = 0;
  bool starred = false;
  bool blew_up = false;
};

// ".475E-2" style: three significant digits, mantissa in [0.1, 1)
std::string short_sci(double x);

std::string build_report(const std::vector<ConvergenceReport>& reports, const std::string& format);

// E_alpha on uniform meshes with M = N.
ConvergenceReport table1_study(double alpha, SchemeKind kind, const std::vector<int>& Ns, Exec exec = Exec::Parallel);
// Smooth problem on the phi_l graded mesh, M from the practical rule.
ConvergenceReport table2_study(const NodeDistribution& phi, const std::vector<int>& Ns, double factor = 1.4142135623730951,
                               int min_N = 0, Exec exec = Exec::Parallel);

} // namespace cwave
