#pragma once
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cwave/kernels.hpp"
#include "cwave/problems.hpp"
#include "cwave/rhs.hpp"
#include "cwave/solvers.hpp"

namespace cwave {

enum class SchemeKind {
  Compact1D,
  Compact2D_sN,
  Compact3D_barsN,
  CompactND_barAN,
  Splitting,
  ExplicitCharacteristic,
  SecondOrderWeighted,
  NonUniformCompact,
};

enum class FNMode { Auto, Smooth, Averaged, Nodal };
enum class U1Mode { Auto, Compact, Averaged, Nodal };

struct SchemeConfig {
  SchemeKind kind = SchemeKind::Compact1D;
  double sigma = 0.5; // SecondOrderWeighted only
  FNMode fn_mode = FNMode::Auto;
  U1Mode u1_mode = U1Mode::Auto;
  FN0Mode fn0_mode = FN0Mode::TwoLevelHalf;
  Exec exec = Exec::Parallel;
  bool store_trajectory = false;
  double blowup_flag_level = 1e10; // raises the blow-up flag, run continues
  double abort_level = 1e100;      // aborts the run
};

SchemeKind scheme_kind_from_string(const std::string& s);
std::string to_string(SchemeKind k);
bool is_fourth_order(SchemeKind k);

// Spectral description of (B_h, A_h, sigma) on uniform grids; fn(mu) with mu the -Lambda_k eigenvalues.
struct OperatorPair {
  double sigma = 1.0 / 12;
  std::function<double(const std::array<double, 3>&)> B, A;
};

// The pair (B_h, A_h) of one scheme kind with its upper-level operator S = B_h + sigma h_t^2 A_h.
class StepOperator {
public:
  StepOperator(SchemeKind kind, GridPtr grid, std::vector<double> a, double ht, double sigma = 0.5,
               Exec exec = Exec::Parallel);

  SchemeKind kind() const { return kind_; }
  const GridPtr& grid() const { return grid_; }
  double ht() const { return ht_; }
  double sigma() const { return sigma_; }
  const std::vector<double>& a() const { return a_; }

  GridFunction apply_B(const GridFunction& w) const;
  GridFunction apply_A(const GridFunction& w) const;
  GridFunction apply_S(const GridFunction& w) const;
  // interior solve of S x = rhs; boundary of rhs ignored, returned zero
  void solve(GridFunction& rhs) const { handle_.solve(rhs, exec_); }
  const SolverHandle& handle() const { return handle_; }

  // uniform grids only
  OperatorPair pair() const;

private:
  SchemeKind kind_;
  GridPtr grid_;
  std::vector<double> a_;
  double ht_, sigma_;
  Exec exec_;
  SolverHandle handle_;
};

OperatorPair operator_pair(SchemeKind kind, const Grid& g, std::span<const double> a, double ht, double sigma);

// Free terms of the three-level method; f[m] for m = 1..M-1 comes from a callback.
struct StepInputs {
  GridFunction v0;   // full grid, boundary included
  GridFunction u1N;  // interior
  GridFunction fN0;  // interior
  std::function<GridFunction(int)> fN;            // interior, 1 <= m <= M-1
  std::function<void(GridFunction&, int)> boundary; // writes g at level m; empty means zero
};

using LevelObserver = std::function<void(int m, const GridFunction& v)>;

struct RunResult {
  GridFunction previous, last;
  std::vector<GridFunction> trajectory; // levels 0..M when stored
  int levels = 0;                       // last level computed
  bool blew_up = false;
  bool aborted = false;
  double max_abs = 0;
};

// g extended by zero inside, for folding known boundary values into the right-hand side
GridFunction boundary_extension(const GridPtr& g, const std::function<void(GridFunction&, int)>& bc, int m);

GridFunction first_step(const StepOperator& op, const StepInputs& in);
// v^{m+1} from v^{m-1}, v^m
GridFunction time_step(const StepOperator& op, const GridFunction& prev, const GridFunction& cur,
                       const GridFunction& fNm, const GridFunction& g_next);

RunResult run_steps(const StepOperator& op, const StepInputs& in, int M, const SchemeConfig& cfg,
                    const LevelObserver& obs = {});

// Builds the free terms of a problem for one scheme (u_1N / f_N rules included).
StepInputs build_inputs(const ProblemSpec& p, const SchemeConfig& cfg, const GridPtr& g, const TimeMesh& tm);

RunResult run(const ProblemSpec& p, const SchemeConfig& cfg, const GridPtr& g, const TimeMesh& tm,
              const LevelObserver& obs = {});

// h_t = h / a, M levels
TimeMesh characteristic_time_mesh(const ProblemSpec& p, int N, int M);

// 1D scheme on the characteristic mesh h_t = h / a; returns the time mesh through tm_out.
RunResult run_explicit_characteristic(const ProblemSpec& p, int N, int M, const LevelObserver& obs = {},
                                      TimeMesh* tm_out = nullptr);

// Compact scheme on a graded 1D axis with uniform time; f_N^0 from cfg (graded by default).
RunResult run_nonuniform(const ProblemSpec& p, const AxisMesh& axis, const TimeMesh& tm, const LevelObserver& obs = {},
                         FN0Mode fn0 = FN0Mode::Graded);

} // namespace cwave
