#pragma once
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cwave {

// Nodes x_0 < ... < x_N of one spatial axis. Steps are stored as differences of
// the stored nodes so h and x never drift apart.
class AxisMesh {
public:
  AxisMesh() = default;
  explicit AxisMesh(std::vector<double> nodes);

  int N() const { return static_cast<int>(nodes_.size()) - 1; }
  double X() const { return nodes_.back() - nodes_.front(); }
  double origin() const { return nodes_.front(); }
  bool uniform() const { return uniform_; }

  std::span<const double> nodes() const { return nodes_; }
  double x(int k) const { return nodes_[static_cast<size_t>(k)]; }
  // h_l = x_l - x_{l-1}, 1 <= l <= N
  double h(int l) const { return steps_[static_cast<size_t>(l - 1)]; }
  double h_plus(int l) const { return h(l + 1); }
  double h_star(int l) const { return 0.5 * (h(l) + h(l + 1)); }
  // nominal step X/N, exact for uniform meshes
  double step() const { return X() / N(); }
  std::span<const double> steps() const { return steps_; }

private:
  std::vector<double> nodes_;
  std::vector<double> steps_;
  bool uniform_ = false;
};

class TimeMesh {
public:
  TimeMesh() = default;
  static TimeMesh uniform(double T, int M);
  explicit TimeMesh(std::vector<double> nodes);

  int M() const { return static_cast<int>(nodes_.size()) - 1; }
  double T() const { return nodes_.back(); }
  double t(int m) const { return nodes_[static_cast<size_t>(m)]; }
  double h(int m) const { return steps_[static_cast<size_t>(m - 1)]; }
  double step() const { return T() / M(); }
  bool uniform() const { return uniform_; }
  std::span<const double> nodes() const { return nodes_; }

private:
  std::vector<double> nodes_;
  std::vector<double> steps_;
  bool uniform_ = false;
};

struct MeshStats {
  double h_min = 0, h_max = 0;
  double rho_min = 1, rho_max = 1; // adjacent ratios h_{k+1}/h_k
  double ratio = 1;                // h_max / h_min
};

// xi -> phi(xi) on [0,1], increasing, phi(0)=0, phi(1)=1. Scaled by X on use.
struct NodeDistribution {
  std::string name;
  std::function<double(double)> phi;
};

NodeDistribution builtin_distribution(int l);
NodeDistribution distribution_by_name(const std::string& name);
std::vector<NodeDistribution> builtin_distributions();

AxisMesh build_uniform_axis(int N, double X, double origin);
AxisMesh build_graded_axis(const NodeDistribution& phi, int N, double X, double origin);
MeshStats mesh_stats(const AxisMesh& axis);
int select_time_step_count(double h_min, double a, double T, double factor);

} // namespace cwave
