#include "cwave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cwave/errors.hpp"

namespace cwave {
namespace {

std::vector<double> diffs(const std::vector<double>& nodes, const char* what) {
  if (nodes.size() < 2) throw MeshError(std::string(what) + ": need at least two nodes");
  std::vector<double> s(nodes.size() - 1);
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    s[i] = nodes[i + 1] - nodes[i];
    if (!(s[i] > 0)) throw MeshError(std::string(what) + ": nodes must be strictly increasing");
  }
  return s;
}

bool is_uniform(const std::vector<double>& steps, double extent) {
  const double nominal = extent / static_cast<double>(steps.size());
  double dev = 0;
  for (double h : steps) dev = std::max(dev, std::abs(h - nominal));
  return dev <= 1e-14 * extent;
}

} // namespace

AxisMesh::AxisMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  steps_ = diffs(nodes_, "axis mesh");
  uniform_ = is_uniform(steps_, X());
}

TimeMesh::TimeMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty() || nodes_.front() != 0.0) throw MeshError("time mesh must start at t=0");
  steps_ = diffs(nodes_, "time mesh");
  uniform_ = is_uniform(steps_, T());
}

TimeMesh TimeMesh::uniform(double T, int M) {
  if (M < 1) throw MeshError("time mesh needs M >= 1");
  if (!(T > 0)) throw MeshError("time horizon must be positive");
  std::vector<double> t(static_cast<size_t>(M) + 1);
  for (int m = 0; m <= M; ++m) t[static_cast<size_t>(m)] = T * (static_cast<double>(m) / M);
  t.back() = T;
  return TimeMesh(std::move(t));
}

NodeDistribution builtin_distribution(int l) {
  switch (l) {
  case 0: return {"phi0", [](double x) { return x; }};
  case 1: return {"phi1", [](double x) { return std::expm1(5 * x) / std::expm1(5.0); }};
  case 2: return {"phi2", [](double x) { return std::log1p(60 * x) / std::log(61.0); }};
  case 3: return {"phi3", [](double x) { return std::pow(x, 1.5); }};
  case 4: return {"phi4", [](double x) { return std::pow(x, 0.75); }};
  case 5: return {"phi5", [](double x) { return std::pow(x, 0.625); }};
  case 6: return {"phi6", [](double x) { return std::sqrt(x); }};
  default: throw ConfigError("unknown node distribution phi" + std::to_string(l));
  }
}

NodeDistribution distribution_by_name(const std::string& name) {
  std::string s = name;
  if (s.rfind("phi", 0) == 0) s = s.substr(3);
  if (s.size() != 1 || s[0] < '0' || s[0] > '6') throw ConfigError("unknown node distribution '" + name + "'");
  return builtin_distribution(s[0] - '0');
}

std::vector<NodeDistribution> builtin_distributions() {
  std::vector<NodeDistribution> out;
  for (int l = 0; l <= 6; ++l) out.push_back(builtin_distribution(l));
  return out;
}

AxisMesh build_uniform_axis(int N, double X, double origin) {
  if (N < 2) throw MeshError("axis needs N >= 2, got " + std::to_string(N));
  if (!(X > 0)) throw MeshError("axis extent must be positive");
  std::vector<double> x(static_cast<size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) x[static_cast<size_t>(k)] = origin + X * (static_cast<double>(k) / N);
  x.back() = origin + X;
  return AxisMesh(std::move(x));
}

AxisMesh build_graded_axis(const NodeDistribution& phi, int N, double X, double origin) {
  if (N < 2) throw MeshError("axis needs N >= 2, got " + std::to_string(N));
  if (!(X > 0)) throw MeshError("axis extent must be positive");
  std::vector<double> x(static_cast<size_t>(N) + 1);
  x.front() = origin;
  for (int k = 1; k < N; ++k) x[static_cast<size_t>(k)] = origin + X * phi.phi(static_cast<double>(k) / N);
  x.back() = origin + X;
  for (size_t k = 1; k < x.size(); ++k)
    if (!(x[k] > x[k - 1])) throw MeshError("distribution " + phi.name + " is not increasing on the sampled grid");
  return AxisMesh(std::move(x));
}

MeshStats mesh_stats(const AxisMesh& axis) {
  MeshStats s;
  auto h = axis.steps();
  s.h_min = *std::min_element(h.begin(), h.end());
  s.h_max = *std::max_element(h.begin(), h.end());
  s.ratio = s.h_max / s.h_min;
  if (h.size() >= 2) {
    s.rho_min = std::numeric_limits<double>::infinity();
    s.rho_max = 0;
    for (size_t k = 0; k + 1 < h.size(); ++k) {
      double r = h[k + 1] / h[k];
      s.rho_min = std::min(s.rho_min, r);
      s.rho_max = std::max(s.rho_max, r);
    }
  }
  return s;
}

int select_time_step_count(double h_min, double a, double T, double factor) {
  if (!(h_min > 0 && a > 0 && T > 0 && factor > 0)) throw MeshError("time step rule needs positive arguments");
  double q = factor * a * T / h_min;
  // guard against q landing a few ulps below an integer
  int M = static_cast<int>(std::floor(q * (1 + 4 * std::numeric_limits<double>::epsilon())));
  if (M < 1) throw MeshError("time step rule gives M = 0 (horizon too short)");
  return M;
}

} // namespace cwave
