#pragma once
#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cwave/mesh.hpp"

namespace cwave {

using Point = std::array<double, 3>;
using Index3 = std::array<int, 3>;

// Tensor-product spatial mesh, 1 <= n <= 3. Row-major storage, last axis contiguous.
class Grid {
public:
  explicit Grid(std::vector<AxisMesh> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const AxisMesh& axis(int k) const { return axes_[static_cast<size_t>(k)]; }
  const std::vector<AxisMesh>& axes() const { return axes_; }
  bool uniform() const;

  // node count along axis k (1 for k >= dim)
  int nodes(int k) const { return shape_[static_cast<size_t>(k)]; }
  const Index3& shape() const { return shape_; }
  size_t stride(int k) const { return stride_[static_cast<size_t>(k)]; }
  size_t size() const { return size_; }
  size_t interior_size() const;

  size_t flat(const Index3& i) const { return i[0] * stride_[0] + i[1] * stride_[1] + i[2] * stride_[2]; }
  Index3 unflat(size_t f) const;
  Point point(const Index3& i) const;
  bool on_boundary(const Index3& i) const;
  // product of h_{*k} over axes; equals h_1...h_n on uniform meshes
  double cell_weight(const Index3& i) const;

private:
  std::vector<AxisMesh> axes_;
  Index3 shape_{1, 1, 1};
  std::array<size_t, 3> stride_{0, 0, 0};
  size_t size_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::vector<AxisMesh> axes);

class GridFunction {
public:
  GridFunction() = default;
  explicit GridFunction(GridPtr grid, double fill = 0.0);

  const GridPtr& grid_ptr() const { return grid_; }
  const Grid& grid() const { return *grid_; }
  int dim() const { return grid_->dim(); }
  size_t size() const { return values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double& operator[](size_t f) { return values_[f]; }
  double operator[](size_t f) const { return values_[f]; }
  double& at(const Index3& i) { return values_[grid_->flat(i)]; }
  double at(const Index3& i) const { return values_[grid_->flat(i)]; }

  void sample(const std::function<double(const Point&)>& fn);
  void sample_boundary(const std::function<double(const Point&)>& fn);
  void zero_boundary();
  void zero_interior();
  double max_abs() const;
  bool all_finite() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double s);
  // this += s * o
  void axpy(double s, const GridFunction& o);

private:
  GridPtr grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

// visits every node; fn(flat, index)
void for_each_node(const Grid& g, const std::function<void(size_t, const Index3&)>& fn);
void for_each_boundary_node(const Grid& g, const std::function<void(size_t, const Index3&)>& fn);

// (u, w)_h over interior nodes with weights h_{*1}...h_{*n}
double inner_h(const GridFunction& u, const GridFunction& w);
double norm_h(const GridFunction& w);

} // namespace cwave
