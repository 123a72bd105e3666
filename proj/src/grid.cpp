#include "cwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cwave/errors.hpp"

namespace cwave {

Grid::Grid(std::vector<AxisMesh> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > 3) throw Unsupported("grid dimension must be 1, 2 or 3");
  for (size_t k = 0; k < axes_.size(); ++k) shape_[k] = axes_[k].N() + 1;
  stride_[2] = 1;
  stride_[1] = static_cast<size_t>(shape_[2]);
  stride_[0] = stride_[1] * static_cast<size_t>(shape_[1]);
  size_ = stride_[0] * static_cast<size_t>(shape_[0]);
}

bool Grid::uniform() const {
  return std::all_of(axes_.begin(), axes_.end(), [](const AxisMesh& a) { return a.uniform(); });
}

size_t Grid::interior_size() const {
  size_t n = 1;
  for (const auto& a : axes_) n *= static_cast<size_t>(a.N() - 1);
  return n;
}

Index3 Grid::unflat(size_t f) const {
  Index3 i{0, 0, 0};
  i[0] = static_cast<int>(f / stride_[0]);
  f %= stride_[0];
  i[1] = static_cast<int>(f / stride_[1]);
  i[2] = static_cast<int>(f % stride_[1]);
  return i;
}

Point Grid::point(const Index3& i) const {
  Point p{0, 0, 0};
  for (int k = 0; k < dim(); ++k) p[static_cast<size_t>(k)] = axes_[static_cast<size_t>(k)].x(i[static_cast<size_t>(k)]);
  return p;
}

bool Grid::on_boundary(const Index3& i) const {
  for (int k = 0; k < dim(); ++k) {
    int ik = i[static_cast<size_t>(k)];
    if (ik == 0 || ik == axes_[static_cast<size_t>(k)].N()) return true;
  }
  return false;
}

double Grid::cell_weight(const Index3& i) const {
  double w = 1;
  for (int k = 0; k < dim(); ++k) w *= axes_[static_cast<size_t>(k)].h_star(i[static_cast<size_t>(k)]);
  return w;
}

GridPtr make_grid(std::vector<AxisMesh> axes) { return std::make_shared<const Grid>(std::move(axes)); }

GridFunction::GridFunction(GridPtr grid, double fill) : grid_(std::move(grid)), values_(grid_->size(), fill) {}

void GridFunction::sample(const std::function<double(const Point&)>& fn) {
  for_each_node(*grid_, [&](size_t f, const Index3& i) { values_[f] = fn(grid_->point(i)); });
}

void GridFunction::sample_boundary(const std::function<double(const Point&)>& fn) {
  for_each_boundary_node(*grid_, [&](size_t f, const Index3& i) { values_[f] = fn(grid_->point(i)); });
}

void GridFunction::zero_boundary() {
  for_each_boundary_node(*grid_, [&](size_t f, const Index3&) { values_[f] = 0; });
}

void GridFunction::zero_interior() {
  for_each_node(*grid_, [&](size_t f, const Index3& i) {
    if (!grid_->on_boundary(i)) values_[f] = 0;
  });
}

double GridFunction::max_abs() const {
  double m = 0;
  for (double v : values_) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(v));
  }
  return m;
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  for (size_t f = 0; f < values_.size(); ++f) values_[f] += o.values_[f];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  for (size_t f = 0; f < values_.size(); ++f) values_[f] -= o.values_[f];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

void GridFunction::axpy(double s, const GridFunction& o) {
  for (size_t f = 0; f < values_.size(); ++f) values_[f] += s * o.values_[f];
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

void for_each_node(const Grid& g, const std::function<void(size_t, const Index3&)>& fn) {
  const auto& s = g.shape();
  Index3 i{0, 0, 0};
  for (i[0] = 0; i[0] < s[0]; ++i[0])
    for (i[1] = 0; i[1] < s[1]; ++i[1])
      for (i[2] = 0; i[2] < s[2]; ++i[2]) fn(g.flat(i), i);
}

void for_each_boundary_node(const Grid& g, const std::function<void(size_t, const Index3&)>& fn) {
  for_each_node(g, [&](size_t f, const Index3& i) {
    if (g.on_boundary(i)) fn(f, i);
  });
}

double inner_h(const GridFunction& u, const GridFunction& w) {
  const Grid& g = u.grid();
  double s = 0;
  for_each_node(g, [&](size_t f, const Index3& i) {
    if (!g.on_boundary(i)) s += g.cell_weight(i) * u[f] * w[f];
  });
  return s;
}

double norm_h(const GridFunction& w) { return std::sqrt(inner_h(w, w)); }

} // namespace cwave
