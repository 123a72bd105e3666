#include "cwave/kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "cwave/errors.hpp"

namespace cwave {

TriFactor::TriFactor(std::vector<double> lo, std::vector<double> di, std::vector<double> up)
    : lo_(std::move(lo)), di_(std::move(di)), up_(std::move(up)) {
  const size_t n = di_.size();
  if (lo_.size() != n || up_.size() != n) throw SingularSystemError("tridiagonal arrays differ in length");
  cprime_.assign(n, 0.0);
  inv_.assign(n, 0.0);
  double c_prev = 0;
  for (size_t i = 0; i < n; ++i) {
    double denom = di_[i] - (i > 0 ? lo_[i] * c_prev : 0.0);
    if (denom == 0.0 || !std::isfinite(denom))
      throw SingularSystemError("zero pivot in tridiagonal solve at row " + std::to_string(i));
    inv_[i] = 1.0 / denom;
    c_prev = (i + 1 < n ? up_[i] : 0.0) * inv_[i];
    cprime_[i] = c_prev;
  }
}

void TriFactor::solve(double* x, size_t stride) const {
  const size_t n = di_.size();
  if (n == 0) return;
  double prev = 0;
  for (size_t i = 0; i < n; ++i) {
    double& xi = x[i * stride];
    xi = (xi - (i > 0 ? lo_[i] * prev : 0.0)) * inv_[i];
    prev = xi;
  }
  for (size_t i = n - 1; i-- > 0;) x[i * stride] -= cprime_[i] * x[(i + 1) * stride];
}

void TriFactor::apply(const double* x, double* y, size_t stride) const {
  const size_t n = di_.size();
  for (size_t i = 0; i < n; ++i) {
    double v = di_[i] * x[i * stride];
    if (i > 0) v += lo_[i] * x[(i - 1) * stride];
    if (i + 1 < n) v += up_[i] * x[(i + 1) * stride];
    y[i * stride] = v;
  }
}

namespace kernels {
namespace {

// The set of lines running along one axis of a row-major 3-index block.
struct Lines {
  size_t count = 0, len = 0, stride = 0;
  size_t nb = 1, sb = 0, sc = 0; // the two other axes: extent of b, strides of b and c

  Lines(const Index3& shape, int axis) {
    std::array<size_t, 3> st{static_cast<size_t>(shape[1]) * shape[2], static_cast<size_t>(shape[2]), 1};
    int b = -1, c = -1;
    for (int k = 0; k < 3; ++k) {
      if (k == axis) continue;
      (b < 0 ? b : c) = k;
    }
    len = static_cast<size_t>(shape[static_cast<size_t>(axis)]);
    stride = st[static_cast<size_t>(axis)];
    nb = static_cast<size_t>(shape[static_cast<size_t>(c)]);
    sb = st[static_cast<size_t>(c)];
    sc = st[static_cast<size_t>(b)];
    count = static_cast<size_t>(shape[0]) * shape[1] * shape[2] / len;
  }
  size_t base(size_t l) const { return (l % nb) * sb + (l / nb) * sc; }
};

constexpr size_t kParallelWork = 1 << 14;

void stencil_line(const double* in, double* out, const Lines& L, const LineStencil& st, double bs) {
  const size_t s = L.stride, n = L.len;
  out[0] = bs * in[0];
  out[(n - 1) * s] = bs * in[(n - 1) * s];
  for (size_t p = 1; p + 1 < n; ++p)
    out[p * s] = st.lo[p] * in[(p - 1) * s] + st.di[p] * in[p * s] + st.up[p] * in[(p + 1) * s];
}

std::vector<double> sine_table(size_t n) {
  std::vector<double> t(n * n);
  const double scale = std::sqrt(2.0 / static_cast<double>(n + 1));
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k)
      t[j * n + k] = scale * std::sin(std::numbers::pi * static_cast<double>((j + 1) * (k + 1)) / static_cast<double>(n + 1));
  return t;
}

class PlanCache {
public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) fftw_destroy_plan(p);
  }
  fftw_plan get(size_t n) {
    std::lock_guard lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* a = fftw_alloc_real(n);
    double* b = fftw_alloc_real(n);
    fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(n), a, b, FFTW_RODFT00, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    plans_.emplace(n, p);
    return p;
  }

private:
  std::mutex mu_;
  std::map<size_t, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// fftw_malloc'd scratch so new-array execution matches the plan's alignment
struct FftwBuffer {
  double* p;
  explicit FftwBuffer(size_t n) : p(fftw_alloc_real(n == 0 ? 1 : n)) {}
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

} // namespace

void dst_direct(const double* in, double* out, size_t n) {
  const auto t = sine_table(n);
  for (size_t k = 0; k < n; ++k) {
    double s = 0;
    for (size_t j = 0; j < n; ++j) s += t[k * n + j] * in[j];
    out[k] = s;
  }
}

void dst_fast(const double* in, double* out, size_t n) {
  if (n == 0) return;
  fftw_plan p = plan_cache().get(n);
  FftwBuffer a(n), b(n);
  for (size_t j = 0; j < n; ++j) a.p[j] = in[j];
  fftw_execute_r2r(p, a.p, b.p);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n + 1));
  for (size_t k = 0; k < n; ++k) out[k] = scale * b.p[k];
}

void apply_axis(const double* in, double* out, const Index3& shape, int axis, const LineStencil& st,
                double boundary_scale, Exec exec) {
  const Lines L(shape, axis);
  if (L.len < 3) throw MeshError("axis stencil needs at least three nodes");
  const long count = static_cast<long>(L.count);
  if (exec == Exec::Serial) {
    for (long l = 0; l < count; ++l) {
      const size_t b = L.base(static_cast<size_t>(l));
      stencil_line(in + b, out + b, L, st, boundary_scale);
    }
    return;
  }
  const bool big = L.count * L.len >= kParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (long l = 0; l < count; ++l) {
    const size_t b = L.base(static_cast<size_t>(l));
    stencil_line(in + b, out + b, L, st, boundary_scale);
  }
}

void thomas_axis(double* data, const Index3& shape, int axis, const TriFactor& f, Exec exec) {
  const Lines L(shape, axis);
  if (f.size() + 2 != L.len) throw SingularSystemError("tridiagonal factor does not match the axis length");
  const long count = static_cast<long>(L.count);
  if (exec == Exec::Serial) {
    for (long l = 0; l < count; ++l) f.solve(data + L.base(static_cast<size_t>(l)) + L.stride, L.stride);
    return;
  }
  const bool big = L.count * L.len >= kParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (long l = 0; l < count; ++l) f.solve(data + L.base(static_cast<size_t>(l)) + L.stride, L.stride);
}

void dst_axis(double* data, const Index3& shape, int axis, Exec exec) {
  const Lines L(shape, axis);
  if (L.len < 3) return;
  const size_t n = L.len - 2;
  const long count = static_cast<long>(L.count);
  if (exec == Exec::Serial) {
    const auto t = sine_table(n);
    std::vector<double> in(n), out(n);
    for (long l = 0; l < count; ++l) {
      double* x = data + L.base(static_cast<size_t>(l)) + L.stride;
      for (size_t j = 0; j < n; ++j) in[j] = x[j * L.stride];
      for (size_t k = 0; k < n; ++k) {
        double s = 0;
        for (size_t j = 0; j < n; ++j) s += t[k * n + j] * in[j];
        out[k] = s;
      }
      for (size_t k = 0; k < n; ++k) x[k * L.stride] = out[k];
    }
    return;
  }
  fftw_plan p = plan_cache().get(n);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n + 1));
  const bool big = L.count * L.len >= kParallelWork;
#pragma omp parallel if (big)
  {
    FftwBuffer a(n), b(n);
#pragma omp for schedule(static)
    for (long l = 0; l < count; ++l) {
      double* x = data + L.base(static_cast<size_t>(l)) + L.stride;
      for (size_t j = 0; j < n; ++j) a.p[j] = x[j * L.stride];
      fftw_execute_r2r(p, a.p, b.p);
      for (size_t k = 0; k < n; ++k) x[k * L.stride] = scale * b.p[k];
    }
  }
}

} // namespace kernels
} // namespace cwave
