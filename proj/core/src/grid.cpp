#include "bisteer/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bisteer {

SpatialGrid build_grid(int dimension, int nodes_per_axis) {
  if (dimension != 1 && dimension != 2) {
    throw InvalidArgument("build_grid: dimension must be 1 or 2");
  }
  if (nodes_per_axis < 3) {
    std::ostringstream oss;
    oss << "build_grid: need at least 3 interior nodes per axis, got " << nodes_per_axis;
    throw InvalidArgument(oss.str());
  }
  return SpatialGrid{dimension, nodes_per_axis};
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

Field::Field(SpatialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) {
    throw InvalidArgument("Field: value count does not match grid node count");
  }
  if (!all_finite(values_)) {
    throw InvalidArgument("Field: non-finite value");
  }
}

Field Field::zeros(SpatialGrid grid) {
  return Field(grid, std::vector<double>(grid.node_count(), 0.0));
}

Field Field::from_function(SpatialGrid grid,
                           const std::function<double(std::array<double, 2>)>& f) {
  std::vector<double> v(grid.node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.coordinates(i));
  return Field(grid, std::move(v));
}

SupportMask::SupportMask(SpatialGrid grid, std::vector<std::uint8_t> in)
    : grid_(grid), in_(std::move(in)) {
  if (in_.size() != grid_.node_count()) {
    throw InvalidArgument("SupportMask: size does not match grid node count");
  }
}

SupportMask SupportMask::full(SpatialGrid grid) {
  return SupportMask(grid, std::vector<std::uint8_t>(grid.node_count(), 1));
}

std::size_t SupportMask::count() const {
  return static_cast<std::size_t>(std::count(in_.begin(), in_.end(), std::uint8_t{1}));
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) {
    throw InvalidArgument("fields live on different grids");
  }
}

double l2_norm(const Field& u) {
  double s = 0.0;
  for (double v : u.values()) s += v * v;
  const double h = u.grid().spacing();
  const double cell = u.grid().dimension == 1 ? h : h * h;
  return std::sqrt(cell * s);
}

double linf_norm(const Field& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double inner(const Field& u, const Field& w) {
  require_same_grid(u, w);
  double s = 0.0;
  const auto uv = u.values();
  const auto wv = w.values();
  for (std::size_t i = 0; i < uv.size(); ++i) s += uv[i] * wv[i];
  const double h = u.grid().spacing();
  const double cell = u.grid().dimension == 1 ? h : h * h;
  return cell * s;
}

Field apply_laplacian(const Field& u) {
  const SpatialGrid& g = u.grid();
  const double h2inv = 1.0 / (g.spacing() * g.spacing());
  const auto v = u.values();
  std::vector<double> out(v.size());
  if (g.dimension == 1) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i > 0 ? v[i - 1] : 0.0;
      const double right = i + 1 < n ? v[i + 1] : 0.0;
      out[i] = (left - 2.0 * v[i] + right) * h2inv;
    }
  } else {
    const auto n = static_cast<std::size_t>(g.nodes_per_axis);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = i * n + j;
        const double w = i > 0 ? v[idx - n] : 0.0;
        const double e = i + 1 < n ? v[idx + n] : 0.0;
        const double s = j > 0 ? v[idx - 1] : 0.0;
        const double t = j + 1 < n ? v[idx + 1] : 0.0;
        out[idx] = (w + e + s + t - 4.0 * v[idx]) * h2inv;
      }
    }
  }
  return Field(g, std::move(out));
}

std::vector<Field> discrete_gradient(const Field& u) {
  const SpatialGrid& g = u.grid();
  const double inv2h = 1.0 / (2.0 * g.spacing());
  const auto v = u.values();
  std::vector<Field> grad;
  if (g.dimension == 1) {
    const std::size_t n = v.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i > 0 ? v[i - 1] : 0.0;
      const double right = i + 1 < n ? v[i + 1] : 0.0;
      d[i] = (right - left) * inv2h;
    }
    grad.emplace_back(g, std::move(d));
  } else {
    const auto n = static_cast<std::size_t>(g.nodes_per_axis);
    std::vector<double> d1(v.size()), d2(v.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = i * n + j;
        const double w = i > 0 ? v[idx - n] : 0.0;
        const double e = i + 1 < n ? v[idx + n] : 0.0;
        const double s = j > 0 ? v[idx - 1] : 0.0;
        const double t = j + 1 < n ? v[idx + 1] : 0.0;
        d1[idx] = (e - w) * inv2h;
        d2[idx] = (t - s) * inv2h;
      }
    }
    grad.emplace_back(g, std::move(d1));
    grad.emplace_back(g, std::move(d2));
  }
  return grad;
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Field(a.grid(), std::move(out));
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Field(a.grid(), std::move(out));
}

Field operator*(double s, const Field& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a[i];
  return Field(a.grid(), std::move(out));
}

Field pointwise_mul(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return Field(a.grid(), std::move(out));
}

Field exp_scale_mul(const Field& v, double s, const Field& u) {
  require_same_grid(v, u);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(s * v[i]) * u[i];
  return Field(u.grid(), std::move(out));
}

Field map(const Field& u, const std::function<double(double)>& fn) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(u[i]);
  return Field(u.grid(), std::move(out));
}

}  // namespace bisteer
