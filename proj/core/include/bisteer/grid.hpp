#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bisteer/errors.hpp"

namespace bisteer {

/// Uniform Cartesian discretization of the unit interval (d=1) or unit
/// square (d=2) with homogeneous Dirichlet boundary. Only interior nodes
/// are stored; boundary values are identically zero and implicit.
///
/// Interior nodes along each axis sit at x = (i+1)*h, i = 0..N-1, with
/// spacing h = 1/(N+1). Node ordering is lexicographic: in 2D the node
/// (i, j) maps to index i*N + j, where i indexes x1 and j indexes x2.
struct SpatialGrid {
  int dimension = 1;        // d in {1, 2}
  int nodes_per_axis = 3;   // N >= 3

  double spacing() const { return 1.0 / (nodes_per_axis + 1); }

  std::size_t node_count() const {
    const auto n = static_cast<std::size_t>(nodes_per_axis);
    return dimension == 1 ? n : n * n;
  }

  /// Coordinates of the interior node with the given lexicographic index.
  /// In 1D the second component is 0.
  std::array<double, 2> coordinates(std::size_t index) const {
    const double h = spacing();
    if (dimension == 1) return {(static_cast<double>(index) + 1.0) * h, 0.0};
    const auto n = static_cast<std::size_t>(nodes_per_axis);
    const std::size_t i = index / n;
    const std::size_t j = index % n;
    return {(static_cast<double>(i) + 1.0) * h, (static_cast<double>(j) + 1.0) * h};
  }

  bool operator==(const SpatialGrid&) const = default;
};

/// Builds the interior grid; d must be 1 or 2 and N >= 3.
SpatialGrid build_grid(int dimension, int nodes_per_axis);

/// Real-valued state on the interior nodes of a grid, one value per node in
/// lexicographic order. Immutable after construction apart from whole-value
/// assignment; all values are finite.
class Field {
public:
  Field(SpatialGrid grid, std::vector<double> values);

  static Field zeros(SpatialGrid grid);

  /// Samples f at every interior node. The callback receives the node
  /// coordinates (second component 0 in 1D).
  static Field from_function(SpatialGrid grid,
                             const std::function<double(std::array<double, 2>)>& f);

  const SpatialGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Direct access for builders; callers keep the finiteness invariant.
  std::vector<double>& mutable_values() { return values_; }

private:
  SpatialGrid grid_;
  std::vector<double> values_;
};

/// Boolean membership of interior nodes in the control support O.
class SupportMask {
public:
  SupportMask(SpatialGrid grid, std::vector<std::uint8_t> in);

  static SupportMask full(SpatialGrid grid);

  const SpatialGrid& grid() const { return grid_; }
  bool operator[](std::size_t i) const { return in_[i] != 0; }
  std::size_t count() const;
  bool is_full() const { return count() == grid_.node_count(); }
  std::size_t size() const { return in_.size(); }

private:
  SpatialGrid grid_;
  std::vector<std::uint8_t> in_;
};

// --- norms and inner product (discrete L2 carries the h^d cell weight) ---

double l2_norm(const Field& u);
double linf_norm(const Field& u);
double inner(const Field& u, const Field& w);

// --- discrete differential operators, zero Dirichlet closure ---

/// Second-order stencil Laplacian (3-point in 1D, 5-point in 2D).
Field apply_laplacian(const Field& u);

/// Centered first differences, one Field per axis.
std::vector<Field> discrete_gradient(const Field& u);

// --- elementwise arithmetic ---

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field pointwise_mul(const Field& a, const Field& b);

/// e^{s*v_i} * u_i per node (exact multiplicative half-step of simulate).
Field exp_scale_mul(const Field& v, double s, const Field& u);

/// Applies fn to every value.
Field map(const Field& u, const std::function<double(double)>& fn);

/// Throws InvalidArgument unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b);

bool all_finite(std::span<const double> values);

}  // namespace bisteer
