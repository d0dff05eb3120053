#pragma once

#include <memory>
#include <string>

#include "bisteer/grid.hpp"

namespace bisteer {

/// Pointwise multiplier used by the pointwise-product state kind:
/// either e^{x1} or an affine form a + b*x1 + c*x2.
struct Multiplier {
  enum class Kind { exp_x, affine };
  Kind kind = Kind::affine;
  double a = 1.0, b = 0.0, c = 0.0;

  double operator()(std::array<double, 2> x) const;
};

/// Declarative description of an initial/target state, evaluated on a grid.
/// Shipped kinds:
///   eigenfunction(k)              sin(k pi x), 1D only
///   product-eigenfunction(k1,k2)  sin(k1 pi x1) sin(k2 pi x2), 2D only
///   linear-difference             x1 - x2, 2D only
///   hat                           tent with peak 1 at the center (product in 2D)
///   step                          indicator of x1 < 1/2
///   scaled(inner, factor)
///   pointwise-product(inner, multiplier)
///   csv-file(path)                one value per line, lexicographic order
class StateSpec {
public:
  enum class Kind {
    eigenfunction,
    product_eigenfunction,
    linear_difference,
    hat,
    step,
    scaled,
    pointwise_product,
    csv_file,
  };

  static StateSpec eigenfunction(int k);
  static StateSpec product_eigenfunction(int k1, int k2);
  static StateSpec linear_difference();
  static StateSpec hat();
  static StateSpec step();
  static StateSpec scaled(StateSpec inner, double factor);
  static StateSpec pointwise_product(StateSpec inner, Multiplier multiplier);
  static StateSpec csv_file(std::string path);

  Field evaluate(const SpatialGrid& grid) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

private:
  StateSpec() = default;

  Kind kind_ = Kind::eigenfunction;
  int k1_ = 1, k2_ = 1;
  double factor_ = 1.0;
  Multiplier multiplier_;
  std::string path_;
  std::shared_ptr<const StateSpec> inner_;
};

/// Declarative description of the control support O.
class MaskSpec {
public:
  enum class Kind { full, box, csv_file };

  static MaskSpec full();
  /// Nodes with lo_i < x_i < hi_i along every axis.
  static MaskSpec box(double lo1, double hi1, double lo2 = 0.0, double hi2 = 1.0);
  static MaskSpec csv_file(std::string path);

  SupportMask evaluate(const SpatialGrid& grid) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

private:
  MaskSpec() = default;

  Kind kind_ = Kind::full;
  double lo1_ = 0.0, hi1_ = 1.0, lo2_ = 0.0, hi2_ = 1.0;
  std::string path_;
};

}  // namespace bisteer
