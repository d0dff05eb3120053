#include "bisteer/state_spec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bisteer/io.hpp"

namespace bisteer {

namespace {

double tent(double x) { return 1.0 - std::abs(2.0 * x - 1.0); }

}  // namespace

double Multiplier::operator()(std::array<double, 2> x) const {
  switch (kind) {
    case Kind::exp_x: return std::exp(x[0]);
    case Kind::affine: return a + b * x[0] + c * x[1];
  }
  return 0.0;
}

StateSpec StateSpec::eigenfunction(int k) {
  if (k < 1) throw InvalidArgument("StateSpec: eigenfunction index must be >= 1");
  StateSpec s;
  s.kind_ = Kind::eigenfunction;
  s.k1_ = k;
  return s;
}

StateSpec StateSpec::product_eigenfunction(int k1, int k2) {
  if (k1 < 1 || k2 < 1) {
    throw InvalidArgument("StateSpec: eigenfunction indices must be >= 1");
  }
  StateSpec s;
  s.kind_ = Kind::product_eigenfunction;
  s.k1_ = k1;
  s.k2_ = k2;
  return s;
}

StateSpec StateSpec::linear_difference() {
  StateSpec s;
  s.kind_ = Kind::linear_difference;
  return s;
}

StateSpec StateSpec::hat() {
  StateSpec s;
  s.kind_ = Kind::hat;
  return s;
}

StateSpec StateSpec::step() {
  StateSpec s;
  s.kind_ = Kind::step;
  return s;
}

StateSpec StateSpec::scaled(StateSpec inner, double factor) {
  StateSpec s;
  s.kind_ = Kind::scaled;
  s.factor_ = factor;
  s.inner_ = std::make_shared<StateSpec>(std::move(inner));
  return s;
}

StateSpec StateSpec::pointwise_product(StateSpec inner, Multiplier multiplier) {
  StateSpec s;
  s.kind_ = Kind::pointwise_product;
  s.multiplier_ = multiplier;
  s.inner_ = std::make_shared<StateSpec>(std::move(inner));
  return s;
}

StateSpec StateSpec::csv_file(std::string path) {
  StateSpec s;
  s.kind_ = Kind::csv_file;
  s.path_ = std::move(path);
  return s;
}

Field StateSpec::evaluate(const SpatialGrid& grid) const {
  switch (kind_) {
    case Kind::eigenfunction:
      if (grid.dimension != 1) {
        throw InvalidArgument("StateSpec: eigenfunction(k) is 1D; use product-eigenfunction");
      }
      return Field::from_function(grid, [this](std::array<double, 2> x) {
        return std::sin(k1_ * M_PI * x[0]);
      });
    case Kind::product_eigenfunction:
      if (grid.dimension != 2) {
        throw InvalidArgument("StateSpec: product-eigenfunction requires a 2D grid");
      }
      return Field::from_function(grid, [this](std::array<double, 2> x) {
        return std::sin(k1_ * M_PI * x[0]) * std::sin(k2_ * M_PI * x[1]);
      });
    case Kind::linear_difference:
      if (grid.dimension != 2) {
        throw InvalidArgument("StateSpec: linear-difference requires a 2D grid");
      }
      return Field::from_function(grid,
                                  [](std::array<double, 2> x) { return x[0] - x[1]; });
    case Kind::hat:
      return Field::from_function(grid, [&](std::array<double, 2> x) {
        return grid.dimension == 1 ? tent(x[0]) : tent(x[0]) * tent(x[1]);
      });
    case Kind::step:
      return Field::from_function(grid, [](std::array<double, 2> x) {
        return x[0] < 0.5 ? 1.0 : 0.0;
      });
    case Kind::scaled: {
      return factor_ * inner_->evaluate(grid);
    }
    case Kind::pointwise_product: {
      const Field base = inner_->evaluate(grid);
      std::vector<double> out(base.size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = multiplier_(grid.coordinates(i)) * base[i];
      }
      return Field(grid, std::move(out));
    }
    case Kind::csv_file:
      return field_from_csv(grid, path_);
  }
  throw InvalidArgument("StateSpec: unknown kind");
}

std::string StateSpec::describe() const {
  std::ostringstream oss;
  switch (kind_) {
    case Kind::eigenfunction: oss << "eigenfunction(" << k1_ << ")"; break;
    case Kind::product_eigenfunction:
      oss << "product-eigenfunction(" << k1_ << "," << k2_ << ")";
      break;
    case Kind::linear_difference: oss << "linear-difference"; break;
    case Kind::hat: oss << "hat"; break;
    case Kind::step: oss << "step"; break;
    case Kind::scaled: oss << "scaled(" << inner_->describe() << ", " << factor_ << ")"; break;
    case Kind::pointwise_product:
      oss << "pointwise-product(" << inner_->describe() << ")";
      break;
    case Kind::csv_file: oss << "csv-file(" << path_ << ")"; break;
  }
  return oss.str();
}

MaskSpec MaskSpec::full() {
  MaskSpec m;
  m.kind_ = Kind::full;
  return m;
}

MaskSpec MaskSpec::box(double lo1, double hi1, double lo2, double hi2) {
  if (!(lo1 < hi1) || !(lo2 < hi2)) {
    throw InvalidArgument("MaskSpec: box bounds must satisfy lo < hi");
  }
  MaskSpec m;
  m.kind_ = Kind::box;
  m.lo1_ = lo1;
  m.hi1_ = hi1;
  m.lo2_ = lo2;
  m.hi2_ = hi2;
  return m;
}

MaskSpec MaskSpec::csv_file(std::string path) {
  MaskSpec m;
  m.kind_ = Kind::csv_file;
  m.path_ = std::move(path);
  return m;
}

SupportMask MaskSpec::evaluate(const SpatialGrid& grid) const {
  switch (kind_) {
    case Kind::full: return SupportMask::full(grid);
    case Kind::box: {
      std::vector<std::uint8_t> in(grid.node_count(), 0);
      for (std::size_t i = 0; i < in.size(); ++i) {
        const auto x = grid.coordinates(i);
        const bool ok1 = x[0] > lo1_ && x[0] < hi1_;
        const bool ok2 = grid.dimension == 1 || (x[1] > lo2_ && x[1] < hi2_);
        in[i] = ok1 && ok2 ? 1 : 0;
      }
      return SupportMask(grid, std::move(in));
    }
    case Kind::csv_file: {
      const Field values = field_from_csv(grid, path_);
      std::vector<std::uint8_t> in(values.size());
      for (std::size_t i = 0; i < in.size(); ++i) in[i] = values[i] != 0.0 ? 1 : 0;
      return SupportMask(grid, std::move(in));
    }
  }
  throw InvalidArgument("MaskSpec: unknown kind");
}

std::string MaskSpec::describe() const {
  std::ostringstream oss;
  switch (kind_) {
    case Kind::full: oss << "full"; break;
    case Kind::box:
      oss << "box(" << lo1_ << "," << hi1_ << ";" << lo2_ << "," << hi2_ << ")";
      break;
    case Kind::csv_file: oss << "csv-file(" << path_ << ")"; break;
  }
  return oss.str();
}

}  // namespace bisteer
