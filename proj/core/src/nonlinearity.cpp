#include "bisteer/nonlinearity.hpp"

#include <cmath>

namespace bisteer {

NonlinearitySpec NonlinearitySpec::zero() {
  NonlinearitySpec spec(
      "zero", [](double, const Field& y) { return Field::zeros(y.grid()); }, 0.0, 0.0);
  spec.zero_ = true;
  return spec;
}

NonlinearitySpec NonlinearitySpec::linear(double c) {
  return NonlinearitySpec(
      "linear", [c](double, const Field& y) { return c * y; }, std::abs(c), std::abs(c));
}

NonlinearitySpec NonlinearitySpec::scaled_sin(double c) {
  return NonlinearitySpec(
      "scaled-sin",
      [c](double, const Field& y) {
        return map(y, [c](double v) { return c * std::sin(v); });
      },
      std::abs(c), std::abs(c));
}

}  // namespace bisteer
