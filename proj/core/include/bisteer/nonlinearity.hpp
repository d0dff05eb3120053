#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "bisteer/grid.hpp"

namespace bisteer {

/// Reaction term f(t, y) of the evolution equation, applied pointwise in
/// space. Carries the metadata the steering pipelines rely on:
///  - lipschitz: a Lipschitz constant valid in both variables,
///  - growth_bound: optional C with |f(t,y)(x)| <= C|y(x)| (implies f(t,0)=0),
///    required by the cancellation control.
class NonlinearitySpec {
public:
  using Evaluator = std::function<Field(double, const Field&)>;

  NonlinearitySpec(std::string name, Evaluator evaluator, double lipschitz,
                   std::optional<double> growth_bound = std::nullopt)
      : name_(std::move(name)),
        evaluator_(std::move(evaluator)),
        lipschitz_(lipschitz),
        growth_bound_(growth_bound) {}

  Field operator()(double t, const Field& y) const { return evaluator_(t, y); }

  const std::string& name() const { return name_; }
  double lipschitz() const { return lipschitz_; }
  std::optional<double> growth_bound() const { return growth_bound_; }

  /// True only for the shipped zero preset; lets the integrator skip the
  /// additive reaction stage entirely.
  bool is_zero() const { return zero_; }

  // shipped presets

  static NonlinearitySpec zero();

  /// f(t,y) = c*y pointwise.
  static NonlinearitySpec linear(double c);

  /// f(t,y) = c*sin(y) pointwise; |c*sin(y)| <= |c||y|.
  static NonlinearitySpec scaled_sin(double c);

private:
  std::string name_;
  Evaluator evaluator_;
  double lipschitz_ = 0.0;
  std::optional<double> growth_bound_;
  bool zero_ = false;
};

}  // namespace bisteer
