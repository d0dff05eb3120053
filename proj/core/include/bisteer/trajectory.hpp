#pragma once

#include <vector>

#include "bisteer/grid.hpp"

namespace bisteer {

/// State samples at every solver step of a single simulate run:
/// times[k] = k*dt for k = 0..K, states[k] = y(times[k]).
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Field> states;

  std::size_t step_count() const { return states.empty() ? 0 : states.size() - 1; }
  const Field& at_step(std::size_t k) const { return states.at(k); }
  const Field& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

}  // namespace bisteer
