#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bisteer/state_spec.hpp"
#include "bisteer/steer.hpp"

namespace bisteer {

/// One structured config file per run. Parsing is strict: the schema field
/// must match, unknown keys are rejected, and numeric fields are validated
/// against the preconditions of the target operation.
struct RunConfig {
  static constexpr const char* kSchema = "bisteer-config/1";

  // problem
  int dimension = 1;
  int nodes_per_axis = 199;
  std::optional<StateSpec> y0;
  std::optional<StateSpec> yd;
  MaskSpec mask = MaskSpec::full();
  std::string nonlinearity_name = "zero";
  double nonlinearity_c = 0.0;
  double epsilon = 0.05;
  double T0 = 1.0;
  int steps_per_T = 500;
  double shrink = 0.5;
  double T_min = 1e-7;
  double zero_threshold = -1.0;
  double a_max = 50.0;
  double delta_E = -1.0;
  double hold_residual_tol = 1e-6;
  double hold_g_max = 1e4;

  // per-command sections
  std::string steer_mode = "theorem1";  // theorem1 | corollary1 | fixed-time
  double steer_T = -1.0;                // required for fixed-time
  std::vector<double> sweep_T_list;
  double bernstein_T = 0.5;
  int bernstein_n = -1;  // <0 resolves to default_bernstein_degree
  double mollify_r = 0.1;
  double hold_horizon = 0.5;

  // output
  std::string out_dir = ".";
  bool emit_trajectory = false;
  bool quiet = false;

  static RunConfig from_json_file(const std::filesystem::path& path);
  static RunConfig from_json_text(const std::string& text);

  /// Canonical serialization of the resolved config (sorted keys); the
  /// digest embedded in every report is the FNV-1a hash of this text.
  std::string canonical_json() const;
  std::uint64_t digest() const;

  SteeringProblem to_problem() const;
  NonlinearitySpec nonlinearity() const;
};

}  // namespace bisteer
