#pragma once

#include <filesystem>
#include <string>

#include "bisteer/control.hpp"
#include "bisteer/grid.hpp"
#include "bisteer/steer.hpp"
#include "bisteer/trajectory.hpp"

namespace bisteer {

/// Shortest exact decimal representation used for CSV output: 17 significant
/// digits round-trip any double.
std::string format_double(double v);

// Fields: CSV is one value per line in lexicographic node order; JSON is
// {"d": ..., "N": ..., "values": [...]}.
std::string field_to_csv(const Field& u);
void write_field_csv(const Field& u, const std::filesystem::path& path);
Field field_from_csv(const SpatialGrid& grid, const std::filesystem::path& path);
std::string field_to_json(const Field& u);
Field field_from_json(const std::string& text);

// Trajectories: CSV with columns t,node_0..node_{M-1}; the manifest records
// grid, dt, control description and nonlinearity name.
std::string trajectory_to_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
std::string trajectory_manifest_json(const Trajectory& traj,
                                     const std::string& control_description,
                                     const std::string& nonlinearity_name);

std::string admissibility_to_json(const AdmissibilityReport& report);

/// config_digest ties the report to the resolved configuration that
/// produced it (0 when unknown).
std::string steering_report_to_json(const SteeringReport& report,
                                    std::uint64_t config_digest,
                                    bool include_sample_fields);

std::string convergence_to_csv(const ConvergenceTable& table);
std::string convergence_to_json(const ConvergenceTable& table,
                                std::uint64_t config_digest);

std::string bernstein_demo_to_json(const BernsteinDemoReport& report,
                                   std::uint64_t config_digest);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bisteer
