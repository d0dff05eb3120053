#include "bisteer/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bisteer {

namespace {

using nlohmann::json;

json condition_to_json(const ConditionReport& cond) {
  json j;
  j["pass"] = cond.pass;
  j["violations"] = cond.violations;
  return j;
}

json admissibility_json(const AdmissibilityReport& report) {
  json j;
  j["pass"] = report.pass();
  j["support"] = condition_to_json(report.support);
  j["sign"] = condition_to_json(report.sign);
  j["zero_match"] = condition_to_json(report.zero_match);
  j["bounded"] = condition_to_json(report.bounded);
  j["delta"] = report.delta;
  j["a_max"] = std::isfinite(report.a_max) ? json(report.a_max) : json("inf");
  return j;
}

double json_finite(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string field_to_csv(const Field& u) {
  std::ostringstream oss;
  for (double v : u.values()) oss << format_double(v) << "\n";
  return oss.str();
}

void write_field_csv(const Field& u, const std::filesystem::path& path) {
  write_text_file(path, field_to_csv(u));
}

Field field_from_csv(const SpatialGrid& grid, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field CSV: " + path.string());
  std::vector<double> values;
  values.reserve(grid.node_count());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      values.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ConfigError("bad numeric value in field CSV: " + path.string());
    }
  }
  if (values.size() != grid.node_count()) {
    std::ostringstream oss;
    oss << "field CSV " << path.string() << " holds " << values.size()
        << " values but the grid has " << grid.node_count() << " nodes";
    throw ConfigError(oss.str());
  }
  return Field(grid, std::move(values));
}

std::string field_to_json(const Field& u) {
  json j;
  j["d"] = u.grid().dimension;
  j["N"] = u.grid().nodes_per_axis;
  j["values"] = std::vector<double>(u.values().begin(), u.values().end());
  return j.dump();
}

Field field_from_json(const std::string& text) {
  json j = json::parse(text);
  const SpatialGrid grid = build_grid(j.at("d").get<int>(), j.at("N").get<int>());
  return Field(grid, j.at("values").get<std::vector<double>>());
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream oss;
  const std::size_t nodes = traj.states.empty() ? 0 : traj.states.front().size();
  oss << "t";
  for (std::size_t i = 0; i < nodes; ++i) oss << ",node_" << i;
  oss << "\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    oss << format_double(traj.times[k]);
    for (double v : traj.states[k].values()) oss << "," << format_double(v);
    oss << "\n";
  }
  return oss.str();
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  write_text_file(path, trajectory_to_csv(traj));
}

std::string trajectory_manifest_json(const Trajectory& traj,
                                     const std::string& control_description,
                                     const std::string& nonlinearity_name) {
  json j;
  if (!traj.states.empty()) {
    j["grid"] = {{"d", traj.states.front().grid().dimension},
                 {"N", traj.states.front().grid().nodes_per_axis}};
  }
  j["dt"] = traj.dt;
  j["steps"] = traj.step_count();
  j["control"] = control_description;
  j["nonlinearity"] = nonlinearity_name;
  return j.dump(2);
}

std::string admissibility_to_json(const AdmissibilityReport& report) {
  return admissibility_json(report).dump(2);
}

std::string steering_report_to_json(const SteeringReport& report,
                                    std::uint64_t config_digest,
                                    bool include_sample_fields) {
  json j;
  j["schema"] = "bisteer-report/1";
  j["config_digest"] = config_digest;
  j["outcome"] = to_string(report.outcome);
  j["epsilon"] = report.epsilon;
  j["chosen_T"] = json_finite(report.chosen_T);
  j["final_error"] = json_finite(report.final_error);
  j["control"] = report.control_description;
  json attempts = json::array();
  for (const SteeringAttempt& a : report.attempts) {
    attempts.push_back({{"T", a.T}, {"dt", a.dt}, {"error", a.error}});
  }
  j["attempts"] = attempts;
  j["sample_times"] = report.sample_times;
  if (include_sample_fields) {
    json fields = json::array();
    for (const Field& s : report.sample_states) {
      fields.push_back(std::vector<double>(s.values().begin(), s.values().end()));
    }
    j["sample_states"] = fields;
  }
  if (report.has_fit) {
    j["fitted_slope"] = report.fitted_slope;
    j["fitted_intercept"] = report.fitted_intercept;
  }
  j["apriori_bound"] = json_finite(report.apriori_bound);
  if (report.admissibility) j["admissibility"] = admissibility_json(*report.admissibility);
  j["message"] = report.message;
  return j.dump(2);
}

std::string convergence_to_csv(const ConvergenceTable& table) {
  std::ostringstream oss;
  oss << "T,dt,error,slope_running\n";
  for (const ConvergenceRow& row : table.rows) {
    oss << format_double(row.T) << "," << format_double(row.dt) << ","
        << format_double(row.error) << ","
        << (std::isnan(row.slope_running) ? "nan" : format_double(row.slope_running))
        << "\n";
  }
  return oss.str();
}

std::string convergence_to_json(const ConvergenceTable& table,
                                std::uint64_t config_digest) {
  json j;
  j["schema"] = "bisteer-report/1";
  j["config_digest"] = config_digest;
  j["slope"] = table.slope;
  j["intercept"] = table.intercept;
  j["rate_constant"] = table.rate_constant;
  json rows = json::array();
  for (const ConvergenceRow& row : table.rows) {
    json r = {{"T", row.T}, {"dt", row.dt}, {"error", row.error}};
    if (!std::isnan(row.slope_running)) r["slope_running"] = row.slope_running;
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2);
}

std::string bernstein_demo_to_json(const BernsteinDemoReport& report,
                                   std::uint64_t config_digest) {
  json j;
  j["schema"] = "bisteer-report/1";
  j["config_digest"] = config_digest;
  j["degree"] = report.degree;
  j["T"] = report.T;
  j["dt"] = report.dt;
  j["sup_state_gap"] = report.sup_state_gap;
  j["sup_forcing_gap"] = report.sup_forcing_gap;
  j["gronwall_bound"] = report.gronwall_bound;
  j["exp_identity_residual"] = report.exp_identity_residual;
  j["a_linf"] = report.a_linf;
  return j.dump(2);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path.string());
  out << text;
}

}  // namespace bisteer
