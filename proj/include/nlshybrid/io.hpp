#pragma once

#include <string>

#include <json.hpp>

#include "nlshybrid/solver.hpp"

namespace nlshybrid {

using Json = nlohmann::json;

// Fields serialize to JSON with grid metadata and coefficient arrays of
// [re, im] pairs; loaders validate the grid invariants.
Json to_json(const PeriodicField& w);
Json to_json(const LineField& f);
PeriodicField periodic_field_from_json(const Json& j);
LineField line_field_from_json(const Json& j);

void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

void write_trajectory_csv(const Trajectory& traj, const std::vector<int>& slots,
                          const std::string& path);
void write_direct_trajectory_csv(const DirectTrajectory& traj, const std::string& path);

struct ManifestCheck {
  std::string id;
  Real measured = 0;
  Real threshold = 0;
  bool pass = false;
};

Json manifest_json(const Json& resolved_config, const std::vector<ManifestCheck>& checks,
                   const std::string& started_at, const std::string& finished_at,
                   Real wall_seconds);

std::string iso_timestamp_now();

}  // namespace nlshybrid
