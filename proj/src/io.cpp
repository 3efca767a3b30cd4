#include "nlshybrid/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nlshybrid {

namespace {

Json complex_array(const CVec& v) {
  Json arr = Json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

CVec complex_array_from(const Json& arr) {
  CVec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    v[static_cast<Index>(i)] = Complex(arr[i].at(0).get<Real>(), arr[i].at(1).get<Real>());
  return v;
}

// fixed-width float formatting keeps CSV output byte-reproducible
std::string fmt(Real x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Json to_json(const PeriodicField& w) {
  return Json{{"kind", "periodic_field"},
              {"grid", {{"modes", w.grid.modes}, {"samples", w.grid.samples}}},
              {"coeffs", complex_array(w.coeffs)}};
}

Json to_json(const LineField& f) {
  return Json{{"kind", "line_field"},
              {"grid", {{"box_length", f.grid.box_length}, {"points", f.grid.points}}},
              {"spectrum", complex_array(f.spectrum)}};
}

PeriodicField periodic_field_from_json(const Json& j) {
  if (j.at("kind") != "periodic_field") throw std::invalid_argument("not a periodic_field");
  const TorusGrid g(j.at("grid").at("modes").get<int>(), j.at("grid").at("samples").get<int>());
  PeriodicField w(g);
  w.coeffs = complex_array_from(j.at("coeffs"));
  if (w.coeffs.size() != g.samples)
    throw std::invalid_argument("periodic_field: coefficient count does not match the grid");
  return w;
}

LineField line_field_from_json(const Json& j) {
  if (j.at("kind") != "line_field") throw std::invalid_argument("not a line_field");
  const LineGrid g(j.at("grid").at("box_length").get<int>(), j.at("grid").at("points").get<int>());
  const CVec spectrum = complex_array_from(j.at("spectrum"));
  if (spectrum.size() != g.points)
    throw std::invalid_argument("line_field: spectrum size does not match the grid");
  return line_field_from_spectrum(g, spectrum);
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return Json::parse(in);
}

void write_trajectory_csv(const Trajectory& traj, const std::vector<int>& slots,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "t,w_mass,v_l2,v_hs";
  for (int slot : slots) out << ",E_slot_" << slot;
  out << "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << fmt(traj.times[i]) << "," << fmt(traj.w_mass[i]) << "," << fmt(traj.v_l2[i]) << ","
        << fmt(traj.v_hs[i]);
    if (!traj.slot_energy.empty())
      for (Real e : traj.slot_energy[i]) out << "," << fmt(e);
    out << "\n";
  }
}

void write_direct_trajectory_csv(const DirectTrajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "t,u_mass\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    out << fmt(traj.times[i]) << "," << fmt(traj.u_mass[i]) << "\n";
}

Json manifest_json(const Json& resolved_config, const std::vector<ManifestCheck>& checks,
                   const std::string& started_at, const std::string& finished_at,
                   Real wall_seconds) {
  Json jchecks = Json::array();
  for (const auto& c : checks)
    jchecks.push_back({{"id", c.id},
                       {"measured", c.measured},
                       {"threshold", c.threshold},
                       {"pass", c.pass}});
  return Json{{"tool", "nlshybrid"},
              {"version", "1.0.0"},
              {"frequency_convention",
               {{"unit", "cycles per tooth"},
                {"free_evolution_symbol", "exp(-i t xi^2)"},
                {"spatial_rescale_2pi", kSpatialRescale}}},
              {"config", resolved_config},
              {"started_at", started_at},
              {"finished_at", finished_at},
              {"wall_seconds", wall_seconds},
              {"checks", jchecks}};
}

std::string iso_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace nlshybrid
