// Command-line front end: deterministic experiment runs and verification
// suites, emitting CSV data and JSON manifests.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "nlshybrid/io.hpp"
#include "nlshybrid/resonance.hpp"
#include "nlshybrid/trees.hpp"
#include "nlshybrid/verify.hpp"

namespace fs = std::filesystem;
using namespace nlshybrid;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBlowup = 2;
constexpr int kExitUsage = 64;    // EX_USAGE: bad config / arguments
constexpr int kExitIoError = 74;  // EX_IOERR

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--set expects key=value, got: " + kv);
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

Json apply_overrides(Json config, const std::map<std::string, std::string>& overrides) {
  for (const auto& [key, value] : overrides) {
    // dotted paths address nested keys, e.g. solver.dt=1e-4
    std::string path = "/" + key;
    for (auto& c : path)
      if (c == '.') c = '/';
    Json parsed;
    try {
      parsed = Json::parse(value);
    } catch (const Json::exception&) {
      parsed = value;  // bare strings stay strings
    }
    config[Json::json_pointer(path)] = parsed;
  }
  return config;
}

SolverConfig solver_config_from(const Json& j) {
  SolverConfig cfg;
  const Json s = j.value("solver", Json::object());
  const std::string scheme = s.value("scheme", "strang-splitstep");
  if (scheme == "strang-splitstep")
    cfg.scheme = Scheme::StrangSplitStep;
  else if (scheme == "rk4-integrating-factor")
    cfg.scheme = Scheme::Rk4IntegratingFactor;
  else
    throw std::invalid_argument("unknown scheme: " + scheme);
  cfg.dt = s.value("dt", cfg.dt);
  cfg.t_final = s.value("t_final", cfg.t_final);
  cfg.sign = s.value("sign", cfg.sign);
  cfg.torus_modes = s.value("torus_modes", cfg.torus_modes);
  cfg.box_length = s.value("box_length", cfg.box_length);
  cfg.line_points = s.value("line_points", cfg.line_points);
  cfg.dealias_fraction = s.value("dealias_fraction", cfg.dealias_fraction);
  cfg.record_every = s.value("record_every", cfg.record_every);
  cfg.sobolev_s = s.value("sobolev_s", cfg.sobolev_s);
  cfg.validate();
  return cfg;
}

Json resolved_config_json(const SolverConfig& cfg, const Json& initial) {
  Json s{{"scheme", cfg.scheme == Scheme::StrangSplitStep ? "strang-splitstep"
                                                          : "rk4-integrating-factor"},
         {"dt", cfg.dt},
         {"t_final", cfg.t_final},
         {"sign", cfg.sign},
         {"torus_modes", cfg.torus_modes},
         {"box_length", cfg.box_length},
         {"line_points", cfg.line_points},
         {"dealias_fraction", cfg.dealias_fraction},
         {"record_every", cfg.record_every},
         {"sobolev_s", cfg.sobolev_s}};
  return Json{{"solver", s}, {"initial", initial}};
}

PeriodicField build_tooth(const Json& initial, const TorusGrid& g) {
  const Json tooth = initial.value("tooth_profile", Json{{"type", "gaussian"}});
  const std::string type = tooth.value("type", "gaussian");
  if (type == "gaussian") {
    const Real amplitude = tooth.value("amplitude", 0.6);
    const Real width = tooth.value("width", 0.1);
    CVec samples(g.samples);
    for (Index i = 0; i < g.samples; ++i) {
      const Real x = static_cast<Real>(i) / g.samples;
      const Real d = x < 0.5 ? x : 1.0 - x;
      samples[i] = amplitude * std::exp(-0.5 * d * d / (width * width));
    }
    return torus_from_samples(g, samples);
  }
  if (type == "constant") {
    PeriodicField w(g);
    w.set_coeff(0, tooth.value("amplitude", 0.5));
    return w;
  }
  if (type == "fourier") {
    PeriodicField w(g);
    const Json coeffs = tooth.at("coeffs");  // [[n, re, im], ...]
    for (const auto& c : coeffs) w.set_coeff(c.at(0).get<int>(), {c.at(1), c.at(2)});
    return w;
  }
  throw std::invalid_argument("unknown tooth_profile type: " + type);
}

LineField build_v0(const Json& initial, const PeriodicField& w0, const LineGrid& g,
                   const ExperimentSpec& spec) {
  const Json v = initial.value("v0", Json{{"type", "knockout"}});
  const std::string type = v.value("type", "knockout");
  if (type == "zero") return LineField(g);
  if (type == "knockout") return knock_out(w0, spec, g);
  if (type == "gaussian_dip") {
    const Real amplitude = v.value("amplitude", 0.1);
    const Real width = v.value("width", 1.0);
    const Real center = v.value("center", 0.0);
    CVec values(g.points);
    for (Index i = 0; i < g.points; ++i) {
      const Real x = g.x(i) - center;
      values[i] = -amplitude * std::exp(-0.5 * x * x / (width * width));
    }
    return line_field_from_values(g, values);
  }
  throw std::invalid_argument("unknown v0 type: " + type);
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::map<std::string, std::string>& overrides) {
  Json config;
  try {
    config = apply_overrides(load_json(config_path), overrides);
  } catch (const Json::parse_error& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitIoError;
  }

  const auto started = iso_timestamp_now();
  const auto t0 = std::chrono::steady_clock::now();

  SolverConfig cfg;
  ExperimentSpec spec;
  PeriodicField w0;
  LineField v0;
  Json initial;
  try {
    cfg = solver_config_from(config);
    initial = config.value("initial", Json::object());
    spec.knocked_slots = initial.value("knocked_slots", std::vector<int>{});
    spec.smoothing_width = initial.value("smoothing_width", 0.05);
    w0 = build_tooth(initial, cfg.torus_grid());
    v0 = build_v0(initial, w0, cfg.line_grid(), spec);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }

  const bool v0_zero = l2_norm(v0) == 0;
  const Trajectory traj = co_evolve({w0, v0, 0}, cfg, spec);

  std::vector<ManifestCheck> checks;
  Real drift = 0;
  for (Real m : traj.w_mass) drift = std::max(drift, std::abs(m - traj.w_mass.front()));
  const Real rel_drift = drift / traj.w_mass.front();
  checks.push_back({"w-mass", rel_drift, 1e-8, rel_drift <= 1e-8});
  if (v0_zero) {
    const Real v_final = l2_norm(traj.final_state.v);
    checks.push_back({"v-zero-preserved", v_final, 1e-12, v_final <= 1e-12});
  }

  try {
    fs::create_directories(out_dir);
    write_trajectory_csv(traj, spec.knocked_slots, out_dir + "/trajectory.csv");
    save_json(to_json(traj.final_state.w), out_dir + "/w_final.json");
    save_json(to_json(traj.final_state.v), out_dir + "/v_final.json");
    const auto wall = std::chrono::duration<Real>(std::chrono::steady_clock::now() - t0);
    Json manifest = manifest_json(resolved_config_json(cfg, initial), checks, started,
                                  iso_timestamp_now(), wall.count());
    manifest["blew_up"] = traj.blew_up;
    if (traj.blew_up) manifest["blowup_time"] = traj.blowup_time;
    save_json(manifest, out_dir + "/manifest.json");
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  }

  if (traj.blew_up) {
    std::cerr << "blowup detected at t = " << traj.blowup_time << "\n";
    return kExitBlowup;
  }
  for (const auto& c : checks)
    std::cout << c.id << ": " << (c.pass ? "pass" : "FAIL") << " (measured " << c.measured
              << ", threshold " << c.threshold << ")\n";
  return kExitOk;
}

int cmd_trees(int J, const std::string& mode, const std::string& out_dir) {
  fs::create_directories(out_dir);
  if (mode == "census") {
    const std::string path = out_dir + "/census.csv";
    export_census_csv(path, J);
    const GenerationCensus c = census_recursive(J);
    std::cout << "J=" << J << " N=" << c.n_trees.to_string() << " b=" << c.black_total.to_string()
              << " r=" << c.red_total.to_string() << "\n";
    std::cout << "wrote " << path << "\n";
    return kExitOk;
  }
  if (mode == "enumerate") {
    if (J > kMaxMaterializedGeneration) {
      std::cerr << "enumerate mode is limited to J <= " << kMaxMaterializedGeneration << "\n";
      return kExitUsage;
    }
    const std::string path = out_dir + "/trees.txt";
    std::ofstream out(path);
    for_each_tree(J, [&](const ColoredTree& t) { out << to_bracket(t) << "\n"; });
    std::cout << "J=" << J << " N=" << census_recursive(J).n_trees.to_string() << "\n";
    std::cout << "wrote " << path << "\n";
    return kExitOk;
  }
  if (mode == "bounds") {
    const std::string path = out_dir + "/bounds.csv";
    std::ofstream out(path);
    out << "J,N,bound,ok\n";
    bool all_ok = true;
    for (int j = 1; j <= J; ++j) {
      const BoundCheck b = bound_check(j);
      out << j << "," << b.n_trees.to_string() << "," << b.bound_double_factorial.to_string()
          << "," << (b.ok ? "true" : "false") << "\n";
      all_ok = all_ok && b.ok;
    }
    std::cout << (all_ok ? "all bounds hold" : "BOUND VIOLATION") << "; wrote " << path << "\n";
    return all_ok ? kExitOk : 1;
  }
  std::cerr << "unknown mode: " << mode << "\n";
  return kExitUsage;
}

int cmd_resonance(const std::string& out_dir,
                  const std::map<std::string, std::string>& overrides) {
  int n = 0, band = 16;
  Real threshold = 64;
  if (auto it = overrides.find("n"); it != overrides.end()) n = std::stoi(it->second);
  if (auto it = overrides.find("band"); it != overrides.end()) band = std::stoi(it->second);
  if (auto it = overrides.find("N"); it != overrides.end()) threshold = std::stod(it->second);
  fs::create_directories(out_dir);
  const std::string path = out_dir + "/resonance.csv";
  export_enumeration_csv(path, n, threshold, band);
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_operators(const std::string& out_dir, std::uint64_t seed) {
  fs::create_directories(out_dir);
  const std::string path = out_dir + "/operator_audit.csv";
  std::ofstream out(path);
  out << "kind,n,n1,n2,n3,ratio\n";
  bool ok = true;
  const char* names[] = {"I", "II", "III", "IV", "V"};
  for (int k = 0; k < 5; ++k) {
    const auto rows = verify::fir_audit_rows(static_cast<OperatorKind>(k), 100, seed + k);
    std::vector<double> ratios;
    for (const auto& row : rows) {
      out << names[k] << "," << row.quad.n << "," << row.quad.n1 << "," << row.quad.n2 << ","
          << row.quad.n3 << "," << row.ratio << "\n";
      ratios.push_back(row.ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = 0.5 * (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]);
    const double spread = ratios.back() / median;
    ok = ok && spread < 5.0;
    std::cout << "kind " << names[k] << ": max/median = " << spread
              << (spread < 5.0 ? " (pass)" : " (FAIL)") << "\n";
  }
  std::cout << "wrote " << path << "\n";
  return ok ? kExitOk : 1;
}

int cmd_verify(const std::string& suite, const std::string& out_dir, const verify::Options& opt) {
  std::vector<verify::CheckResult> results;
  try {
    results = verify::run_suite(suite, opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  bool ok = true;
  for (const auto& c : results) {
    std::printf("%-34s %s  measured=%.6g threshold=%.6g\n", c.id.c_str(),
                c.pass ? "pass" : "FAIL", c.measured, c.threshold);
    ok = ok && c.pass;
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    export_partition_csv(make_partition(), out_dir + "/partition.csv", 3.0, 200);
  }
  if (!ok) std::cerr << "verification failed\n";
  return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid periodic-plus-localized cubic NLS toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", mode = "census", suite = "all";
  std::uint64_t seed = 20240901;
  int J = 2;
  std::vector<std::string> set_kvs;

  auto* sim = app.add_subcommand("simulate", "run a coupled experiment from a JSON config");
  sim->add_option("--config", config_path, "JSON config file")->required();
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--seed", seed, "rng seed recorded in the manifest");
  sim->add_option("--set", set_kvs, "override config values (key=value, dotted paths)");

  auto* trees = app.add_subcommand("trees", "colored-tree enumeration, census and bounds");
  trees->add_option("--J", J, "generation");
  trees->add_option("--mode", mode, "enumerate | census | bounds");
  trees->add_option("--out", out_dir, "output directory");

  auto* reso = app.add_subcommand("resonance", "export a frequency-quad classification table");
  reso->add_option("--out", out_dir, "output directory");
  reso->add_option("--set", set_kvs, "n=<int> N=<real> band=<int>");

  auto* ops = app.add_subcommand("operators", "divided-operator bound audits");
  ops->add_option("--out", out_dir, "output directory");
  ops->add_option("--seed", seed, "rng seed");

  std::string verify_out;
  auto* ver = app.add_subcommand("verify", "run invariant suites");
  ver->add_option("--suite", suite, "spectral | boxes | resonance | operators | solver | all");
  ver->add_option("--out", verify_out, "optional output directory for inspection data");
  ver->add_option("--seed", seed, "rng seed");
  ver->add_option("--set", set_kvs, "options, e.g. corrupt_partition=1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_dir, parse_overrides(set_kvs));
    if (trees->parsed()) return cmd_trees(J, mode, out_dir);
    if (reso->parsed()) return cmd_resonance(out_dir, parse_overrides(set_kvs));
    if (ops->parsed()) return cmd_operators(out_dir, seed);
    if (ver->parsed()) {
      verify::Options opt;
      opt.seed = seed;
      const auto overrides = parse_overrides(set_kvs);
      if (auto it = overrides.find("corrupt_partition"); it != overrides.end())
        opt.corrupt_partition = it->second == "1" || it->second == "true";
      return cmd_verify(suite, verify_out, opt);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitIoError;
  }
  return kExitUsage;
}
