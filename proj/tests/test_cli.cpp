// End-to-end checks of the command-line tool: exit codes, emitted files,
// and byte-level determinism of the CSV outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = NLSHYBRID_CLI_PATH;

int run(const std::string& args, std::string* output = nullptr) {
  const std::string log = (fs::temp_directory_path() / "nlshybrid_cli_log.txt").string();
  const int status = std::system((kCli + " " + args + " >" + log + " 2>&1").c_str());
  if (output) {
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_config(const fs::path& path, double t_final, const std::string& v0_type) {
  nlohmann::json config{
      {"solver",
       {{"dt", 1e-3},
        {"t_final", t_final},
        {"sign", 1},
        {"torus_modes", 16},
        {"box_length", 16},
        {"line_points", 1024},
        {"record_every", 10}}},
      {"initial",
       {{"tooth_profile", {{"type", "gaussian"}, {"amplitude", 0.6}, {"width", 0.1}}},
        {"knocked_slots", {0}},
        {"smoothing_width", 0.05},
        {"v0", {{"type", v0_type}}}}}};
  std::ofstream out(path);
  out << config.dump(2);
}

}  // namespace

TEST_CASE("trees subcommand") {
  const fs::path dir = fresh_dir("nlsh_cli_trees");
  std::string output;
  CHECK(run("trees --J 2 --mode census --out " + dir.string(), &output) == 0);
  CHECK(output.find("N=51") != std::string::npos);
  const std::string csv = slurp(dir / "census.csv");
  CHECK(csv.find("2,51,139,116") != std::string::npos);

  CHECK(run("trees --J 1 --mode enumerate --out " + dir.string(), &output) == 0);
  const std::string trees = slurp(dir / "trees.txt");
  CHECK(trees == "[b[b][b][b]]\n[b[r][r][b]]\n[b[r][b][r]]\n[b[b][b][r]]\n[b[b][r][b]]\n");

  CHECK(run("trees --J 10 --mode bounds --out " + dir.string(), &output) == 0);
  const std::string bounds = slurp(dir / "bounds.csv");
  CHECK(bounds.find("false") == std::string::npos);
}

TEST_CASE("simulate subcommand") {
  const fs::path dir = fresh_dir("nlsh_cli_sim");
  const fs::path config = dir / "run.json";

  SUBCASE("knockout run emits trajectory, fields and a manifest") {
    write_config(config, 0.05, "knockout");
    std::string output;
    const int code =
        run("simulate --config " + config.string() + " --out " + dir.string(), &output);
    CHECK(code == 0);
    CHECK(output.find("w-mass: pass") != std::string::npos);
    CHECK(fs::exists(dir / "trajectory.csv"));
    CHECK(fs::exists(dir / "w_final.json"));
    CHECK(fs::exists(dir / "v_final.json"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("blew_up") == false);
    bool found_mass_check = false;
    for (const auto& c : manifest.at("checks"))
      if (c.at("id") == "w-mass") {
        found_mass_check = true;
        CHECK(c.at("pass") == true);
        CHECK(c.contains("measured"));
        CHECK(c.contains("threshold"));
      }
    CHECK(found_mass_check);
    const std::string header = slurp(dir / "trajectory.csv").substr(0, 64);
    CHECK(header.find("t,w_mass,v_l2,v_hs,E_slot_0") == 0);
  }

  SUBCASE("v0 = 0 run passes the v-zero-preserved check") {
    write_config(config, 0.02, "zero");
    std::string output;
    CHECK(run("simulate --config " + config.string() + " --out " + dir.string(), &output) == 0);
    CHECK(output.find("v-zero-preserved: pass") != std::string::npos);
  }

  SUBCASE("malformed JSON exits with the usage code and a diagnostic") {
    std::ofstream bad(config);
    bad << "{ not json";
    bad.close();
    std::string output;
    CHECK(run("simulate --config " + config.string() + " --out " + dir.string(), &output) == 64);
    CHECK(output.find("parse error") != std::string::npos);
  }

  SUBCASE("identical config and seed give byte-identical CSV output") {
    write_config(config, 0.03, "knockout");
    const fs::path dir_a = fresh_dir("nlsh_cli_sim_a");
    const fs::path dir_b = fresh_dir("nlsh_cli_sim_b");
    CHECK(run("simulate --config " + config.string() + " --seed 7 --out " + dir_a.string()) == 0);
    CHECK(run("simulate --config " + config.string() + " --seed 7 --out " + dir_b.string()) == 0);
    CHECK(slurp(dir_a / "trajectory.csv") == slurp(dir_b / "trajectory.csv"));
  }

  SUBCASE("--set overrides nested config values") {
    write_config(config, 0.02, "zero");
    const int code = run("simulate --config " + config.string() + " --out " + dir.string() +
                         " --set solver.t_final=0.01");
    CHECK(code == 0);
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("config").at("solver").at("t_final").get<double>() ==
          doctest::Approx(0.01));
  }
}

TEST_CASE("shipped example configs run end to end") {
  const std::string configs = NLSHYBRID_CONFIG_DIR;
  for (const std::string name : {"dark_soliton.json", "ghost_pulse.json"}) {
    const fs::path dir = fresh_dir("nlsh_cli_shipped_" + name.substr(0, 4));
    std::string output;
    // shorten the horizon; the point is that the shipped files parse and run
    const int code = run("simulate --config " + configs + "/" + name + " --out " +
                             dir.string() + " --set solver.t_final=0.05",
                         &output);
    INFO(name, ": ", output);
    CHECK(code == 0);
    CHECK(output.find("w-mass: pass") != std::string::npos);
    CHECK(fs::exists(dir / "manifest.json"));
  }
}

TEST_CASE("resonance subcommand emits the classification table") {
  const fs::path dir = fresh_dir("nlsh_cli_reso");
  CHECK(run("resonance --out " + dir.string() + " --set n=0 --set N=8 --set band=4") == 0);
  const std::string csv = slurp(dir / "resonance.csv");
  CHECK(csv.find("n,n1,n2,n3,phi,class") == 0);
  CHECK(csv.find("N11") != std::string::npos);
  CHECK(csv.find("N12") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  SUBCASE("a healthy suite passes") {
    std::string output;
    CHECK(run("verify --suite spectral", &output) == 0);
    CHECK(output.find("FAIL") == std::string::npos);
    CHECK(output.find("parseval") != std::string::npos);
  }

  SUBCASE("--out exports the partition profile for inspection") {
    const fs::path dir = fresh_dir("nlsh_cli_verify_out");
    CHECK(run("verify --suite spectral --out " + dir.string()) == 0);
    const std::string csv = slurp(dir / "partition.csv");
    CHECK(csv.find("xi,sigma0") == 0);
    CHECK(csv.find("0,1") != std::string::npos);  // sigma0(0) = 1
  }

  SUBCASE("the corrupted-partition fixture fails and names the invariant") {
    std::string output;
    CHECK(run("verify --suite boxes --set corrupt_partition=1", &output) != 0);
    CHECK(output.find("partition-sum") != std::string::npos);
    CHECK(output.find("FAIL") != std::string::npos);
  }

  SUBCASE("unknown suites exit with the usage code") {
    CHECK(run("verify --suite nonsense") == 64);
  }
}
