#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "stokesbi/driver.hpp"
#include "test_util.hpp"

using namespace stokesbi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

const char* kQuietCircle = R"(
grid.n = 32
shape.kind = circle
shape.radius = 1.0
flow.q = 0.0
flow.lambda = 1.0
membrane.tension = constant
membrane.s = 1.0
integrator.scheme = rk4
integrator.t_end = 0.05
output.snapshot_interval = 0.025
)";

int run_cli(const std::string& args, const std::string& log) {
  std::string cmd = std::string(CAPSULE2D_BIN) + " " + args + " > " + log + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("config parser round-trips a full file") {
  std::string text = R"(
# comment line
grid.n = 128
shape.kind = ellipse
shape.a = 2.0
shape.b = 1.0          # trailing comment
flow.q = 1.0
flow.b = -0.5
flow.g = -1.0
flow.lambda = 0.01
membrane.kappa_b = 0.05
membrane.tension = hookean
membrane.s0 = 1.0
membrane.s0_cos = 2:0.1,4:0.05
filter.mu = 0.5
filter.forcing = false
solver.tol = 1e-12
solver.deflation = true
integrator.scheme = imex
integrator.dt = 0.001
integrator.t_end = 2.5
output.dir = runs/test
output.snapshot_interval = 0.5
)";
  RunConfig cfg = parse_config_text(text);
  CHECK(cfg.n == 128);
  CHECK(cfg.shape.kind == ShapeSpec::Kind::ellipse);
  CHECK(cfg.shape.a == 2.0);
  CHECK(cfg.flow.lambda == 0.01);
  CHECK(cfg.flow.beta() == doctest::Approx(0.99 / 1.01));
  CHECK(cfg.kappa_b == 0.05);
  CHECK(cfg.s0_cos.size() == 2);
  CHECK(cfg.s0_cos[1].k == 4);
  CHECK(cfg.mu == 0.5);
  CHECK(!cfg.filters.forcing);
  CHECK(cfg.filters.density_kernels);
  CHECK(cfg.solver.tol == 1e-12);
  CHECK(cfg.solver.deflation);
  CHECK(cfg.integrator.scheme == IntegratorConfig::Scheme::imex_bending);
  CHECK(cfg.integrator.dt == 0.001);
  CHECK(cfg.output_dir == "runs/test");
  CHECK(cfg.snapshot_interval == 0.5);
}

TEST_CASE("config errors carry line context and reject bad input") {
  CHECK_THROWS_AS(parse_config_text("grid.n = -32\n"), Error);
  CHECK_THROWS_AS(parse_config_text("grid.n = 33\n"), Error);
  CHECK_THROWS_AS(parse_config_text("nonsense.key = 1\n"), Error);
  CHECK_THROWS_AS(parse_config_text("grid.n 32\n"), Error);
  CHECK_THROWS_AS(parse_config_text("flow.q = abc\n"), Error);
  CHECK_THROWS_AS(parse_config_text("filter.mu = 1.5\n"), Error);
  CHECK_THROWS_AS(parse_config_text("integrator.t_end = -1\n"), Error);
  try {
    parse_config_text("grid.n = 64\nflow.q = oops\n");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("non-analyzed filter placement is flagged") {
  RunConfig cfg = parse_config_text("filter.hilbert_leading = true\n");
  auto warnings = config_warnings(cfg);
  REQUIRE(!warnings.empty());
  CHECK(warnings.front().find("non-analyzed") != std::string::npos);
  CHECK(config_warnings(parse_config_text("grid.n = 32\n")).empty());
}

TEST_CASE("simulate writes snapshots, diagnostics and manifest") {
  TempDir dir("stokesbi_sim_test");
  RunConfig cfg = parse_config_text(kQuietCircle);
  cfg.output_dir = dir.str() + "/run";
  SimulateResult res = simulate(cfg);
  CHECK(!res.trajectory.failed);
  CHECK(fs::exists(res.output_dir + "/interface_0000.csv"));
  CHECK(fs::exists(res.output_dir + "/diagnostics.csv"));
  CHECK(fs::exists(res.output_dir + "/manifest.json"));
  // quiet circle: three snapshots (0, 0.025, 0.05)
  CHECK(res.trajectory.snapshots.size() == 3);
  for (const auto& snap : res.trajectory.snapshots)
    CHECK(std::abs(snap.diag.area - kPi) / kPi < 1e-10);

  std::string manifest = slurp(res.output_dir + "/manifest.json");
  CHECK(manifest.find("\"status\": \"ok\"") != std::string::npos);
  CHECK(manifest.find("\"tool\"") != std::string::npos);

  std::string csv = slurp(res.output_dir + "/interface_0000.csv");
  CHECK(csv.find("t,j,x,y,theta,tension,alpha0") == 0);
}

TEST_CASE("snapshot numbers round-trip through their 17-digit format") {
  CHECK(fmt17(kPi) == "3.1415926535897931");
  double vals[] = {1.0 / 3.0, 1e-17, -2.5e300, 0.1};
  for (double v : vals) CHECK(std::stod(fmt17(v)) == v);
}

TEST_CASE("reruns are byte-identical") {
  TempDir dir("stokesbi_repro_test");
  RunConfig cfg = parse_config_text(kQuietCircle);
  cfg.output_dir = dir.str() + "/run";
  simulate(cfg);
  std::string first_iface = slurp(cfg.output_dir + "/interface_0002.csv");
  std::string first_diag = slurp(cfg.output_dir + "/diagnostics.csv");
  std::string first_manifest = slurp(cfg.output_dir + "/manifest.json");
  simulate(cfg);
  CHECK(slurp(cfg.output_dir + "/interface_0002.csv") == first_iface);
  CHECK(slurp(cfg.output_dir + "/diagnostics.csv") == first_diag);
  CHECK(slurp(cfg.output_dir + "/manifest.json") == first_manifest);
}

TEST_CASE("converge validates the resolution chain") {
  RunConfig cfg = parse_config_text(kQuietCircle);
  CHECK_THROWS_AS(converge(cfg, {32, 48}), Error);
  CHECK_THROWS_AS(converge(cfg, {64}), Error);
}

TEST_CASE("converge reports rounding-level differences on an equilibrium") {
  TempDir dir("stokesbi_conv_test");
  RunConfig cfg = parse_config_text(kQuietCircle);
  cfg.output_dir = dir.str() + "/conv";
  cfg.integrator.t_end = 0.02;
  ConvergenceReport rep = converge(cfg, {16, 32, 64});
  CHECK(!rep.failed);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    CHECK(row.dtheta < 1e-11);
    CHECK(row.dsigma < 1e-11);
    CHECK(row.dalpha0 < 1e-11);
    CHECK(row.dtau < 1e-11);
  }
  CHECK(fs::exists(rep.csv_path));
}

TEST_CASE("diagnose pairs filtered and unfiltered runs") {
  TempDir dir("stokesbi_diag_test");
  RunConfig cfg = parse_config_text(kQuietCircle);
  cfg.output_dir = dir.str() + "/diag";
  cfg.filters.hilbert_leading = true;  // must be surfaced as a flag
  DiagnoseReport rep = diagnose(cfg);
  CHECK(rep.filtered.times.size() == rep.unfiltered.times.size());
  CHECK(!rep.filtered.blew_up);
  REQUIRE(!rep.flags.empty());
  CHECK(rep.flags.front().find("non-analyzed") != std::string::npos);
  CHECK(fs::exists(rep.csv_path));
}

TEST_CASE("cli: simulate succeeds and honors the output root override") {
  TempDir dir("stokesbi_cli_test");
  std::string cfg_path = dir.str() + "/run.cfg";
  {
    std::ofstream f(cfg_path);
    f << kQuietCircle << "output.dir = cli_run\n";
  }
  setenv("CAPSULE2D_OUTPUT_ROOT", dir.str().c_str(), 1);
  int rc = run_cli("simulate " + cfg_path, dir.str() + "/cli.log");
  unsetenv("CAPSULE2D_OUTPUT_ROOT");
  CHECK(rc == 0);
  CHECK(fs::exists(dir.path / "cli_run" / "manifest.json"));
}

TEST_CASE("cli: malformed config exits 2 and leaves no partial files") {
  TempDir dir("stokesbi_cli_bad_test");
  std::string cfg_path = dir.str() + "/bad.cfg";
  {
    std::ofstream f(cfg_path);
    f << "grid.n = -8\noutput.dir = " << dir.str() << "/should_not_exist\n";
  }
  int rc = run_cli("simulate " + cfg_path, dir.str() + "/cli.log");
  CHECK(rc == 2);
  CHECK(!fs::exists(dir.path / "should_not_exist"));
}

TEST_CASE("cli: converge subcommand emits the table") {
  TempDir dir("stokesbi_cli_conv_test");
  std::string cfg_path = dir.str() + "/run.cfg";
  {
    std::ofstream f(cfg_path);
    f << kQuietCircle << "output.dir = " << dir.str() << "/conv\n"
      << "integrator.t_end = 0.02\n";
  }
  int rc = run_cli("converge " + cfg_path + " --resolutions 16,32", dir.str() + "/cli.log");
  CHECK(rc == 0);
  CHECK(fs::exists(dir.path / "conv" / "convergence.csv"));
}

TEST_CASE("cli: diagnose subcommand reports both series") {
  TempDir dir("stokesbi_cli_diag_test");
  std::string cfg_path = dir.str() + "/run.cfg";
  {
    std::ofstream f(cfg_path);
    f << kQuietCircle << "output.dir = " << dir.str() << "/diag\n";
  }
  int rc = run_cli("diagnose " + cfg_path, dir.str() + "/cli.log");
  CHECK(rc == 0);
  std::string log = slurp(dir.str() + "/cli.log");
  CHECK(log.find("filtered") != std::string::npos);
  CHECK(log.find("unfiltered") != std::string::npos);
}

TEST_SUITE_END();
