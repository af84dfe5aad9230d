#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static fs::path d = [] {
    fs::path p = fs::temp_directory_path() / "birkplane_cli_test";
    fs::create_directories(p);
    return p;
  }();
  return d;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string("\"") + BIRKPLANE_BIN + "\" " + args + " > \"" +
                    out.string() + "\" 2> \"" + err.string() + "\"";
  int rc = std::system(cmd.c_str());
  RunResult r;
#ifndef _WIN32
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#else
  r.code = rc;
#endif
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

const char* kSmall = " --grid-theta 128 --grid-psi 128 ";
}  // namespace

TEST_CASE("constants emits the frozen csv schema") {
  RunResult r = run_cli(std::string("constants --norm euclid --nu 0.5") + kSmall);
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] ==
        "constant,nu,value,witness_theta,witness_psi,grid_theta,grid_psi,refine,tolerance");
  bool found_h = false;
  for (const auto& line : lines) {
    if (line.rfind("H,", 0) == 0) {
      found_h = true;
      std::istringstream ss(line);
      std::string name, nu, value;
      std::getline(ss, name, ',');
      std::getline(ss, nu, ',');
      std::getline(ss, value, ',');
      CHECK(std::stod(value) == doctest::Approx(1.4142135623730951).epsilon(1e-5));
      CHECK(std::stod(nu) == 0.5);
    }
  }
  CHECK(found_h);
}

TEST_CASE("constants json output parses and carries witnesses") {
  RunResult r = run_cli(std::string("constants --norm hexagon --format json") + kSmall);
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["norm"] == "hexagon");
  REQUIRE(j["estimates"].is_array());
  REQUIRE(!j["estimates"].empty());
  bool found_h = false;
  for (const auto& e : j["estimates"]) {
    if (e["constant"] == "H") {
      found_h = true;
      CHECK(e["value"].get<double>() == doctest::Approx(1.5).epsilon(1e-3));
      CHECK(e["witness"].contains("x"));
      CHECK(e["witness"].contains("y"));
    }
  }
  CHECK(found_h);
}

TEST_CASE("cli output is byte deterministic and serial-parallel invariant") {
  std::string args = std::string("constants --norm sqrt2max --nu 0.25") + kSmall;
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  RunResult c = run_cli(args + " --serial");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("sweep walks the nu interval") {
  RunResult r = run_cli(
      std::string("sweep --norm euclid --nu-start 0 --nu-stop 1 --nu-steps 5") + kSmall);
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "nu,H,witness_theta,witness_psi");
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ss(lines[i]);
    std::string nu, h;
    std::getline(ss, nu, ',');
    std::getline(ss, h, ',');
    CHECK(std::stod(h) == doctest::Approx(1.4142135623730951).epsilon(1e-5));
  }
}

TEST_CASE("verify exits clean on a sound plane") {
  RunResult r = run_cli(std::string("verify --norm linf-l1 --nu 0.5 --format json") + kSmall);
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["passed"].get<bool>());
  CHECK(j["radon"]["is_radon"].get<bool>());
}

TEST_CASE("sphere renders an svg with the unit circle") {
  fs::path svg = scratch_dir() / "sphere.svg";
  RunResult r = run_cli(std::string("sphere --norm sqrt2max --out ") + svg.string() + kSmall);
  REQUIRE(r.code == 0);
  std::string body = slurp(svg);
  CHECK(body.find("<svg") != std::string::npos);
  CHECK(body.find("polyline") != std::string::npos);
  CHECK(body.find("H(nu=") != std::string::npos);

  fs::path svg2 = scratch_dir() / "sphere2.svg";
  RunResult r2 = run_cli(std::string("sphere --norm sqrt2max --out ") + svg2.string() + kSmall);
  REQUIRE(r2.code == 0);
  CHECK(slurp(svg2) == body);
}

TEST_CASE("random polygon norms are seeded") {
  std::string base = std::string("constants --norm random-polygon --nu 0.5") + kSmall;
  RunResult a = run_cli(base + " --seed 7");
  RunResult b = run_cli(base + " --seed 7");
  RunResult c = run_cli(base + " --seed 8");
  REQUIRE(a.code == 0);
  REQUIRE(c.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("bad inputs map to exit 2") {
  CHECK(run_cli("constants --norm kind=banana").code == 2);
  CHECK(run_cli("constants --norm euclid --nu 1.5").code == 2);
  CHECK(run_cli(std::string("constants --norm euclid --format yaml") + kSmall).code == 2);
  CHECK(run_cli("constants --norm \"kind=polygon vertices=[(1,0),(0,1)]\"").code == 2);
  CHECK(run_cli("sweep --norm euclid --nu-start 0.8 --nu-stop 0.2").code == 2);
}

TEST_CASE("unwritable output maps to exit 4") {
  RunResult r = run_cli(
      std::string("constants --norm euclid --out /nonexistent-dir/x.csv") + kSmall);
  CHECK(r.code == 4);
}
