// Drives the installed cstar binary end to end. The binary path and the
// source directory come in through environment variables set by CTest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cstar/image_io.hpp"
#include "json.hpp"

namespace {

std::string bin_path() {
  const char* p = std::getenv("CSTAR_BIN");
  REQUIRE(p != nullptr);
  return p;
}

std::string source_dir() {
  const char* p = std::getenv("CSTAR_SOURCE_DIR");
  REQUIRE(p != nullptr);
  return p;
}

int run_cmd(const std::string& args) {
  const std::string cmd = bin_path() + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("render regression against the golden file") {
  const std::string out = "/tmp/cstar_cli_golden.ppm";
  const int rc = run_cmd(
      "render --lambda 32 --window -6,6,-6,6 --px 64 --layer h-entry "
      "--budget 48 --out " + out);
  REQUIRE(rc == 0);
  const auto got = cstar::read_file(out);
  const auto want = cstar::read_file(source_dir() + "/tests/golden/render_h64.ppm");
  REQUIRE(got.size() == want.size());
  CHECK(got == want);
}

TEST_CASE("renders are byte-identical across thread counts") {
  const int rc1 = run_cmd(
      "render --lambda 32 --window -3,3,-3,3 --px 80 --layer h-entry "
      "--budget 40 --threads 1 --out /tmp/cstar_cli_t1.ppm");
  const int rc2 = run_cmd(
      "render --lambda 32 --window -3,3,-3,3 --px 80 --layer h-entry "
      "--budget 40 --threads 7 --out /tmp/cstar_cli_t7.ppm");
  REQUIRE(rc1 == 0);
  REQUIRE(rc2 == 0);
  CHECK(cstar::read_file("/tmp/cstar_cli_t1.ppm") ==
        cstar::read_file("/tmp/cstar_cli_t7.ppm"));
}

TEST_CASE("verify growth exits 0 and writes a passing report") {
  const std::string out = "/tmp/cstar_cli_growth.json";
  const int rc = run_cmd("verify growth --lambda 2 --samples 200000 --json " + out);
  CHECK(rc == 0);
  const auto bytes = cstar::read_file(out);
  const nlohmann::json j = nlohmann::json::parse(bytes.begin(), bytes.end());
  REQUIRE(j.is_array());
  CHECK(j[0]["pass"].get<bool>());
  CHECK(j[0]["worst_margin"].get<double>() >= 0.0);
}

TEST_CASE("impossible verification exits 1") {
  // L so large that the pointwise channel bounds cannot hold at R = 2.
  const int rc = run_cmd(
      "verify channels --lambda 32 --L 1e9 --K 4 --R 2 --samples 2000");
  CHECK(rc == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cmd("frobnicate") == 2);
  CHECK(run_cmd("render --window nonsense --out /tmp/x.ppm") == 2);
  CHECK(run_cmd("trace --kind barrier") == 2);  // missing required window
}

TEST_CASE("webcheck fixture passes with a witness of at least 4 rings") {
  const std::string out = "/tmp/cstar_cli_witness.json";
  const int rc = run_cmd(
      "topo webcheck --fixture circles-with-spoke --n 5 --px 256 --witness " + out);
  CHECK(rc == 0);
  const auto bytes = cstar::read_file(out);
  const nlohmann::json j = nlohmann::json::parse(bytes.begin(), bytes.end());
  CHECK(j["is_web"].get<bool>());
  CHECK(j["witness"].size() >= 4);
  // The misspelled alias from the interface sketch also resolves.
  CHECK(run_cmd("topo websheck --fixture circles-with-spoke --n 5 --px 128 "
                "--witness /tmp/cstar_cli_w2.json") == 0);
}

TEST_CASE("trace writes the documented csv header") {
  const std::string out = "/tmp/cstar_cli_trace.csv";
  const int rc = run_cmd(
      "trace --kind barrier --window -8,-1.5,0.2,8 --res 256 --out " + out);
  REQUIRE(rc == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "kind,branch,x,y,residual");
}

TEST_CASE("config file fills defaults and flags override it") {
  const std::string cfg = "/tmp/cstar_cli_cfg.json";
  cstar::atomic_write_file(cfg, std::string("{\"lambda\": 2.0, \"px\": 32}\n"));
  // Config lambda=2: growth margin still passes; uses config px.
  const int rc = run_cmd("--config " + cfg +
                         " render --layer h-entry --window -2,4,-3,3 "
                         "--budget 32 --out /tmp/cstar_cli_cfg.ppm");
  REQUIRE(rc == 0);
  const auto bytes = cstar::read_file("/tmp/cstar_cli_cfg.ppm");
  const std::string head(bytes.begin(), bytes.begin() + 9);
  CHECK(head == "P6\n32 32\n");  // px came from the config
}

TEST_CASE("a manifest entry regenerates its artifact byte for byte") {
  const std::string dir = "/tmp/cstar_cli_man";
  REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
  const std::string out = dir + "/r.ppm";
  REQUIRE(run_cmd("render --lambda 32 --window -2,2,-2,2 --px 48 "
                  "--layer h-entry --budget 32 --out " + out) == 0);
  const auto first = cstar::read_file(out);
  const auto mbytes = cstar::read_file(dir + "/manifest.json");
  const nlohmann::json m = nlohmann::json::parse(mbytes.begin(), mbytes.end());
  const nlohmann::json e = m["artifacts"][0];
  REQUIRE(e["command"] == "render");
  const nlohmann::json p = e["params"];
  std::ostringstream cmd;
  cmd << "render --lambda " << p["lambda"].get<double>() << " --window "
      << p["x0"].get<double>() << "," << p["x1"].get<double>() << ","
      << p["y0"].get<double>() << "," << p["y1"].get<double>() << " --px "
      << p["width"].get<int>() << " --height " << p["height"].get<int>()
      << " --layer " << p["layer"].get<std::string>() << " --budget "
      << p["budget"].get<int>() << " --out " << dir << "/r2.ppm";
  REQUIRE(run_cmd(cmd.str()) == 0);
  CHECK(cstar::read_file(dir + "/r2.ppm") == first);
}

TEST_CASE("lift and separate round through PBM files") {
  const std::string dir = "/tmp/cstar_cli_pbm";
  REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
  REQUIRE(run_cmd("render --lambda 32 --logpolar -2,2 --px 128 "
                  "--layer i-complement --horizon 10 --out " + dir + "/i.pbm") == 0);
  CHECK(run_cmd("topo lift --in " + dir + "/i.pbm --copies 2 --out " +
                dir + "/lift.pbm") == 0);
  CHECK(run_cmd("topo separate --in " + dir + "/i.pbm --invert "
                "--point -0.4546,0") == 0);
}
