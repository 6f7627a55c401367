// Drives the built jmatrix binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef JMATRIX_BIN
#error "JMATRIX_BIN must name the CLI binary"
#endif

namespace {

int run(const std::string& args) {
  std::string const cmd = std::string(JMATRIX_BIN) + " " + args + " >/dev/null 2>&1";
  int const status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return std::string(JMATRIX_TMP) + "/" + name; }

}

TEST_CASE("scan writes a free-scattering table deterministically") {
  std::string const args = "scan --mu 0 --v0 0 --steps 2 --emin 1 --emax 2 --mode full --out ";
  REQUIRE(run(args + tmp("free_a.csv")) == 0);
  REQUIRE(run(args + tmp("free_b.csv")) == 0);
  auto const a = slurp(tmp("free_a.csv"));
  CHECK(a == slurp(tmp("free_b.csv")));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  CHECK(line == "energy,re_s,im_s,abs_one_minus_s,tau,delta,mode");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    for (int i = 0; i < 4; ++i) std::getline(ss, cell, ',');
    CHECK(std::stod(cell) < 1e-10);
  }
  CHECK(rows == 2);
}

TEST_CASE("fig1a preset emits both curves") {
  REQUIRE(run("scan --preset fig1a --steps 20 --out " + tmp("fig1a.csv")) == 0);
  auto const text = slurp(tmp("fig1a.csv"));
  CHECK(text.find(",full") != std::string::npos);
  CHECK(text.find(",truncated") != std::string::npos);
}

TEST_CASE("phase and json output") {
  REQUIRE(run("phase --preset fig2 --steps 5 --format json --out " + tmp("fig2.json")) == 0);
  auto const text = slurp(tmp("fig2.json"));
  CHECK(text.find("\"tau_analytic\"") != std::string::npos);
  CHECK(text.find("\"config\"") != std::string::npos);
}

TEST_CASE("fig3 analog phase matches the golden file") {
  REQUIRE(run("phase --preset fig3analog --out " + tmp("fig3.csv")) == 0);
  CHECK(slurp(tmp("fig3.csv")) == slurp(JMAT_GOLDEN_DIR "/fig3_analog_tau.csv"));
}

TEST_CASE("resonance exit codes") {
  CHECK(run("resonance --preset undeformed") == 0);
  CHECK(run("resonance --mu 0 --v0 0 --window 3 4") == 4);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("scan --steps 1") == 2);
  CHECK(run("scan --charge 1") == 2);
  CHECK(run("scan --mode sideways") == 2);
  CHECK(run("scan --preset nope") == 2);
  CHECK(run("scan --bogus-flag") == 2);
  CHECK(run("scan --mu 1 --mu-zero 2") == 2);
  {
    std::ofstream bad(tmp("bad.json"));
    bad << R"({"grid": {"stepz": 4}})";
  }
  CHECK(run("scan --config " + tmp("bad.json")) == 2);
}

TEST_CASE("flags override the configuration file") {
  {
    std::ofstream cfg(tmp("cfg.json"));
    cfg << R"({"presets": {"tiny": {"grid": {"steps": 3}}}, "preset": "tiny", "mode": "full"})";
  }
  REQUIRE(run("scan --config " + tmp("cfg.json") + " --steps 4 --out " + tmp("cfg.csv")) == 0);
  auto const text = slurp(tmp("cfg.csv"));
  int lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 5);
}

TEST_CASE("three-parameter flags select the block and bridge deformations") {
  REQUIRE(run("phase --mu-plus 1 --mu-minus 0.5 --mu-zero -0.7 --steps 3 --out " + tmp("block.csv")) == 0);
  CHECK(slurp(tmp("block.csv")).find("\n0.5,,") == std::string::npos);
  REQUIRE(run("phase --mu-plus 1 --mu-minus 0.5 --mu-zero -0.7 --bridge-m 7 --steps 3 --out " + tmp("bridge.csv")) == 0);
  CHECK(slurp(tmp("bridge.csv")).find("\n0.5,,") != std::string::npos);
}

TEST_CASE("selfcheck passes") { CHECK(run("selfcheck") == 0); }

TEST_CASE("shipped configuration document loads every preset") {
  for (const char* p : {"fig1a", "fig1b", "fig1c", "fig2", "fig3analog"})
    CHECK(run(std::string("phase --config ") + JMAT_CONFIG_DOC + " --preset " + p + " --steps 2 --out " + tmp("doc.csv")) == 0);
}
