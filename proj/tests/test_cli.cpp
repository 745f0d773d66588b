#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "tripletgen/cli.hpp"

using namespace tripletgen;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tripletgen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(TRIPLETGEN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("tripletgen_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("report writes tables and figures") {
  const fs::path out = scratch("report");
  const Run r = run({"--tf", "0.11", "--out", out.string(), "report"});
  CHECK(r.code == 0);
  for (const char* name : {"set_A.csv", "set_B.csv", "fig3_set_A_normalized.svg", "fig4_set_B_normalized.svg",
                           "fig5_absolute.svg"})
    CHECK(fs::exists(out / name));
  CHECK(r.out.find("scale factor") != std::string::npos);

  SUBCASE("a written table feeds back in as a dataset") {
    const Run again = run({"--tf", "0.11", "--out", (out / "again").string(), "report", "--data",
                           (out / "set_A.csv").string()});
    CHECK(again.code == 1);   // set B is absent from that file
    CHECK(again.err.find("set B") != std::string::npos);
  }
  fs::remove_all(out);
}

TEST_CASE("model prints the flux at given energies") {
  const Run r = run({"model", "--xi-p", "19.3", "--xi-sti", "11.2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("beta_L 0.54") != std::string::npos);
  CHECK(r.out.find("triplets_per_pulse") != std::string::npos);
}

TEST_CASE("config subcommand prints the shipped defaults") {
  const Run r = run({"--config", std::string(TRIPLETGEN_SOURCE_DIR) + "/config/paper_default.json", "config"});
  CHECK(r.code == 0);
  CHECK(r.out == run({"config"}).out);
}

TEST_CASE("exit codes") {
  CHECK(run({"--config", "missing.cfg", "model"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--tf", "2", "model"}).code == 1);
  CHECK(run({"simulate", "--n-mean", "-1"}).code == 2);
  CHECK(run({"report", "--data", "/nonexistent/data.csv"}).code == 3);
  CHECK(run({"check"}).code == 0);

  CHECK(run_binary("--config missing.cfg model") == 1);
  CHECK(run_binary("check") == 0);
}

TEST_CASE("simulate is reproducible for a fixed seed") {
  const std::vector<std::string> args{"--seed", "7", "--pulses", "200000", "simulate", "--n-mean", "0.8"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("seed 7") != std::string::npos);

  auto one_thread = args;
  one_thread.insert(one_thread.end(), {"--threads", "1"});
  CHECK(run(one_thread).out == a.out);

  auto other = args;
  other[1] = "8";
  CHECK(run(other).out != a.out);
}

TEST_CASE("fit-tf reports an estimate inside the search range") {
  const Run r = run({"fit-tf"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("T_F ", 0) == 0);
  const double tf = std::stod(r.out.substr(4));
  CHECK(tf >= 0.02);
  CHECK(tf <= 0.20);
}
