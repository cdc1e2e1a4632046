#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "bubblestab/cli.hpp"
#include "bubblestab/geometry.hpp"
#include "bubblestab/spectral.hpp"

namespace {

struct CliRun {
  int code = 0;
  std::string out;
};

// Runs the front end in process, capturing stdout; stderr is swallowed so
// expected usage errors do not pollute the test log.
CliRun run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"bubblestab"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream captured_out, captured_err;
  std::streambuf* old_out = std::cout.rdbuf(captured_out.rdbuf());
  std::streambuf* old_err = std::cerr.rdbuf(captured_err.rdbuf());
  CliRun r;
  try {
    r.code = bubblestab::run_cli(static_cast<int>(argv.size()), argv.data());
  } catch (...) {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    throw;
  }
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  r.out = captured_out.str();
  return r;
}

std::string fmt17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

using nlohmann::ordered_json;

TEST_CASE("geometry subcommand solves the half radius bubble") {
  const CliRun r = run({"geometry", "--r1", "0.5", "--format", "json"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(std::abs(j["r0"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(j["theta0"].get<double>() - M_PI / 6.0) <= 1e-12);
  CHECK(std::abs(j["theta1"].get<double>() - M_PI / 2.0) <= 1e-12);
  CHECK(std::abs(j["theta2"].get<double>() - 5.0 * M_PI / 6.0) <= 1e-12);
  const double m1 = 7.0 * M_PI / 24.0 - std::sqrt(3.0) / 4.0;
  const double m2 = 2.0 * M_PI / 3.0 + std::sqrt(3.0) / 2.0;
  CHECK(std::abs(j["m1"].get<double>() - m1) <= 1e-12);
  CHECK(std::abs(j["m2"].get<double>() - m2) <= 1e-12);
  CHECK(j["status"].get<std::string>() == "pass");
}

TEST_CASE("equal mass geometry omits the straight interface radius") {
  const CliRun r = run({"geometry", "--equal", "1.0"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j["equal_mass"].get<bool>());
  CHECK_FALSE(j.contains("r0"));
  const double m = 2.0 * M_PI / 3.0 + std::sqrt(3.0) / 4.0;
  CHECK(std::abs(j["m1"].get<double>() - m) <= 1e-12);
  CHECK(std::abs(j["m2"].get<double>() - m) <= 1e-12);
  CHECK(std::abs(j["perimeter"].get<double>() -
                 (8.0 * M_PI / 3.0 + std::sqrt(3.0))) <= 1e-12);
  CHECK(j["status"].get<std::string>() == "pass");
}

TEST_CASE("geometry from masses agrees with the radius parameterization") {
  const bubblestab::StandardBubble b = bubblestab::from_r1(0.5);
  const CliRun r = run({"geometry", "--m1", fmt17(b.m1).c_str(), "--m2",
                        fmt17(b.m2).c_str()});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(std::abs(j["r1"].get<double>() - 0.5) <= 1e-9);
  CHECK(j["status"].get<std::string>() == "pass");
}

TEST_CASE("geometry csv carries one header row and one data row") {
  const CliRun r = run({"geometry", "--r1", "0.5", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("r0,r1,r2,theta0,theta1,theta2,m1,m2,perimeter,status",
                    0) == 0);
  CHECK(r.out.find(",pass\n") != std::string::npos);
  int lines = 0;
  for (char c : r.out) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 2);
}

TEST_CASE("json output round trips byte identically") {
  for (const auto& args : {std::initializer_list<const char*>{
                               "geometry", "--r1", "0.37"},
                           {"poincare", "--theta", "1.2", "--modes", "32"},
                           {"interp", "--samples", "100"}}) {
    const CliRun r = run(args);
    REQUIRE(r.code == 0);
    const std::string rt = ordered_json::parse(r.out).dump(2) + "\n";
    CHECK(rt == r.out);
  }
}

TEST_CASE("poincare subcommand matches the closed form") {
  const CliRun r = run({"poincare", "--theta", "0.7853981633974483", "--s",
                        "1", "--modes", "64"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(std::abs(j["galerkin"].get<double>() - 2.329870) <= 1e-4);
  const double g = bubblestab::g_value(M_PI / 4.0);
  CHECK(std::abs(j["closed_form"].get<double>() - g) <= 1e-12);
  CHECK(j["galerkin"].get<double>() + 1e-9 >= j["closed_form"].get<double>());
  CHECK(j["status"].get<std::string>() == "pass");
}

TEST_CASE("coercivity writes the scan file and a positive summary") {
  const auto path = std::filesystem::temp_directory_path() / "bst_scan.csv";
  std::filesystem::remove(path);
  const CliRun r =
      run({"coercivity", "--grid", "1000", "--out", path.string().c_str()});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j["beta_star"].get<double>() > 0.0);
  CHECK(j["status"].get<std::string>() == "pass");
  // extension inference: the file holds the csv table, not the summary
  const std::string data = slurp(path);
  CHECK(data.rfind("r,b1,b2,b3,det,det_over_r,eigen_min", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("coercivity emits an svg plot on request") {
  const auto path = std::filesystem::temp_directory_path() / "bst_scan.svg";
  std::filesystem::remove(path);
  const CliRun r = run({"coercivity", "--grid", "200", "--format", "svg",
                        "--out", path.string().c_str()});
  REQUIRE(r.code == 0);
  const std::string data = slurp(path);
  CHECK(data.find("<svg") != std::string::npos);
  CHECK(data.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("out flag mirrors the stdout payload into the file") {
  const auto path = std::filesystem::temp_directory_path() / "bst_geo.json";
  std::filesystem::remove(path);
  const CliRun direct = run({"geometry", "--r1", "0.41"});
  const CliRun filed =
      run({"geometry", "--r1", "0.41", "--out", path.string().c_str()});
  REQUIRE(direct.code == 0);
  REQUIRE(filed.code == 0);
  CHECK(slurp(path) == direct.out);
  std::filesystem::remove(path);
}

TEST_CASE("perturb reports a nonnegative deficit for a feasible draw") {
  const CliRun r = run({"perturb", "--r1", "0.5", "--grid", "512", "--seed",
                        "11"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j["delta"].get<double>() >= 0.0);
  CHECK(j["alpha"].get<double>() >= 0.0);
  CHECK(std::abs(j["sigma"].get<double>()) <= 0.05);
  const bubblestab::StandardBubble b = bubblestab::from_r1(0.5);
  CHECK(std::abs(j["volume1"].get<double>() - b.m1) <= 1e-8 * b.m1);
  CHECK(std::abs(j["volume2"].get<double>() - b.m2) <= 1e-8 * b.m2);
  CHECK(j["status"].get<std::string>() == "pass");
}

TEST_CASE("sweep subcommand is deterministic and certifies positivity") {
  const CliRun a = run({"sweep", "--equal", "1.0", "--samples", "100",
                        "--grid", "512", "--seed", "5", "--format", "csv"});
  const CliRun b = run({"sweep", "--equal", "1.0", "--samples", "100",
                        "--grid", "512", "--seed", "5", "--format", "csv"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const CliRun j = run({"sweep", "--equal", "1.0", "--samples", "100",
                        "--grid", "512", "--seed", "5"});
  REQUIRE(j.code == 0);
  const ordered_json rep = ordered_json::parse(j.out);
  CHECK(rep["aggregates"]["kappa_hat"].get<double>() > 0.0);
  CHECK(rep["aggregates"]["violations"].get<int>() == 0);
  CHECK(rep["aggregates"]["counted"].get<int>() > 0);
}

TEST_CASE("audit subcommand partitions chambers across the mean dichotomy") {
  const CliRun r = run({"audit", "--r1", "0.5", "--samples", "5"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j["failures"].get<int>() == 0);
  CHECK(j["big_mean_1"].get<int>() + j["mean_suppressed_1"].get<int>() == 5);
  CHECK(j["big_mean_2"].get<int>() + j["mean_suppressed_2"].get<int>() == 5);

  const CliRun csv =
      run({"audit", "--r1", "0.5", "--samples", "5", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("index,big_mean_1", 0) == 0);
}

TEST_CASE("interp subcommand validates anchors and random splines") {
  const CliRun r = run({"interp", "--samples", "120"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j["violations"].get<int>() == 0);
  REQUIRE(j["anchors"].size() == 2);
  CHECK(j["anchors"][0]["lhs"].get<double>() <=
        j["anchors"][0]["rhs"].get<double>());
  CHECK(j["status"].get<std::string>() == "pass");
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run({"geometry"}).code == 2);                       // no specifier
  CHECK(run({"geometry", "--r1", "0.5", "--equal", "1.0"}).code == 2);
  CHECK(run({"geometry", "--m1", "0.5"}).code == 2);        // lone mass
  CHECK(run({"geometry", "--r1", "1.5"}).code == 2);        // out of range
  CHECK(run({"geometry", "--r1", "0.5", "--format", "xml"}).code == 2);
  CHECK(run({"geometry", "--r1", "0.5", "--format", "svg"}).code == 2);
  CHECK(run({"poincare", "--theta", "4.0"}).code == 2);     // theta >= pi
  CHECK(run({"poincare"}).code == 2);                       // missing theta
  CHECK(run({"coercivity", "--grid", "50"}).code == 2);
  CHECK(run({"perturb", "--r1", "0.5", "--grid", "100"}).code == 2);
  CHECK(run({"sweep", "--equal", "1.0", "--samples", "50"}).code == 2);
  CHECK(run({"interp", "--samples", "50"}).code == 2);
  CHECK(run({"bogus"}).code == 2);                          // no such command
  CHECK(run({}).code == 2);                                 // no subcommand
}

TEST_CASE("help exits cleanly") {
  const CliRun r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("geometry") != std::string::npos);
}

TEST_CASE("threads flag caps the worker pool through the environment") {
  const CliRun r = run({"--threads", "2", "geometry", "--r1", "0.5"});
  CHECK(r.code == 0);
  const char* v = std::getenv("BUBBLESTAB_THREADS");
  REQUIRE(v != nullptr);
  CHECK(std::string(v) == "2");
  unsetenv("BUBBLESTAB_THREADS");
}
