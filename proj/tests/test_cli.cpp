#include "kwlab/cli.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunOut {
  int code;
  std::string out, err;
};

RunOut run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = kwlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name;
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("unknown subcommand and unreadable input exit 2") {
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"jones", "--pd", "no_such_file.pd"}).code == 2);
  CHECK(run_cli({"hecke", "--events", "no_such_file.json"}).code == 2);
}

TEST_CASE("jones subcommand: trefoil from a PD file, deterministic output") {
  const std::string pd = write_temp("trefoil.pd", "X(4,1,5,2) X(2,5,3,6) X(6,3,1,4)\n");
  const RunOut a = run_cli({"jones", "--pd", pd, "--oracle"});
  CHECK(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("writhe") == 3);
  CHECK(j.at("jones").at("pretty") == "q^(1/2) + q^(3/2) + q^(5/2) - q^(9/2)");
  // byte-identical reports for identical configuration
  const RunOut b = run_cli({"jones", "--pd", pd, "--oracle"});
  CHECK(a.out == b.out);
}

TEST_CASE("jones subcommand: JSON diagram input") {
  const std::string pd = write_temp(
      "tref.json", R"({"crossings":[[4,1,5,2],[2,5,3,6],[6,3,1,4]],"free_loops":0})");
  const RunOut r = run_cli({"jones", "--pd", pd});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("components") == 1);
}

TEST_CASE("hecke subcommand runs the flux bridge") {
  const std::string ev = write_temp(
      "events.json",
      R"({"events":[{"y":0.0,"p":[0,0],"n":1},{"y":1.0,"p":[0.3,0.2],"n":-1}]})");
  const RunOut r = run_cli({"hecke", "--events", ev, "--resolution", "64"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("results").size() == 3);  // below, between, above
}

TEST_CASE("weitzenbock closed meets the identity tolerance and embeds config") {
  const RunOut r = run_cli({"weitzenbock", "closed", "--seed", "7", "--t", "2", "--n",
                            "8", "--tol", "1e-10"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("config").at("seed") == 7);
  CHECK(j.at("tool") == "kw-lab");
  CHECK(j.at("version").is_string());
  CHECK(j.at("tolerances").at("tol") == 1e-10);
  for (const auto& row : j.at("results")) CHECK(row.at("pass") == true);
  // a central-difference run on the same field is NOT within 1e-10: exit 1
  const RunOut bad = run_cli({"weitzenbock", "closed", "--seed", "7", "--t", "2", "--n",
                              "8", "--tol", "1e-10", "--scheme", "central"});
  CHECK(bad.code == 1);
}

TEST_CASE("chern subcommand on a small torus") {
  const RunOut r = run_cli({"chern", "--n", "8", "--seed", "7"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j.at("chern_charge").at("value").get<double>()) <= 1e-6);
}

TEST_CASE("morse subcommand reports the torus complex") {
  const RunOut r = run_cli({"morse", "--manifold", "torus"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("complex").at("betti") == nlohmann::json({1, 2, 1}));
  CHECK(j.at("complex").at("d_squared_zero") == true);
}

TEST_CASE("verify bogomolny convergence study via files and --out") {
  const std::string ch = write_temp(
      "charges.json", R"({"sites":[{"pos":[0,0,0],"n":1},{"pos":[0,0,1],"n":-1}]})");
  const RunOut r = run_cli({"verify", "bogomolny", "--charges", ch, "--h", "0.1",
                            "--refine", "2", "--out", "cli_test_report.json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("study").at("slope").get<double>() >= 1.9);
  std::ifstream f("cli_test_report.json");
  CHECK(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.out);
}

TEST_CASE("verify nahm: analytic residual bound") {
  const RunOut r = run_cli({"verify", "nahm", "--dims", "2", "--dims", "3", "--refine", "1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& row : j.at("results"))
    CHECK(row.at("analytic_max").get<double>() <= 1e-13);
}

TEST_CASE("verify extended subcommand") {
  const RunOut r = run_cli({"verify", "extended", "--dim", "2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("pass") == true);
}

TEST_CASE("csv convergence table") {
  const std::string ch = write_temp(
      "charges2.json", R"({"sites":[{"pos":[0,0,0],"n":1},{"pos":[0,0,1],"n":-1}]})");
  const RunOut r = run_cli({"verify", "bogomolny", "--charges", ch, "--h", "0.1",
                            "--refine", "2", "--csv", "cli_test_table.csv"});
  CHECK(r.code == 0);
  std::ifstream f("cli_test_table.csv");
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);
  CHECK(line == "h,err");
  int rows = 0;
  while (std::getline(f, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
}
