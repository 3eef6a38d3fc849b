#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "conflict/cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = conflict::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("aoc prints the six-decimal analytic value") {
  CliResult r = run_cli({"aoc", "--model", "aug", "--A", "1", "--B", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.386294\n");

  CliResult alt = run_cli({"aoc", "--model", "altruism", "--A", "1", "--B", "1"});
  CHECK(alt.out == "0.500000\n");
}

TEST_CASE("aoc with the grid oracle prints a second line") {
  CliResult r = run_cli(
      {"aoc", "--model", "altruism", "--A", "1", "--B", "1", "--oracle", "200"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 9) == "0.500000\n");
  CHECK(r.out.find("oracle: 0.5") != std::string::npos);
}

TEST_CASE("flag validation failures exit with 2 and name the flag") {
  CliResult zero_a = run_cli({"aoc", "--model", "aug", "--A", "0", "--B", "1"});
  CHECK(zero_a.code == 2);
  CHECK(zero_a.err.find("--A") != std::string::npos);

  CliResult bad_model = run_cli({"aoc", "--model", "nope", "--A", "1", "--B", "1"});
  CHECK(bad_model.code == 2);
  CHECK(bad_model.err.find("--model") != std::string::npos);

  CliResult unknown = run_cli({"aoc", "--model", "aug", "--A", "1", "--B", "1",
                               "--bogus", "3"});
  CHECK(unknown.code == 2);

  CliResult bad_alpha = run_cli({"game-conflict", "--file",
                                 data_path("lanechange.game"), "--model",
                                 "altruism", "--alpha1", "1.5"});
  CHECK(bad_alpha.code == 2);
  CHECK(bad_alpha.err.find("alpha") != std::string::npos);
}

TEST_CASE("missing input file is a runtime error") {
  CliResult r = run_cli({"game-conflict", "--file", "no_such.game"});
  CHECK(r.code == 1);
  CHECK(r.err.find("no_such.game") != std::string::npos);
}

TEST_CASE("help requests succeed") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"aoc", "--help"}).code == 0);
}

TEST_CASE("game-conflict matches the published equilibria") {
  CliResult r = run_cli({"game-conflict", "--file", data_path("lanechange.game"),
                         "--model", "baseline"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "conflict: true\n"
        "row-led: (LCA,GW)\n"
        "col-led: (LCB,C)\n");

  CliResult inter = run_cli({"game-conflict", "--file",
                             data_path("intersection.game")});
  CHECK(inter.out ==
        "conflict: true\n"
        "row-led: (C,GW)\n"
        "col-led: (GW,C)\n");

  // A fully altruistic row player removes the lane-change conflict.
  CliResult resolved = run_cli({"game-conflict", "--file",
                                data_path("lanechange.game"), "--model",
                                "altruism", "--alpha1", "1", "--alpha2", "0"});
  CHECK(resolved.out.substr(0, 15) == "conflict: false");
}

TEST_CASE("game-solve reports leader values") {
  CliResult r = run_cli({"game-solve", "--file", data_path("lanechange.game"),
                         "--leader", "row"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "leader: row\n"
        "equilibrium: (LCA,GW)\n"
        "leader-value: 1.000000\n"
        "follower-value: 0.000000\n");
}

TEST_CASE("curve command writes the CSV") {
  std::string path = "cli_curve_test.csv";
  CliResult r = run_cli({"curve", "--model", "altruism", "--B", "1", "--a-min",
                         "1", "--a-max", "1", "--samples", "1", "--out", path});
  CHECK(r.code == 0);
  CHECK(slurp(path) == "A,aoc\n1.000000,0.500000\n");
  std::remove(path.c_str());
}

TEST_CASE("region command writes PGM and CSV side by side") {
  std::string pgm = "cli_region_test.pgm";
  std::string csv = "cli_region_test.csv";
  CliResult r = run_cli({"region", "--model", "baseline", "--A", "1", "--B", "1",
                         "--res", "2", "--out", pgm});
  CHECK(r.code == 0);
  std::string contents = slurp(pgm);
  CHECK(contents.substr(0, 3) == "P2\n");
  CHECK(contents.find("255") != std::string::npos);
  CHECK(slurp(csv).substr(0, 22) == "alpha1,alpha2,conflict");
  std::remove(pgm.c_str());
  std::remove(csv.c_str());
}
