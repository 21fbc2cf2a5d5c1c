#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cmtool::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("circlemap_cli_" + name);
}

}  // namespace

TEST_CASE("cli: rot and brjuno emit JSON with a header") {
  const auto r = cli({"rot", "--arnold", "0.5,0.7"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["exact"] == true);
  CHECK(j["lower"] == "1/2");
  CHECK(j["subcommand"] == "rot");
  CHECK(j["tool_version"] == cmtool::tool_version());
  CHECK(j["config_echo"].is_object());
  const auto b = json::parse(cli({"brjuno", "--alpha", "golden", "--depth", "60"}).out);
  CHECK(std::abs(b["value"].get<double>() - oracle::brjuno_constant(oracle::kGolden)) <= 1e-8);
}

TEST_CASE("cli: staircase at b = 0 is the identity") {
  const auto r = cli({"staircase", "--b", "0", "--a-range", "0.1:0.4:4"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"a", "rot_lo", "rot_hi"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i][0]);
    CHECK(std::stod(rows[i][1]) <= a + 1e-12);
    CHECK(std::stod(rows[i][2]) >= a - 1e-12);
  }
}

TEST_CASE("cli: boundary and partition write CSV plus sidecar") {
  const auto b = cli({"boundary", "--p", "0", "--q", "1", "--b", "0.5"});
  REQUIRE(b.code == 0);
  const auto rows = csv(b.out);
  CHECK(std::stod(rows[1][2]) == doctest::Approx(0.5 / (2 * oracle::kPi)).epsilon(1e-12));

  const auto out = temp_path("part.csv"), side = temp_path("part.json");
  const auto p = cli({"--out", out.string(), "--sidecar", side.string(), "partition", "--arnold",
                      "alpha=golden,0", "--level", "3"});
  REQUIRE(p.code == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto prow = csv(ss.str());
  CHECK(prow.size() == 1 + 13);
  std::ifstream js(side);
  const auto j = json::parse(js);
  CHECK(j["subcommand"] == "partition");
  std::filesystem::remove(out);
  std::filesystem::remove(side);
}

TEST_CASE("cli: map files") {
  const auto path = temp_path("map.json");
  {
    std::ofstream m(path);
    m << R"({"kind": "arnold", "a": 0.5, "b": 0.7})";
  }
  const auto j = json::parse(cli({"rot", "--map", path.string()}).out);
  CHECK(j["exact"] == true);
  {
    std::ofstream m(path);
    m << R"({"kind": "trig", "c0": 0.3})";
  }
  CHECK(json::parse(cli({"rot", "--map", path.string()}).out)["upper"] == "3/10");
  {
    std::ofstream m(path);
    m << "{not json";
  }
  const auto bad = cli({"rot", "--map", path.string()});
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.err)["error"] == "InvalidArgument");
  std::filesystem::remove(path);
}

TEST_CASE("cli: errors and exit codes") {
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({"rot"}).code == 2);
  const auto nm = cli({"rot", "--arnold", "0.2,1.5"});
  CHECK(nm.code == 1);
  CHECK(json::parse(nm.err)["error"] == "NonMonotoneMap");
  const auto v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(cmtool::tool_version()) != std::string::npos);
}

TEST_CASE("cli: triple lift and renorm") {
  const auto t = cli({"triple", "lift", "--arnold", "alpha=golden,1", "--mu1", "-0.01"});
  REQUIRE(t.code == 0);
  const auto j = json::parse(t.out);
  CHECK(j["a"].get<double>() < 0);
  CHECK(j["g_nodes"].size() == 129);
  CHECK(j["residual"].get<double>() <= 1e-10);
  const auto side = temp_path("renorm.json");
  const auto r = cli({"--sidecar", side.string(), "renorm", "--arnold", "alpha=golden,1"});
  REQUIRE(r.code == 0);
  std::ifstream js(side);
  const auto s = json::parse(js);
  CHECK(s["k"] == 1);
  CHECK(s["log_ratio"].get<double>() == doctest::Approx(1.5));
  std::filesystem::remove(side);
}
