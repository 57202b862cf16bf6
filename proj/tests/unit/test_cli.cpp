#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/app.hpp"
#include "cli/plot.hpp"
#include "doctest.h"
#include "sglab/core/error.hpp"

using nlohmann::json;
using namespace sglab;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sglab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "sglab_test_" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("annealed parisi value from the command line") {
  const auto r = invoke({"parisi", "--x", "1.0:0.0", "--beta", "1", "--h", "0"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("result").at("rows")[0].at("value").get<double>() ==
        doctest::Approx(std::log(2.0) + 0.25).epsilon(1e-12));
  const auto& h = j.at("header");
  CHECK(h.at("schema") == 1);
  CHECK(h.at("subcommand") == "parisi");
  CHECK(h.at("seed") == 1);
  CHECK(h.at("config_hash").get<std::string>().size() == 16);
  CHECK(h.contains("version"));
}

TEST_CASE("beta = 0 pressure is exactly ln 2") {
  const auto r = invoke({"pressure", "--N", "16", "--beta", "0", "--samples", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("result").at("pressure").at("mean").get<double>() == std::log(2.0));
}

TEST_CASE("exit codes") {
  CHECK(invoke({"pressure", "--N", "30"}).code == 2);
  CHECK(invoke({"parisi", "--x", "0.5:1.5"}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"parisi", "--unknown", "1"}).code == 2);
  CHECK(invoke({"parisi", "--format", "xml"}).code == 2);
  const auto num = invoke({"pressure", "--N", "4", "--beta", "1e308", "--samples", "2"});
  CHECK(num.code == 3);
  CHECK(json::parse(num.err).at("error") == "numerical");
  const auto bad = invoke({"parisi", "--x", "0.5:1.5"});
  CHECK(json::parse(bad.err).at("error") == "validation");
  CHECK(invoke({"--help"}).code == 0);
  // --check turns a failed self-check into exit 1
  CHECK(invoke({"pressure", "--N", "8", "--beta", "2", "--samples", "50", "--check"}).code == 1);
  CHECK(invoke({"pressure", "--N", "8", "--beta", "2", "--samples", "50"}).code == 0);
}

TEST_CASE("outputs do not depend on the thread count") {
  const auto a = invoke({"superadd", "--samples", "300", "--threads", "1"});
  const auto b = invoke({"superadd", "--samples", "300", "--threads", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = invoke({"superadd", "--samples", "300", "--seed", "2"});
  CHECK(a.out != c.out);
}

TEST_CASE("config files and precedence") {
  const auto path = temp_path("config.json");
  write(path, R"({"schema": 1, "subcommand": "pressure", "seed": 5, "params": {"N": 6, "beta": 0.3, "samples": 40}})");
  const auto from_file = invoke({"pressure", "--config", path});
  REQUIRE(from_file.code == 0);
  const auto h = json::parse(from_file.out).at("header");
  CHECK(h.at("seed") == 5);
  CHECK(h.at("params").at("N") == 6);
  CHECK(h.at("params").at("beta") == 0.3);
  const auto flags = invoke({"pressure", "--config", path, "--N", "7", "--seed", "9"});
  const auto h2 = json::parse(flags.out).at("header");
  CHECK(h2.at("params").at("N") == 7);
  CHECK(h2.at("params").at("beta") == 0.3);
  CHECK(h2.at("seed") == 9);
  // same resolved configuration, same bytes
  const auto again = invoke({"pressure", "--N", "6", "--beta", "0.3", "--samples", "40", "--seed", "5"});
  CHECK(again.out == from_file.out);

  write(path, R"({"schema": 1, "params": {"N": 6, "colour": 1}})");
  CHECK(invoke({"pressure", "--config", path}).code == 2);
  write(path, R"({"schema": 1, "params": {}, "extra": true})");
  CHECK(invoke({"pressure", "--config", path}).code == 2);
  write(path, R"({"schema": 2, "params": {}})");
  CHECK(invoke({"pressure", "--config", path}).code == 2);
  write(path, R"({"params": {}})");
  CHECK(invoke({"pressure", "--config", path}).code == 2);
  write(path, R"({"schema": 1, "subcommand": "parisi", "params": {}})");
  CHECK(invoke({"pressure", "--config", path}).code == 2);
  write(path, R"({"schema": 1, "params": {"N": "many"}})");
  CHECK(invoke({"pressure", "--config", path}).code == 2);
  write(path, "{not json");
  CHECK(invoke({"pressure", "--config", path}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("csv output") {
  const auto r = invoke({"pressure", "--N", "4", "--beta", "0.1", "--samples", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# sglab", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("# params", 0) == 0);
  std::getline(lines, line);
  CHECK(line == "# pass true");
  std::getline(lines, line);
  CHECK(line == "draw,pressure");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("svg plots") {
  const auto one = cli::emit_plot({{"p", {0.5}, {1.0}, cli::Series::Style::scatter}}, "q", "P");
  CHECK(one.find("<svg") != std::string::npos);
  CHECK(one.find("</svg>") != std::string::npos);
  std::size_t circles = 0;
  for (auto p = one.find("<circle"); p != std::string::npos; p = one.find("<circle", p + 1)) ++circles;
  CHECK(circles == 1);
  CHECK(one.find("href") == std::string::npos);
  CHECK(one == cli::emit_plot({{"p", {0.5}, {1.0}, cli::Series::Style::scatter}}, "q", "P"));
  CHECK_THROWS_AS(cli::emit_plot({}, "q", "P"), ValidationError);
  CHECK_THROWS_AS(cli::emit_plot({{"p", {}, {}, cli::Series::Style::line}}, "q", "P"), ValidationError);

  const auto r = invoke({"cascade-overlap", "--x", "0.3:0.2,0.7:0.6", "--m", "20", "--cascades", "40", "--pairs", "5",
                         "--bias-cascades", "20", "--format", "svg"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("<?xml", 0) == 0);
  CHECK(r.out.find("<path") != std::string::npos);
}

TEST_CASE("output and plot files") {
  const auto out = temp_path("out.json"), plot = temp_path("plot.svg");
  REQUIRE(invoke({"appendix-b", "--output", out, "--plot", plot}).code == 0);
  std::ifstream a(out), b(plot);
  CHECK(json::parse(a).at("pass").get<bool>());
  std::stringstream s;
  s << b.rdbuf();
  CHECK(s.str().find("<svg") != std::string::npos);
  std::remove(out.c_str());
  std::remove(plot.c_str());
  CHECK(invoke({"appendix-b", "--output", "/nonexistent-dir/x.json"}).code == 1);
}

TEST_CASE("every subcommand is registered") {
  std::vector<std::string> names;
  for (const auto& c : cli::commands()) names.push_back(c.name);
  for (const char* n : {"ground-state", "pressure", "superadd", "increment", "rem-qs", "cascade-overlap",
                        "cascade-qs", "parisi", "g-functional", "guerra", "variational", "diff-identity",
                        "appendix-b"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
}
