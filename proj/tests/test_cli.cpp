#include <sstream>

#include "doctest.h"
#include "gkdim/cli.hpp"
#include "gkdim/config.hpp"
#include "json.hpp"

using namespace gkdim;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gkdim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string cfg(const std::string& name) { return std::string(GKDIM_CORPUS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("tower configuration parsing") {
  TowerSpec s = parse_tower_config("prime = 3\nunramified_poly = 1 0 1\neisenstein_poly = -3 0; 1 0  # comment\n");
  CHECK(s.prime == 3);
  CHECK(s.eisenstein_poly == std::vector<std::vector<long>>{{-3, 0}, {1, 0}});
  CHECK(build_tower(s)->f() == 2);
  CHECK_THROWS_AS(parse_tower_config("prime = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_tower_config("prime = x\nunramified_poly = 0 1\neisenstein_poly = -3, 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_tower_config("colour = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_tower_config("prime = 3\nunramified_poly = 0 1\neisenstein_poly = -3, 1\ncases = quat\n"), ConfigError);
  TowerSpec bad = parse_tower_config("prime = 3\nunramified_poly = 0 1\neisenstein_poly = 9, 0, 1\n");
  CHECK_THROWS_AS(build_tower(bad), ConfigError);
}

TEST_CASE("corpus loads sorted by name") {
  auto corpus = load_corpus(GKDIM_CORPUS_DIR);
  REQUIRE(corpus.size() == 5);
  for (std::size_t i = 1; i < corpus.size(); ++i) CHECK(corpus[i - 1].name < corpus[i].name);
}

TEST_CASE("exit codes") {
  CHECK(run({"decompose", "--config", cfg("q3_sqrt3.cfg")}).code == 0);
  CHECK(run({"decompose", "--config", "/nonexistent.cfg"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"casimir", "--config", cfg("q9.cfg"), "--N", "1", "--level", "9/2"}).code == 2);
  CHECK(run({"group-check", "--config", cfg("q3_cbrt3.cfg")}).code == 2);
}

TEST_CASE("casimir report carries the match verdict") {
  Run r = run({"casimir", "--config", cfg("q3.cfg"), "--kind", "delta", "--level", "3"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "gkdim-report/1");
  CHECK(j["records"][0]["measured"]["match"] == true);
  CHECK(j["records"][0]["measured"]["computed"] == "(2)*h0_0^2 + (2)*e0_0*f0_0*eps");
  CHECK(j["summary"]["ok"] == true);
}

TEST_CASE("dimension of the Q_3(sqrt 3) Casimir ideal") {
  Run r = run({"dimension", "--config", cfg("q3_sqrt3.cfg"), "--which", "casimir"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["records"][0]["measured"]["kdim"] == 2);
}

TEST_CASE("plain-text ideal output parses back") {
  Run r = run({"ideal", "--config", cfg("quat_q3.cfg"), "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "2*h0_0^2\n2*w0_0*w1_0\nz0_0\n");
}

TEST_CASE("reports are byte-identical across runs") {
  std::vector<std::string> args{"group-check", "--config", cfg("quat_q3.cfg"), "--samples", "20", "--seed", "5"};
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
