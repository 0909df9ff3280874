#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bssk/errors.hpp"
#include "bssk/experiments.hpp"

using namespace bssk;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("config overlay and validation") {
  const auto base = default_config("mp-check");
  const auto c = config_from_json(json{{"n", 100}, {"m", 300}, {"samples", 3}}, base);
  CHECK(c.n == 100);
  CHECK(c.m == 300);
  CHECK(c.samples == 3);
  CHECK(c.seed == base.seed);
  CHECK_THROWS_AS(config_from_json(json{{"nn", 1}}, base), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"events", {{"deltaa", 0.2}}}}, base), ConfigError);
  CHECK_THROWS_AS(default_config("no-such-run"), ConfigError);
  const auto round = config_from_json(config_to_json(c), base);
  CHECK(config_to_json(round) == config_to_json(c));
}

TEST_CASE("outputs do not depend on the worker count") {
  namespace fs = std::filesystem;
  auto c = config_from_json(json{{"n", 60}, {"m", 120}, {"samples", 6}}, default_config("sample-spectrum"));
  const fs::path root = fs::temp_directory_path() / "bssk_test_experiments";
  std::vector<std::string> csv;
  for (int w : {1, 3}) {
    c.workers = w;
    const auto dir = root / ("w" + std::to_string(w));
    write_outputs(run_experiment(c), dir.string());
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".csv") csv.push_back(slurp(e.path()));
  }
  REQUIRE(csv.size() == 2);
  CHECK(!csv[0].empty());
  CHECK(csv[0] == csv[1]);
  fs::remove_all(root);
}

TEST_CASE("invalid parameters surface as typed errors") {
  auto c = default_config("sample-spectrum");
  c.n = 10, c.m = 5;
  CHECK_THROWS_AS(run_experiment(c), InvalidParameter);
}
