#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "octa/config.hpp"
#include "octa/errors.hpp"

using namespace octa;

TEST_CASE("defaults and overrides") {
  RunConfig d = parse_config("");
  CHECK(d.params.sigma1 == kReferenceParams.sigma1);
  CHECK(d.n_samples == 120);
  RunConfig c = parse_config("# comment\n\nsigma1 = 0.5\nsigma3=2   # trailing\nn_samples=48\noutput_dir = out/x\n");
  CHECK(c.params.sigma1 == 0.5);
  CHECK(c.params.sigma2 == kReferenceParams.sigma2);
  CHECK(c.params.sigma3 == 2.0);
  CHECK(c.n_samples == 48);
  CHECK(c.output_dir == "out/x");
  CHECK(parse_config("sigma2=0").params.sigma2 == 0.0);
}

TEST_CASE("errors carry the line number") {
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("sigma1=1\nnonsense\n") == 2);
  CHECK(line_of("colour=red") == 1);
  CHECK(line_of("sigma1=abc") == 1);
  CHECK(line_of("sigma1=-1") == 1);
  CHECK(line_of("epsilon=0") == 1);
  CHECK(line_of("\n\nn_samples=12.5") == 3);
  CHECK(line_of("output_dir=") == 1);
  CHECK_THROWS_AS(load_config("/nonexistent/octa.cfg"), ConfigError);
}

TEST_CASE("load_config reads a file") {
  auto path = std::filesystem::temp_directory_path() / "octa_test.cfg";
  {
    std::ofstream f(path);
    f << "lambda_max=2.5\n";
  }
  CHECK(load_config(path.string()).lambda_max == 2.5);
  std::filesystem::remove(path);
}

TEST_CASE("dump_json sorts keys and prints 17 digits") {
  nlohmann::json j = {{"b", 0.1}, {"a", 1}, {"c", {{"z", true}, {"y", "s"}}}};
  CHECK(dump_json(j) == R"({"a":1,"b":0.10000000000000001,"c":{"y":"s","z":true}})");
  CHECK(dump_json(nlohmann::json::array({1.5, std::numeric_limits<double>::infinity()})) == "[1.5,null]");
  double x = 1.4127758427709596;
  CHECK(std::stod(dump_json(x)) == x);
}
