#include "octa/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "octa/errors.hpp"

namespace octa {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v, const std::string& key, int line) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x))
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" + v + "'", line);
  return x;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key=value", line);
    std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    auto positive = [&](double x) {
      if (!(x > 0.0)) throw ConfigError("line " + std::to_string(line) + ": '" + key + "' must be positive", line);
      return x;
    };
    auto nonnegative = [&](double x) {
      if (x < 0.0) throw ConfigError("line " + std::to_string(line) + ": '" + key + "' must be nonnegative", line);
      return x;
    };
    if (key == "sigma1") {
      c.params.sigma1 = nonnegative(parse_real(value, key, line));
    } else if (key == "sigma2") {
      c.params.sigma2 = nonnegative(parse_real(value, key, line));
    } else if (key == "sigma3") {
      c.params.sigma3 = nonnegative(parse_real(value, key, line));
    } else if (key == "lambda_max") {
      c.lambda_max = positive(parse_real(value, key, line));
    } else if (key == "epsilon") {
      c.epsilon = positive(parse_real(value, key, line));
    } else if (key == "n_samples") {
      double n = positive(parse_real(value, key, line));
      if (n != std::floor(n) || n > 1e6)
        throw ConfigError("line " + std::to_string(line) + ": 'n_samples' must be an integer", line);
      c.n_samples = static_cast<int>(n);
    } else if (key == "output_dir") {
      if (value.empty()) throw ConfigError("line " + std::to_string(line) + ": 'output_dir' is empty", line);
      c.output_dir = value;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'", line);
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

void write(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      double x = j.get<double>();
      out += std::isfinite(x) ? fmt::format("{:.17g}", x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  write(j, out);
  return out;
}

}  // namespace octa
