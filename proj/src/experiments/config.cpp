#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lppshock/experiments.hpp"

namespace lppshock {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json parse_value(const std::string& raw) {
  const std::string v = trim(raw);
  try {
    return json::parse(v);
  } catch (const json::parse_error&) {
  }
  if (v.find(',') != std::string::npos) {
    try {
      return json::parse("[" + v + "]");
    } catch (const json::parse_error&) {
    }
  }
  return json(v);
}

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' needs a number");
  return v.get<double>();
}

std::uint64_t as_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  throw ConfigError("config key '" + key + "' needs a nonnegative integer");
}

std::vector<double> as_list(const json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError("config key '" + key + "' needs a list of numbers");
  for (const auto& x : v) out.push_back(as_double(x, key));
  return out;
}

ExperimentConfig from_object(const json& obj) {
  if (!obj.is_object()) throw ConfigError("config must be a flat key-value object");
  ExperimentConfig c;
  for (const auto& [key, v] : obj.items()) {
    if (v.is_object()) throw ConfigError("config is flat; key '" + key + "' holds an object");
    if (key == "experiment") {
      if (!v.is_string()) throw ConfigError("experiment needs a name");
      c.experiment = v.get<std::string>();
    } else if (key == "alpha") {
      c.alpha = as_double(v, key);
    } else if (key == "rho_minus") {
      c.rho_minus = as_double(v, key);
    } else if (key == "rho_plus") {
      c.rho_plus = as_double(v, key);
    } else if (key == "beta") {
      c.beta = as_double(v, key);
    } else if (key == "t") {
      c.t = as_double(v, key);
    } else if (key == "t_compare") {
      c.t_compare = as_double(v, key);
    } else if (key == "N") {
      c.N = as_count(v, key);
    } else if (key == "u") {
      c.u = as_list(v, key);
    } else if (key == "s") {
      c.s = as_list(v, key);
    } else if (key == "nu") {
      c.nu = as_double(v, key);
    } else if (key == "seed") {
      c.seed = as_count(v, key);
    } else if (key == "bootstrap") {
      c.bootstrap = as_count(v, key);
    } else if (key == "grid_lo") {
      c.grid_lo = as_double(v, key);
    } else if (key == "grid_hi") {
      c.grid_hi = as_double(v, key);
    } else if (key == "grid_step") {
      c.grid_step = as_double(v, key);
    } else if (key == "recenter_exponent") {
      c.recenter_exponent = as_double(v, key);
    } else if (key == "doubling_replicas") {
      c.doubling_replicas = as_count(v, key);
    } else if (key == "window") {
      c.window = static_cast<std::int64_t>(as_count(v, key));
    } else if (key == "probes") {
      c.probes = as_count(v, key);
    } else if (key == "local_slope") {
      c.local_slope = as_double(v, key);
    } else if (key == "threads") {
      c.threads = as_count(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    try {
      return from_object(json::parse(body));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
  }
  json obj = json::object();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    if (obj.contains(key)) throw ConfigError("config key '" + key + "' given twice");
    obj[key] = parse_value(line.substr(eq + 1));
  }
  return from_object(obj);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
  static const std::vector<std::string> known{"two_speed", "bernoulli",          "multipoint", "no_crossing",
                                              "slow_decorrelation", "tails", "correspondence"};
  if (std::find(known.begin(), known.end(), c.experiment) == known.end())
    throw ConfigError("unknown experiment '" + c.experiment + "'");
  if (!(c.t >= 50.0) || !std::isfinite(c.t)) throw ConfigError("t must be at least 50");
  if (c.t_compare != 0.0 && !(c.t_compare >= 50.0 && std::isfinite(c.t_compare)))
    throw ConfigError("t_compare must be 0 or at least 50");
  if (c.N < 1) throw ConfigError("N must be at least 1");
  if (c.N > std::numeric_limits<std::uint32_t>::max() / 2) throw ConfigError("N too large for replica indexing");
  if (!(c.nu > 1.0 / 3.0 && c.nu < 1.0)) throw ConfigError("nu must lie in (1/3, 1)");
  if (!(c.grid_step > 0.0 && c.grid_lo < c.grid_hi)) throw ConfigError("invalid ECDF grid");
  if ((c.grid_hi - c.grid_lo) / c.grid_step > 1e6) throw ConfigError("ECDF grid too fine");
  if (c.bootstrap < 2) throw ConfigError("bootstrap needs at least 2 resamples");
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
  const std::string& e = c.experiment;
  if ((e == "two_speed" || e == "slow_decorrelation" || e == "correspondence") && !(c.alpha > 0.0 && c.alpha < 1.0))
    throw ConfigError("alpha must lie in (0, 1)");
  if (e == "bernoulli" && !(c.rho_minus > 0.0 && c.rho_minus < c.rho_plus && c.rho_plus < 1.0))
    throw ConfigError("need 0 < rho_minus < rho_plus < 1");
  if ((e == "multipoint" || e == "no_crossing") && !(c.beta > 0.0)) throw ConfigError("beta must be positive");
  if (e == "multipoint" || e == "no_crossing") {
    if (c.u.size() > 4) throw ConfigError("at most 4 endpoints");
    for (std::size_t k = 1; k < c.u.size(); ++k)
      if (!(c.u[k] > c.u[k - 1])) throw ConfigError("u must be strictly increasing");
  }
  if (e == "correspondence" && (c.window < 4 || c.window > 200)) throw ConfigError("window must lie in [4, 200]");
  if (e == "correspondence" && !(c.local_slope > 0.0)) throw ConfigError("local_slope must be positive");
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["experiment"] = c.experiment;
  j["alpha"] = c.alpha;
  j["rho_minus"] = c.rho_minus;
  j["rho_plus"] = c.rho_plus;
  j["beta"] = c.beta;
  j["t"] = c.t;
  j["t_compare"] = c.t_compare;
  j["N"] = c.N;
  j["u"] = c.u;
  j["s"] = c.s;
  j["nu"] = c.nu;
  j["seed"] = c.seed;
  j["bootstrap"] = c.bootstrap;
  j["grid_lo"] = c.grid_lo;
  j["grid_hi"] = c.grid_hi;
  j["grid_step"] = c.grid_step;
  j["recenter_exponent"] = c.recenter_exponent;
  j["doubling_replicas"] = c.doubling_replicas;
  j["window"] = c.window;
  j["probes"] = c.probes;
  j["local_slope"] = c.local_slope;
  return j;
}

}  // namespace lppshock
