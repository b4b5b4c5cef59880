#include "bresse/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "bresse/errors.hpp"

namespace bresse {

using nlohmann::json;

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::standard: return "default";
    case Scenario::conservative: return "conservative";
    case Scenario::timoshenko: return "timoshenko";
    case Scenario::matched_impedance: return "matched_impedance";
  }
  return "default";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "default") return Scenario::standard;
  if (name == "conservative") return Scenario::conservative;
  if (name == "timoshenko") return Scenario::timoshenko;
  if (name == "matched_impedance") return Scenario::matched_impedance;
  throw ConfigError("scenario", "scenario: unknown value '" + name +
                                    "' (expected default, conservative, timoshenko, matched_impedance)");
}

std::string default_out_dir() {
  const char* env = std::getenv("BRESSE_OUT");
  return env && *env ? env : "bresse_out";
}

namespace {

double as_number(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError(key, key + ": expected a number, got " + v.dump());
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, key + ": must be finite");
  return x;
}

std::uint64_t as_count(const std::string& key, const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    throw ConfigError(key, key + ": must be a nonnegative integer, got " + v.dump());
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x >= 0.0 && std::floor(x) == x) return static_cast<std::uint64_t>(x);
  }
  throw ConfigError(key, key + ": expected a nonnegative integer, got " + v.dump());
}

using Setter = std::function<void(RunConfig&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    const auto num = [&m](const std::string& key, double BresseParams::*field) {
      m[key] = [key, field](RunConfig& c, const json& v) { c.params.*field = as_number(key, v); };
    };
    num("rho1", &BresseParams::rho1);
    num("rho2", &BresseParams::rho2);
    num("kappa", &BresseParams::kappa);
    num("k0", &BresseParams::k0);
    num("b", &BresseParams::b);
    num("ell", &BresseParams::ell);
    num("L", &BresseParams::L);
    num("gamma1", &BresseParams::gamma1);
    num("gamma2", &BresseParams::gamma2);
    num("gamma3", &BresseParams::gamma3);
    m["N"] = [](RunConfig& c, const json& v) { c.N = as_count("N", v); };
    m["dt"] = [](RunConfig& c, const json& v) { c.dt = as_number("dt", v); };
    m["T"] = [](RunConfig& c, const json& v) { c.T = as_number("T", v); };
    m["fit_start"] = [](RunConfig& c, const json& v) { c.fit_start = as_number("fit_start", v); };
    m["fit_end"] = [](RunConfig& c, const json& v) { c.fit_end = as_number("fit_end", v); };
    m["lambda_max"] = [](RunConfig& c, const json& v) { c.lambda_max = as_number("lambda_max", v); };
    m["sweep_count"] = [](RunConfig& c, const json& v) { c.sweep_count = as_count("sweep_count", v); };
    m["seed"] = [](RunConfig& c, const json& v) { c.seed = as_count("seed", v); };
    m["scenario"] = [](RunConfig& c, const json& v) {
      if (!v.is_string()) throw ConfigError("scenario", "scenario: expected a string");
      c.scenario = parse_scenario(v.get<std::string>());
    };
    m["out"] = [](RunConfig& c, const json& v) {
      if (!v.is_string()) throw ConfigError("out", "out: expected a string");
      c.out_dir = v.get<std::string>();
    };
    return m;
  }();
  return table;
}

void apply(RunConfig& cfg, const std::string& key, const json& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(key, "unknown config key '" + key + "'");
  it->second(cfg, value);
}

void apply_scenario(RunConfig& cfg) {
  BresseParams& p = cfg.params;
  switch (cfg.scenario) {
    case Scenario::standard: break;
    case Scenario::conservative: p.gamma1 = p.gamma2 = p.gamma3 = 0.0; break;
    case Scenario::timoshenko: p.ell = 0.0; break;
    case Scenario::matched_impedance: {
      const auto z = impedances(p);
      p.gamma1 = z[0];
      p.gamma2 = z[1];
      p.gamma3 = z[2];
      break;
    }
  }
}

}  // namespace

void validate(const RunConfig& c) {
  c.params.validate();
  if (c.N < 1) throw ConfigError("N", "N: element count must be at least 1");
  if (!(c.dt >= 0.0)) throw ConfigError("dt", "dt: must be positive (or 0 for the default step)");
  if (!(c.T > 0.0)) throw ConfigError("T", "T: horizon must be positive");
  if (!(c.fit_start >= 0.0)) throw ConfigError("fit_start", "fit_start: must be nonnegative");
  const double end = c.fit_end > 0.0 ? c.fit_end : c.T;
  if (c.fit_end < 0.0 || !(end > c.fit_start) || end > c.T) {
    throw ConfigError("fit_end", "fit_end: window must satisfy fit_start < fit_end <= T");
  }
  if (!(c.lambda_max > 0.0)) throw ConfigError("lambda_max", "lambda_max: must be positive");
  if (c.sweep_count < 8) throw ConfigError("sweep_count", "sweep_count: need at least 8 points");
}

RunConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides) {
  RunConfig cfg;
  cfg.params = default_params();

  json doc;
  try {
    doc = json_text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "config: top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) apply(cfg, key, value);

  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError(kv, "--set expects key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq), raw = kv.substr(eq + 1);
    json value;
    try {
      value = json::parse(raw);
    } catch (const json::parse_error&) {
      value = raw;  // bare words are strings
    }
    apply(cfg, key, value);
  }

  apply_scenario(cfg);
  if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  std::string text;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("config", "config: cannot open '" + *path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_config(text, overrides);
}

}  // namespace bresse
