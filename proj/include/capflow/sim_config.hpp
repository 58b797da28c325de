#pragma once

// Run configuration: an INI-style key = value format with [sections],
// '#' or ';' comments, and strict validation — unknown keys are rejected
// and every error names the offending key. One file describes one run.

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capflow/flow.hpp"
#include "capflow/scenarios.hpp"
#include "capflow/stepper.hpp"

namespace capflow {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double area_rel = 1e-4;
  double volume_rel = 1e-8;
  double convergence = 1e-6;
  double cylinder = 1e-5;
};

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  int snapshots_every = 0;  // 0 = off
  bool json_summary = true;
};

struct SimConfig {
  ScenarioSpec scenario;
  FlowLaw law = FlowLaw::AreaPreserving;
  StepperConfig stepper;
  Tolerances tolerances;
  OutputConfig output;
};

/// Flattened key/value view of a config file, with dotted section.key keys.
using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::string strip_comment(const std::string& line) {
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' || line[i] == ';') return line.substr(0, i);
  }
  return line;
}

inline std::string normalized(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-' || std::isspace(static_cast<unsigned char>(c))) continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (trim(value.substr(pos)).empty()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + value + "'");
}

inline long parse_long(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long x = std::stol(value, &pos);
    if (trim(value.substr(pos)).empty()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected an integer, got '" + value + "'");
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = normalized(value);
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

}  // namespace detail

inline ConfigMap parse_key_values(const std::string& text) {
  ConfigMap map;
  std::string section;
  size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    ++lineno;
    std::string line = detail::trim(detail::strip_comment(text.substr(start, end - start)));
    start = end + 1;
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      }
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      }
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    if (key.find('.') == std::string::npos) {
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                          "' outside any [section]");
      }
      key = section + "." + key;
    }
    if (map.count(key) != 0) {
      throw ConfigError("duplicate key '" + key + "'");
    }
    map[key] = value;
  }
  return map;
}

inline FlowLaw parse_flow_law(const std::string& key, const std::string& value) {
  const std::string v = detail::normalized(value);
  if (v == "areapreserving" || v == "ap") return FlowLaw::AreaPreserving;
  if (v == "volumepreserving" || v == "vp") return FlowLaw::VolumePreserving;
  if (v == "plainmcf" || v == "mcf") return FlowLaw::PlainMCF;
  throw ConfigError(key + ": unknown flow law '" + value +
                    "' (expected AreaPreserving, VolumePreserving or PlainMCF)");
}

inline Scheme parse_scheme(const std::string& key, const std::string& value) {
  const std::string v = detail::normalized(value);
  if (v == "expliciteuler" || v == "euler") return Scheme::ExplicitEuler;
  if (v == "explicitrk2" || v == "rk2") return Scheme::ExplicitRK2;
  if (v == "imex") return Scheme::IMEX;
  throw ConfigError(key + ": unknown scheme '" + value + "' (expected Euler, RK2 or IMEX)");
}

inline ScenarioFamily parse_family(const std::string& key, const std::string& value) {
  const std::string v = detail::normalized(value);
  if (v == "cylinder") return ScenarioFamily::Cylinder;
  if (v == "cosine") return ScenarioFamily::Cosine;
  if (v == "bump") return ScenarioFamily::Bump;
  throw ConfigError(key + ": unknown family '" + value +
                    "' (expected Cylinder, Cosine or Bump)");
}

/// Validates a flattened key/value map into a SimConfig, applying defaults.
/// Also builds the scenario once so invalid initial data fails at parse
/// time rather than mid-run.
inline SimConfig make_config(const ConfigMap& map) {
  static const std::map<std::string, int> known = {
      {"scenario.family", 0}, {"scenario.r0", 0},      {"scenario.epsilon", 1},
      {"scenario.k", 1},      {"scenario.amplitude", 2}, {"scenario.center", 2},
      {"scenario.width", 2},  {"scenario.n", 0},       {"scenario.d", 0},
      {"scenario.m", 0},      {"flow.law", 0},         {"stepper.scheme", 0},
      {"stepper.dt", 0},      {"stepper.cfl_safety", 0}, {"stepper.t_end", 0},
      {"stepper.max_steps", 0}, {"stepper.pinch_floor", 0}, {"stepper.record_every", 0},
      {"tolerances.area_rel", 0}, {"tolerances.volume_rel", 0},
      {"tolerances.convergence", 0}, {"tolerances.cylinder", 0},
      {"output.dir", 0},      {"output.csv", 0},       {"output.snapshots_every", 0},
      {"output.json_summary", 0}};
  for (const auto& [key, value] : map) {
    if (known.count(key) == 0) throw ConfigError("unknown key '" + key + "'");
  }
  auto get = [&map](const std::string& key) -> std::optional<std::string> {
    auto it = map.find(key);
    if (it == map.end()) return std::nullopt;
    return it->second;
  };
  auto require = [&](const std::string& key) -> std::string {
    auto v = get(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  };

  SimConfig cfg;

  // scenario
  cfg.scenario.family = parse_family("scenario.family", require("scenario.family"));
  cfg.scenario.r0 = detail::parse_double("scenario.r0", require("scenario.r0"));
  cfg.scenario.n = static_cast<int>(
      get("scenario.n") ? detail::parse_long("scenario.n", *get("scenario.n")) : 2);
  cfg.scenario.d =
      get("scenario.d") ? detail::parse_double("scenario.d", *get("scenario.d")) : 1.0;
  cfg.scenario.m = static_cast<int>(
      get("scenario.m") ? detail::parse_long("scenario.m", *get("scenario.m")) : 201);
  if (cfg.scenario.n < 2) throw ConfigError("scenario.n: must be >= 2");
  if (!(cfg.scenario.d > 0.0)) throw ConfigError("scenario.d: must be positive");
  if (cfg.scenario.m < 5) throw ConfigError("scenario.m: must be >= 5");

  auto family_only = [&](const std::string& key, ScenarioFamily fam) {
    if (get(key) && cfg.scenario.family != fam) {
      throw ConfigError("key '" + key + "' is only valid for the " +
                        to_string(fam) + " family");
    }
  };
  family_only("scenario.epsilon", ScenarioFamily::Cosine);
  family_only("scenario.k", ScenarioFamily::Cosine);
  family_only("scenario.amplitude", ScenarioFamily::Bump);
  family_only("scenario.center", ScenarioFamily::Bump);
  family_only("scenario.width", ScenarioFamily::Bump);

  if (cfg.scenario.family == ScenarioFamily::Cosine) {
    cfg.scenario.epsilon =
        detail::parse_double("scenario.epsilon", require("scenario.epsilon"));
    cfg.scenario.k = static_cast<int>(
        get("scenario.k") ? detail::parse_long("scenario.k", *get("scenario.k")) : 1);
    if (cfg.scenario.k < 1) throw ConfigError("scenario.k: must be >= 1");
  } else if (cfg.scenario.family == ScenarioFamily::Bump) {
    cfg.scenario.amplitude =
        detail::parse_double("scenario.amplitude", require("scenario.amplitude"));
    cfg.scenario.center = get("scenario.center")
                              ? detail::parse_double("scenario.center", *get("scenario.center"))
                              : 0.5 * cfg.scenario.d;
    cfg.scenario.width = get("scenario.width")
                             ? detail::parse_double("scenario.width", *get("scenario.width"))
                             : 0.1 * cfg.scenario.d;
  }

  // flow
  cfg.law = parse_flow_law("flow.law", require("flow.law"));

  // stepper
  if (get("stepper.scheme")) {
    cfg.stepper.scheme = parse_scheme("stepper.scheme", *get("stepper.scheme"));
  }
  if (get("stepper.dt")) {
    const std::string v = detail::normalized(*get("stepper.dt"));
    if (v == "auto") {
      cfg.stepper.dt.reset();
    } else {
      const double dt = detail::parse_double("stepper.dt", *get("stepper.dt"));
      if (!(dt > 0.0)) throw ConfigError("stepper.dt: must be positive or 'auto'");
      cfg.stepper.dt = dt;
    }
  }
  if (get("stepper.cfl_safety")) {
    cfg.stepper.cfl_safety =
        detail::parse_double("stepper.cfl_safety", *get("stepper.cfl_safety"));
    if (!(cfg.stepper.cfl_safety > 0.0 && cfg.stepper.cfl_safety <= 1.0)) {
      throw ConfigError("stepper.cfl_safety: must lie in (0, 1]");
    }
  }
  if (get("stepper.t_end")) {
    cfg.stepper.t_end = detail::parse_double("stepper.t_end", *get("stepper.t_end"));
    if (!(cfg.stepper.t_end >= 0.0)) throw ConfigError("stepper.t_end: must be >= 0");
  }
  if (get("stepper.max_steps")) {
    cfg.stepper.max_steps = detail::parse_long("stepper.max_steps", *get("stepper.max_steps"));
    if (cfg.stepper.max_steps < 1) throw ConfigError("stepper.max_steps: must be >= 1");
  }
  if (get("stepper.pinch_floor")) {
    cfg.stepper.pinch_floor =
        detail::parse_double("stepper.pinch_floor", *get("stepper.pinch_floor"));
    if (!(cfg.stepper.pinch_floor > 0.0 && cfg.stepper.pinch_floor < 1.0)) {
      throw ConfigError("stepper.pinch_floor: must lie in (0, 1)");
    }
  }
  if (get("stepper.record_every")) {
    cfg.stepper.record_every = static_cast<int>(
        detail::parse_long("stepper.record_every", *get("stepper.record_every")));
    if (cfg.stepper.record_every < 1) throw ConfigError("stepper.record_every: must be >= 1");
  }

  // tolerances
  auto tol = [&](const std::string& key, double& slot) {
    if (get(key)) {
      slot = detail::parse_double(key, *get(key));
      if (!(slot > 0.0)) throw ConfigError(key + ": must be positive");
    }
  };
  tol("tolerances.area_rel", cfg.tolerances.area_rel);
  tol("tolerances.volume_rel", cfg.tolerances.volume_rel);
  tol("tolerances.convergence", cfg.tolerances.convergence);
  tol("tolerances.cylinder", cfg.tolerances.cylinder);

  // output
  if (get("output.dir")) cfg.output.dir = *get("output.dir");
  if (cfg.output.dir.empty()) throw ConfigError("output.dir: must not be empty");
  if (get("output.csv")) cfg.output.csv = detail::parse_bool("output.csv", *get("output.csv"));
  if (get("output.snapshots_every")) {
    cfg.output.snapshots_every = static_cast<int>(
        detail::parse_long("output.snapshots_every", *get("output.snapshots_every")));
    if (cfg.output.snapshots_every < 0) {
      throw ConfigError("output.snapshots_every: must be >= 0");
    }
  }
  if (get("output.json_summary")) {
    cfg.output.json_summary =
        detail::parse_bool("output.json_summary", *get("output.json_summary"));
  }

  build(cfg.scenario);  // surfaces invalid initial data now
  return cfg;
}

inline SimConfig parse_config(const std::string& text) {
  return make_config(parse_key_values(text));
}

/// A parameter sweep: ordered axes of (dotted key, list of values); runs are
/// the cartesian product applied on top of a template config.
struct SweepGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;

  size_t run_count() const {
    size_t n = 1;
    for (const auto& [key, values] : axes) n *= values.size();
    return n;
  }
};

inline SweepGrid parse_grid(const std::string& text) {
  SweepGrid grid;
  size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    ++lineno;
    const std::string line =
        detail::trim(detail::strip_comment(text.substr(start, end - start)));
    start = end + 1;
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("grid line " + std::to_string(lineno) + ": expected key = v1, v2, ...");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.find('.') == std::string::npos) {
      throw ConfigError("grid key '" + key + "' must be a dotted section.key name");
    }
    std::vector<std::string> values;
    std::string rest = line.substr(eq + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      const std::string v = detail::trim(rest.substr(pos, comma - pos));
      if (v.empty()) throw ConfigError("grid key '" + key + "': empty value in list");
      values.push_back(v);
      pos = comma + 1;
    }
    grid.axes.emplace_back(key, std::move(values));
  }
  if (grid.run_count() > 100000) throw ConfigError("grid: more than 100000 runs requested");
  return grid;
}

}  // namespace capflow
