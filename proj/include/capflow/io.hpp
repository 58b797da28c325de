#pragma once

// Persistence: the fixed-column time-series CSV, two-column profile
// snapshots, and the JSON run summary. Floating-point values are printed
// with 17 significant digits so files round-trip exactly.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "capflow/monitors.hpp"
#include "capflow/run.hpp"
#include "capflow/sim_config.hpp"

namespace capflow {

using json = nlohmann::ordered_json;

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

inline constexpr const char* kLedgerHeader =
    "t,area,volume,h,H_min,H_max,v_max,A2_max,rho_min,rho_max,intH,intH2,speed_max";

inline std::string ledger_csv(const Ledger& L) {
  std::ostringstream out;
  out << kLedgerHeader << "\n";
  for (const LedgerRow& r : L.rows) {
    out << fmt17(r.t) << ',' << fmt17(r.area) << ',' << fmt17(r.volume) << ','
        << fmt17(r.h) << ',' << fmt17(r.H_min) << ',' << fmt17(r.H_max) << ','
        << fmt17(r.v_max) << ',' << fmt17(r.A2_max) << ',' << fmt17(r.rho_min) << ','
        << fmt17(r.rho_max) << ',' << fmt17(r.intH) << ',' << fmt17(r.intH2) << ','
        << fmt17(r.speed_max) << "\n";
  }
  return out.str();
}

inline std::string profile_csv(const Profile& p) {
  std::ostringstream out;
  out << "z,rho\n";
  for (int i = 0; i < p.m(); ++i) {
    out << fmt17(p.grid.z(i)) << ',' << fmt17(p.rho[static_cast<size_t>(i)]) << "\n";
  }
  return out.str();
}

inline json config_json(const SimConfig& cfg) {
  json j;
  json sc;
  sc["family"] = to_string(cfg.scenario.family);
  sc["r0"] = cfg.scenario.r0;
  if (cfg.scenario.family == ScenarioFamily::Cosine) {
    sc["epsilon"] = cfg.scenario.epsilon;
    sc["k"] = cfg.scenario.k;
  }
  if (cfg.scenario.family == ScenarioFamily::Bump) {
    sc["amplitude"] = cfg.scenario.amplitude;
    sc["center"] = cfg.scenario.center;
    sc["width"] = cfg.scenario.width;
  }
  sc["n"] = cfg.scenario.n;
  sc["d"] = cfg.scenario.d;
  sc["m"] = cfg.scenario.m;
  j["scenario"] = sc;
  j["flow"] = {{"law", to_string(cfg.law)}};
  json st;
  st["scheme"] = to_string(cfg.stepper.scheme);
  if (cfg.stepper.dt) {
    st["dt"] = *cfg.stepper.dt;
  } else {
    st["dt"] = "auto";
  }
  st["cfl_safety"] = cfg.stepper.cfl_safety;
  st["t_end"] = cfg.stepper.t_end;
  st["max_steps"] = cfg.stepper.max_steps;
  st["pinch_floor"] = cfg.stepper.pinch_floor;
  st["record_every"] = cfg.stepper.record_every;
  j["stepper"] = st;
  j["tolerances"] = {{"area_rel", cfg.tolerances.area_rel},
                     {"volume_rel", cfg.tolerances.volume_rel},
                     {"convergence", cfg.tolerances.convergence},
                     {"cylinder", cfg.tolerances.cylinder}};
  j["output"] = {{"dir", cfg.output.dir},
                 {"csv", cfg.output.csv},
                 {"snapshots_every", cfg.output.snapshots_every},
                 {"json_summary", cfg.output.json_summary}};
  return j;
}

inline json violations_json(const Ledger& L) {
  json arr = json::array();
  for (const Violation& v : L.violations) {
    arr.push_back({{"t", v.t}, {"check", v.check}, {"measured", v.measured},
                   {"threshold", v.threshold}});
  }
  return arr;
}

inline json summary_json(const SimConfig& cfg, const RunResult& res,
                         const std::string& final_profile_path, int snapshot_count) {
  json j;
  j["status"] = to_string(res.status);
  j["t_final"] = res.t;
  j["steps"] = res.steps;
  j["wall_time_s"] = res.wall_seconds;
  j["verdict"] = to_string(res.classification.verdict);
  j["limit_radius"] = res.classification.limit_radius;
  j["predicted_radius"] = res.classification.predicted_radius;
  j["H_spread"] = res.classification.H_spread;
  j["profile_residual"] = res.classification.profile_residual;
  j["volume_gain"] = res.classification.volume_gain;
  j["initial"] = {{"area", res.bounds.initial_area},
                  {"volume", res.bounds.initial_volume},
                  {"rho_C", res.bounds.rho_C},
                  {"R_bound", res.bounds.R_bound},
                  {"hypothesis_holds", res.bounds.hypothesis_holds}};
  if (!res.ledger.rows.empty()) {
    const LedgerRow& r = res.ledger.rows.back();
    j["final"] = {{"t", r.t},       {"area", r.area},       {"volume", r.volume},
                  {"h", r.h},       {"H_min", r.H_min},     {"H_max", r.H_max},
                  {"rho_min", r.rho_min}, {"rho_max", r.rho_max}};
  }
  j["violations"] = violations_json(res.ledger);
  j["outputs"] = {{"timeseries", cfg.output.csv ? "timeseries.csv" : ""},
                  {"final_profile", final_profile_path},
                  {"snapshots", snapshot_count}};
  j["config"] = config_json(cfg);
  return j;
}

}  // namespace capflow
