#pragma once

// Command implementations behind the capflow executable. Exit codes:
// 0 = converged (or report written), 2 = run stopped on a guard,
// 1 = configuration error (raised as ConfigError/ScenarioError upstream).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "capflow/io.hpp"
#include "capflow/run.hpp"

namespace capflow {

/// Output directory: the CAPFLOW_OUT environment variable, when set,
/// overrides the configured path.
inline std::string resolve_output_dir(const SimConfig& cfg) {
  if (const char* env = std::getenv("CAPFLOW_OUT")) {
    if (*env != '\0') return env;
  }
  return cfg.output.dir;
}

namespace detail {

inline std::string snapshot_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "profile_%04d.csv", index);
  return buf;
}

}  // namespace detail

/// Run one simulation and persist time series, snapshots and summary.
inline int cmd_simulate(const SimConfig& cfg, std::ostream& log) {
  namespace fs = std::filesystem;
  const fs::path dir = resolve_output_dir(cfg);
  fs::create_directories(dir);

  int snapshots = 0;
  StepCallback on_record;
  if (cfg.output.snapshots_every > 0) {
    on_record = [&](long step, double, const Profile& p) {
      if (step % cfg.output.snapshots_every == 0) {
        write_text_file((dir / detail::snapshot_name(snapshots)).string(), profile_csv(p));
        ++snapshots;
      }
    };
  }

  RunResult res = run(cfg, on_record);
  run_all_checks(res.ledger, res.bounds, cfg.tolerances, cfg.law);
  if (cfg.output.csv) {
    write_text_file((dir / "timeseries.csv").string(), ledger_csv(res.ledger));
  }
  const std::string final_profile = "profile_final.csv";
  write_text_file((dir / final_profile).string(), profile_csv(res.profile));
  if (cfg.output.json_summary) {
    write_text_file((dir / "summary.json").string(),
                    summary_json(cfg, res, final_profile, snapshots).dump(2) + "\n");
  }

  log << "status=" << to_string(res.status) << " verdict="
      << to_string(res.classification.verdict) << " t=" << res.t
      << " steps=" << res.steps << " violations=" << res.ledger.violations.size()
      << "\n";
  return res.status == StepStatus::Converged ? 0 : 2;
}

/// Print the scenario validation report as JSON.
inline int cmd_validate(const SimConfig& cfg, std::ostream& out) {
  const Profile p = build(cfg.scenario);
  const ScenarioReport rep = validate(p);
  const TheoremBounds b = theorem_bounds(p);
  json j;
  j["family"] = to_string(cfg.scenario.family);
  j["n"] = cfg.scenario.n;
  j["d"] = cfg.scenario.d;
  j["m"] = cfg.scenario.m;
  j["mean_convex"] = rep.mean_convex;
  j["H_min"] = rep.H_min;
  j["hypothesis_holds"] = rep.hypothesis_holds;
  j["area"] = rep.area;
  j["V_over_d"] = rep.V_over_d;
  j["rho_C"] = b.rho_C;
  j["R_bound"] = b.R_bound;
  out << j.dump(2) << "\n";
  return 0;
}

/// Cartesian-product sweep over a template config; one subdirectory per run
/// plus an index CSV of final verdicts.
inline int cmd_sweep(const ConfigMap& base, const SweepGrid& grid, std::ostream& log) {
  namespace fs = std::filesystem;

  // Resolve the sweep root from the template config (env override included).
  const SimConfig base_cfg = make_config(base);
  const fs::path root = resolve_output_dir(base_cfg);
  fs::create_directories(root);

  const size_t total = grid.run_count();
  std::ostringstream index;
  index << "dir";
  for (const auto& [key, values] : grid.axes) index << ',' << key;
  index << ",status,verdict,limit_radius,t_final,steps,violations\n";

  for (size_t runidx = 0; runidx < total; ++runidx) {
    // Decode the mixed-radix run index into one choice per axis.
    ConfigMap overrides = base;
    size_t rem = runidx;
    std::vector<std::string> chosen;
    for (const auto& [key, values] : grid.axes) {
      const size_t pick = rem % values.size();
      rem /= values.size();
      overrides[key] = values[pick];
      chosen.push_back(values[pick]);
    }
    char name[32];
    std::snprintf(name, sizeof(name), "run_%03zu", runidx);
    const fs::path subdir = root / name;

    SimConfig cfg = make_config(overrides);
    cfg.output.dir = subdir.string();

    fs::create_directories(subdir);
    RunResult res = run(cfg);
    run_all_checks(res.ledger, res.bounds, cfg.tolerances, cfg.law);
    if (cfg.output.csv) {
      write_text_file((subdir / "timeseries.csv").string(), ledger_csv(res.ledger));
    }
    write_text_file((subdir / "profile_final.csv").string(), profile_csv(res.profile));
    if (cfg.output.json_summary) {
      write_text_file((subdir / "summary.json").string(),
                      summary_json(cfg, res, "profile_final.csv", 0).dump(2) + "\n");
    }

    index << name;
    for (const std::string& c : chosen) index << ',' << c;
    index << ',' << to_string(res.status) << ',' << to_string(res.classification.verdict)
          << ',' << fmt17(res.classification.limit_radius) << ',' << fmt17(res.t) << ','
          << res.steps << ',' << res.ledger.violations.size() << "\n";
    log << name << ": " << to_string(res.status) << " / "
        << to_string(res.classification.verdict) << "\n";
  }
  write_text_file((root / "sweep.csv").string(), index.str());
  return 0;
}

}  // namespace capflow
