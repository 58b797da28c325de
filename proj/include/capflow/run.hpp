#pragma once

// The simulation loop: sample geometry, fill the nonlocal rate, record,
// guard, test convergence, step. Guard trips terminate with a status value
// rather than an exception; everything observed on the way is in the ledger.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "capflow/classify.hpp"
#include "capflow/flow.hpp"
#include "capflow/geometry.hpp"
#include "capflow/monitors.hpp"
#include "capflow/scenarios.hpp"
#include "capflow/sim_config.hpp"
#include "capflow/stepper.hpp"

namespace capflow {

struct RunResult {
  Profile profile;
  double t = 0.0;
  long steps = 0;
  StepStatus status = StepStatus::Ok;
  Ledger ledger;
  ClassificationResult classification;
  TheoremBounds bounds;
  double wall_seconds = 0.0;
};

/// Called whenever a row is recorded; used for profile snapshots.
using StepCallback = std::function<void(long step, double t, const Profile&)>;

namespace detail {

/// Ledger row that stays meaningful on degenerate states: geometry values
/// may be non-finite, the rate may be undefined (NaN), but the radius
/// extrema always reflect the profile.
inline LedgerRow safe_row(double t, const Profile& p, FlowLaw law) {
  GeometrySample g = sample_geometry(p);
  try {
    g.h = nonlocal_rate(law, g);
  } catch (const DegenerateGeometryError&) {
    g.h = std::numeric_limits<double>::quiet_NaN();
  }
  return make_ledger_row(t, p, g, law);
}

}  // namespace detail

inline RunResult run(const SimConfig& cfg, const StepCallback& on_record = {}) {
  const auto wall_start = std::chrono::steady_clock::now();

  RunResult res{build(cfg.scenario)};
  Profile& p = res.profile;
  res.bounds = theorem_bounds(p);
  res.classification.predicted_radius =
      predicted_cylinder_radius(res.bounds.initial_area, p.n, p.grid.d);

  const double rho_floor =
      cfg.stepper.pinch_floor * *std::min_element(p.rho.begin(), p.rho.end());

  auto record = [&](const LedgerRow& row) {
    if (res.ledger.rows.empty() || row.t > res.ledger.rows.back().t) {
      res.ledger.append(row);
      if (on_record) on_record(res.steps, row.t, p);
    }
  };

  bool was_nonconvex = false;
  res.status = StepStatus::Ok;

  while (true) {
    if (!detail::all_finite(p.rho)) {
      res.status = StepStatus::BlowUp;
      res.ledger.violations.push_back({res.t, "non_finite", 0.0, 0.0});
      record(detail::safe_row(res.t, p, cfg.law));
      break;
    }
    const double rho_min = *std::min_element(p.rho.begin(), p.rho.end());
    if (rho_min < rho_floor) {
      res.status = StepStatus::PinchOff;
      res.ledger.violations.push_back({res.t, "pinch_off", rho_min, rho_floor});
      record(detail::safe_row(res.t, p, cfg.law));
      break;
    }

    GeometrySample g = sample_geometry(p);
    try {
      g.h = nonlocal_rate(cfg.law, g);
    } catch (const DegenerateGeometryError&) {
      res.status = StepStatus::MeanConvexityLost;
      res.ledger.violations.push_back({res.t, "rate_degenerate", g.intH2, 0.0});
      g.h = std::numeric_limits<double>::quiet_NaN();
      record(make_ledger_row(res.t, p, g, cfg.law));
      break;
    }
    const LedgerRow row = make_ledger_row(res.t, p, g, cfg.law);
    if (!std::isfinite(row.area) || !std::isfinite(row.h) || !std::isfinite(row.speed_max)) {
      res.status = StepStatus::BlowUp;
      res.ledger.violations.push_back({res.t, "non_finite", 0.0, 0.0});
      record(row);
      break;
    }

    if (res.steps % cfg.stepper.record_every == 0) record(row);

    if (cfg.law == FlowLaw::AreaPreserving) {
      if (row.H_min <= 0.0) {
        if (!was_nonconvex) {
          res.ledger.violations.push_back({res.t, "mean_convexity", row.H_min, 0.0});
        }
        was_nonconvex = true;
      } else {
        was_nonconvex = false;
      }
    }

    if (convergence_test(g, cfg.tolerances.convergence)) {
      res.status = StepStatus::Converged;
      record(row);
      break;
    }
    if (res.steps >= cfg.stepper.max_steps ||
        res.t >= cfg.stepper.t_end * (1.0 - 1e-14)) {
      res.status = StepStatus::MaxSteps;
      record(row);
      break;
    }

    double dt;
    if (cfg.stepper.dt) {
      dt = *cfg.stepper.dt;
    } else if (cfg.stepper.scheme == Scheme::IMEX) {
      dt = p.grid.dz();
    } else {
      dt = stable_dt(p, g.h, cfg.stepper.cfl_safety);
    }
    dt = std::min(dt, cfg.stepper.t_end - res.t);

    p = advance(p, cfg.law, dt, cfg.stepper.scheme);
    res.t += dt;
    ++res.steps;
  }

  // Final classification; degenerate end states compare as NotConverged.
  {
    GeometrySample g = sample_geometry(p);
    const double predicted = res.classification.predicted_radius;
    res.classification =
        classify_limit(p, g, cfg.tolerances.convergence, cfg.tolerances.cylinder);
    res.classification.predicted_radius = predicted;
    res.classification.volume_gain = g.volume - res.bounds.initial_volume;
  }

  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return res;
}

/// Post-run verification: every checker appropriate to the law, merged into
/// the ledger's violation list (duplicates by time and name dropped).
inline void run_all_checks(Ledger& ledger, const TheoremBounds& bounds,
                           const Tolerances& tol, FlowLaw law) {
  std::vector<Violation> found;
  if (law == FlowLaw::AreaPreserving) {
    auto a = check_area_conservation(ledger, tol.area_rel);
    auto v = check_volume_monotone(ledger, tol.volume_rel);
    found.insert(found.end(), a.begin(), a.end());
    found.insert(found.end(), v.begin(), v.end());
  }
  auto mc = check_mean_convexity(ledger);
  found.insert(found.end(), mc.begin(), mc.end());
  if (law == FlowLaw::AreaPreserving) {
    auto b = check_bounds(ledger, bounds);
    found.insert(found.end(), b.begin(), b.end());
  }
  for (const Violation& v : found) {
    bool dup = false;
    for (const Violation& w : ledger.violations) {
      if (w.check == v.check && w.t == v.t) {
        dup = true;
        break;
      }
    }
    if (!dup) ledger.violations.push_back(v);
  }
}

}  // namespace capflow
