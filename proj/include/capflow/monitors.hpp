#pragma once

// Per-run verification ledger. Every quantity with a proved conservation,
// monotonicity, positivity or bound is recorded each step; the checkers
// scan a finished ledger and report violations as data, never as errors —
// a run under violated hypotheses is a legitimate experiment.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "capflow/flow.hpp"
#include "capflow/geometry.hpp"

namespace capflow {

struct LedgerRow {
  double t = 0.0;
  double area = 0.0;
  double volume = 0.0;
  double h = 0.0;
  double H_min = 0.0;
  double H_max = 0.0;
  double v_max = 0.0;
  double A2_max = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double intH = 0.0;
  double intH2 = 0.0;
  double speed_max = 0.0;
};

struct Violation {
  double t = 0.0;
  std::string check;
  double measured = 0.0;
  double threshold = 0.0;
};

/// Append-only time series plus violation records.
struct Ledger {
  std::vector<LedgerRow> rows;
  std::vector<Violation> violations;

  void append(const LedgerRow& row) {
    if (!rows.empty() && !(row.t > rows.back().t)) {
      throw std::logic_error("Ledger: time must be strictly increasing");
    }
    rows.push_back(row);
  }
};

inline LedgerRow make_ledger_row(double t, const Profile& p, const GeometrySample& g,
                                 FlowLaw law) {
  LedgerRow row;
  row.t = t;
  row.area = g.area;
  row.volume = g.volume;
  row.h = g.h;
  row.H_min = g.h_min();
  row.H_max = g.h_max();
  row.v_max = g.v_max();
  row.A2_max = g.a2_max();
  row.rho_min = *std::min_element(p.rho.begin(), p.rho.end());
  row.rho_max = *std::max_element(p.rho.begin(), p.rho.end());
  row.intH = g.intH;
  row.intH2 = g.intH2;
  double smax = 0.0;
  switch (law) {
    case FlowLaw::AreaPreserving:
      smax = std::max(std::abs(1.0 - g.h * row.H_min), std::abs(1.0 - g.h * row.H_max));
      break;
    case FlowLaw::VolumePreserving:
      smax = std::max(std::abs(g.h - row.H_min), std::abs(g.h - row.H_max));
      break;
    case FlowLaw::PlainMCF:
      smax = std::max(std::abs(row.H_min), std::abs(row.H_max));
      break;
  }
  row.speed_max = smax;
  return row;
}

/// Radius bounds and the Main Theorem hypothesis evaluated on the initial
/// surface: rho_C is the radius of the equal-volume cylinder and
/// R_bound = rho_C + (|M_0|/omega_n)^{1/n} bounds the radius for all time.
struct TheoremBounds {
  double rho_C = 0.0;
  double R_bound = 0.0;
  bool hypothesis_holds = false;
  double initial_area = 0.0;
  double initial_volume = 0.0;
};

inline TheoremBounds theorem_bounds(const Profile& p0) {
  TheoremBounds b;
  const double wn = unit_ball_volume(p0.n);
  b.initial_volume = enclosed_volume(p0);
  b.initial_area = area(p0);
  b.rho_C = std::pow(b.initial_volume / (wn * p0.grid.d), 1.0 / p0.n);
  b.R_bound = b.rho_C + std::pow(b.initial_area / wn, 1.0 / p0.n);
  b.hypothesis_holds = b.initial_area <= b.initial_volume / p0.grid.d;
  return b;
}

/// Area must stay constant under the area-preserving law.
inline std::vector<Violation> check_area_conservation(const Ledger& L, double tol_rel) {
  std::vector<Violation> out;
  if (L.rows.empty()) return out;
  const double a0 = L.rows.front().area;
  for (const LedgerRow& r : L.rows) {
    const double drift = std::abs(r.area - a0) / a0;
    if (!(drift <= tol_rel)) out.push_back({r.t, "area_conservation", drift, tol_rel});
  }
  return out;
}

/// Enclosed volume may not decrease between consecutive records.
inline std::vector<Violation> check_volume_monotone(const Ledger& L, double tol_rel) {
  std::vector<Violation> out;
  if (L.rows.size() < 2) return out;
  const double v0 = L.rows.front().volume;
  for (size_t i = 1; i < L.rows.size(); ++i) {
    const double prev = L.rows[i - 1].volume;
    const double next = L.rows[i].volume;
    if (next < prev - tol_rel * v0) {
      out.push_back({L.rows[i].t, "volume_monotonicity", next - prev, -tol_rel * v0});
    }
  }
  return out;
}

/// H must stay positive.
inline std::vector<Violation> check_mean_convexity(const Ledger& L) {
  std::vector<Violation> out;
  for (const LedgerRow& r : L.rows) {
    if (!(r.H_min > 0.0)) out.push_back({r.t, "mean_convexity", r.H_min, 0.0});
  }
  return out;
}

/// Bounded quantities: rho within (0, R_bound), h positive and below the
/// exact Cauchy-Schwarz bound h * intH <= area, plus blow-up trend flags on
/// v_max and A2_max (last value above 10x the run median).
inline std::vector<Violation> check_bounds(const Ledger& L, const TheoremBounds& B) {
  std::vector<Violation> out;
  for (const LedgerRow& r : L.rows) {
    if (!(r.rho_max < B.R_bound)) out.push_back({r.t, "radius_upper_bound", r.rho_max, B.R_bound});
    if (!(r.rho_min > 0.0)) out.push_back({r.t, "radius_positive", r.rho_min, 0.0});
    if (!(r.h > 0.0)) out.push_back({r.t, "rate_positive", r.h, 0.0});
    const double cs = r.h * r.intH;
    if (!(cs <= r.area * (1.0 + 1e-12))) {
      out.push_back({r.t, "cauchy_schwarz", cs, r.area});
    }
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  if (L.rows.size() >= 3) {
    std::vector<double> vmax, a2max;
    vmax.reserve(L.rows.size());
    a2max.reserve(L.rows.size());
    for (const LedgerRow& r : L.rows) {
      vmax.push_back(r.v_max);
      a2max.push_back(r.A2_max);
    }
    const double vm = median(vmax);
    const double am = median(a2max);
    if (!(L.rows.back().v_max <= 10.0 * vm)) {
      out.push_back({L.rows.back().t, "v_max_trend", L.rows.back().v_max, 10.0 * vm});
    }
    if (!(L.rows.back().A2_max <= 10.0 * am)) {
      out.push_back({L.rows.back().t, "A2_max_trend", L.rows.back().A2_max, 10.0 * am});
    }
  }
  return out;
}

/// Consistency residual of the mean-curvature evolution equation between two
/// consecutive states. Along a material point moving with normal speed F,
///   dH/dt = -lap F - F |A|^2
/// (for the area-preserving law this is h lap H - (1 - h H)|A|^2). At a
/// fixed axial node the material point also drifts tangentially, which adds
/// the advection term (F rhodot / v) dH/dz. All terms are evaluated on the
/// midpoint profile; returns the max norm over interior nodes. Expected
/// magnitude O(dt + dz^2) on a smooth trajectory.
inline double h_evolution_residual(const Profile& prev, const Profile& next, double dt,
                                   FlowLaw law) {
  if (prev.m() != next.m() || prev.n != next.n) {
    throw std::invalid_argument("h_evolution_residual: incompatible profiles");
  }
  const int m = prev.m();
  const double dz = prev.grid.dz();
  Profile mid = prev;
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    mid.rho[s] = 0.5 * (prev.rho[s] + next.rho[s]);
  }
  const GeometrySample gp = sample_geometry(prev);
  const GeometrySample gn = sample_geometry(next);
  const GeometrySample gm = sample_flow_state(mid, law);
  const ScalarField F = normal_speed(law, gm);
  const ScalarField lapF = laplace_beltrami(mid, F);
  const auto rd = detail::diff1(mid.rho, dz);
  const auto Hz = detail::diff1(gm.H.values, dz);
  double res = 0.0;
  for (int i = 1; i < m - 1; ++i) {
    const size_t s = static_cast<size_t>(i);
    const double dHdt = (gn.H[i] - gp.H[i]) / dt;
    const double rhs = -lapF[i] - F[i] * gm.A2[i] + (F[i] * rd[s] / gm.v[i]) * Hz[s];
    res = std::max(res, std::abs(dHdt - rhs));
  }
  return res;
}

}  // namespace capflow
