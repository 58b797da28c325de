#pragma once

// Time integration of the radial graph PDE. Explicit Euler and midpoint RK2
// recompute the full geometry (and the nonlocal rate) at every stage. The
// linearly implicit IMEX scheme treats the stiff second-order term
// s * rhoddot / (1 + rhodot^2) backward-Euler style with coefficients lagged
// at the step start (s = h for the area-preserving law, 1 otherwise), which
// removes the parabolic dt ~ dz^2 restriction. The solve is rearranged to
// the increment form
//   (I - dt C D2) delta = dt * graph_velocity(rho_old),  rho_new = rho_old + delta,
// algebraically identical to solving for rho_new directly but free of
// state-magnitude roundoff: exact equilibria stay put bitwise.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "capflow/flow.hpp"
#include "capflow/geometry.hpp"

namespace capflow {

enum class Scheme { ExplicitEuler, ExplicitRK2, IMEX };

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::ExplicitEuler: return "ExplicitEuler";
    case Scheme::ExplicitRK2: return "ExplicitRK2";
    case Scheme::IMEX: return "IMEX";
  }
  return "?";
}

struct StepperConfig {
  Scheme scheme = Scheme::IMEX;
  std::optional<double> dt;   // empty = auto: dz for IMEX, CFL bound otherwise
  double cfl_safety = 0.8;
  double t_end = 100.0;
  long max_steps = 500000;
  double pinch_floor = 1e-3;  // fraction of the initial minimum radius
  int record_every = 10;
};

enum class StepStatus { Ok, Converged, PinchOff, MeanConvexityLost, BlowUp, MaxSteps };

inline std::string to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Ok: return "Ok";
    case StepStatus::Converged: return "Converged";
    case StepStatus::PinchOff: return "PinchOff";
    case StepStatus::MeanConvexityLost: return "MeanConvexityLost";
    case StepStatus::BlowUp: return "BlowUp";
    case StepStatus::MaxSteps: return "MaxSteps";
  }
  return "?";
}

struct StepOutcome {
  Profile profile;
  double t = 0.0;
  StepStatus status = StepStatus::Ok;
};

inline constexpr double kRateFloor = 1e-12;
inline constexpr double kDtMax = 1e-2;

/// Parabolic stability bound sigma dz^2 / (2 max(h, floor)), capped at
/// kDtMax; used only by the explicit schemes.
inline double stable_dt(const Profile& p, double h, double sigma) {
  const double dz = p.grid.dz();
  const double dt = sigma * dz * dz / (2.0 * std::max(h, kRateFloor));
  return std::min(dt, kDtMax);
}

namespace detail {

/// Thomas algorithm for a tridiagonal system. The IMEX matrix is strictly
/// diagonally dominant for every dt > 0 and C >= 0, which the caller
/// asserts; the elimination cannot hit a zero pivot.
inline std::vector<double> thomas_solve(const std::vector<double>& lower,
                                        const std::vector<double>& diag,
                                        const std::vector<double>& upper,
                                        const std::vector<double>& rhs) {
  const size_t m = diag.size();
  std::vector<double> cp(m), dp(m);
  if (diag[0] == 0.0) throw std::logic_error("thomas_solve: zero pivot");
  cp[0] = upper[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (size_t i = 1; i < m; ++i) {
    const double den = diag[i] - lower[i] * cp[i - 1];
    if (den == 0.0) throw std::logic_error("thomas_solve: zero pivot");
    cp[i] = upper[i] / den;
    dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / den;
  }
  std::vector<double> x(m);
  x[m - 1] = dp[m - 1];
  for (size_t i = m - 1; i-- > 0;) {
    x[i] = dp[i] - cp[i] * x[i + 1];
  }
  return x;
}

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace detail

/// One explicit step (forward Euler or midpoint RK2).
inline Profile step_explicit(const Profile& p, FlowLaw law, double dt, Scheme scheme) {
  Profile out = p;
  const ScalarField k1 = flow_rhs(p, law);
  if (scheme == Scheme::ExplicitEuler) {
    for (int i = 0; i < p.m(); ++i) out.rho[static_cast<size_t>(i)] += dt * k1[i];
    return out;
  }
  if (scheme != Scheme::ExplicitRK2) {
    throw std::invalid_argument("step_explicit: scheme must be Euler or RK2");
  }
  Profile half = p;
  for (int i = 0; i < p.m(); ++i) half.rho[static_cast<size_t>(i)] += 0.5 * dt * k1[i];
  const ScalarField k2 = flow_rhs(half, law);
  for (int i = 0; i < p.m(); ++i) out.rho[static_cast<size_t>(i)] += dt * k2[i];
  return out;
}

/// One linearly implicit step: solves (I - dt C D2) rho_new = rho_old + dt E
/// with C_i = s/(1 + rhodot_i^2), D2 the ghost-folded second-difference
/// matrix (row 0: diagonal -2/dz^2, super-entry +2/dz^2, symmetric fold at
/// the last row) and E the lagged explicit remainder, via the increment
/// rearrangement described at the top of this header. The nonlocal rate is
/// frozen across the step.
inline Profile step_imex(const Profile& p, FlowLaw law, double dt) {
  const int m = p.m();
  const double dz = p.grid.dz();
  const GeometrySample g = sample_flow_state(p, law);
  const ScalarField vel = graph_velocity(p, normal_speed(law, g));
  const auto rd = detail::diff1(p.rho, dz);

  // Diffusion scale of the stiff term; anti-diffusive states (h < 0 under
  // the area-preserving law) are kept fully explicit so the matrix stays
  // diagonally dominant.
  const double s = (law == FlowLaw::AreaPreserving) ? std::max(g.h, 0.0) : 1.0;

  std::vector<double> lower(static_cast<size_t>(m), 0.0);
  std::vector<double> diag(static_cast<size_t>(m), 1.0);
  std::vector<double> upper(static_cast<size_t>(m), 0.0);
  std::vector<double> rhs(static_cast<size_t>(m));
  const double inv = 1.0 / (dz * dz);
  for (int i = 0; i < m; ++i) {
    const size_t k = static_cast<size_t>(i);
    const double a = dt * (s / (1.0 + rd[k] * rd[k])) * inv;
    if (!(a >= 0.0)) throw std::logic_error("step_imex: negative diffusion weight");
    diag[k] = 1.0 + 2.0 * a;
    if (i == 0) {
      upper[k] = -2.0 * a;
    } else if (i == m - 1) {
      lower[k] = -2.0 * a;
    } else {
      lower[k] = -a;
      upper[k] = -a;
    }
    rhs[k] = dt * vel[i];
  }
  const std::vector<double> delta = detail::thomas_solve(lower, diag, upper, rhs);
  Profile out = p;
  for (int i = 0; i < m; ++i) out.rho[static_cast<size_t>(i)] += delta[static_cast<size_t>(i)];
  return out;
}

/// Scheme dispatch.
inline Profile advance(const Profile& p, FlowLaw law, double dt, Scheme scheme) {
  if (scheme == Scheme::IMEX) return step_imex(p, law, dt);
  return step_explicit(p, law, dt, scheme);
}

}  // namespace capflow
