#pragma once

// Initial-profile families compatible with the free Neumann boundary
// conditions, plus the pre-run hypothesis report.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "capflow/geometry.hpp"

namespace capflow {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioFamily { Cylinder, Cosine, Bump };

inline std::string to_string(ScenarioFamily f) {
  switch (f) {
    case ScenarioFamily::Cylinder: return "Cylinder";
    case ScenarioFamily::Cosine: return "Cosine";
    case ScenarioFamily::Bump: return "Bump";
  }
  return "?";
}

struct ScenarioSpec {
  ScenarioFamily family = ScenarioFamily::Cylinder;
  double r0 = 1.0;
  // Cosine: rho = r0 + epsilon cos(k pi z / d)
  double epsilon = 0.0;
  int k = 1;
  // Bump: rho = r0 + amplitude exp(-((z-center)/width)^2) * cutoff(z)
  double amplitude = 0.0;
  double center = 0.5;
  double width = 0.1;
  int n = 2;
  double d = 1.0;
  int m = 201;
};

namespace detail {

// Quintic smoothstep: s(0)=0, s(1)=1, zero first and second derivative at
// both ends.
inline double smoothstep5(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

// Cutoff forcing exactly zero value and slope over the outer 10% of [0, d].
inline double bump_cutoff(double z, double d) {
  const double edge = 0.1 * d;
  return smoothstep5(z / edge) * smoothstep5((d - z) / edge);
}

}  // namespace detail

inline Profile build(const ScenarioSpec& spec) {
  const Grid grid(spec.d, spec.m);
  if (spec.n < 2) throw ScenarioError("scenario: n must be >= 2");
  std::vector<double> rho(static_cast<size_t>(spec.m));
  for (int i = 0; i < spec.m; ++i) {
    const double z = grid.z(i);
    double r = spec.r0;
    switch (spec.family) {
      case ScenarioFamily::Cylinder:
        break;
      case ScenarioFamily::Cosine:
        r += spec.epsilon * std::cos(spec.k * kPi * z / spec.d);
        break;
      case ScenarioFamily::Bump: {
        const double arg = (z - spec.center) / spec.width;
        r += spec.amplitude * std::exp(-arg * arg) * detail::bump_cutoff(z, spec.d);
        break;
      }
    }
    rho[static_cast<size_t>(i)] = r;
  }
  const double lo = *std::min_element(rho.begin(), rho.end());
  if (!(lo > 0.0)) {
    throw ScenarioError("scenario: profile radius must stay positive (min rho = " +
                        std::to_string(lo) + ")");
  }
  if (spec.family == ScenarioFamily::Cosine && spec.k < 1) {
    throw ScenarioError("scenario: cosine wavenumber k must be >= 1");
  }
  if (spec.family == ScenarioFamily::Bump &&
      !(spec.center > 0.0 && spec.center < spec.d && spec.width > 0.0)) {
    throw ScenarioError("scenario: bump center must lie in (0, d) with positive width");
  }
  Profile p{grid, spec.n, std::move(rho)};
  p.check();
  return p;
}

/// Pre-run report on the Main Theorem hypotheses; purely informational.
struct ScenarioReport {
  bool mean_convex = false;
  double H_min = 0.0;
  bool hypothesis_holds = false;  // |M_0| <= V/d
  double area = 0.0;
  double V_over_d = 0.0;
};

inline ScenarioReport validate(const Profile& p) {
  const GeometrySample g = sample_geometry(p);
  ScenarioReport rep;
  rep.H_min = g.h_min();
  rep.mean_convex = rep.H_min > 0.0;
  rep.area = g.area;
  rep.V_over_d = g.volume / p.grid.d;
  rep.hypothesis_holds = rep.area <= rep.V_over_d;
  return rep;
}

}  // namespace capflow
