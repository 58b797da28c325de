#pragma once

// The three flow laws and their normal speeds. Speeds are signed along the
// outer unit normal; the graph reformulation converts them to a radial
// velocity via drho/dt = speed * sqrt(1 + rhodot^2).

#include <stdexcept>
#include <string>

#include "capflow/geometry.hpp"

namespace capflow {

enum class FlowLaw { AreaPreserving, VolumePreserving, PlainMCF };

inline std::string to_string(FlowLaw law) {
  switch (law) {
    case FlowLaw::AreaPreserving: return "AreaPreserving";
    case FlowLaw::VolumePreserving: return "VolumePreserving";
    case FlowLaw::PlainMCF: return "PlainMCF";
  }
  return "?";
}

/// Thrown when the area-preserving rate h = intH/intH2 is undefined because
/// int H^2 dmu has degenerated; signals total loss of mean convexity.
struct DegenerateGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nonlocal rate h(t):
///   AreaPreserving   -> int H dmu / int H^2 dmu
///   VolumePreserving -> int H dmu / |M|  (the average of H)
///   PlainMCF         -> 0
inline double nonlocal_rate(FlowLaw law, const GeometrySample& g) {
  switch (law) {
    case FlowLaw::AreaPreserving:
      if (!(g.intH2 > 0.0)) {
        throw DegenerateGeometryError("nonlocal_rate: int H^2 dmu <= 0");
      }
      return g.intH / g.intH2;
    case FlowLaw::VolumePreserving:
      return g.intH / g.area;
    case FlowLaw::PlainMCF:
      return 0.0;
  }
  return 0.0;
}

/// sample_geometry plus the law's rate filled in.
inline GeometrySample sample_flow_state(const Profile& p, FlowLaw law) {
  GeometrySample g = sample_geometry(p);
  g.h = nonlocal_rate(law, g);
  return g;
}

/// Normal speed field; g.h must already be filled.
///   AreaPreserving   -> 1 - h H
///   VolumePreserving -> h - H
///   PlainMCF         -> -H
inline ScalarField normal_speed(FlowLaw law, const GeometrySample& g) {
  ScalarField out{std::vector<double>(g.H.values.size()), "1/time"};
  const int m = g.H.size();
  switch (law) {
    case FlowLaw::AreaPreserving:
      for (int i = 0; i < m; ++i) out[i] = 1.0 - g.h * g.H[i];
      break;
    case FlowLaw::VolumePreserving:
      for (int i = 0; i < m; ++i) out[i] = g.h - g.H[i];
      break;
    case FlowLaw::PlainMCF:
      for (int i = 0; i < m; ++i) out[i] = -g.H[i];
      break;
  }
  return out;
}

/// Radial velocity of the graph: drho/dt = speed * v, with v the tilt.
inline ScalarField graph_velocity(const Profile& p, const ScalarField& speed) {
  if (speed.size() != p.m()) {
    throw std::invalid_argument("graph_velocity: field/grid size mismatch");
  }
  ScalarField vel = tilt(p);
  for (int i = 0; i < p.m(); ++i) vel[i] = speed[i] * vel[i];
  vel.unit = "length/time";
  return vel;
}

/// Convenience: full right-hand side drho/dt for one state.
inline ScalarField flow_rhs(const Profile& p, FlowLaw law) {
  const GeometrySample g = sample_flow_state(p, law);
  return graph_velocity(p, normal_speed(law, g));
}

}  // namespace capflow
