#pragma once

// Convergence detection and limit-shape identification. The flow stops when
// the surface is a discrete cylinder (constant H and flat profile); the
// classifier separately decides whether a constant-mean-curvature end state
// is the cylinder or some other Delaunay-type surface, which can only occur
// when the |M_0| <= V/d hypothesis fails.

#include <cmath>
#include <limits>
#include <string>

#include "capflow/geometry.hpp"

namespace capflow {

enum class Verdict { Cylinder, NonCylinderCMC, NotConverged };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Cylinder: return "Cylinder";
    case Verdict::NonCylinderCMC: return "NonCylinderCMC";
    case Verdict::NotConverged: return "NotConverged";
  }
  return "?";
}

struct ClassificationResult {
  Verdict verdict = Verdict::NotConverged;
  double limit_radius = std::numeric_limits<double>::quiet_NaN();
  double predicted_radius = std::numeric_limits<double>::quiet_NaN();
  double H_spread = std::numeric_limits<double>::quiet_NaN();
  double profile_residual = std::numeric_limits<double>::quiet_NaN();
  double volume_gain = std::numeric_limits<double>::quiet_NaN();
};

/// Radius of the cylinder with the given surface area:
/// solves |M| = n omega_n rho^{n-1} d.
inline double predicted_cylinder_radius(double surface_area, int n, double d) {
  return std::pow(surface_area / (n * unit_ball_volume(n) * d), 1.0 / (n - 1));
}

/// Relative spread of H over the surface, (H_max - H_min) / mean H with the
/// area-weighted mean intH / area.
inline double h_spread(const GeometrySample& g) {
  const double mean = g.intH / g.area;
  if (!(std::abs(mean) > 0.0)) return std::numeric_limits<double>::infinity();
  return (g.h_max() - g.h_min()) / std::abs(mean);
}

inline double max_abs_slope(const GeometrySample& g) {
  const double vmax = g.v_max();
  return std::sqrt(std::max(vmax * vmax - 1.0, 0.0));
}

/// The run's stopping rule: H constant to tolerance and the profile flat to
/// tolerance. Both hold exactly in the cylindrical limit the Main Theorem
/// guarantees.
inline bool convergence_test(const GeometrySample& g, double tol) {
  return h_spread(g) <= tol && max_abs_slope(g) <= tol;
}

/// Limit-shape verdict. The gate is constancy of H (a CMC end state); the
/// cylinder/non-cylinder dichotomy is then decided by the flatness residual
/// max|rho - mean| / mean. A constant-H state with a non-flat profile is an
/// unduloid-type surface, reported without sub-classifying the Delaunay
/// family.
inline ClassificationResult classify_limit(const Profile& p, const GeometrySample& g,
                                           double convergence_tol, double cylinder_tol) {
  ClassificationResult res;
  res.H_spread = h_spread(g);
  double mean = 0.0;
  for (double r : p.rho) mean += r;
  mean /= p.m();
  double dev = 0.0;
  for (double r : p.rho) dev = std::max(dev, std::abs(r - mean));
  res.profile_residual = dev / mean;
  if (!(res.H_spread <= convergence_tol)) {
    res.verdict = Verdict::NotConverged;
    return res;
  }
  if (res.profile_residual <= cylinder_tol) {
    res.verdict = Verdict::Cylinder;
    res.limit_radius = mean;
  } else {
    res.verdict = Verdict::NonCylinderCMC;
    res.limit_radius = mean;
  }
  return res;
}

}  // namespace capflow
