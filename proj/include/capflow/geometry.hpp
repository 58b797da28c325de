#pragma once

// Discrete geometry of a rotationally symmetric hypersurface in R^{n+1},
// represented by its radius function rho(z) on a uniform grid over [0, d].
// The surface meets the bounding hyperplanes z = 0 and z = d orthogonally;
// that Neumann condition is built into every derivative stencil through
// even-reflection ghost nodes (rho[-1] = rho[1], rho[m] = rho[m-2]), which
// makes the discrete slope exactly zero at both ends.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace capflow {

inline constexpr double kPi = 3.14159265358979323846;

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  if (n < 1) {
    throw std::invalid_argument("unit_ball_volume: n must be >= 1");
  }
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Uniform grid on [0, d] with m nodes, z_i = i * d / (m - 1).
struct Grid {
  double d;
  int m;

  Grid(double width, int nodes) : d(width), m(nodes) {
    if (!(d > 0.0)) throw std::invalid_argument("Grid: width must be positive");
    if (m < 5) throw std::invalid_argument("Grid: need at least 5 nodes");
  }

  double dz() const { return d / (m - 1); }
  double z(int i) const { return (static_cast<double>(i) * d) / (m - 1); }
};

/// Grid-aligned scalar samples with a free-form unit tag.
struct ScalarField {
  std::vector<double> values;
  std::string unit;

  ScalarField() = default;
  ScalarField(std::vector<double> v, std::string u)
      : values(std::move(v)), unit(std::move(u)) {}

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[static_cast<size_t>(i)]; }
  double& operator[](int i) { return values[static_cast<size_t>(i)]; }
};

/// The evolving state: radius samples of an n-dimensional surface of
/// revolution between the two slabs.
struct Profile {
  Grid grid;
  int n;
  std::vector<double> rho;

  Profile(Grid g, int dim, std::vector<double> radii)
      : grid(g), n(dim), rho(std::move(radii)) {}

  int m() const { return grid.m; }

  // Positivity is an invariant of valid states, not a hard error here;
  // the stepper's pinch-off guard owns violations that arise mid-run.
  void check() const {
    if (n < 2) throw std::invalid_argument("Profile: n must be >= 2");
    if (static_cast<int>(rho.size()) != grid.m) {
      throw std::invalid_argument("Profile: rho length must match grid");
    }
    for (double r : rho) {
      if (!(r > 0.0)) throw std::invalid_argument("Profile: rho must be positive");
    }
  }
};

namespace detail {

inline double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

/// Central first difference with even-reflection ghosts. Boundary entries
/// are exactly zero by construction.
inline std::vector<double> diff1(const std::vector<double>& r, double dz) {
  const int m = static_cast<int>(r.size());
  std::vector<double> out(static_cast<size_t>(m));
  out[0] = 0.0;
  for (int i = 1; i < m - 1; ++i) {
    out[static_cast<size_t>(i)] = (r[static_cast<size_t>(i + 1)] - r[static_cast<size_t>(i - 1)]) / (2.0 * dz);
  }
  out[static_cast<size_t>(m - 1)] = 0.0;
  return out;
}

/// Second difference with the same ghost convention; the stencil folds to
/// 2(r_1 - r_0)/dz^2 at the left end and symmetrically at the right.
inline std::vector<double> diff2(const std::vector<double>& r, double dz) {
  const int m = static_cast<int>(r.size());
  const double inv = 1.0 / (dz * dz);
  std::vector<double> out(static_cast<size_t>(m));
  out[0] = 2.0 * (r[1] - r[0]) * inv;
  for (int i = 1; i < m - 1; ++i) {
    out[static_cast<size_t>(i)] =
        (r[static_cast<size_t>(i + 1)] - 2.0 * r[static_cast<size_t>(i)] + r[static_cast<size_t>(i - 1)]) * inv;
  }
  out[static_cast<size_t>(m - 1)] = 2.0 * (r[static_cast<size_t>(m - 2)] - r[static_cast<size_t>(m - 1)]) * inv;
  return out;
}

/// Composite trapezoid with uniform spacing.
inline double trapezoid(const std::vector<double>& f, double dz) {
  const size_t m = f.size();
  double sum = 0.5 * (f[0] + f[m - 1]);
  for (size_t i = 1; i + 1 < m; ++i) sum += f[i];
  return sum * dz;
}

}  // namespace detail

inline ScalarField derivative_first(const Profile& p) {
  return {detail::diff1(p.rho, p.grid.dz()), "dimensionless"};
}

inline ScalarField derivative_second(const Profile& p) {
  return {detail::diff2(p.rho, p.grid.dz()), "1/length"};
}

/// Tilt v = sqrt(1 + rhodot^2); exactly 1 at both boundary nodes.
inline ScalarField tilt(const Profile& p) {
  auto rd = detail::diff1(p.rho, p.grid.dz());
  for (double& x : rd) x = std::sqrt(1.0 + x * x);
  return {std::move(rd), "dimensionless"};
}

/// Principal curvatures of the revolution surface,
///   kappa1 = -rhoddot / (1 + rhodot^2)^{3/2}   (profile direction)
///   kappa2 =  1 / (rho sqrt(1 + rhodot^2))     (rotational directions)
inline std::pair<ScalarField, ScalarField> principal_curvatures(const Profile& p) {
  const double dz = p.grid.dz();
  const auto rd = detail::diff1(p.rho, dz);
  const auto rdd = detail::diff2(p.rho, dz);
  const int m = p.m();
  std::vector<double> k1(static_cast<size_t>(m)), k2(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    const double w = 1.0 + rd[s] * rd[s];
    const double sw = std::sqrt(w);
    k1[s] = -rdd[s] / (w * sw);
    k2[s] = 1.0 / (p.rho[s] * sw);
  }
  return {ScalarField{std::move(k1), "1/length"}, ScalarField{std::move(k2), "1/length"}};
}

/// Mean curvature H = kappa1 + (n-1) kappa2, evaluated from
///   H = -rhoddot/(1+rhodot^2)^{3/2} + (n-1)/(rho sqrt(1+rhodot^2)).
inline ScalarField mean_curvature(const Profile& p) {
  const double dz = p.grid.dz();
  const auto rd = detail::diff1(p.rho, dz);
  const auto rdd = detail::diff2(p.rho, dz);
  const int m = p.m();
  std::vector<double> H(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    const double w = 1.0 + rd[s] * rd[s];
    const double sw = std::sqrt(w);
    H[s] = -rdd[s] / (w * sw) + (p.n - 1) / (p.rho[s] * sw);
  }
  return {std::move(H), "1/length"};
}

/// |A|^2 = rhoddot^2/(1+rhodot^2)^3 + (n-1)/(rho^2 (1+rhodot^2)),
/// equal to kappa1^2 + (n-1) kappa2^2 up to rounding.
inline ScalarField second_fundamental_norm(const Profile& p) {
  const double dz = p.grid.dz();
  const auto rd = detail::diff1(p.rho, dz);
  const auto rdd = detail::diff2(p.rho, dz);
  const int m = p.m();
  std::vector<double> a2(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    const double w = 1.0 + rd[s] * rd[s];
    a2[s] = rdd[s] * rdd[s] / (w * w * w) + (p.n - 1) / (p.rho[s] * p.rho[s] * w);
  }
  return {std::move(a2), "1/length^2"};
}

/// Surface integral of f over the revolution surface with the induced
/// measure: n omega_n * trapezoid of f rho^{n-1} sqrt(1 + rhodot^2).
inline double integrate_over_surface(const Profile& p, const ScalarField& f) {
  if (f.size() != p.m()) {
    throw std::invalid_argument("integrate_over_surface: field/grid size mismatch");
  }
  const double dz = p.grid.dz();
  const auto rd = detail::diff1(p.rho, dz);
  const int m = p.m();
  std::vector<double> g(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    const double mu = detail::ipow(p.rho[s], p.n - 1) * std::sqrt(1.0 + rd[s] * rd[s]);
    g[s] = f[i] * mu;
  }
  return p.n * unit_ball_volume(p.n) * detail::trapezoid(g, dz);
}

/// Surface area |M| = n omega_n int rho^{n-1} sqrt(1 + rhodot^2) dz.
inline double area(const Profile& p) {
  ScalarField one{std::vector<double>(static_cast<size_t>(p.m()), 1.0), "dimensionless"};
  return integrate_over_surface(p, one);
}

/// Volume enclosed between the surface and the two slabs,
/// V = omega_n int rho^n dz.
inline double enclosed_volume(const Profile& p) {
  const int m = p.m();
  std::vector<double> g(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    g[static_cast<size_t>(i)] = detail::ipow(p.rho[static_cast<size_t>(i)], p.n);
  }
  return unit_ball_volume(p.n) * detail::trapezoid(g, p.grid.dz());
}

/// Laplace-Beltrami operator of an axial function f on the revolution
/// surface, in conservative form:
///   lap f = (F_{i+1/2} - F_{i-1/2}) / (dz * rho^{n-1} v),
///   F_{i+1/2} = w_{i+1/2} (f_{i+1} - f_i)/dz,  w = rho^{n-1}/v,
/// with midpoint weights averaged and even-reflection ghosts for f and w.
/// The boundary fold F_{-1/2} = -F_{1/2} gives zero net boundary flux, so
/// the discrete surface integral of lap f vanishes identically.
inline ScalarField laplace_beltrami(const Profile& p, const ScalarField& f) {
  if (f.size() != p.m()) {
    throw std::invalid_argument("laplace_beltrami: field/grid size mismatch");
  }
  const int m = p.m();
  const double dz = p.grid.dz();
  const auto rd = detail::diff1(p.rho, dz);
  std::vector<double> w(static_cast<size_t>(m)), meas(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    const double v = std::sqrt(1.0 + rd[s] * rd[s]);
    const double rn = detail::ipow(p.rho[s], p.n - 1);
    w[s] = rn / v;
    meas[s] = rn * v;
  }
  // flux[i] = F_{i-1/2}, i = 0..m
  std::vector<double> flux(static_cast<size_t>(m + 1));
  for (int i = 1; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    flux[s] = 0.5 * (w[s - 1] + w[s]) * (f[i] - f[i - 1]) / dz;
  }
  flux[0] = -flux[1];
  flux[static_cast<size_t>(m)] = -flux[static_cast<size_t>(m - 1)];
  std::vector<double> out(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    out[s] = (flux[s + 1] - flux[s]) / (dz * meas[s]);
  }
  return {std::move(out), f.unit + "/length^2"};
}

/// Every pointwise field and global scalar of the surface at one instant.
/// The nonlocal rate h belongs to the flow law and is filled by the flow
/// module; it is NaN straight out of sample_geometry.
struct GeometrySample {
  ScalarField H;
  ScalarField kappa1;
  ScalarField kappa2;
  ScalarField A2;
  ScalarField v;
  double area = 0.0;
  double volume = 0.0;
  double intH = 0.0;
  double intH2 = 0.0;
  double h = std::numeric_limits<double>::quiet_NaN();

  double h_min() const {
    double x = H.values[0];
    for (double y : H.values) x = std::min(x, y);
    return x;
  }
  double h_max() const {
    double x = H.values[0];
    for (double y : H.values) x = std::max(x, y);
    return x;
  }
  double v_max() const {
    double x = v.values[0];
    for (double y : v.values) x = std::max(x, y);
    return x;
  }
  double a2_max() const {
    double x = A2.values[0];
    for (double y : A2.values) x = std::max(x, y);
    return x;
  }
};

/// One-pass evaluation of all geometric quantities; bitwise identical to
/// composing the individual operations above.
inline GeometrySample sample_geometry(const Profile& p) {
  const int m = p.m();
  const double dz = p.grid.dz();
  const double nw = p.n * unit_ball_volume(p.n);
  const auto rd = detail::diff1(p.rho, dz);
  const auto rdd = detail::diff2(p.rho, dz);

  GeometrySample g;
  g.H.values.resize(static_cast<size_t>(m));
  g.kappa1.values.resize(static_cast<size_t>(m));
  g.kappa2.values.resize(static_cast<size_t>(m));
  g.A2.values.resize(static_cast<size_t>(m));
  g.v.values.resize(static_cast<size_t>(m));
  g.H.unit = g.kappa1.unit = g.kappa2.unit = "1/length";
  g.A2.unit = "1/length^2";
  g.v.unit = "dimensionless";

  std::vector<double> w_area(static_cast<size_t>(m)), w_vol(static_cast<size_t>(m));
  std::vector<double> w_h(static_cast<size_t>(m)), w_h2(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const size_t s = static_cast<size_t>(i);
    const double w = 1.0 + rd[s] * rd[s];
    const double sw = std::sqrt(w);
    const double k1 = -rdd[s] / (w * sw);
    const double k2 = 1.0 / (p.rho[s] * sw);
    const double H = -rdd[s] / (w * sw) + (p.n - 1) / (p.rho[s] * sw);
    const double a2 = rdd[s] * rdd[s] / (w * w * w) + (p.n - 1) / (p.rho[s] * p.rho[s] * w);
    g.kappa1[i] = k1;
    g.kappa2[i] = k2;
    g.H[i] = H;
    g.A2[i] = a2;
    g.v[i] = sw;
    const double mu = detail::ipow(p.rho[s], p.n - 1) * sw;
    w_area[s] = 1.0 * mu;
    w_vol[s] = detail::ipow(p.rho[s], p.n);
    w_h[s] = H * mu;
    w_h2[s] = H * H * mu;
  }
  g.area = nw * detail::trapezoid(w_area, dz);
  g.volume = unit_ball_volume(p.n) * detail::trapezoid(w_vol, dz);
  g.intH = nw * detail::trapezoid(w_h, dz);
  g.intH2 = nw * detail::trapezoid(w_h2, dz);
  return g;
}

}  // namespace capflow
