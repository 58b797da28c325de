#pragma once

// Test-only oracles, deliberately independent of the library's numerical
// paths: Gauss-Legendre quadrature, dense linear solves, high-order
// differentiation of closed forms, the analytic cosine profile, and a
// constant-mean-curvature shooting construction for unduloid profiles.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "capflow/geometry.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on the
/// Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<size_t>(n), 0.0);
  w.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double t_new = t - p1 / dp;
      if (std::abs(t_new - t) < 1e-15) {
        t = t_new;
        break;
      }
      t = t_new;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[static_cast<size_t>(i)] = t;
    w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

/// Composite 12-point Gauss-Legendre quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64) {
  static std::vector<double> xs, ws;
  if (xs.empty()) gauss_legendre(12, xs, ws);
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + (b - a) * k / panels;
    const double hi = a + (b - a) * (k + 1) / panels;
    double s = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      s += ws[i] * f(0.5 * (lo + hi) + 0.5 * (hi - lo) * xs[i]);
    }
    total += 0.5 * (hi - lo) * s;
  }
  return total;
}

/// Gaussian elimination with partial pivoting; the dense counterpart to the
/// library's tridiagonal solve.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> A,
                                       std::vector<double> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    }
    if (A[piv][col] == 0.0) throw std::runtime_error("dense_solve: singular matrix");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (size_t r = n; r-- > 0;) {
    double s = b[r];
    for (size_t c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
    x[r] = s / A[r][r];
  }
  return x;
}

/// Fourth-order five-point derivative of a closed-form function.
inline double deriv5(const std::function<double(double)>& f, double z, double h = 1e-3) {
  return (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) / (12 * h);
}

/// Closed forms for rho = r0 + eps cos(k pi z / d) in dimension n.
struct CosineProfile {
  double r0 = 3.0;
  double eps = 0.1;
  int k = 1;
  double d = 1.0;
  int n = 2;

  double omega() const { return k * kPi / d; }
  double rho(double z) const { return r0 + eps * std::cos(omega() * z); }
  double rdot(double z) const { return -eps * omega() * std::sin(omega() * z); }
  double rddot(double z) const { return -eps * omega() * omega() * std::cos(omega() * z); }
  double rdddot(double z) const {
    return eps * omega() * omega() * omega() * std::sin(omega() * z);
  }
  double v(double z) const { return std::sqrt(1.0 + rdot(z) * rdot(z)); }
  double H(double z) const {
    const double w = 1.0 + rdot(z) * rdot(z);
    return -rddot(z) / (w * std::sqrt(w)) + (n - 1) / (rho(z) * std::sqrt(w));
  }
  double Hdot(double z) const {
    const double w = 1.0 + rdot(z) * rdot(z);
    const double wd = 2.0 * rdot(z) * rddot(z);
    const double t1 = -rdddot(z) / std::pow(w, 1.5) + 1.5 * rddot(z) * wd / std::pow(w, 2.5);
    const double t2 = (n - 1) * (-rdot(z) / (rho(z) * rho(z) * std::sqrt(w)) -
                                 0.5 * wd / (rho(z) * std::pow(w, 1.5)));
    return t1 + t2;
  }
  double A2(double z) const {
    const double w = 1.0 + rdot(z) * rdot(z);
    return rddot(z) * rddot(z) / (w * w * w) + (n - 1) / (rho(z) * rho(z) * w);
  }
  double mu(double z) const {
    return n * capflow::unit_ball_volume(n) * std::pow(rho(z), n - 1) * v(z);
  }
  /// Laplace-Beltrami of H, with the outermost derivative taken by deriv5 on
  /// the closed-form flux.
  double lapH(double z) const {
    auto flux = [this](double zz) {
      return std::pow(rho(zz), n - 1) / v(zz) * Hdot(zz);
    };
    return deriv5(flux, z) / (std::pow(rho(z), n - 1) * v(z));
  }

  capflow::Profile sample(int m) const {
    capflow::Grid grid(d, m);
    std::vector<double> r(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) r[static_cast<size_t>(i)] = rho(grid.z(i));
    return capflow::Profile{grid, n, std::move(r)};
  }
};

/// Constant-mean-curvature profile ODE (H = kappa1 + (n-1) kappa2 constant):
///   rhoddot = (n-1)(1 + rhodot^2)/rho - H (1 + rhodot^2)^{3/2}.
struct CmcState {
  double rho;
  double p;
};

inline CmcState cmc_rhs(const CmcState& y, double H, int n) {
  const double w = 1.0 + y.p * y.p;
  return {y.p, (n - 1) * w / y.rho - H * w * std::sqrt(w)};
}

inline CmcState rk4_step(const CmcState& y, double h, double H, int n) {
  const CmcState k1 = cmc_rhs(y, H, n);
  const CmcState k2 = cmc_rhs({y.rho + 0.5 * h * k1.rho, y.p + 0.5 * h * k1.p}, H, n);
  const CmcState k3 = cmc_rhs({y.rho + 0.5 * h * k2.rho, y.p + 0.5 * h * k2.p}, H, n);
  const CmcState k4 = cmc_rhs({y.rho + h * k3.rho, y.p + h * k3.p}, H, n);
  return {y.rho + h / 6.0 * (k1.rho + 2 * k2.rho + 2 * k3.rho + k4.rho),
          y.p + h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
}

/// Axial distance from a neck (rhodot = 0, rho rising) to the next bulge
/// (rhodot back to 0) of the unduloid with the given neck radius and H.
inline double unduloid_half_period(double neck, double H, int n) {
  CmcState y{neck, 0.0};
  double z = 0.0;
  const double h = 1e-5;
  double prev_p = 0.0;
  for (long i = 0; i < 10000000; ++i) {
    const CmcState y2 = rk4_step(y, h, H, n);
    const double z2 = z + h;
    if (i > 10 && prev_p > 0.0 && y2.p <= 0.0) {
      // linear interpolation of the zero crossing
      return z + h * prev_p / (prev_p - y2.p);
    }
    prev_p = y2.p;
    y = y2;
    z = z2;
  }
  throw std::runtime_error("unduloid_half_period: no bulge found");
}

/// Unduloid segment meeting both slabs orthogonally: the (neck, H) unduloid
/// rescaled so its half period equals d, sampled on an m-node grid.
inline capflow::Profile unduloid_profile(int m, double d, double neck, double H, int n) {
  const double zstar = unduloid_half_period(neck, H, n);
  const double lam = d / zstar;
  const double neck_s = lam * neck;
  const double H_s = H / lam;
  capflow::Grid grid(d, m);
  std::vector<double> out(static_cast<size_t>(m));
  out[0] = neck_s;
  CmcState y{neck_s, 0.0};
  const int substeps = 1000;
  for (int i = 1; i < m; ++i) {
    const double h = (grid.z(i) - grid.z(i - 1)) / substeps;
    for (int s = 0; s < substeps; ++s) y = rk4_step(y, h, H_s, n);
    out[static_cast<size_t>(i)] = y.rho;
  }
  return capflow::Profile{grid, n, std::move(out)};
}

/// Deterministic positive test profile: a cylinder plus a few random cosine
/// modes and mild node noise.
inline capflow::Profile random_profile(std::mt19937& rng, int m = 41, int n = 2) {
  std::uniform_real_distribution<double> base(0.5, 4.0);
  std::uniform_real_distribution<double> amp(-0.2, 0.2);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  const double r0 = base(rng);
  const double a1 = r0 * amp(rng);
  const double a2 = r0 * amp(rng);
  capflow::Grid grid(1.0, m);
  std::vector<double> r(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double z = grid.z(i);
    double val = r0 + a1 * std::cos(kPi * z) + a2 * std::cos(2.0 * kPi * z) +
                 r0 * noise(rng);
    val = std::max(val, 0.05 * r0);
    r[static_cast<size_t>(i)] = val;
  }
  return capflow::Profile{grid, n, std::move(r)};
}

}  // namespace oracle
