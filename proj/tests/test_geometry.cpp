#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "capflow/geometry.hpp"
#include "oracles.hpp"

using namespace capflow;

namespace {

Profile cylinder(double r0, int n = 2, double d = 1.0, int m = 201) {
  Grid grid(d, m);
  return Profile{grid, n, std::vector<double>(static_cast<size_t>(m), r0)};
}

Profile sphere_cap(double R, double d, int m, int n = 2) {
  Grid grid(d, m);
  std::vector<double> r(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double z = grid.z(i);
    r[static_cast<size_t>(i)] = std::sqrt(R * R - z * z);
  }
  return Profile{grid, n, std::move(r)};
}

}  // namespace

TEST_CASE("unit ball volume") {
  CHECK(unit_ball_volume(1) == Catch::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == Catch::Approx(kPi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == Catch::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(unit_ball_volume(0), std::invalid_argument);
  CHECK_THROWS_AS(unit_ball_volume(-3), std::invalid_argument);
}

TEST_CASE("grid invariants") {
  Grid g(1.0, 201);
  CHECK(g.z(0) == 0.0);
  CHECK(g.z(200) == 1.0);
  CHECK(g.dz() == Catch::Approx(0.005).epsilon(1e-15));
  CHECK_THROWS_AS(Grid(0.0, 201), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1.0, 4), std::invalid_argument);
}

TEST_CASE("first derivative: constants, boundary zeros, cosine oracle") {
  const auto flat = derivative_first(cylinder(3.0));
  for (double x : flat.values) CHECK(x == 0.0);

  oracle::CosineProfile cp;  // r0=3, eps=0.1, k=1, d=1, n=2
  const Profile p = cp.sample(201);
  const auto d1 = derivative_first(p);
  CHECK(d1[0] == 0.0);
  CHECK(d1[200] == 0.0);
  // z = 0.5: analytic slope -0.1 pi
  CHECK(std::abs(d1[100] - cp.rdot(0.5)) < 3e-5);
}

TEST_CASE("second derivative: constants, endpoint stencil, quadratic exactness") {
  const auto flat = derivative_second(cylinder(3.0));
  for (double x : flat.values) CHECK(x == 0.0);

  oracle::CosineProfile cp;
  const auto d2 = derivative_second(cp.sample(201));
  CHECK(std::abs(d2[0] - cp.rddot(0.0)) < 1e-4);  // -0.1 pi^2

  Grid grid(1.0, 101);
  std::vector<double> quad(101);
  for (int i = 0; i <= 100; ++i) {
    const double z = grid.z(i);
    quad[static_cast<size_t>(i)] = z * z + 3.0;
  }
  const auto dq = derivative_second(Profile{grid, 2, quad});
  for (int i = 1; i < 100; ++i) {
    CHECK(dq[i] == Catch::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("mean curvature on cylinders and a sphere") {
  const auto h2 = mean_curvature(cylinder(3.0, 2));
  for (double x : h2.values) CHECK(x == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto h3 = mean_curvature(cylinder(2.0, 3));
  for (double x : h3.values) CHECK(x == Catch::Approx(1.0).epsilon(1e-14));

  // sphere of radius 2 sampled over [0, 1]: H = n/R = 1 at interior nodes
  const auto hs = mean_curvature(sphere_cap(2.0, 1.0, 201));
  CHECK(std::abs(hs[100] - 1.0) < 1e-5);
}

TEST_CASE("principal curvatures") {
  const auto [k1c, k2c] = principal_curvatures(cylinder(3.0));
  for (double x : k1c.values) CHECK(x == 0.0);
  for (double x : k2c.values) CHECK(x == Catch::Approx(1.0 / 3.0).epsilon(1e-14));

  const auto [k1s, k2s] = principal_curvatures(sphere_cap(2.0, 1.0, 201));
  CHECK(std::abs(k1s[100] - 0.5) < 1e-5);
  CHECK(std::abs(k2s[100] - 0.5) < 1e-5);

  oracle::CosineProfile cp;
  const auto [k1, k2] = principal_curvatures(cp.sample(201));
  CHECK(std::abs(k1[0] - 0.1 * kPi * kPi) < 1e-4);
  CHECK(k2[0] == Catch::Approx(1.0 / 3.1).epsilon(1e-12));
}

TEST_CASE("second fundamental form norm") {
  const auto a2 = second_fundamental_norm(cylinder(3.0, 2));
  for (double x : a2.values) CHECK(x == Catch::Approx(1.0 / 9.0).epsilon(1e-14));
  const auto a3 = second_fundamental_norm(cylinder(2.0, 3));
  for (double x : a3.values) CHECK(x == Catch::Approx(0.5).epsilon(1e-14));
  const auto as = second_fundamental_norm(sphere_cap(2.0, 1.0, 201));
  CHECK(std::abs(as[100] - 0.5) < 1e-5);
}

TEST_CASE("tilt") {
  const auto vc = tilt(cylinder(3.0));
  for (double x : vc.values) CHECK(x == 1.0);

  // sphere of radius 2 over [0, 1.5]; z = 1 is the interior node 200
  const auto vs = tilt(sphere_cap(2.0, 1.5, 301));
  CHECK(std::abs(vs[200] - 2.0 / std::sqrt(3.0)) < 1e-5);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Profile p = oracle::random_profile(rng);
    const auto v = tilt(p);
    CHECK(v[0] == 1.0);
    CHECK(v[p.m() - 1] == 1.0);
    for (double x : v.values) CHECK(x >= 1.0);
  }
}

TEST_CASE("surface integrals: cylinder closed forms and quadrature oracle") {
  const Profile cyl = cylinder(3.0);
  ScalarField one{std::vector<double>(201, 1.0), ""};
  CHECK(integrate_over_surface(cyl, one) == Catch::Approx(6.0 * kPi).epsilon(1e-13));
  CHECK(integrate_over_surface(cyl, mean_curvature(cyl)) ==
        Catch::Approx(2.0 * kPi).epsilon(1e-13));

  oracle::CosineProfile cp;
  const Profile p = cp.sample(201);
  const double gl = oracle::integrate([&](double z) { return cp.mu(z); }, 0.0, 1.0);
  CHECK(std::abs(integrate_over_surface(p, ScalarField{std::vector<double>(201, 1.0), ""}) -
                 gl) < 1e-4);
}

TEST_CASE("area") {
  CHECK(area(cylinder(3.0, 2)) == Catch::Approx(6.0 * kPi).epsilon(1e-13));
  CHECK(area(cylinder(2.0, 3)) == Catch::Approx(16.0 * kPi).epsilon(1e-13));

  oracle::CosineProfile cp;
  const double gl = oracle::integrate([&](double z) { return cp.mu(z); }, 0.0, 1.0);
  CHECK(std::abs(area(cp.sample(201)) - gl) < 1e-4);
}

TEST_CASE("enclosed volume") {
  CHECK(enclosed_volume(cylinder(3.0, 2)) == Catch::Approx(9.0 * kPi).epsilon(1e-13));
  CHECK(enclosed_volume(cylinder(2.0, 3)) ==
        Catch::Approx(32.0 * kPi / 3.0).epsilon(1e-13));
  // int (3 + 0.1 cos(pi z))^2 dz = 9 + 0.01/2 = 9.005; trapezoid is
  // spectrally accurate on trigonometric integrands with Neumann ends.
  oracle::CosineProfile cp;
  CHECK(enclosed_volume(cp.sample(201)) == Catch::Approx(9.005 * kPi).epsilon(1e-12));
}

TEST_CASE("laplace-beltrami: cylinder, oracle, exact zero integral") {
  const Profile cyl = cylinder(2.0, 2, 1.0, 201);
  const auto lap_const = laplace_beltrami(cyl, ScalarField{std::vector<double>(201, 5.0), ""});
  for (double x : lap_const.values) CHECK(x == 0.0);

  // flat metric along the axis: lap cos(pi z) = -pi^2 cos(pi z)
  std::vector<double> f(201);
  for (int i = 0; i < 201; ++i) f[static_cast<size_t>(i)] = std::cos(kPi * cyl.grid.z(i));
  const auto lap = laplace_beltrami(cyl, ScalarField{f, ""});
  for (int i = 0; i < 201; ++i) {
    CHECK(std::abs(lap[i] + kPi * kPi * f[static_cast<size_t>(i)]) < 5e-4);
  }

  // curved profile, f = H, against the semi-analytic oracle
  oracle::CosineProfile cp;
  const Profile p = cp.sample(201);
  const auto lapH = laplace_beltrami(p, mean_curvature(p));
  double err = 0.0;
  for (int i = 0; i < 201; ++i) {
    err = std::max(err, std::abs(lapH[i] - cp.lapH(p.grid.z(i))));
  }
  CHECK(err < 5e-3);

  // conservative form: the discrete surface integral of lap f vanishes to
  // rounding (a non-conservative stencil would leave O(dz^2) ~ 1e-3 here)
  const double integral = integrate_over_surface(p, lapH);
  CHECK(std::abs(integral) < 1e-9);
}

TEST_CASE("pointwise identities on random profiles") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    Profile p = oracle::random_profile(rng, 41, n);
    const auto H = mean_curvature(p);
    const auto [k1, k2] = principal_curvatures(p);
    const auto a2 = second_fundamental_norm(p);
    const auto g = sample_geometry(p);
    for (int i = 0; i < p.m(); ++i) {
      const double hsum = k1[i] + (n - 1) * k2[i];
      CHECK(std::abs(H[i] - hsum) <= 1e-12 * std::max(1.0, std::abs(H[i])));
      const double asum = k1[i] * k1[i] + (n - 1) * k2[i] * k2[i];
      CHECK(std::abs(a2[i] - asum) <= 1e-12 * std::max(1.0, std::abs(a2[i])));
      CHECK(a2[i] >= k1[i] * k1[i] * (1.0 - 1e-14));
    }
    // discrete Cauchy-Schwarz with shared nonnegative weights
    CHECK(g.intH * g.intH <= g.intH2 * g.area * (1.0 + 1e-12));
  }
}

TEST_CASE("sample_geometry matches the individual operations bitwise") {
  oracle::CosineProfile cp;
  const Profile p = cp.sample(201);
  const auto g = sample_geometry(p);
  const auto H = mean_curvature(p);
  const auto [k1, k2] = principal_curvatures(p);
  const auto a2 = second_fundamental_norm(p);
  const auto v = tilt(p);
  for (int i = 0; i < p.m(); ++i) {
    CHECK(g.H[i] == H[i]);
    CHECK(g.kappa1[i] == k1[i]);
    CHECK(g.kappa2[i] == k2[i]);
    CHECK(g.A2[i] == a2[i]);
    CHECK(g.v[i] == v[i]);
  }
  CHECK(g.area == area(p));
  CHECK(g.volume == enclosed_volume(p));
  CHECK(g.intH == integrate_over_surface(p, H));
}

TEST_CASE("refinement order: errors shrink by >= 3.8 when m-1 doubles") {
  oracle::CosineProfile cp;
  auto field_errors = [&](int m) {
    const Profile p = cp.sample(m);
    const auto g = sample_geometry(p);
    double eH = 0.0, eA = 0.0, eV = 0.0, eL = 0.0;
    std::vector<double> f(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) f[static_cast<size_t>(i)] = std::cos(kPi * p.grid.z(i));
    const auto lap = laplace_beltrami(p, ScalarField{f, ""});
    auto lap_truth = [&](double z) {
      auto flux = [&](double zz) {
        return std::pow(cp.rho(zz), cp.n - 1) / cp.v(zz) * (-kPi * std::sin(kPi * zz));
      };
      return oracle::deriv5(flux, z) / (std::pow(cp.rho(z), cp.n - 1) * cp.v(z));
    };
    for (int i = 0; i < m; ++i) {
      const double z = p.grid.z(i);
      eH = std::max(eH, std::abs(g.H[i] - cp.H(z)));
      eA = std::max(eA, std::abs(g.A2[i] - cp.A2(z)));
      eV = std::max(eV, std::abs(g.v[i] - cp.v(z)));
      eL = std::max(eL, std::abs(lap[i] - lap_truth(z)));
    }
    const double area_truth = oracle::integrate([&](double z) { return cp.mu(z); }, 0.0, 1.0);
    const double eArea = std::abs(g.area - area_truth);
    return std::array<double, 5>{eH, eA, eV, eL, eArea};
  };
  const auto c = field_errors(101);
  const auto f = field_errors(201);
  for (size_t q = 0; q < c.size(); ++q) {
    CHECK(c[q] / f[q] >= 3.8);
  }

  // volume on a profile whose integrand is not trapezoid-exact:
  // rho = sqrt(4 - z^2), V = pi int (4 - z^2) dz = 11 pi / 3
  const double ev1 = std::abs(enclosed_volume(sphere_cap(2.0, 1.0, 101)) - 11.0 * kPi / 3.0);
  const double ev2 = std::abs(enclosed_volume(sphere_cap(2.0, 1.0, 201)) - 11.0 * kPi / 3.0);
  CHECK(ev1 / ev2 >= 3.8);
}
