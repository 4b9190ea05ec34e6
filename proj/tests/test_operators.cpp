#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sphereflow/errors.hpp"
#include "sphereflow/finite_difference.hpp"
#include "sphereflow/operators.hpp"
#include "sphereflow/verify.hpp"

using namespace sphereflow;
using std::numbers::pi;

namespace {

template <class F>
double band_error(const ScalarField& got, F&& expect, const ThetaBand& band = {}) {
  const auto& g = got.grid();
  double err = 0.0;
  for (int i : band_rows(g, band)) {
    for (int j = 0; j < g.nlon(); ++j) {
      err = std::max(err, std::abs(got(i, j) - expect(g.thetas()[i], g.phis()[j])));
    }
  }
  return err;
}

double all_error(const ScalarField& got, const ScalarField& expect) {
  double err = 0.0;
  for (std::size_t k = 0; k < got.values().size(); ++k) {
    err = std::max(err, std::abs(got.values()[k] - expect.values()[k]));
  }
  return err;
}

}  // namespace

TEST_CASE("Fornberg weights reproduce textbook stencils") {
  const double nodes[] = {-1.0, 0.0, 1.0};
  auto w = fornberg_weights(0.0, nodes, 2);
  CHECK(w[1][0] == doctest::Approx(-0.5));
  CHECK(w[1][2] == doctest::Approx(0.5));
  CHECK(w[2][0] == doctest::Approx(1.0));
  CHECK(w[2][1] == doctest::Approx(-2.0));
  const double edge[] = {0.0, 1.0, 2.0, 3.0};
  auto e = fornberg_weights(0.0, edge, 2);
  CHECK(e[2][0] == doctest::Approx(2.0));
  CHECK(e[2][1] == doctest::Approx(-5.0));
  CHECK(e[2][2] == doctest::Approx(4.0));
  CHECK(e[2][3] == doctest::Approx(-1.0));
}

TEST_CASE("laplace_beltrami_fd on constants and cos theta") {
  auto g = build_grid({64, 128});
  auto one = ScalarField::sample(g, [](double, double) { return 1.0; });
  CHECK(laplace_beltrami_fd(one).max_abs() < 1e-10);

  std::vector<double> errs;
  for (int n : {32, 64, 128}) {
    auto gn = build_grid({n, 2 * n});
    auto f = ScalarField::sample(gn, [](double t, double) { return std::cos(t); });
    errs.push_back(band_error(laplace_beltrami_fd(f),
                              [](double t, double) { return -2.0 * std::cos(t); }));
  }
  CHECK(errs[2] < 1e-3);
  CHECK(convergence_order(errs[1], errs[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("fd Laplace-Beltrami converges to the spectral one at second order") {
  std::mt19937 rng(42);
  std::normal_distribution<double> n(0.0, 1.0);
  SpectralField c(12);
  for (int l = 1; l <= 12; ++l) {
    c.set_real_mode(l, 0, n(rng));
    for (int m = 1; m <= l; ++m) c.set_real_mode(l, m, {n(rng), n(rng)});
  }
  std::vector<double> errs;
  for (int nlat : {64, 128, 256}) {
    auto g = build_grid({nlat, 2 * nlat});
    TransformPlan plan(g, 12);
    auto f = synthesize(c, plan);
    auto exact = synthesize(laplace_beltrami_spectral(c), plan);
    auto fd = laplace_beltrami_fd(f);
    double err = 0.0;
    for (int i : band_rows(*g, ThetaBand{})) {
      for (int j = 0; j < g->nlon(); ++j) err = std::max(err, std::abs(fd(i, j) - exact(i, j)));
    }
    errs.push_back(err);
  }
  CHECK(convergence_order(errs[0], errs[1]) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(convergence_order(errs[1], errs[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("velocity from streamfunction: closed forms") {
  auto g = build_grid({128, 256});
  auto rot = velocity_from_streamfunction(
      ScalarField::sample(g, [](double t, double) { return std::cos(t); }));
  CHECK(rot.u_theta.max_abs() == 0.0);
  CHECK(band_error(rot.u_phi, [](double t, double) { return std::sin(t); }) < 1e-4);

  auto c = velocity_from_streamfunction(ScalarField::sample(g, [](double, double) { return 3.0; }));
  CHECK(c.u_theta.max_abs() == 0.0);
  CHECK(c.u_phi.max_abs() < 1e-12);

  auto u = velocity_from_streamfunction(
      ScalarField::sample(g, [](double t, double p) { return std::sin(t) * std::sin(p); }));
  CHECK(band_error(u.u_theta, [](double, double p) { return std::cos(p); }) < 1e-3);
  CHECK(band_error(u.u_phi, [](double t, double p) { return -std::cos(t) * std::sin(p); }) < 1e-3);
}

TEST_CASE("spectral velocity matches the analytic solid rotation") {
  auto g = build_grid({32, 64});
  TransformPlan plan(g, 8);
  SpectralField psi(8);
  psi(1, 0) = std::sqrt(4.0 * pi / 3.0);
  auto u = velocity_from_streamfunction(psi, plan);
  CHECK(u.u_theta.max_abs() < 1e-14);
  CHECK(band_error(u.u_phi, [](double t, double) { return std::sin(t); }, {0.0, pi}) < 1e-13);
}

TEST_CASE("vorticity from velocity") {
  auto g = build_grid({128, 256});
  VelocityField rot{ScalarField(g),
                    ScalarField::sample(g, [](double t, double) { return std::sin(t); })};
  auto w = vorticity_from_velocity(rot);
  CHECK(band_error(w, [](double t, double) { return 2.0 * std::cos(t); }) < 2e-3);

  VelocityField zero{ScalarField(g), ScalarField(g)};
  CHECK(vorticity_from_velocity(zero).max_abs() == 0.0);

  TransformPlan plan(g, 4);
  SpectralField y20(4);
  y20(2, 0) = 1.0;
  auto psi = synthesize(y20, plan);
  auto omega = vorticity_from_velocity(velocity_from_streamfunction(psi));
  auto expect = synthesize(6.0 * y20, plan);
  double err = 0.0;
  for (int i : band_rows(*g, ThetaBand{})) {
    for (int j = 0; j < g->nlon(); ++j) err = std::max(err, std::abs(omega(i, j) - expect(i, j)));
  }
  CHECK(err < 1e-2);
}

TEST_CASE("convention closure: curl of velocity is minus the Laplacian") {
  std::vector<double> errs;
  for (int n : {64, 128, 256}) {
    auto g = build_grid({n, 2 * n});
    auto psi = ScalarField::sample(g, [](double t, double p) {
      return std::exp(std::cos(t)) * std::sin(2 * p) + std::sin(t) * std::cos(p);
    });
    auto omega = vorticity_from_velocity(velocity_from_streamfunction(psi));
    auto lap = laplace_beltrami_fd(psi);
    double err = 0.0;
    for (int i : band_rows(*g, ThetaBand{})) {
      for (int j = 0; j < g->nlon(); ++j) err = std::max(err, std::abs(omega(i, j) + lap(i, j)));
    }
    errs.push_back(err);
  }
  CHECK(errs[2] < 2e-2);
  CHECK(convergence_order(errs[0], errs[1]) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(convergence_order(errs[1], errs[2]) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("jacobian examples") {
  auto g = build_grid({128, 256});
  auto a = ScalarField::sample(g, [](double t, double) { return std::cos(t); });
  auto b = ScalarField::sample(g, [](double t, double) { return std::log(std::tan(t / 2)); });
  CHECK(jacobian(a, b).max_abs() == 0.0);

  auto f = ScalarField::sample(g, [](double t, double p) { return std::sin(3 * t) * std::cos(p); });
  CHECK(jacobian(f, f).max_abs() == 0.0);

  auto h = ScalarField::sample(g, [](double t, double p) { return std::sin(t) * std::cos(p); });
  auto j = jacobian(a, h);
  CHECK(band_error(j, [](double t, double p) { return -std::sin(t) * std::sin(t) * std::sin(p); }) <
        1e-3);

  auto ja = jacobian(f, h);
  auto jb = jacobian(h, f);
  for (std::size_t k = 0; k < ja.values().size(); ++k) CHECK(ja.values()[k] == -jb.values()[k]);

  CHECK_THROWS_AS(jacobian(a, ScalarField(build_grid({64, 128}))), Error);
}

TEST_CASE("spectral jacobian of aligned fields vanishes") {
  auto g = build_grid({32, 64});
  TransformPlan plan(g, 10);
  SpectralField psi(10);
  psi.set_real_mode(2, 1, 1.0);
  auto j = jacobian_spectral(psi, 6.0 * psi, plan);
  CHECK(j.max_abs() < 1e-13);
}

TEST_CASE("ns_residual") {
  auto g = build_grid({64, 128});
  ScalarField zero(g);
  CHECK(ns_residual(zero, zero, 0.3).max_abs() == 0.0);
  CHECK_THROWS_AS(ns_residual(zero, zero, -1.0), Error);

  TransformPlan plan(g, 4);
  SpectralField y20(4);
  y20(2, 0) = 1.0;
  auto psi = synthesize(y20, plan);
  auto omega = synthesize(6.0 * y20, plan);
  CHECK(ns_residual(psi, omega, 0.0).max_abs() == 0.0);

  auto hs = ScalarField::sample(g, [](double t, double) { return std::cos(t); });
  auto ws = ScalarField::sample(g, [](double t, double p) { return std::sin(t) * std::cos(p); });
  auto r = ns_residual(hs, ws, 0.0);
  CHECK(band_error(r, [](double t, double p) { return -std::sin(t) * std::sin(p); }) < 1e-3);
}

TEST_CASE("mercator Laplacian") {
  auto lin = MercatorField::sample(-1.0, 0.01, 201, 16, [](double x, double) { return x; });
  auto l0 = mercator_laplacian(lin);
  for (double v : l0.values) CHECK(std::abs(v) < 1e-9);

  auto ls = MercatorField::sample(-2.0, 0.01, 401, 8,
                                  [](double x, double) { return -std::log(std::cosh(x)); });
  auto l1 = mercator_laplacian(ls);
  double err = 0.0;
  for (int i = 1; i + 1 < ls.nchi; ++i) {
    const double s = 1.0 / std::cosh(ls.chi(i));
    err = std::max(err, std::abs(l1(i, 0) + s * s));
  }
  CHECK(err < 1e-4);

  CHECK_THROWS_AS(MercatorField(0.0, 0.1, 3, 8), Error);
}

TEST_CASE("sin^2 theta times the spherical Laplacian equals the Mercator Laplacian") {
  // f = cos(theta) cos(phi) written in (chi, phi): tanh(-chi) cos(phi)
  auto g = build_grid({256, 64});
  auto f = ScalarField::sample(g, [](double t, double p) { return std::cos(t) * std::cos(p); });
  auto lap = laplace_beltrami_fd(f);
  double err = 0.0;
  for (int i : band_rows(*g, ThetaBand{})) {
    const double t = g->thetas()[i];
    const double chi = mercator_of_colatitude(t);
    const double h = 1e-3;
    auto m = MercatorField::sample(chi - 2 * h, h, 5, 64, [](double x, double p) {
      return -std::tanh(x) * std::cos(p);
    });
    auto ml = mercator_laplacian(m);
    const double s = std::sin(t);
    err = std::max(err, std::abs(s * s * lap(i, 5) - ml(2, 5)));
  }
  CHECK(err < 1e-3);
}
