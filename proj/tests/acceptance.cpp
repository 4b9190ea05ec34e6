#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sphereflow/cli.hpp"
#include "sphereflow/exact.hpp"
#include "sphereflow/operators.hpp"
#include "sphereflow/timestep.hpp"
#include "sphereflow/verify.hpp"

using namespace sphereflow;
namespace fs = std::filesystem;
using std::numbers::ln2;
using std::numbers::pi;

namespace {

// Tolerances
constexpr double kResidualMax = 1e-4;
constexpr double kSecondOrder = 2.0;
constexpr double kSecondOrderBand = 0.4;
constexpr double kResidualRuntime = 10.0;
constexpr double kGaussTol = 1e-8;
constexpr double kHemisphereTol = 1e-6;
constexpr double kSpeedClosedTol = 1e-10;
constexpr double kSpeedQuadTol = 1e-8;
constexpr double kPoleSpeedMax = 1e-3;
constexpr double kPoleTheta = 1e-3;
constexpr double kSpectralEigTol = 1e-10;
constexpr double kFdRateTol = 0.2;
constexpr double kMercatorTol = 1e-6;
constexpr double kGgTol = 1e-8;
constexpr double kTheorem2Rel = 1e-4;
constexpr double kBiharmonicTol = 1e-4;
constexpr double kDecayRel = 1e-4;
constexpr double kRk4Order = 4.0;
constexpr double kRk4OrderTol = 0.3;
constexpr double kInviscidDrift = 1e-12;
constexpr double kEvolutionRuntime = 60.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double band_max(const ScalarField& f) { return f.max_abs(ThetaBand{}); }

void criterion_1() {
  const auto t0 = Clock::now();
  const BasicSolutionParams p{1.0, 0.0};
  const int sizes[] = {64, 128, 256};
  bool pass = true;
  std::string detail;
  for (double nu : {0.0, 0.01, 1.0}) {
    std::vector<double> r;
    for (int n : sizes) {
      auto g = build_grid({n, 2 * n});
      r.push_back(band_max(ns_residual(sample_psi_basic(g, p), sample_omega_basic(g, p), nu)));
    }
    bool ok = r[2] < kResidualMax;
    if (nu == 0.0) {
      ok = ok && r[0] == 0.0 && r[1] == 0.0 && r[2] == 0.0;
      detail += fmt("nu=0: max %.3g (identically 0); ", r[2]);
    } else {
      const double o1 = convergence_order(r[0], r[1]);
      const double o2 = convergence_order(r[1], r[2]);
      const bool rate = std::abs(o1 - kSecondOrder) <= kSecondOrderBand &&
                        std::abs(o2 - kSecondOrder) <= kSecondOrderBand;
      ok = ok && rate;
      detail += fmt("nu=%g: max %.3g at nlat=256 (%s 1e-4), orders %.2f %.2f; ", nu, r[2],
                    r[2] < kResidualMax ? "<" : ">=", o1, o2);
    }
    pass = pass && ok;
  }
  const double t = seconds_since(t0);
  pass = pass && t < kResidualRuntime;
  report(1, pass, detail + fmt("%.2fs", t));
}

void criterion_2() {
  auto g = build_grid({64, 128});
  const double z = surface_integral(sample_omega_basic(g, {1.0, 0.0}));
  bool pass = std::abs(z) < kGaussTol;
  std::string detail = fmt("K2=0: %.3g", z);
  for (double k2 : {-1.0, 0.5}) {
    const double v = surface_integral(sample_omega_basic(g, {1.0, k2}));
    pass = pass && std::abs(v - 4.0 * pi * k2) < kGaussTol;
    detail += fmt("; K2=%g: err %.3g", k2, v - 4.0 * pi * k2);
  }
  report(2, pass, detail);
}

void criterion_3() {
  const double north = hemisphere_vorticity_integral({1.0, 0.0}, Hemisphere::kNorth);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double oracle = 2.0 * pi * ts.integrate([](double s) {
    return std::sin(s) * std::log(std::tan(s / 2));
  }, 0.0, pi / 2);
  const double target = -2.0 * pi * ln2;
  const bool pass = std::abs(north - target) < kHemisphereTol &&
                    std::abs(oracle - target) < kHemisphereTol;
  report(3, pass, fmt("north %.12f, quadrature %.12f, target -2 pi log 2 = %.12f", north, oracle,
                      target));
}

void criterion_4() {
  const BasicSolutionParams p{1.0, 0.0};
  const int n = 100000;
  double best = 0.0;
  double arg = 0.0;
  for (int k = 1; k < n; ++k) {
    const double t = pi * k / n;
    const double s = std::abs(u_phi_basic(t, p));
    if (s > best) {
      best = s;
      arg = t;
    }
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  const double quad = std::abs(ts.integrate([](double s) {
    return std::sin(s) * std::log(std::tan(s / 2));
  }, 0.0, pi / 2));
  const double pole = std::abs(u_phi_basic(kPoleTheta, p));
  const double pole_s = std::abs(u_phi_basic(pi - kPoleTheta, p));
  const bool at_equator = std::abs(arg - pi / 2) <= pi / n;
  const bool closed = std::abs(best - ln2) < kSpeedClosedTol;
  const bool quadrature = std::abs(quad - ln2) < kSpeedQuadTol;
  const bool pole_ok = pole < kPoleSpeedMax && pole_s < kPoleSpeedMax;
  report(4, at_equator && closed && quadrature && pole_ok,
         fmt("argmax %.9f (pi/2 %s), |u| %.15f (err %.2g), quadrature err %.2g, "
             "|u(1e-3)| = %.4g (%s 1e-3)",
             arg, at_equator ? "ok" : "off", best, best - ln2, quad - ln2, pole,
             pole_ok ? "<" : ">="));
}

void criterion_5() {
  const int lmax = 20;
  bool spectral_ok = true;
  double spectral_err = 0.0;
  {
    auto g = build_grid({32, 64});
    TransformPlan plan(g, lmax);
    for (int l = 0; l <= lmax; ++l) {
      for (int m = 0; m <= l; ++m) {
        SpectralField c(lmax);
        c.set_real_mode(l, m, 1.0);
        auto lap = synthesize(laplace_beltrami_spectral(c), plan);
        auto f = synthesize(c, plan);
        for (std::size_t k = 0; k < f.values().size(); ++k) {
          spectral_err = std::max(spectral_err,
                                  std::abs(lap.values()[k] + l * (l + 1.0) * f.values()[k]));
        }
      }
    }
    spectral_ok = spectral_err < kSpectralEigTol;
  }
  const int sizes[] = {128, 256, 512};
  std::vector<std::vector<double>> errs(3);
  for (int s = 0; s < 3; ++s) {
    auto g = build_grid({sizes[s], 2 * sizes[s]});
    TransformPlan plan(g, lmax);
    for (int l = 1; l <= lmax; ++l) {
      for (int m = 0; m <= l; ++m) {
        SpectralField c(lmax);
        c.set_real_mode(l, m, 1.0);
        auto f = synthesize(c, plan);
        auto fd = laplace_beltrami_fd(f);
        double e = 0.0;
        for (int i : band_rows(*g, ThetaBand{})) {
          for (int j = 0; j < g->nlon(); ++j) {
            e = std::max(e, std::abs(fd(i, j) + l * (l + 1.0) * f(i, j)));
          }
        }
        errs[s].push_back(e);
      }
    }
  }
  double lo = 1e300;
  double hi = -1e300;
  for (std::size_t k = 0; k < errs[0].size(); ++k) {
    const double o = convergence_order(errs[1][k], errs[2][k]);
    lo = std::min(lo, o);
    hi = std::max(hi, o);
  }
  const bool rate_ok = lo >= kSecondOrder - kFdRateTol && hi <= kSecondOrder + kFdRateTol;
  report(5, spectral_ok && rate_ok,
         fmt("spectral eigen-error %.2g over l<=20; FD order over nlat 256->512 in [%.3f, %.3f]",
             spectral_err, lo, hi));
}

void criterion_6() {
  std::vector<double> chis;
  for (int k = -50; k <= 50; ++k) chis.push_back(0.1 * k);
  const auto merc = check_mercator_obstruction(chis, 1e-3, kMercatorTol);

  auto g = build_grid({256, 512});
  const auto omega = sample_omega_basic(g, {1.0, 0.0});
  std::vector<double> omegas;
  for (int i : band_rows(*g, ThetaBand{})) omegas.push_back(omega(i, 0));
  const auto gg = check_gg_ode([](long double w) {
    const long double c = std::cosh(w);
    return c * c;
  }, omegas, kGgTol);

  double worst = 0.0;
  for (double a : {0.5, 2.0}) {
    for (double b : {-1.0, 0.0, 3.0}) {
      auto r = gg_ode_residuals([a, b](long double w) { return a * std::exp(b * w); }, omegas);
      for (double v : r) worst = std::max(worst, std::abs(v + 2.0));
    }
  }
  report(6, merc.pass && gg.pass && worst < kGgTol,
         fmt("mercator %.3g, cosh^2 residual %.3g, |exp residual + 2| <= %.3g", merc.max_abs_residual,
             gg.max_abs_residual, worst));
}

void criterion_7() {
  const auto r = check_theorem2_relations({1.0, 0.0}, 4096, ThetaBand{}, 256, kTheorem2Rel,
                                          kBiharmonicTol);
  report(7, r.grad_psi.pass && r.grad_omega.pass && r.biharmonic.pass,
         fmt("|grad psi|^2 rel %.3g, |grad omega|^2 rel %.3g, biharmonic %.3g",
             r.grad_psi.max_abs_residual, r.grad_omega.max_abs_residual,
             r.biharmonic.max_abs_residual));
}

void criterion_8() {
  bool pass = true;
  std::string detail;
  for (int l : {1, 20, 64}) {
    const int n = global_harmonic_nullspace(l);
    pass = pass && n == 1;
    detail += fmt("lmax=%d -> %d; ", l, n);
  }
  report(8, pass, detail);
}

void criterion_9() {
  const auto t0 = Clock::now();
  EvolutionConfig cfg;
  cfg.nu = 0.01;
  cfg.dt = 1e-3;
  cfg.steps = 1000;
  cfg.lmax = 31;
  SpectralField y21(31);
  y21.set_real_mode(2, 1, 1.0);
  const auto ts = evolve(y21, cfg);
  const double ratio = ts.final_state(2, 1).real();
  const double expect = std::exp(-6.0 * 0.01 * 1.0);
  const bool decay_ok = std::abs(ratio / expect - 1.0) < kDecayRel;

  // one decade of dt, fitted slope
  const std::vector<double> dts{0.1, 0.05, 0.02, 0.01};
  std::vector<double> errs;
  for (double dt : dts) {
    EvolutionConfig c;
    c.nu = 0.5;
    c.lmax = 2;
    c.dt = dt;
    c.steps = static_cast<int>(std::lround(1.0 / dt));
    SpectralField y20(2);
    y20(2, 0) = 1.0;
    const auto s = evolve(y20, c);
    errs.push_back(std::abs(s.final_state(2, 0).real() - std::exp(-6.0 * 0.5)));
  }
  const double order = fitted_convergence_order(dts, errs);
  const bool order_ok = std::abs(order - kRk4Order) <= kRk4OrderTol;

  const BasicSolutionParams p{1.0, 0.0};
  const double d0 = steadiness_drift(p, 31, 0.0, 1.0);
  const double d31 = steadiness_drift(p, 31, 0.01, 1.0);
  const double d63 = steadiness_drift(p, 63, 0.01, 1.0);
  const double t = seconds_since(t0);
  report(9, decay_ok && order_ok && d0 <= kInviscidDrift && d63 < d31 && t < kEvolutionRuntime,
         fmt("decay %.7f vs %.7f; RK4 order %.3f over dt 0.1..0.01; drift nu=0 %.2g; "
             "drift nu=0.01 L31 %.4g, L63 %.4g; %.1fs",
             ratio, expect, order, d0, d31, d63, t));
}

void criterion_10() {
  const auto base = fs::temp_directory_path() / "sphereflow_acceptance";
  std::string csv[2];
  int codes[2];
  for (int k = 0; k < 2; ++k) {
    cli::RunConfig cfg;
    cfg.out = base / ("run" + std::to_string(k));
    fs::remove_all(cfg.out);
    std::ostringstream log;
    codes[k] = cli::cmd_checks(cfg, log);
    std::ifstream in(cfg.out / "checks.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    csv[k] = ss.str();
  }
  const bool same = !csv[0].empty() && csv[0] == csv[1];
  report(10, codes[0] == 0 && codes[1] == 0 && same,
         fmt("exit codes %d %d, CSV %s (%zu bytes)", codes[0], codes[1],
             same ? "identical" : "differs", csv[0].size()));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
