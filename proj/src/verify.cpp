#include "sphereflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "sphereflow/errors.hpp"
#include "sphereflow/finite_difference.hpp"
#include "sphereflow/io.hpp"
#include "sphereflow/operators.hpp"

namespace sphereflow {

namespace {

using Real = long double;

double band_max(const ScalarField& f, const ThetaBand& band) { return f.max_abs(band); }

// Solves psi(theta) = s near `guess`; psi is strictly monotone on the band.
Real invert_psi(Real s, Real guess, Real k1) {
  Real t = guess;
  for (int iter = 0; iter < 50; ++iter) {
    const Real f = exact_detail::psi(t, k1) - s;
    const Real df = -exact_detail::u_phi(t, k1);
    const Real step = f / df;
    t -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<Real>::epsilon() * t) break;
  }
  return t;
}

Real log_sech(Real chi) {
  const Real a = std::abs(chi);
  return -a - std::log1p(std::exp(-2 * a)) + std::numbers::ln2_v<Real>;
}

}  // namespace

CheckReport make_report(std::string name, double residual, int nlat, int nlon,
                        const ThetaBand& band, double tolerance, bool structural_ok) {
  CheckReport r;
  r.name = std::move(name);
  r.max_abs_residual = residual;
  r.nlat = nlat;
  r.nlon = nlon;
  r.band = band;
  r.tolerance = tolerance;
  r.pass = structural_ok && residual <= tolerance;
  return r;
}

std::string report_csv_header() {
  return "name,nlat,nlon,band_lo,band_hi,max_abs_residual,tolerance,pass";
}

std::string report_csv_row(const CheckReport& r) {
  return r.name + ',' + std::to_string(r.nlat) + ',' + std::to_string(r.nlon) + ',' +
         format_real(r.band.lo) + ',' + format_real(r.band.hi) + ',' +
         format_real(r.max_abs_residual) + ',' + format_real(r.tolerance) + ',' +
         (r.pass ? "true" : "false");
}

void write_reports_csv(std::ostream& os, std::span<const CheckReport> reports) {
  os << report_csv_header() << '\n';
  for (const auto& r : reports) os << report_csv_row(r) << '\n';
}

void write_reports_csv(const std::filesystem::path& path, std::span<const CheckReport> reports) {
  auto out = open_output(path);
  write_reports_csv(out, reports);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

CheckReport check_vanishing_jacobian(const ScalarField& psi, const ScalarField& omega,
                                     const ThetaBand& band, double tolerance) {
  const ScalarField j = jacobian(psi, omega);
  return make_report("vanishing_jacobian", band_max(j, band), psi.grid().nlat(),
                     psi.grid().nlon(), band, tolerance);
}

double truncation_tolerance(const Grid& grid) {
  const auto th = grid.thetas();
  double h = 0.0;
  for (std::size_t i = 1; i < th.size(); ++i) h = std::max(h, th[i] - th[i - 1]);
  return 10.0 * h * h;
}

CheckReport check_harmonic_vorticity(const ScalarField& omega, const ThetaBand& band,
                                     std::optional<double> tolerance) {
  const ScalarField lap = laplace_beltrami_fd(omega);
  return make_report("harmonic_vorticity", band_max(lap, band), omega.grid().nlat(),
                     omega.grid().nlon(), band,
                     tolerance.value_or(truncation_tolerance(omega.grid())));
}

int global_harmonic_nullspace(int lmax) {
  if (lmax < 1) throw Error(ErrorCode::kInvalidParams, "lmax must be >= 1");
  int kernel = 0;
  SpectralField unit(lmax);
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      unit(l, m) = 1.0;
      if (laplace_beltrami_spectral(unit).max_abs() < 1e-12) ++kernel;
      unit(l, m) = 0.0;
    }
  }
  return kernel;
}

std::vector<double> gg_ode_residuals(const ProfileFunction& phi, std::span<const double> omegas,
                                     long double h) {
  std::vector<double> out;
  out.reserve(omegas.size());
  for (double w0 : omegas) {
    const Real w = w0;
    for (int k = -2; k <= 2; ++k) {
      if (!(phi(w + k * h) > 0)) {
        throw Error(ErrorCode::kNonpositivePhi,
                    "Phi must be positive (omega = " + std::to_string(w0) + ")");
      }
    }
    const Real p = phi(w);
    const Real d1 = central_d1<Real>(phi, w, h);
    const Real d2 = central_d2<Real>(phi, w, h);
    out.push_back(static_cast<double>(d2 - d1 * d1 / p - 2));
  }
  return out;
}

CheckReport check_gg_ode(const ProfileFunction& phi, std::span<const double> omegas,
                         double tolerance, long double h, std::string name) {
  const auto r = gg_ode_residuals(phi, omegas, h);
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  return make_report(std::move(name), worst, 0, 0, ThetaBand{}, tolerance);
}

std::vector<double> mercator_obstruction_values(std::span<const double> chis, double h) {
  std::vector<double> out;
  out.reserve(chis.size());
  for (double chi : chis) {
    if (std::abs(chi) > 10.0) {
      throw Error(ErrorCode::kDomainError, "obstruction samples need |chi| <= 10");
    }
    const auto patch = MercatorField::sample(chi - 2.0 * h, h, 5, 4, [](double c, double) {
      return static_cast<double>(log_sech(c));
    });
    out.push_back(mercator_laplacian(patch)(2, 0));
  }
  return out;
}

CheckReport check_mercator_obstruction(std::span<const double> chis, double h,
                                       double tolerance) {
  const auto lap = mercator_obstruction_values(chis, h);
  double worst = 0.0;
  double strength = 0.0;
  for (std::size_t k = 0; k < chis.size(); ++k) {
    const double sech = 1.0 / std::cosh(chis[k]);
    worst = std::max(worst, std::abs(lap[k] + sech * sech));
    strength = std::max(strength, std::abs(lap[k]));
  }
  return make_report("mercator_obstruction", worst, 0, 0, ThetaBand{}, tolerance,
                     strength > 0.5);
}

std::vector<Theorem2Sample> theorem2_profile(const BasicSolutionParams& p, int ntheta,
                                             const ThetaBand& band, long double h) {
  if (p.k1 == 0.0 || p.k2 != 0.0) {
    throw Error(ErrorCode::kInvalidParams, "stream-function profile needs k1 != 0 and k2 = 0");
  }
  if (ntheta < 2) throw Error(ErrorCode::kInvalidParams, "need at least two profile samples");
  const Real k1 = p.k1;
  std::vector<Real> thetas(ntheta);
  for (int k = 0; k < ntheta; ++k) {
    thetas[k] = static_cast<Real>(band.lo) +
                (static_cast<Real>(band.hi) - static_cast<Real>(band.lo)) * k / (ntheta - 1);
  }
  // psi' = -u_phi must keep one sign so psi can be inverted.
  const Real sign = -exact_detail::u_phi(thetas.front(), k1) > 0 ? 1 : -1;
  for (Real t : thetas) {
    if (!(sign * -exact_detail::u_phi(t, k1) > 0)) {
      throw Error(ErrorCode::kNonMonotoneProfile, "psi(theta) is not monotone on the band");
    }
  }

  std::vector<Theorem2Sample> out;
  out.reserve(ntheta);
  for (Real t : thetas) {
    const Real s0 = exact_detail::psi(t, k1);
    const Real dpsi = -exact_detail::u_phi(t, k1);
    auto g = [&](Real s) {
      const Real guess = t + (s - s0) / dpsi;
      return exact_detail::omega(invert_psi(s, guess, k1), k1, Real{0});
    };
    const Real g0 = exact_detail::omega(t, k1, Real{0});
    const Real g1 = central_d1<Real>(g, s0, h);
    const Real g2 = central_d2<Real>(g, s0, h);
    const Real sin_t = std::sin(t);
    Theorem2Sample smp;
    smp.theta = static_cast<double>(t);
    smp.grad_psi_sq = static_cast<double>(dpsi * dpsi);
    smp.g_ratio = static_cast<double>(g0 * g1 / g2);
    smp.grad_omega_sq = static_cast<double>(k1 * k1 / (sin_t * sin_t));
    smp.j_value = static_cast<double>(g0 * g1 * g1 * g1 / g2);
    out.push_back(smp);
  }
  return out;
}

Theorem2Report check_theorem2_relations(const BasicSolutionParams& p, int ntheta,
                                        const ThetaBand& band, int nlat,
                                        double relative_tolerance, double biharmonic_tolerance) {
  const auto samples = theorem2_profile(p, ntheta, band);
  double worst_a = 0.0;
  double worst_b = 0.0;
  for (const auto& s : samples) {
    worst_a = std::max(worst_a, std::abs(s.grad_psi_sq - s.g_ratio) / s.grad_psi_sq);
    worst_b = std::max(worst_b, std::abs(s.grad_omega_sq - s.j_value) / s.grad_omega_sq);
  }
  Theorem2Report rep;
  rep.grad_psi = make_report("theorem2_grad_psi", worst_a, ntheta, 1, band, relative_tolerance);
  rep.grad_omega =
      make_report("theorem2_grad_omega", worst_b, ntheta, 1, band, relative_tolerance);

  const auto grid = build_grid({nlat, 2 * nlat, GridKind::kGaussLegendre});
  const ScalarField bih = laplace_beltrami_fd(laplace_beltrami_fd(sample_psi_basic(grid, p)));
  rep.biharmonic = make_report("theorem2_biharmonic", bih.max_abs(band), grid->nlat(),
                               grid->nlon(), band, biharmonic_tolerance);
  return rep;
}

CheckReport check_f_of_psi_equals_sin2(const BasicSolutionParams& p, int ntheta,
                                       const GridPtr& grid) {
  if (p.k1 == 0.0) throw Error(ErrorCode::kInvalidParams, "needs k1 != 0");
  const ScalarField sin2 = ScalarField::sample(grid, [](double th, double) {
    const double s = std::sin(th);
    return s * s;
  });
  const double residual =
      std::max(dphi_fd(sin2).max_abs(), dphi_fd(sample_psi_basic(grid, p)).max_abs());

  // Mirrored profile samples theta_k and pi - theta_k.
  bool structure_ok = ntheta >= 4;
  const int half = ntheta / 2;
  std::vector<double> psi_north(half);
  std::vector<double> psi_south(half);
  for (int k = 0; k < half; ++k) {
    const double t = std::numbers::pi * (k + 0.5) / ntheta;
    psi_north[k] = psi_basic(t, p);
    psi_south[k] = psi_basic(std::numbers::pi - t, p);
    const double s_north = std::sin(t);
    const double s_south = std::sin(std::numbers::pi - t);
    structure_ok = structure_ok && std::abs(s_north * s_north - s_south * s_south) < 1e-15 &&
                   psi_north[k] != psi_south[k];
  }
  auto strictly_monotone = [](const std::vector<double>& v) {
    bool inc = true;
    bool dec = true;
    for (std::size_t k = 1; k < v.size(); ++k) {
      inc = inc && v[k] > v[k - 1];
      dec = dec && v[k] < v[k - 1];
    }
    return inc || dec;
  };
  structure_ok = structure_ok && strictly_monotone(psi_north) && strictly_monotone(psi_south);
  return make_report("f_of_psi_equals_sin2", residual, grid->nlat(), grid->nlon(),
                     ThetaBand{0.0, std::numbers::pi}, 0.0, structure_ok);
}

double convergence_order(double coarse_error, double fine_error, double refinement) {
  return std::log(coarse_error / fine_error) / std::log(refinement);
}

double fitted_convergence_order(std::span<const double> steps, std::span<const double> errors) {
  if (steps.size() != errors.size() || steps.size() < 2) {
    throw Error(ErrorCode::kInvalidParams, "need at least two (step, error) pairs");
  }
  const double n = static_cast<double>(steps.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const double x = std::log(steps[k]);
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sphereflow
