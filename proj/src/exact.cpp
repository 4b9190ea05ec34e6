#include "sphereflow/exact.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <string>

#include "sphereflow/errors.hpp"

namespace sphereflow {

namespace {

constexpr double kPi = std::numbers::pi;

void require_open_interval(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw Error(ErrorCode::kDomainError,
                "colatitude outside [0, pi]: " + std::to_string(theta));
  }
}

}  // namespace

double omega_basic(double theta, const BasicSolutionParams& p) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw Error(ErrorCode::kPoleSingularity,
                "vorticity is undefined at the poles (theta = " + std::to_string(theta) + ")");
  }
  return exact_detail::omega(theta, p.k1, p.k2);
}

double profile_integral(double theta) {
  require_open_interval(theta);
  return exact_detail::profile_integral_over_sin(theta) * std::sin(theta);
}

double u_phi_basic(double theta, const BasicSolutionParams& p) {
  require_open_interval(theta);
  return exact_detail::u_phi(theta, p.k1);
}

double psi_basic(double theta, const BasicSolutionParams& p) {
  require_open_interval(theta);
  return exact_detail::psi(theta, p.k1);
}

double psi_basic_quadrature(double theta, const BasicSolutionParams& p) {
  require_open_interval(theta);
  if (theta == 0.0) return 0.0;
  auto integrand = [&](double s) { return -exact_detail::u_phi(s, p.k1); };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, theta, 20,
                                                                       1e-15, &error);
}

double hemisphere_vorticity_integral(const BasicSolutionParams& p, Hemisphere h) {
  // int_0^{pi/2} sin(theta) log tan(theta/2) d(theta) = I(pi/2) = -log 2
  const double vortex = 2.0 * kPi * p.k1 * std::numbers::ln2;
  const double offset = 2.0 * kPi * p.k2;
  return h == Hemisphere::kNorth ? offset - vortex : offset + vortex;
}

double phi_of_omega_basic(double omega, const BasicSolutionParams& p) {
  if (p.k1 == 0.0 || p.k2 != 0.0) {
    throw Error(ErrorCode::kInvalidParams, "Phi(omega) needs k1 != 0 and k2 = 0");
  }
  const double c = std::cosh(omega / p.k1);
  return p.k1 * p.k1 * c * c;
}

SpectralField basic_solution_coefficients(const BasicSolutionParams& p, int lmax) {
  // log tan(theta/2) = -artanh(cos theta), and
  // int_{-1}^{1} artanh(x) P_l(x) dx = 2 / (l (l+1)) for odd l, 0 for even l.
  SpectralField c(lmax);
  c(0, 0) = p.k2 * std::sqrt(4.0 * kPi);
  for (int l = 1; l <= lmax; l += 2) {
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
    c(l, 0) = -p.k1 * 2.0 * kPi * norm * 2.0 / (static_cast<double>(l) * (l + 1));
  }
  return c;
}

namespace {

template <class F>
ScalarField zonal_field(const GridPtr& grid, F&& profile) {
  ScalarField out(grid);
  const auto th = grid->thetas();
  for (int i = 0; i < grid->nlat(); ++i) {
    const double v = profile(th[i]);
    for (double& x : out.row(i)) x = v;
  }
  return out;
}

}  // namespace

ScalarField sample_omega_basic(const GridPtr& grid, const BasicSolutionParams& p) {
  return zonal_field(grid, [&](double th) { return omega_basic(th, p); });
}

ScalarField sample_psi_basic(const GridPtr& grid, const BasicSolutionParams& p) {
  return zonal_field(grid, [&](double th) { return psi_basic(th, p); });
}

ScalarField sample_u_phi_basic(const GridPtr& grid, const BasicSolutionParams& p) {
  return zonal_field(grid, [&](double th) { return u_phi_basic(th, p); });
}

}  // namespace sphereflow
