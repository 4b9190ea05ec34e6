#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>

#include "sphereflow/grid.hpp"
#include "sphereflow/spharm.hpp"

namespace sphereflow {

/// The zonal family omega(theta) = k1 log(tan(theta/2)) + k2: a pair of
/// opposite point vortices at the poles plus a constant offset. Only k2 = 0
/// has zero total vorticity.
struct BasicSolutionParams {
  double k1 = 1.0;
  double k2 = 0.0;

  bool gauss_admissible() const { return k2 == 0.0; }
};

enum class Hemisphere { kNorth, kSouth };

/// k1 log(tan(theta/2)) + k2. Throws kPoleSingularity at theta = 0 or pi.
double omega_basic(double theta, const BasicSolutionParams& p);

/// Profile integral I(theta) = int_0^theta sin(s) log(tan(s/2)) ds
///                           = log sin - cos log tan(theta/2) - log 2,
/// evaluated as 2 log cos(t/2) + 2 sin^2(t/2) log tan(t/2) with
/// t = min(theta, pi - theta) (I is symmetric about the equator).
double profile_integral(double theta);

/// Zonal velocity k1 I(theta) / sin(theta), i.e. -dpsi/dtheta for the
/// streamfunction with -lap(psi) = omega. Tends to 0 at both poles and has
/// magnitude |k1| log 2 at the equator. Only k1 contributes.
double u_phi_basic(double theta, const BasicSolutionParams& p);

/// Streamfunction with psi(0+) = 0, closed form via the dilogarithm.
double psi_basic(double theta, const BasicSolutionParams& p);
/// Same quantity by adaptive Gauss-Kronrod quadrature of -u_phi.
double psi_basic_quadrature(double theta, const BasicSolutionParams& p);

/// Integral of omega over one hemisphere with the area element:
/// 2 pi (-/+ k1 log 2 + k2) for north/south.
double hemisphere_vorticity_integral(const BasicSolutionParams& p, Hemisphere h);

/// |grad omega|^2 / sin^2(theta) written as a function of omega:
/// k1^2 cosh^2(omega / k1). Requires k1 != 0 and k2 = 0.
double phi_of_omega_basic(double omega, const BasicSolutionParams& p);

/// Exact L2 projection of omega_basic onto degree <= lmax (zonal, odd l
/// only, plus the k2 mean mode).
SpectralField basic_solution_coefficients(const BasicSolutionParams& p, int lmax);

ScalarField sample_omega_basic(const GridPtr& grid, const BasicSolutionParams& p);
ScalarField sample_psi_basic(const GridPtr& grid, const BasicSolutionParams& p);
ScalarField sample_u_phi_basic(const GridPtr& grid, const BasicSolutionParams& p);

namespace exact_detail {

/// Li2(x) for -1 <= x <= 0, through Li2(x) = -Li2(x/(x-1)) - log^2(1-x)/2,
/// which maps the argument into [0, 1/2].
template <std::floating_point T>
T dilog_nonpositive(T x) {
  using std::log;
  const T y = x / (x - 1);
  T sum = 0;
  T power = y;
  for (int k = 1; k < 200; ++k) {
    const T term = power / (static_cast<T>(k) * k);
    sum += term;
    if (term <= sum * std::numeric_limits<T>::epsilon() / 4) break;
    power *= y;
  }
  const T l1 = std::log1p(-x);
  return -sum - l1 * l1 / 2;
}

template <std::floating_point T>
T omega(T theta, T k1, T k2) {
  using std::log;
  using std::tan;
  return k1 * log(tan(theta / 2)) + k2;
}

template <std::floating_point T>
T profile_integral_over_sin(T theta) {
  using std::cos;
  using std::log;
  using std::sin;
  using std::tan;
  const T pi = std::numbers::pi_v<T>;
  const T t = theta <= pi / 2 ? theta : pi - theta;
  if (t <= 0) return 0;
  if (t < static_cast<T>(1e-4)) {
    const T l = log(t / 2);
    return t / 2 * l - t / 4 + t * t * t * (l / 24 - static_cast<T>(1) / 96);
  }
  const T half = t / 2;
  const T sh = sin(half);
  const T value = 2 * log(cos(half)) + 2 * sh * sh * log(tan(half));
  return value / sin(t);
}

template <std::floating_point T>
T u_phi(T theta, T k1) {
  return k1 * profile_integral_over_sin(theta);
}

// Northern half of psi/k1: -Li2(-x) + a log1p(x), x = tan^2(t/2), a = -log tan(t/2).
template <std::floating_point T>
T psi_north(T t) {
  using std::log;
  using std::tan;
  if (t <= 0) return 0;
  const T tn = tan(t / 2);
  const T x = tn * tn;
  return -dilog_nonpositive(-x) - log(tn) * std::log1p(x);
}

template <std::floating_point T>
T psi(T theta, T k1) {
  const T pi = std::numbers::pi_v<T>;
  if (theta <= pi / 2) return k1 * psi_north(theta);
  return k1 * (pi * pi / 6 - psi_north(pi - theta));
}

}  // namespace exact_detail

}  // namespace sphereflow
