#pragma once

#include <vector>

#include "sphereflow/grid.hpp"
#include "sphereflow/spharm.hpp"

namespace sphereflow {

/// Tangential velocity on the unit sphere. Sign conventions used throughout:
///   u_theta = (1/sin theta) dpsi/dphi,  u_phi = -dpsi/dtheta,
///   omega = -lap(psi).
struct VelocityField {
  ScalarField u_theta;
  ScalarField u_phi;
};

// Grid derivatives. Latitude derivatives use three-point stencils on the
// (possibly non-uniform) colatitude nodes and four-point one-sided stencils
// on the first and last rows; longitude derivatives are periodic centered
// differences.
ScalarField dtheta_fd(const ScalarField& f);
ScalarField dphi_fd(const ScalarField& f);

VelocityField velocity_from_streamfunction(const ScalarField& psi);
/// Spectral-derivative variant on the plan grid.
VelocityField velocity_from_streamfunction(const SpectralField& psi, const TransformPlan& plan);

/// Radial curl (1/sin theta)[d(sin theta u_phi)/dtheta - du_theta/dphi].
ScalarField vorticity_from_velocity(const VelocityField& u);

/// Second-order Laplace-Beltrami operator: flux form in theta on interior
/// rows, expanded one-sided form on the first and last rows.
ScalarField laplace_beltrami_fd(const ScalarField& f);

/// Advection bracket psi_phi omega_theta - psi_theta omega_phi, without the
/// 1/sin(theta) metric factor.
ScalarField jacobian(const ScalarField& psi, const ScalarField& omega);
ScalarField jacobian_spectral(const SpectralField& psi, const SpectralField& omega,
                              const TransformPlan& plan);

/// (1/sin theta) J(psi, omega) - nu lap(omega). Zero on a stationary
/// Navier-Stokes solution; nu = 0 gives the Euler residual.
ScalarField ns_residual(const ScalarField& psi, const ScalarField& omega, double nu);

/// Samples on a uniform (chi, phi) rectangle, phi periodic with nphi points.
struct MercatorField {
  double chi0 = 0.0;
  double dchi = 0.0;
  int nchi = 0;
  int nphi = 0;
  std::vector<double> values;

  MercatorField() = default;
  MercatorField(double chi0, double dchi, int nchi, int nphi);

  template <class F>
  static MercatorField sample(double chi0, double dchi, int nchi, int nphi, F&& f) {
    MercatorField out(chi0, dchi, nchi, nphi);
    for (int i = 0; i < nchi; ++i) {
      for (int j = 0; j < nphi; ++j) out(i, j) = f(out.chi(i), out.phi(j));
    }
    return out;
  }

  double chi(int i) const { return chi0 + i * dchi; }
  double phi(int j) const;
  double& operator()(int i, int j) { return values[static_cast<std::size_t>(i) * nphi + j]; }
  double operator()(int i, int j) const { return values[static_cast<std::size_t>(i) * nphi + j]; }
};

/// Five-point Laplacian in (chi, phi); the first and last chi rows use
/// one-sided second differences. Relates to the sphere operator through
/// lap = cosh^2(chi) * (d_chichi + d_phiphi).
MercatorField mercator_laplacian(const MercatorField& f);

}  // namespace sphereflow
