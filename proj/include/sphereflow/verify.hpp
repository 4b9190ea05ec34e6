#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sphereflow/exact.hpp"
#include "sphereflow/grid.hpp"

namespace sphereflow {

/// Outcome of one numerical check. pass == (max_abs_residual <= tolerance)
/// unless a structural precondition of the check failed, in which case
/// pass is false regardless of the residual.
struct CheckReport {
  std::string name;
  double max_abs_residual = 0.0;
  int nlat = 0;
  int nlon = 0;
  ThetaBand band;
  double tolerance = 0.0;
  bool pass = false;
};

CheckReport make_report(std::string name, double residual, int nlat, int nlon,
                        const ThetaBand& band, double tolerance, bool structural_ok = true);

/// `name,nlat,nlon,band_lo,band_hi,max_abs_residual,tolerance,pass`
std::string report_csv_header();
std::string report_csv_row(const CheckReport& r);
void write_reports_csv(std::ostream& os, std::span<const CheckReport> reports);
void write_reports_csv(const std::filesystem::path& path, std::span<const CheckReport> reports);

/// max |J(psi, omega)| over the band (vanishing convection).
CheckReport check_vanishing_jacobian(const ScalarField& psi, const ScalarField& omega,
                                     const ThetaBand& band = {}, double tolerance = 1e-10);

/// Second-order truncation budget 10 * h^2, h the widest latitude spacing.
double truncation_tolerance(const Grid& grid);

/// max |lap_fd(omega)| over the band. Without a tolerance the truncation
/// budget of the grid is used.
CheckReport check_harmonic_vorticity(const ScalarField& omega, const ThetaBand& band = {},
                                     std::optional<double> tolerance = std::nullopt);

/// Dimension of the kernel of the spectral Laplace-Beltrami operator on
/// degree <= lmax. Only the constants survive, so the answer is 1.
int global_harmonic_nullspace(int lmax);

using ProfileFunction = std::function<long double(long double)>;

/// r(w) = (Phi'/Phi)' Phi - 2 = Phi'' - Phi'^2/Phi - 2 with both derivatives
/// taken by centered fourth-order differences of step h, in extended
/// precision. Throws kNonpositivePhi if Phi <= 0 at any stencil node.
std::vector<double> gg_ode_residuals(const ProfileFunction& phi, std::span<const double> omegas,
                                     long double h = 1e-4L);
CheckReport check_gg_ode(const ProfileFunction& phi, std::span<const double> omegas,
                         double tolerance = 1e-8, long double h = 1e-4L,
                         std::string name = "gg_ode");

/// Five-point (chi, phi) Laplacian of log sech(chi) at each sample; the
/// exact value is -sech^2(chi).
std::vector<double> mercator_obstruction_values(std::span<const double> chis, double h = 1e-3);

/// Passes when the discrete Laplacian of log sech(chi) matches -sech^2(chi)
/// within `tolerance` and its magnitude exceeds 0.5 somewhere in the sample
/// set: log sin(theta) is not harmonic in Mercator coordinates, so it cannot
/// be the real part of an analytic function. Samples must satisfy |chi| <= 10.
CheckReport check_mercator_obstruction(std::span<const double> chis, double h = 1e-3,
                                       double tolerance = 1e-6);

/// Pointwise data for the omega = G(psi) relations along the basic profile.
struct Theorem2Sample {
  double theta = 0.0;
  double grad_psi_sq = 0.0;     // u_phi^2
  double g_ratio = 0.0;         // G G' / G''
  double grad_omega_sq = 0.0;   // k1^2 / sin^2(theta)
  double j_value = 0.0;         // G G'^3 / G''
};

/// Builds G = omega o psi^{-1} by Newton inversion of psi(theta) and
/// differentiates it in psi with centered fourth-order stencils of step h.
/// ntheta samples are spread uniformly over the band (endpoints included).
std::vector<Theorem2Sample> theorem2_profile(const BasicSolutionParams& p, int ntheta,
                                             const ThetaBand& band = {}, long double h = 1e-4L);

struct Theorem2Report {
  CheckReport grad_psi;    // |grad psi|^2 = G G'/G''        (relative)
  CheckReport grad_omega;  // |grad omega|^2 = G G'^3/G''    (relative)
  CheckReport biharmonic;  // lap_fd(lap_fd(psi_basic))       (absolute)
};

Theorem2Report check_theorem2_relations(const BasicSolutionParams& p, int ntheta,
                                        const ThetaBand& band = {}, int nlat = 256,
                                        double relative_tolerance = 1e-4,
                                        double biharmonic_tolerance = 1e-4);

/// Zonal consistency of F(psi) = sin^2(theta): the phi-derivatives of the
/// sampled sin^2(theta) and psi_basic fields are exactly zero on `grid`, and
/// along ntheta profile samples sin^2 is a single-valued function of psi on
/// each hemisphere while pairing mirrored points two-to-one.
CheckReport check_f_of_psi_equals_sin2(const BasicSolutionParams& p, int ntheta,
                                       const GridPtr& grid);

/// log(coarse/fine) / log(refinement).
double convergence_order(double coarse_error, double fine_error, double refinement = 2.0);

/// Least-squares slope of log(error) against log(step).
double fitted_convergence_order(std::span<const double> steps, std::span<const double> errors);

}  // namespace sphereflow
