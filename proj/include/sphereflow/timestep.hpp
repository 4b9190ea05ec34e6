#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sphereflow/exact.hpp"
#include "sphereflow/grid.hpp"
#include "sphereflow/spharm.hpp"

namespace sphereflow {

/// Barotropic vorticity run parameters.
struct EvolutionConfig {
  double nu = 0.0;
  double dt = 1e-3;
  int steps = 1;
  int lmax = 31;
  bool dealias = true;
  /// Rows used for the drift diagnostic.
  ThetaBand band{};
  /// Density never enters the vorticity dynamics; kept at 1.
  double rho = 1.0;

  /// Throws kInvalidConfig on dt <= 0, steps < 1, lmax < 2, nu < 0 or
  /// dt * nu * lmax (lmax + 1) >= 2.8 (explicit RK4 stability bound).
  void validate() const;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> energy;     // 1/2 int |grad psi|^2 dA
  std::vector<double> enstrophy;  // 1/2 int omega^2 dA
  std::vector<double> max_omega;  // max |omega| on the transform grid
  std::vector<double> drift;      // max |omega(t) - omega(0)| on band rows
  SpectralField final_state;
};

/// Transform grid for a run: the minimal Gauss grid for lmax, or with
/// dealiasing the grid on which lmax is two thirds of the resolved degree,
/// so quadratic products are projected back without aliasing.
GridSpec transform_grid_spec(int lmax, bool dealias);

/// Pseudo-spectral RK4 integrator for
///   d omega/dt = -(1/sin theta) J(psi, omega) + nu lap(omega),  -lap(psi) = omega.
class VorticitySolver {
 public:
  explicit VorticitySolver(const EvolutionConfig& cfg);

  const EvolutionConfig& config() const { return cfg_; }
  const TransformPlan& plan() const { return plan_; }

  /// Tendency of omega; the l = 0 tendency is exactly zero.
  SpectralField rhs(const SpectralField& omega) const;
  SpectralField step(const SpectralField& omega) const;
  TimeSeries evolve(const SpectralField& omega0) const;

 private:
  EvolutionConfig cfg_;
  TransformPlan plan_;
  std::vector<int> band_rows_;
};

SpectralField rhs(const SpectralField& omega, const EvolutionConfig& cfg);
TimeSeries evolve(const SpectralField& omega0, const EvolutionConfig& cfg);

double energy(const SpectralField& omega);
double enstrophy(const SpectralField& omega);

/// Projects the basic solution to degree lmax, evolves it to t_final with
/// step dt and returns the band-restricted drift max |omega(t) - omega(0)|.
/// Throws kInvalidParams unless k2 = 0.
double steadiness_drift(const BasicSolutionParams& p, int lmax, double nu, double t_final,
                        double dt = 1e-3, const ThetaBand& band = {});

/// Header `t,energy,enstrophy,max_omega,drift`.
void write_time_series_csv(std::ostream& os, const TimeSeries& ts);
void write_time_series_csv(const std::filesystem::path& path, const TimeSeries& ts);

}  // namespace sphereflow
