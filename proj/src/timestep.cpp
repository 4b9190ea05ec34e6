#include "sphereflow/timestep.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "sphereflow/errors.hpp"
#include "sphereflow/io.hpp"
#include "sphereflow/operators.hpp"

namespace sphereflow {

namespace {

constexpr double kStabilityBound = 2.8;
constexpr double kInstabilityGrowth = 10.0;

double band_max_abs(const ScalarField& f, const std::vector<int>& rows) {
  double m = 0.0;
  for (int i : rows) {
    for (double v : f.row(i)) m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace

void EvolutionConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidConfig, msg); };
  if (!(dt > 0.0)) fail("dt must be > 0");
  if (steps < 1) fail("steps must be >= 1");
  if (lmax < 2) fail("lmax must be >= 2");
  if (!(nu >= 0.0)) fail("nu must be >= 0");
  if (!(rho > 0.0)) fail("rho must be > 0");
  const double stiffness = dt * nu * lmax * (lmax + 1.0);
  if (!(stiffness < kStabilityBound)) {
    fail("dt * nu * lmax (lmax + 1) = " + format_real(stiffness) + " violates the bound 2.8");
  }
}

GridSpec transform_grid_spec(int lmax, bool dealias) {
  if (!dealias) return {std::max(4, lmax + 1), std::max(4, 2 * lmax + 1), GridKind::kGaussLegendre};
  // Exact projection of degree-2L products onto degree L needs
  // 2 nlat - 1 >= 3L and nlon >= 3L + 1.
  const int nlat = (3 * lmax + 2) / 2;
  return {std::max(4, nlat), std::max(4, 3 * lmax + 1), GridKind::kGaussLegendre};
}

VorticitySolver::VorticitySolver(const EvolutionConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      plan_(build_grid(transform_grid_spec(cfg.lmax, cfg.dealias)), cfg.lmax),
      band_rows_(band_rows(plan_.grid(), cfg.band)) {}

SpectralField VorticitySolver::rhs(const SpectralField& omega) const {
  if (omega.lmax() != cfg_.lmax) {
    throw Error(ErrorCode::kInvalidParams, "state degree differs from configured lmax");
  }
  const SpectralField psi = invert_poisson(omega);

  const ScalarField j = jacobian_spectral(psi, omega, plan_);
  ScalarField advection(plan_.grid_ptr());
  const auto s = plan_.grid().sin_thetas();
  for (int i = 0; i < plan_.grid().nlat(); ++i) {
    const auto src = j.row(i);
    auto dst = advection.row(i);
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] / s[i];
  }
  SpectralField out = analyze(advection, plan_);
  out *= -1.0;
  if (cfg_.nu > 0.0) {
    for (int l = 1; l <= cfg_.lmax; ++l) {
      const double decay = -cfg_.nu * l * (l + 1.0);
      for (int m = -l; m <= l; ++m) out(l, m) += decay * omega(l, m);
    }
  }
  out(0, 0) = 0.0;
  return out;
}

SpectralField VorticitySolver::step(const SpectralField& omega) const {
  const double dt = cfg_.dt;
  const SpectralField k1 = rhs(omega);
  const SpectralField k2 = rhs(omega + (0.5 * dt) * k1);
  const SpectralField k3 = rhs(omega + (0.5 * dt) * k2);
  const SpectralField k4 = rhs(omega + dt * k3);
  SpectralField next = omega;
  const auto a = k1.coeffs();
  const auto b = k2.coeffs();
  const auto c = k3.coeffs();
  const auto d = k4.coeffs();
  auto out = next.coeffs();
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] += (dt / 6.0) * (a[k] + 2.0 * b[k] + 2.0 * c[k] + d[k]);
  }
  return next;
}

TimeSeries VorticitySolver::evolve(const SpectralField& omega0) const {
  SpectralField omega = omega0.resized(cfg_.lmax);
  const ScalarField initial = synthesize(omega, plan_);
  const double initial_max = initial.max_abs();

  TimeSeries ts;
  auto record = [&](double t, const SpectralField& state) {
    const ScalarField phys = synthesize(state, plan_);
    const ScalarField diff = synthesize(state - omega, plan_);
    ts.times.push_back(t);
    ts.energy.push_back(energy(state));
    ts.enstrophy.push_back(enstrophy(state));
    ts.max_omega.push_back(phys.max_abs());
    ts.drift.push_back(band_max_abs(diff, band_rows_));
    return ts.max_omega.back();
  };

  // `omega` holds the initial state; the running state lives in `state`.
  SpectralField state = omega;
  record(0.0, state);
  for (int n = 1; n <= cfg_.steps; ++n) {
    state = step(state);
    const double current_max = record(n * cfg_.dt, state);
    if (!std::isfinite(current_max) ||
        (initial_max > 0.0 && current_max > kInstabilityGrowth * initial_max)) {
      throw Error(ErrorCode::kInstabilityDetected,
                  "max |omega| grew to " + format_real(current_max) + " at step " +
                      std::to_string(n));
    }
  }
  ts.final_state = std::move(state);
  return ts;
}

SpectralField rhs(const SpectralField& omega, const EvolutionConfig& cfg) {
  return VorticitySolver(cfg).rhs(omega);
}

TimeSeries evolve(const SpectralField& omega0, const EvolutionConfig& cfg) {
  return VorticitySolver(cfg).evolve(omega0);
}

double energy(const SpectralField& omega) {
  double e = 0.0;
  for (int l = 1; l <= omega.lmax(); ++l) {
    const double inv = 1.0 / (l * (l + 1.0));
    for (int m = -l; m <= l; ++m) e += std::norm(omega(l, m)) * inv;
  }
  return 0.5 * e;
}

double enstrophy(const SpectralField& omega) {
  double z = 0.0;
  for (const auto& a : omega.coeffs()) z += std::norm(a);
  return 0.5 * z;
}

double steadiness_drift(const BasicSolutionParams& p, int lmax, double nu, double t_final,
                        double dt, const ThetaBand& band) {
  if (!p.gauss_admissible()) {
    throw Error(ErrorCode::kInvalidParams, "steadiness needs k2 = 0");
  }
  if (t_final < 0.0) throw Error(ErrorCode::kInvalidParams, "t_final must be >= 0");
  if (t_final == 0.0) return 0.0;
  EvolutionConfig cfg;
  cfg.nu = nu;
  cfg.lmax = lmax;
  cfg.steps = std::max(1, static_cast<int>(std::ceil(t_final / dt - 1e-9)));
  cfg.dt = t_final / cfg.steps;
  cfg.band = band;
  const TimeSeries ts = evolve(basic_solution_coefficients(p, lmax), cfg);
  return ts.drift.back();
}

void write_time_series_csv(std::ostream& os, const TimeSeries& ts) {
  os << "t,energy,enstrophy,max_omega,drift\n";
  for (std::size_t k = 0; k < ts.times.size(); ++k) {
    os << format_real(ts.times[k]) << ',' << format_real(ts.energy[k]) << ','
       << format_real(ts.enstrophy[k]) << ',' << format_real(ts.max_omega[k]) << ','
       << format_real(ts.drift[k]) << '\n';
  }
}

void write_time_series_csv(const std::filesystem::path& path, const TimeSeries& ts) {
  auto out = open_output(path);
  write_time_series_csv(out, ts);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

}  // namespace sphereflow
