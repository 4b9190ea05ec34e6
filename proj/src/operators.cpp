#include "sphereflow/operators.hpp"

#include <array>
#include <cmath>

#include "sphereflow/errors.hpp"
#include "sphereflow/finite_difference.hpp"
#include "sphereflow/parallel.hpp"

namespace sphereflow {

namespace {

// First and second theta-derivative weights for one row.
struct RowStencil {
  int first = 0;  // index of the first node used
  std::vector<double> d1;
  std::vector<double> d2;
};

std::vector<RowStencil> theta_stencils(const Grid& g) {
  const auto th = g.thetas();
  const int n = g.nlat();
  std::vector<RowStencil> out(n);
  for (int i = 0; i < n; ++i) {
    RowStencil& s = out[i];
    int count = 3;
    if (i == 0) {
      s.first = 0;
      count = 4;
    } else if (i == n - 1) {
      s.first = n - 4;
      count = 4;
    } else {
      s.first = i - 1;
    }
    const auto w = fornberg_weights(th[i], th.subspan(s.first, count), 2);
    s.d1 = w[1];
    s.d2 = w[2];
  }
  return out;
}

double apply(const std::vector<double>& w, const ScalarField& f, int first, int j) {
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * f(first + static_cast<int>(k), j);
  return acc;
}

}  // namespace

ScalarField dtheta_fd(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto st = theta_stencils(g);
  ScalarField out(f.grid_ptr());
  parallel_for(g.nlat(), [&](int i) {
    for (int j = 0; j < g.nlon(); ++j) out(i, j) = apply(st[i].d1, f, st[i].first, j);
  });
  return out;
}

ScalarField dphi_fd(const ScalarField& f) {
  const Grid& g = f.grid();
  const int n = g.nlon();
  const double inv = 1.0 / (2.0 * g.dphi());
  ScalarField out(f.grid_ptr());
  parallel_for(g.nlat(), [&](int i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = (f(i, (j + 1) % n) - f(i, (j + n - 1) % n)) * inv;
    }
  });
  return out;
}

VelocityField velocity_from_streamfunction(const ScalarField& psi) {
  VelocityField u{dphi_fd(psi), dtheta_fd(psi)};
  const auto s = psi.grid().sin_thetas();
  for (int i = 0; i < psi.grid().nlat(); ++i) {
    for (double& v : u.u_theta.row(i)) v /= s[i];
    for (double& v : u.u_phi.row(i)) v = -v;
  }
  return u;
}

VelocityField velocity_from_streamfunction(const SpectralField& psi, const TransformPlan& plan) {
  VelocityField u{synthesize_dphi(psi, plan), synthesize_dtheta(psi, plan)};
  const auto s = plan.grid().sin_thetas();
  for (int i = 0; i < plan.grid().nlat(); ++i) {
    for (double& v : u.u_theta.row(i)) v /= s[i];
    for (double& v : u.u_phi.row(i)) v = -v;
  }
  return u;
}

ScalarField vorticity_from_velocity(const VelocityField& u) {
  require_same_grid(u.u_theta, u.u_phi);
  const Grid& g = u.u_phi.grid();
  const auto s = g.sin_thetas();
  ScalarField flux(u.u_phi.grid_ptr());
  for (int i = 0; i < g.nlat(); ++i) {
    for (int j = 0; j < g.nlon(); ++j) flux(i, j) = s[i] * u.u_phi(i, j);
  }
  ScalarField out = dtheta_fd(flux);
  const ScalarField dut = dphi_fd(u.u_theta);
  for (int i = 0; i < g.nlat(); ++i) {
    for (int j = 0; j < g.nlon(); ++j) out(i, j) = (out(i, j) - dut(i, j)) / s[i];
  }
  return out;
}

ScalarField laplace_beltrami_fd(const ScalarField& f) {
  const Grid& g = f.grid();
  const int nlat = g.nlat();
  const int nlon = g.nlon();
  const auto th = g.thetas();
  const auto s = g.sin_thetas();
  const auto c = g.cos_thetas();
  const auto st = theta_stencils(g);
  const double inv_dphi2 = 1.0 / (g.dphi() * g.dphi());

  ScalarField out(f.grid_ptr());
  parallel_for(nlat, [&](int i) {
    const double inv_s2 = 1.0 / (s[i] * s[i]);
    const bool edge = (i == 0 || i == nlat - 1);
    double hp = 0.0, hm = 0.0, sp = 0.0, sm = 0.0, cell = 0.0;
    if (!edge) {
      hp = th[i + 1] - th[i];
      hm = th[i] - th[i - 1];
      sp = std::sin(0.5 * (th[i + 1] + th[i]));
      sm = std::sin(0.5 * (th[i] + th[i - 1]));
      cell = 0.5 * (hp + hm);
    }
    for (int j = 0; j < nlon; ++j) {
      double lat_part;
      if (edge) {
        lat_part = apply(st[i].d2, f, st[i].first, j) +
                   (c[i] / s[i]) * apply(st[i].d1, f, st[i].first, j);
      } else {
        const double flux_p = sp * (f(i + 1, j) - f(i, j)) / hp;
        const double flux_m = sm * (f(i, j) - f(i - 1, j)) / hm;
        lat_part = (flux_p - flux_m) / (s[i] * cell);
      }
      const double fpp = (f(i, (j + 1) % nlon) - 2.0 * f(i, j) + f(i, (j + nlon - 1) % nlon)) * inv_dphi2;
      out(i, j) = lat_part + inv_s2 * fpp;
    }
  });
  return out;
}

ScalarField jacobian(const ScalarField& psi, const ScalarField& omega) {
  require_same_grid(psi, omega);
  const ScalarField pp = dphi_fd(psi);
  const ScalarField pt = dtheta_fd(psi);
  const ScalarField op = dphi_fd(omega);
  const ScalarField ot = dtheta_fd(omega);
  ScalarField out(psi.grid_ptr());
  auto o = out.values();
  for (std::size_t k = 0; k < o.size(); ++k) {
    o[k] = pp.values()[k] * ot.values()[k] - pt.values()[k] * op.values()[k];
  }
  return out;
}

ScalarField jacobian_spectral(const SpectralField& psi, const SpectralField& omega,
                              const TransformPlan& plan) {
  const ScalarField pp = synthesize_dphi(psi, plan);
  const ScalarField pt = synthesize_dtheta(psi, plan);
  const ScalarField op = synthesize_dphi(omega, plan);
  const ScalarField ot = synthesize_dtheta(omega, plan);
  ScalarField out(plan.grid_ptr());
  auto o = out.values();
  for (std::size_t k = 0; k < o.size(); ++k) {
    o[k] = pp.values()[k] * ot.values()[k] - pt.values()[k] * op.values()[k];
  }
  return out;
}

ScalarField ns_residual(const ScalarField& psi, const ScalarField& omega, double nu) {
  if (nu < 0.0) throw Error(ErrorCode::kInvalidParams, "viscosity must be >= 0");
  ScalarField out = jacobian(psi, omega);
  const auto s = out.grid().sin_thetas();
  for (int i = 0; i < out.grid().nlat(); ++i) {
    for (double& v : out.row(i)) v /= s[i];
  }
  if (nu > 0.0) {
    const ScalarField lap = laplace_beltrami_fd(omega);
    auto o = out.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] -= nu * lap.values()[k];
  }
  return out;
}

MercatorField::MercatorField(double chi0_, double dchi_, int nchi_, int nphi_)
    : chi0(chi0_), dchi(dchi_), nchi(nchi_), nphi(nphi_) {
  if (nchi < 4 || nphi < 4 || !(dchi > 0.0)) {
    throw Error(ErrorCode::kInvalidSpec, "Mercator rectangle needs >= 4 nodes per direction");
  }
  values.assign(static_cast<std::size_t>(nchi) * nphi, 0.0);
}

double MercatorField::phi(int j) const { return 2.0 * std::numbers::pi * j / nphi; }

MercatorField mercator_laplacian(const MercatorField& f) {
  MercatorField out(f.chi0, f.dchi, f.nchi, f.nphi);
  const double inv_h2 = 1.0 / (f.dchi * f.dchi);
  const double dphi = 2.0 * std::numbers::pi / f.nphi;
  const double inv_p2 = 1.0 / (dphi * dphi);
  const int n = f.nphi;
  for (int i = 0; i < f.nchi; ++i) {
    for (int j = 0; j < n; ++j) {
      double fxx;
      if (i == 0) {
        fxx = (2.0 * f(0, j) - 5.0 * f(1, j) + 4.0 * f(2, j) - f(3, j)) * inv_h2;
      } else if (i == f.nchi - 1) {
        const int k = f.nchi - 1;
        fxx = (2.0 * f(k, j) - 5.0 * f(k - 1, j) + 4.0 * f(k - 2, j) - f(k - 3, j)) * inv_h2;
      } else {
        fxx = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) * inv_h2;
      }
      const double fyy = (f(i, (j + 1) % n) - 2.0 * f(i, j) + f(i, (j + n - 1) % n)) * inv_p2;
      out(i, j) = fxx + fyy;
    }
  }
  return out;
}

}  // namespace sphereflow
