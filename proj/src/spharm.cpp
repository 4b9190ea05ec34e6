#include "sphereflow/spharm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "sphereflow/errors.hpp"
#include "sphereflow/parallel.hpp"

namespace sphereflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSymmetryTolerance = 1e-10;

// FFTW's planner is not re-entrant; execution with the new-array API is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void require_real(const SpectralField& c) {
  const double defect = c.symmetry_defect();
  if (defect > kSymmetryTolerance) {
    throw Error(ErrorCode::kSymmetryViolation,
                "coefficients are not conjugate-symmetric (defect " + std::to_string(defect) + ")");
  }
}

enum class SynthesisKind { kValue, kDtheta, kDphi };

ScalarField synthesize_impl(const SpectralField& c, const TransformPlan& plan,
                            SynthesisKind kind) {
  if (c.lmax() > plan.lmax()) {
    throw Error(ErrorCode::kUnderResolvedGrid,
                "plan degree " + std::to_string(plan.lmax()) + " below field degree " +
                    std::to_string(c.lmax()));
  }
  require_real(c);
  const Grid& g = plan.grid();
  const int lmax = c.lmax();
  ScalarField out(plan.grid_ptr());
  parallel_for(g.nlat(), [&](int i) {
    std::vector<Complex> fm(plan.lmax() + 1, Complex{});
    for (int m = 0; m <= lmax; ++m) {
      const double* table = kind == SynthesisKind::kDtheta ? &plan.dplm(i, m, m) : &plan.plm(i, m, m);
      double re = 0.0;
      double im = 0.0;
      for (int l = m; l <= lmax; ++l) {
        const Complex a = c(l, m);
        re += a.real() * table[l - m];
        im += a.imag() * table[l - m];
      }
      fm[m] = kind == SynthesisKind::kDphi ? Complex(-m * im, m * re) : Complex(re, im);
    }
    plan.inverse_longitude(fm, out.row(i));
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(int lmax) : lmax_(lmax) {
  if (lmax < 0) throw Error(ErrorCode::kInvalidParams, "lmax must be >= 0");
  coeffs_.assign(size_for(lmax), Complex{});
}

void SpectralField::set_real_mode(int l, int m, Complex value) {
  const int am = std::abs(m);
  if (m < 0) value = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(value);
  (*this)(l, am) = value;
  (*this)(l, -am) = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(value);
}

double SpectralField::symmetry_defect() const {
  double worst = 0.0;
  for (int l = 0; l <= lmax_; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      worst = std::max(worst, std::abs((*this)(l, -m) - sign * std::conj((*this)(l, m))));
    }
  }
  return worst;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

SpectralField SpectralField::resized(int lmax) const {
  SpectralField out(lmax);
  const int lcommon = std::min(lmax, lmax_);
  for (int l = 0; l <= lcommon; ++l) {
    for (int m = -l; m <= l; ++m) out(l, m) = (*this)(l, m);
  }
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.lmax_ != lmax_) throw Error(ErrorCode::kInvalidParams, "degree mismatch in +=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (other.lmax_ != lmax_) throw Error(ErrorCode::kInvalidParams, "degree mismatch in -=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& a : coeffs_) a *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

// ---------------------------------------------------------------------------
// Legendre tables

std::vector<double> normalized_legendre(int lmax, double cos_theta, double sin_theta) {
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(lmax + 1) * (lmax + 2) / 2);
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_theta;
    p.push_back(pmm);
    if (m == lmax) break;
    double prev = pmm;
    double cur = std::sqrt(2.0 * m + 3.0) * cos_theta * pmm;
    p.push_back(cur);
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      const double next = a * (cos_theta * cur - b * prev);
      prev = cur;
      cur = next;
      p.push_back(cur);
    }
  }
  return p;
}

bool grid_resolves(const Grid& grid, int lmax) {
  return grid.exact_degree() >= 2 * lmax && grid.nlon() >= 2 * lmax + 1;
}

// ---------------------------------------------------------------------------
// TransformPlan

struct TransformPlan::FftPlans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~FftPlans() {
    std::lock_guard lock(fftw_planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

TransformPlan::TransformPlan(GridPtr grid, int lmax, LongitudeTransform lt)
    : grid_(std::move(grid)), lmax_(lmax), lt_(lt) {
  if (lmax < 0) throw Error(ErrorCode::kInvalidParams, "lmax must be >= 0");
  if (!grid_resolves(*grid_, lmax)) {
    throw Error(ErrorCode::kUnderResolvedGrid,
                "grid " + std::to_string(grid_->nlat()) + "x" + std::to_string(grid_->nlon()) +
                    " does not resolve degree " + std::to_string(lmax));
  }
  const int nlat = grid_->nlat();
  m_offset_.resize(lmax + 1);
  std::size_t offset = 0;
  for (int m = 0; m <= lmax; ++m) {
    m_offset_[m] = offset;
    offset += static_cast<std::size_t>(lmax - m + 1);
  }
  per_row_ = offset;
  plm_.resize(per_row_ * nlat);
  dplm_.resize(per_row_ * nlat);

  const auto sins = grid_->sin_thetas();
  const auto coss = grid_->cos_thetas();
  parallel_for(nlat, [&](int i) {
    const double s = sins[i];
    const double c = coss[i];
    const std::vector<double> p = normalized_legendre(lmax, c, s);
    std::copy(p.begin(), p.end(), plm_.begin() + static_cast<std::ptrdiff_t>(i * per_row_));
    // sin(theta) dP_l^m/dtheta = l cos(theta) P_l^m - c_lm P_{l-1}^m
    for (int m = 0; m <= lmax; ++m) {
      for (int l = m; l <= lmax; ++l) {
        double v = l * c * plm(i, l, m);
        if (l > m) {
          const double clm = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) *
                                       (static_cast<double>(l) * l - static_cast<double>(m) * m));
          v -= clm * plm(i, l - 1, m);
        }
        dplm_[table_index(i, l, m)] = v / s;
      }
    }
  });

  if (lt_ == LongitudeTransform::kFft) {
    const int n = grid_->nlon();
    fft_ = std::make_unique<FftPlans>();
    std::lock_guard lock(fftw_planner_mutex());
    double* real_buf = fftw_alloc_real(n);
    fftw_complex* cplx_buf = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fft_->r2c = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, flags);
    fft_->c2r = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, flags);
    fftw_free(real_buf);
    fftw_free(cplx_buf);
  }
}

TransformPlan::~TransformPlan() = default;
TransformPlan::TransformPlan(TransformPlan&&) noexcept = default;
TransformPlan& TransformPlan::operator=(TransformPlan&&) noexcept = default;

void TransformPlan::forward_longitude(std::span<const double> row, std::span<Complex> out) const {
  const int n = grid_->nlon();
  const double scale = grid_->dphi();
  if (lt_ == LongitudeTransform::kFft) {
    std::vector<double> in(row.begin(), row.end());
    std::vector<Complex> spec(n / 2 + 1);
    fftw_execute_dft_r2c(fft_->r2c, in.data(), reinterpret_cast<fftw_complex*>(spec.data()));
    for (int m = 0; m <= lmax_; ++m) out[m] = scale * spec[m];
    return;
  }
  const auto phis = grid_->phis();
  for (int m = 0; m <= lmax_; ++m) {
    Complex acc{};
    for (int j = 0; j < n; ++j) {
      // reduce m*j mod n so the phase argument stays small
      const double phase = phis[(static_cast<long long>(m) * j) % n];
      acc += row[j] * Complex(std::cos(phase), -std::sin(phase));
    }
    out[m] = scale * acc;
  }
}

void TransformPlan::inverse_longitude(std::span<const Complex> in, std::span<double> row) const {
  const int n = grid_->nlon();
  if (lt_ == LongitudeTransform::kFft) {
    std::vector<Complex> spec(n / 2 + 1, Complex{});
    spec[0] = Complex(in[0].real(), 0.0);
    for (int m = 1; m <= lmax_; ++m) spec[m] = in[m];
    fftw_execute_dft_c2r(fft_->c2r, reinterpret_cast<fftw_complex*>(spec.data()), row.data());
    return;
  }
  const auto phis = grid_->phis();
  for (int j = 0; j < n; ++j) {
    double acc = in[0].real();
    for (int m = 1; m <= lmax_; ++m) {
      const double phase = phis[(static_cast<long long>(m) * j) % n];
      acc += 2.0 * (in[m].real() * std::cos(phase) - in[m].imag() * std::sin(phase));
    }
    row[j] = acc;
  }
}

// ---------------------------------------------------------------------------
// transforms

SpectralField analyze(const ScalarField& f, const TransformPlan& plan) {
  if (!same_grid(f.grid(), plan.grid())) {
    throw Error(ErrorCode::kGridMismatch, "field grid differs from the transform plan grid");
  }
  const Grid& g = plan.grid();
  const int nlat = g.nlat();
  const int lmax = plan.lmax();
  std::vector<Complex> gm(static_cast<std::size_t>(nlat) * (lmax + 1));
  parallel_for(nlat, [&](int i) {
    plan.forward_longitude(f.row(i), std::span<Complex>(gm.data() + static_cast<std::size_t>(i) * (lmax + 1),
                                                        static_cast<std::size_t>(lmax + 1)));
  });

  SpectralField out(lmax);
  const auto w = g.weights();
  parallel_for(lmax + 1, [&](int m) {
    std::vector<double> re(lmax + 1 - m, 0.0);
    std::vector<double> im(lmax + 1 - m, 0.0);
    for (int i = 0; i < nlat; ++i) {
      const Complex gim = w[i] * gm[static_cast<std::size_t>(i) * (lmax + 1) + m];
      const double* table = &plan.plm(i, m, m);
      for (int k = 0; k <= lmax - m; ++k) {
        re[k] += gim.real() * table[k];
        im[k] += gim.imag() * table[k];
      }
    }
    for (int l = m; l <= lmax; ++l) {
      const Complex acc(re[l - m], m == 0 ? 0.0 : im[l - m]);
      out(l, m) = acc;
      if (m > 0) out(l, -m) = ((m % 2 == 0) ? 1.0 : -1.0) * std::conj(acc);
    }
  }, 1);
  return out;
}

ScalarField synthesize(const SpectralField& c, const TransformPlan& plan) {
  return synthesize_impl(c, plan, SynthesisKind::kValue);
}

ScalarField synthesize_dtheta(const SpectralField& c, const TransformPlan& plan) {
  return synthesize_impl(c, plan, SynthesisKind::kDtheta);
}

ScalarField synthesize_dphi(const SpectralField& c, const TransformPlan& plan) {
  return synthesize_impl(c, plan, SynthesisKind::kDphi);
}

SpectralField laplace_beltrami_spectral(const SpectralField& c) {
  SpectralField out(c.lmax());
  for (int l = 0; l <= c.lmax(); ++l) {
    const double eig = -static_cast<double>(l) * (l + 1);
    for (int m = -l; m <= l; ++m) out(l, m) = eig * c(l, m);
  }
  return out;
}

SpectralField invert_poisson(const SpectralField& omega, double rel_tol) {
  const double mean_mode = std::abs(omega(0, 0));
  if (mean_mode > rel_tol * omega.max_abs()) {
    throw Error(ErrorCode::kGaussConstraintViolated,
                "vorticity has nonzero l=0 mode (" + std::to_string(mean_mode) + ")");
  }
  SpectralField psi(omega.lmax());
  for (int l = 1; l <= omega.lmax(); ++l) {
    const double inv = 1.0 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m) psi(l, m) = inv * omega(l, m);
  }
  return psi;
}

}  // namespace sphereflow
