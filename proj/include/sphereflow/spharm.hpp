#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sphereflow/grid.hpp"

namespace sphereflow {

using Complex = std::complex<double>;

/// Spherical-harmonic coefficients a_{l,m}, 0 <= l <= lmax, -l <= m <= l,
/// against orthonormal harmonics Y_l^m = Pbar_l^m(cos theta) e^{i m phi}
/// (Condon-Shortley phase). A real field satisfies
/// a_{l,-m} = (-1)^m conj(a_{l,m}).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int lmax);

  static std::size_t index(int l, int m) {
    return static_cast<std::size_t>(l) * l + l + m;
  }
  static std::size_t size_for(int lmax) { return static_cast<std::size_t>(lmax + 1) * (lmax + 1); }

  int lmax() const { return lmax_; }
  Complex& operator()(int l, int m) { return coeffs_[index(l, m)]; }
  const Complex& operator()(int l, int m) const { return coeffs_[index(l, m)]; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Sets a_{l,m} and its conjugate partner a_{l,-m} so the field stays real.
  void set_real_mode(int l, int m, Complex value);

  /// max |a_{l,-m} - (-1)^m conj(a_{l,m})| over all m >= 0.
  double symmetry_defect() const;
  double max_abs() const;
  /// Copy truncated (or zero-padded) to degree `lmax`.
  SpectralField resized(int lmax) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

 private:
  int lmax_ = 0;
  std::vector<Complex> coeffs_{Complex{}};
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Which longitude transform a plan uses. Both give the same numbers to
/// rounding; Direct is the literal discrete Fourier sum.
enum class LongitudeTransform { kFft, kDirect };

/// Precomputed associated-Legendre tables for one grid and degree bound.
/// Immutable after construction and safe to share between threads.
class TransformPlan {
 public:
  TransformPlan(GridPtr grid, int lmax, LongitudeTransform lt = LongitudeTransform::kFft);
  ~TransformPlan();
  TransformPlan(const TransformPlan&) = delete;
  TransformPlan& operator=(const TransformPlan&) = delete;
  TransformPlan(TransformPlan&&) noexcept;
  TransformPlan& operator=(TransformPlan&&) noexcept;

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int lmax() const { return lmax_; }
  LongitudeTransform longitude_transform() const { return lt_; }

  /// Pbar_l^m(cos theta_i) and d/dtheta of it, for m >= 0.
  const double& plm(int i, int l, int m) const { return plm_[table_index(i, l, m)]; }
  const double& dplm(int i, int l, int m) const { return dplm_[table_index(i, l, m)]; }

  /// out[m] = dphi * sum_j row[j] e^{-i m phi_j}, m = 0..lmax.
  void forward_longitude(std::span<const double> row, std::span<Complex> out) const;
  /// row[j] = Re(in[0]) + 2 Re sum_{m>=1} in[m] e^{i m phi_j}.
  void inverse_longitude(std::span<const Complex> in, std::span<double> row) const;

 private:
  std::size_t table_index(int i, int l, int m) const {
    return static_cast<std::size_t>(i) * per_row_ + m_offset_[m] + (l - m);
  }

  struct FftPlans;

  GridPtr grid_;
  int lmax_;
  LongitudeTransform lt_;
  std::size_t per_row_ = 0;
  std::vector<std::size_t> m_offset_;
  std::vector<double> plm_;
  std::vector<double> dplm_;
  std::unique_ptr<FftPlans> fft_;
};

/// Orthonormal Pbar_l^m(cos theta) for 0 <= m <= l <= lmax at one colatitude,
/// indexed m-major: all l for m = 0, then m = 1, ...
std::vector<double> normalized_legendre(int lmax, double cos_theta, double sin_theta);

/// Quadrature projection onto Y_l^m; exact for band-limited input.
SpectralField analyze(const ScalarField& f, const TransformPlan& plan);

/// Pointwise sum of a_{l,m} Y_l^m. Throws kSymmetryViolation when the
/// coefficients do not describe a real field (defect above 1e-10).
ScalarField synthesize(const SpectralField& c, const TransformPlan& plan);
/// d/dtheta and d/dphi of the synthesized field, evaluated spectrally.
ScalarField synthesize_dtheta(const SpectralField& c, const TransformPlan& plan);
ScalarField synthesize_dphi(const SpectralField& c, const TransformPlan& plan);

/// a_{l,m} -> -l(l+1) a_{l,m}.
SpectralField laplace_beltrami_spectral(const SpectralField& c);

/// Solves -lap(psi) = omega with a_{0,0}(psi) = 0. The l = 0 mode of omega
/// must vanish (total vorticity on a closed surface); the tolerance is
/// relative to max |a_{l,m}(omega)|.
SpectralField invert_poisson(const SpectralField& omega, double rel_tol = 1e-10);

/// True when the grid integrates products of two degree-lmax harmonics
/// exactly (latitude rule degree >= 2 lmax, nlon >= 2 lmax + 1).
bool grid_resolves(const Grid& grid, int lmax);

}  // namespace sphereflow
