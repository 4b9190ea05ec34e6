#include "sphereflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphereflow/errors.hpp"

namespace sphereflow {

namespace {

constexpr double kPi = std::numbers::pi;

// Legendre P_n(x) and dP_n/dx by the three-term recurrence.
void legendre_with_derivative(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Newton iteration in theta rather than x = cos(theta) keeps the
// near-pole nodes accurate.
void gauss_legendre(int n, std::vector<double>& theta, std::vector<double>& w) {
  theta.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = n / 2;
  for (int k = 0; k < half; ++k) {
    double t = kPi * (k + 0.75) / (n + 0.5);
    double p = 0.0;
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre_with_derivative(n, std::cos(t), p, dp);
      const double step = p / (-std::sin(t) * dp);
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    legendre_with_derivative(n, std::cos(t), p, dp);
    const double s = std::sin(t);
    theta[k] = t;
    w[k] = 2.0 / (s * s * dp * dp);
    theta[n - 1 - k] = kPi - t;
    w[n - 1 - k] = w[k];
  }
  if (n % 2 == 1) {
    double p = 0.0;
    double dp = 0.0;
    legendre_with_derivative(n, 0.0, p, dp);
    theta[half] = kPi / 2.0;
    w[half] = 2.0 / (dp * dp);
  }
}

// Fejer's first rule on the half-offset midpoints theta_i = (i+1/2) pi / n.
void fejer_midpoint(int n, std::vector<double>& theta, std::vector<double>& w) {
  theta.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    const double t = kPi * (k + 0.5) / n;
    double sum = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
      sum += std::cos(2.0 * j * t) / (4.0 * j * j - 1.0);
    }
    theta[k] = t;
    w[k] = (2.0 / n) * (1.0 - 2.0 * sum);
    theta[n - 1 - k] = kPi - t;
    w[n - 1 - k] = w[k];
  }
  if (n % 2 == 1) theta[n / 2] = kPi / 2.0;
}

}  // namespace

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  if (spec.nlat < 4 || spec.nlon < 4) {
    throw Error(ErrorCode::kInvalidSpec, "nlat and nlon must be >= 4 (got " +
                                             std::to_string(spec.nlat) + ", " +
                                             std::to_string(spec.nlon) + ")");
  }
  if (spec.kind == GridKind::kGaussLegendre) {
    gauss_legendre(spec.nlat, thetas_, weights_);
  } else {
    fejer_midpoint(spec.nlat, thetas_, weights_);
  }

  const int n = spec.nlat;
  sin_.resize(n);
  cos_.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    sin_[i] = std::sin(thetas_[i]);
    cos_[i] = std::cos(thetas_[i]);
    sin_[n - 1 - i] = sin_[i];
    cos_[n - 1 - i] = -cos_[i];
  }
  if (n % 2 == 1) {
    sin_[n / 2] = 1.0;
    cos_[n / 2] = 0.0;
  }

  phis_.resize(spec.nlon);
  for (int j = 0; j < spec.nlon; ++j) phis_[j] = 2.0 * kPi * j / spec.nlon;
}

int Grid::exact_degree() const {
  return kind() == GridKind::kGaussLegendre ? 2 * nlat() - 1 : nlat() - 1;
}

GridPtr build_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

std::vector<int> band_rows(const Grid& grid, const ThetaBand& band) {
  std::vector<int> rows;
  const auto th = grid.thetas();
  for (int i = 0; i < grid.nlat(); ++i) {
    if (band.contains(th[i])) rows.push_back(i);
  }
  return rows;
}

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)) {
  values_.assign(grid_->size(), 0.0);
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw Error(ErrorCode::kGridMismatch, "value array has " + std::to_string(values_.size()) +
                                              " entries, grid has " +
                                              std::to_string(grid_->size()));
  }
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::max_abs(const ThetaBand& band) const {
  double m = 0.0;
  for (int i : band_rows(*grid_, band)) {
    for (double v : row(i)) m = std::max(m, std::abs(v));
  }
  return m;
}

bool same_grid(const Grid& a, const Grid& b) { return &a == &b || a.spec() == b.spec(); }

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!same_grid(a.grid(), b.grid())) {
    throw Error(ErrorCode::kGridMismatch, "fields are defined on different grids");
  }
}

double surface_integral(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto w = g.weights();
  double total = 0.0;
  for (int i = 0; i < g.nlat(); ++i) {
    double row_sum = 0.0;
    for (double v : f.row(i)) row_sum += v;
    total += w[i] * row_sum;
  }
  return total * g.dphi();
}

double mercator_of_colatitude(double theta) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw Error(ErrorCode::kDomainError,
                "Mercator variable diverges at the poles (theta = " + std::to_string(theta) + ")");
  }
  return std::log(std::tan(0.5 * theta));
}

double colatitude_of_mercator(double chi) { return 2.0 * std::atan(std::exp(chi)); }

}  // namespace sphereflow
