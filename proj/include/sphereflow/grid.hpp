#pragma once

#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace sphereflow {

enum class GridKind { kGaussLegendre, kUniformInterior };

struct GridSpec {
  int nlat = 64;
  int nlon = 128;
  GridKind kind = GridKind::kGaussLegendre;

  bool operator==(const GridSpec&) const = default;
};

/// Colatitude/longitude quadrature grid on the unit sphere.
///
/// Colatitudes are strictly increasing and never touch the poles. Weights
/// are taken against sin(theta) d(theta), so that
///   sum_i w_i f(theta_i) ~ int_0^pi f(theta) sin(theta) d(theta)
/// and the full surface rule is w_i * dphi. Node sets are mirrored exactly
/// about the equator.
class Grid {
 public:
  explicit Grid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int nlat() const { return spec_.nlat; }
  int nlon() const { return spec_.nlon; }
  GridKind kind() const { return spec_.kind; }
  std::size_t size() const { return static_cast<std::size_t>(nlat()) * nlon(); }

  std::span<const double> thetas() const { return thetas_; }
  std::span<const double> phis() const { return phis_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> sin_thetas() const { return sin_; }
  std::span<const double> cos_thetas() const { return cos_; }
  double dphi() const { return 2.0 * std::numbers::pi / nlon(); }

  /// Highest degree in cos(theta) integrated exactly by the latitude rule.
  int exact_degree() const;

 private:
  GridSpec spec_;
  std::vector<double> thetas_;
  std::vector<double> phis_;
  std::vector<double> weights_;
  std::vector<double> sin_;
  std::vector<double> cos_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const GridSpec& spec);

/// Closed colatitude interval used to keep checks away from the poles.
struct ThetaBand {
  double lo = std::numbers::pi / 8.0;
  double hi = 7.0 * std::numbers::pi / 8.0;

  bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

/// Row indices of `grid` whose colatitude lies in `band`.
std::vector<int> band_rows(const Grid& grid, const ThetaBand& band);

/// Samples of a scalar on a Grid, stored theta-major (row i, column j).
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<double> values);

  template <class F>
  static ScalarField sample(const GridPtr& grid, F&& f) {
    ScalarField out(grid);
    const auto th = grid->thetas();
    const auto ph = grid->phis();
    for (int i = 0; i < grid->nlat(); ++i) {
      for (int j = 0; j < grid->nlon(); ++j) out(i, j) = f(th[i], ph[j]);
    }
    return out;
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  double& operator()(int i, int j) { return values_[index(i, j)]; }
  double operator()(int i, int j) const { return values_[index(i, j)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> row(int i) {
    return {values_.data() + index(i, 0), static_cast<std::size_t>(grid_->nlon())};
  }
  std::span<const double> row(int i) const {
    return {values_.data() + index(i, 0), static_cast<std::size_t>(grid_->nlon())};
  }

  /// Largest |value| over all nodes, or over the rows inside `band`.
  double max_abs() const;
  double max_abs(const ThetaBand& band) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * grid_->nlon() + j;
  }

  GridPtr grid_;
  std::vector<double> values_;
};

bool same_grid(const Grid& a, const Grid& b);
/// Throws kGridMismatch unless both fields live on the same grid.
void require_same_grid(const ScalarField& a, const ScalarField& b);

/// sum_ij w_i * dphi * f_ij, the discrete version of the integral of f dA.
double surface_integral(const ScalarField& f);

/// chi = log(tan(theta/2)); throws kDomainError outside (0, pi).
double mercator_of_colatitude(double theta);
double colatitude_of_mercator(double chi);

}  // namespace sphereflow
