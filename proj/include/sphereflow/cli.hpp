#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphereflow/exact.hpp"
#include "sphereflow/grid.hpp"
#include "sphereflow/verify.hpp"

namespace sphereflow::cli {

enum class Subcommand { kFields, kResidual, kChecks, kEvolve, kGauss };

struct InitialCondition {
  enum class Kind { kBasic, kHarmonic, kFile };
  Kind kind = Kind::kBasic;
  int l = 0;
  int m = 0;
  std::filesystem::path path;
};

/// `basic`, `harmonic:l,m` or `file:path`; throws kInvalidConfig otherwise.
InitialCondition parse_init(const std::string& text);

/// Every default reproduces the acceptance configuration.
struct RunConfig {
  Subcommand subcommand = Subcommand::kChecks;
  GridSpec grid{256, 512, GridKind::kGaussLegendre};
  BasicSolutionParams solution{};
  int lmax = 31;
  double nu = 0.01;
  double dt = 1e-3;
  int steps = 1000;
  bool dealias = true;
  ThetaBand band{};
  std::filesystem::path out = ".";
  InitialCondition init{};
  int ntheta = 4096;
  /// Phi used by the gg-ODE check: "cosh2" (the basic solution) or
  /// "exponential" (A e^{B omega}, which must fail).
  std::string phi = "cosh2";

  /// Rejects bad settings before any computation (kInvalidConfig).
  void validate() const;
};

/// Bands reaching within this distance of a pole make the finite-difference
/// field checks advisory: the basic vorticity is singular there.
inline constexpr double kNearPoleMargin = 0.1;

struct CheckOutcome {
  CheckReport report;
  bool advisory = false;
};

std::vector<CheckOutcome> run_checks(const RunConfig& cfg);

struct GaussSummary {
  double total = 0.0;
  double north = 0.0;
  double south = 0.0;
};
GaussSummary gauss_summary(const RunConfig& cfg);

// Each command returns the process exit status.
int cmd_fields(const RunConfig& cfg, std::ostream& log);
int cmd_residual(const RunConfig& cfg, std::ostream& log);
int cmd_checks(const RunConfig& cfg, std::ostream& log);
int cmd_evolve(const RunConfig& cfg, std::ostream& log);
int cmd_gauss(const RunConfig& cfg, std::ostream& out);

/// Parses argv and dispatches. Exit codes: 0 success, 1 a check failed,
/// 2 invalid configuration or runtime error.
int run(int argc, char** argv);

}  // namespace sphereflow::cli
