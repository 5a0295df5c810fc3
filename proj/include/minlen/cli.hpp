#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minlen/deformation.hpp"
#include "minlen/spectrum.hpp"

namespace minlen::cli {

enum class ExitCode : int { Ok = 0, ConfigError = 1, NoBoundState = 2, NumericFailure = 3 };

enum class Subcommand { Solve, Sweep, Threshold, Integrals, Wavefunction, Verify, LimitSweep, Figure };

enum class FigureKind { Fig1, Fig2 };

struct RunConfig {
  Subcommand subcommand = Subcommand::Solve;
  std::string profile_spec = "cutoff";  ///< cutoff|power32|kempf|custom:b=..,expr=..|@file
  std::optional<double> alpha;
  std::optional<GammaSpec> gamma;
  std::optional<PhysicalParams> physical;
  std::optional<double> b;     ///< physical mode: explicit momentum bound
  std::optional<double> beta;  ///< physical mode: deformation parameter
  std::vector<double> eps;
  double alpha_min = 0.1;
  double alpha_max = 100.0;
  int alpha_steps = 50;
  bool log_grid = false;
  int samples = 201;
  double b_min = 1.0;
  double b_max = 1024.0;
  int steps = 11;
  FigureKind figure = FigureKind::Fig1;
  std::vector<std::string> profiles{"cutoff", "power32", "kempf"};
  std::vector<GammaSpec> gammas;
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> output;
  double tol = kDefaultQuadTolerance;
  bool force_quadrature = false;
};

/// `cutoff`, `power32`, `kempf`, `custom:b=<val>,expr=<k(y)>` or `@<path>` to a
/// key-value profile file.
DeformationProfile parse_profile_spec(const std::string& spec);

/// A number, or `g0:<factor>` for factor * gamma0(alpha).
GammaSpec parse_gamma_spec(const std::string& text);

/// Quadrature tolerance: MINLEN_TOL when set and valid, else the default.
double default_tolerance();

struct FigureCurve {
  std::string profile;
  std::string gamma_label;
  std::vector<SweepPoint> points;
};

/// fig1: gamma = 0 for every profile; fig2: each entry of `gammas` per profile.
/// Throws ConfigError for an empty alpha grid.
std::vector<FigureCurve> emit_figure_data(FigureKind figure, std::span<const std::string> profiles,
                                          std::span<const GammaSpec> gammas, std::span<const double> alphas,
                                          double tol = kDefaultQuadTolerance);

std::string sweep_csv(std::span<const SweepPoint> points);

/// Dispatches one subcommand; writes to `out` (or config.output) and
/// diagnostics to `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minlen::cli
