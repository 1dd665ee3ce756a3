#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hrc/reservoir.hpp"

namespace hrc {

/// Memory-capacity sweep over nu = N/T and either rho = M/T or the leak
/// rate alpha. Exactly one of rho/alpha is a grid (the second surface
/// axis); the other is fixed. Per cell, N = round(nu*T) clamped to >= 1 and
/// M = max(2, round(rho*T)); cells with M > N cannot be evaluated and are
/// reported absent.
struct SweepConfig {
  std::size_t t = 0;
  int trials = 0;
  std::vector<double> nu_grid;
  std::vector<double> rho_grid;    // grid axis when non-empty
  double fixed_rho = 0.0;
  std::vector<double> alpha_grid;  // grid axis when non-empty
  double fixed_alpha = 1.0;
  ReservoirKind kind = ReservoirKind::DenseOrthogonal;
  std::uint64_t base_seed = 0;
  double theta = 0.5;  // recall threshold, recorded alongside results
  int jobs = 1;
};

/// Mean/std recall error over a 2-D parameter grid. Grids are row-major
/// with axis1 (nu) as the row index; absent cells hold NaN.
struct ErrorSurface {
  std::string axis1_name;
  std::string axis2_name;
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<double> mean_error;
  std::vector<double> std_error;
  int trials = 0;

  std::size_t cells() const { return axis1.size() * axis2.size(); }
  std::size_t cell_index(std::size_t i, std::size_t j) const {
    return i * axis2.size() + j;
  }
  double mean_at(std::size_t i, std::size_t j) const {
    return mean_error[cell_index(i, j)];
  }
};

/// One experiment: a uniform random sequence of length t over m symbols is
/// learned offline and recalled from its first symbol; returns the recall
/// error. Requires 2 <= m <= n and t >= 2.
double run_trial(std::size_t t, Eigen::Index n, Eigen::Index m, double alpha,
                 ReservoirKind kind, std::uint64_t seed);

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Runs config.trials independent trials per grid cell, with trial seeds
/// mixed from (base_seed, i, j, trial). Deterministic for a fixed config
/// regardless of the number of worker threads.
ErrorSurface sweep(const SweepConfig& config, const SweepProgress& progress = {});

struct TransitionAnalysis {
  std::vector<double> derivative;     // d(mean error)/d(nu), surface layout
  std::vector<double> transition_nu;  // per axis2 value: nu of max |d/dnu|
};

/// Finite-difference derivative along the nu axis (central interior,
/// one-sided at the edges) and the per-row transition point, i.e. the nu of
/// the maximum absolute derivative (lowest nu wins ties). Requires at least
/// 3 nu grid points.
TransitionAnalysis derivative_and_transitions(const ErrorSurface& surface);

/// CSV with header axis1,axis2,mean_error,std_error,trials; one row per
/// cell in row-major order. Axis values carry 6 significant digits; absent
/// cells leave mean_error/std_error empty with trials 0.
void write_surface_csv(const ErrorSurface& surface,
                       const std::filesystem::path& destination);

/// JSON sidecar recording the full sweep configuration.
void write_sweep_meta(const ErrorSurface& surface, const SweepConfig& config,
                      const std::filesystem::path& destination);

}  // namespace hrc
