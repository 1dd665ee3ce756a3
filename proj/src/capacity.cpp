#include "hrc/capacity.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hrc/regimes.hpp"

namespace hrc {

namespace {

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  std::size_t i;
  std::size_t j;
  Eigen::Index n;
  Eigen::Index m;
  double alpha;
};

void check_grid(const std::vector<double>& grid, const char* name) {
  for (const double v : grid)
    if (!(v > 0.0 && v <= 1.0))
      throw std::invalid_argument(std::string(name) + " values must lie in (0,1]");
}

std::string format_double(const char* fmt, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

double run_trial(std::size_t t, Eigen::Index n, Eigen::Index m, double alpha,
                 ReservoirKind kind, std::uint64_t seed) {
  if (t < 2) throw std::invalid_argument("trial sequence length must be >= 2");
  if (m < 2 || m > n)
    throw std::invalid_argument("trial requires 2 <= M <= N");

  SplitMix64 rng(seed);
  SymbolSequence s(t);
  for (auto& idx : s)
    idx = uniform_below(rng, static_cast<std::uint32_t>(m));

  ModelConfig config;
  config.reservoir_size = n;
  config.alpha = alpha;
  config.kind = kind;
  config.seed = rng.next_u64();

  const Alphabet alphabet = Alphabet::identity(static_cast<std::size_t>(m));
  const TrainedModel model = train_offline_generative(s, alphabet, config);
  const SymbolSequence recalled =
      recall_generative(model, alphabet.symbol(s[0]), t);
  return recall_error(s, recalled);
}

ErrorSurface sweep(const SweepConfig& config, const SweepProgress& progress) {
  if (config.t < 2) throw std::invalid_argument("sweep requires t >= 2");
  if (config.trials < 1) throw std::invalid_argument("sweep requires trials >= 1");
  if (config.nu_grid.empty()) throw std::invalid_argument("nu grid is empty");
  if (!(config.theta > 0.0 && config.theta < 1.0))
    throw std::invalid_argument("theta must lie in (0,1)");
  const bool rho_axis = !config.rho_grid.empty();
  const bool alpha_axis = !config.alpha_grid.empty();
  if (rho_axis == alpha_axis)
    throw std::invalid_argument("exactly one of rho/alpha must be a grid");
  check_grid(config.nu_grid, "nu");
  check_grid(rho_axis ? config.rho_grid : std::vector<double>{config.fixed_rho},
             "rho");
  check_grid(alpha_axis ? config.alpha_grid
                        : std::vector<double>{config.fixed_alpha},
             "alpha");

  ErrorSurface surface;
  surface.axis1_name = "nu";
  surface.axis1 = config.nu_grid;
  surface.axis2_name = rho_axis ? "rho" : "alpha";
  surface.axis2 = rho_axis ? config.rho_grid : config.alpha_grid;
  surface.trials = config.trials;
  surface.mean_error.assign(surface.cells(), kAbsent);
  surface.std_error.assign(surface.cells(), kAbsent);

  const auto t = config.t;
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < surface.axis1.size(); ++i) {
    const auto n = std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::lround(surface.axis1[i] * static_cast<double>(t))));
    for (std::size_t j = 0; j < surface.axis2.size(); ++j) {
      const double rho = rho_axis ? surface.axis2[j] : config.fixed_rho;
      const double alpha = alpha_axis ? surface.axis2[j] : config.fixed_alpha;
      const auto m = std::max<Eigen::Index>(
          2, static_cast<Eigen::Index>(std::lround(rho * static_cast<double>(t))));
      if (m > n) continue;  // absent cell
      cells.push_back({i, j, n, m, alpha});
    }
  }

  const auto trials = static_cast<std::size_t>(config.trials);
  const std::size_t total = cells.size() * trials;
  std::vector<double> results(total);

  std::atomic<std::size_t> cursor{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t task = cursor.fetch_add(1);
      if (task >= total) return;
      const Cell& cell = cells[task / trials];
      const std::size_t trial = task % trials;
      const std::uint64_t seed =
          mix_seed(config.base_seed, cell.i, cell.j, trial);
      results[task] = run_trial(t, cell.n, cell.m, cell.alpha, config.kind, seed);
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress) {
        const std::lock_guard<std::mutex> lock(progress_mutex);
        progress(d, total);
      }
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate sequentially in trial order so the surface is independent of
  // thread scheduling.
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double* eps = results.data() + c * trials;
    double sum = 0.0;
    for (std::size_t k = 0; k < trials; ++k) sum += eps[k];
    const double mean = sum / static_cast<double>(trials);
    double var = 0.0;
    for (std::size_t k = 0; k < trials; ++k)
      var += (eps[k] - mean) * (eps[k] - mean);
    const std::size_t idx = surface.cell_index(cells[c].i, cells[c].j);
    surface.mean_error[idx] = mean;
    surface.std_error[idx] = std::sqrt(var / static_cast<double>(trials));
  }
  return surface;
}

TransitionAnalysis derivative_and_transitions(const ErrorSurface& surface) {
  const std::size_t rows = surface.axis1.size();
  const std::size_t cols = surface.axis2.size();
  if (rows < 3)
    throw std::invalid_argument("derivative needs at least 3 nu grid points");

  TransitionAnalysis out;
  out.derivative.assign(rows * cols, kAbsent);
  out.transition_nu.assign(cols, kAbsent);

  const auto& nu = surface.axis1;
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = i + 1 == rows ? i : i + 1;
      const double num =
          surface.mean_at(hi, j) - surface.mean_at(lo, j);
      out.derivative[surface.cell_index(i, j)] = num / (nu[hi] - nu[lo]);
    }
    double best = -1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double d = std::abs(out.derivative[surface.cell_index(i, j)]);
      if (std::isfinite(d) && d > best) {
        best = d;
        out.transition_nu[j] = nu[i];
      }
    }
  }
  return out;
}

void write_surface_csv(const ErrorSurface& surface,
                       const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + destination.string());
  out << "axis1,axis2,mean_error,std_error,trials\n";
  for (std::size_t i = 0; i < surface.axis1.size(); ++i) {
    for (std::size_t j = 0; j < surface.axis2.size(); ++j) {
      const std::size_t idx = surface.cell_index(i, j);
      out << format_double("%.6g", surface.axis1[i]) << ','
          << format_double("%.6g", surface.axis2[j]) << ',';
      if (std::isfinite(surface.mean_error[idx])) {
        out << format_double("%.9g", surface.mean_error[idx]) << ','
            << format_double("%.9g", surface.std_error[idx]) << ','
            << surface.trials << '\n';
      } else {
        out << ",,0\n";
      }
    }
  }
  if (!out.flush())
    throw std::runtime_error("cannot write " + destination.string());
}

void write_sweep_meta(const ErrorSurface& surface, const SweepConfig& config,
                      const std::filesystem::path& destination) {
  nlohmann::json meta;
  meta["t"] = config.t;
  meta["trials"] = config.trials;
  meta["axis1"] = surface.axis1_name;
  meta["axis2"] = surface.axis2_name;
  meta["nu_grid"] = config.nu_grid;
  if (!config.rho_grid.empty())
    meta["rho_grid"] = config.rho_grid;
  else
    meta["rho"] = config.fixed_rho;
  if (!config.alpha_grid.empty())
    meta["alpha_grid"] = config.alpha_grid;
  else
    meta["alpha"] = config.fixed_alpha;
  meta["reservoir"] =
      config.kind == ReservoirKind::DenseOrthogonal ? "dense" : "cyclic";
  meta["base_seed"] = config.base_seed;
  meta["theta"] = config.theta;

  std::ofstream out(destination, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + destination.string());
  out << meta.dump(2) << '\n';
  if (!out.flush())
    throw std::runtime_error("cannot write " + destination.string());
}

}  // namespace hrc
