#include "bbnet/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "bbnet/errors.hpp"
#include "bbnet/rng.hpp"

namespace bbnet::analysis {

namespace {

struct TrialResult {
  bool detected = false;
  double level = 0;
  std::uint32_t delta_star = 0;
  bool failed = false;
  std::string error;
};

struct CellSpec {
  std::uint32_t n, m;
  double lambda;
};

TrialResult run_trial(const SweepGrid& grid, const CellSpec& cell,
                      std::uint64_t trial_seed) {
  TrialResult result;
  try {
    protocol::ExperimentConfig cfg;
    cfg.graph_kind = protocol::ExperimentConfig::GraphKind::Ba;
    cfg.ba_n = cell.n;
    cfg.ba_m = cell.m;
    cfg.payload = protocol::ExperimentConfig::Payload::Synthetic;
    cfg.synthetic_seeds = grid.synthetic_seeds;
    cfg.sis.delta = grid.delta;
    cfg.sis.nu = cell.lambda * grid.delta;
    if (cfg.sis.nu > 1.0) throw config_error("lambda * delta exceeds 1");
    cfg.budget.kind = protocol::CycleBudget::Kind::Constant;
    cfg.budget.constant = 0;
    cfg.times_override = grid.instants;
    protocol::RunnerOptions opts;
    opts.keep_traces = false;
    auto out = protocol::run_experiment(cfg, trial_seed, opts);
    const auto& series = out.series.front().tau_value;
    auto report = detect_stationary(series, grid.window, grid.tol);
    result.detected = report.detected;
    result.level = report.level;
    result.delta_star = report.delta_star;
  } catch (const std::exception& e) {
    result.failed = true;
    result.error = e.what();
  }
  return result;
}

}  // namespace

SweepResult run_sweep(const SweepGrid& grid, std::uint64_t seed) {
  std::vector<CellSpec> cells;
  for (std::uint32_t n : grid.ns) {
    for (std::uint32_t m : grid.ms) {
      for (double lambda : grid.lambdas) {
        cells.push_back({n, m, lambda});
      }
    }
  }
  if (cells.empty()) throw config_error("sweep grid is empty");

  const std::size_t units = cells.size() * grid.trials;
  std::vector<TrialResult> trial_results(units);
  std::atomic<std::size_t> next{0};
  std::uint32_t jobs = grid.jobs == 0 ? std::thread::hardware_concurrency() : grid.jobs;
  if (jobs == 0) jobs = 1;

  auto worker = [&]() {
    for (;;) {
      const std::size_t unit = next.fetch_add(1);
      if (unit >= units) return;
      const std::size_t ci = unit / grid.trials;
      const std::size_t ti = unit % grid.trials;
      trial_results[unit] =
          run_trial(grid, cells[ci], derive_seed(seed, "sweep", ci, ti));
    }
  };
  std::vector<std::thread> pool;
  for (std::uint32_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult result;
  result.cells.resize(cells.size());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    SweepCell& out = result.cells[ci];
    out.n = cells[ci].n;
    out.m = cells[ci].m;
    out.lambda = cells[ci].lambda;
    out.nu = cells[ci].lambda * grid.delta;
    out.delta = grid.delta;
    out.trials = grid.trials;
    out.rho_theory = theoretical_prevalence(out.m, out.lambda);
    double level_sum = 0, delta_sum = 0;
    std::string first_error;
    for (std::uint32_t ti = 0; ti < grid.trials; ++ti) {
      const TrialResult& tr = trial_results[ci * grid.trials + ti];
      if (tr.failed) {
        if (first_error.empty()) first_error = tr.error;
        continue;
      }
      if (tr.detected) {
        ++out.detected;
        level_sum += tr.level;
        delta_sum += tr.delta_star;
      }
    }
    if (!first_error.empty()) out.status = "error: " + first_error;
    if (out.detected > 0) {
      out.rho_hat = level_sum / out.detected;
      out.delta_star_mean = delta_sum / out.detected;
    } else if (out.status == "ok") {
      out.status = "no-stationarity";
    }
  }

  // ln rho_hat against 1/lambda per (n, m) group.
  for (std::uint32_t n : grid.ns) {
    for (std::uint32_t m : grid.ms) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      std::size_t pts = 0;
      for (const SweepCell& cell : result.cells) {
        if (cell.n != n || cell.m != m || cell.detected == 0 || cell.rho_hat <= 0) {
          continue;
        }
        const double x = 1.0 / cell.lambda;
        const double y = std::log(cell.rho_hat);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++pts;
      }
      SweepFit fit;
      fit.n = n;
      fit.m = m;
      fit.points = pts;
      if (pts >= 2) {
        const double d = pts * sxx - sx * sx;
        fit.slope = (pts * sxy - sx * sy) / d;
        fit.intercept = (sy - fit.slope * sx) / pts;
      }
      result.fits.push_back(fit);
      for (SweepCell& cell : result.cells) {
        if (cell.n == n && cell.m == m) {
          cell.fit_slope = fit.slope;
          cell.fit_intercept = fit.intercept;
        }
      }
    }
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw parse_error("cannot open for writing: " + file.string());
  out << "n,m,lambda,nu,delta,trials,detected,rho_hat,rho_theory,delta_star,"
         "fit_slope,fit_intercept,status\n";
  char buf[256];
  for (const SweepCell& c : result.cells) {
    std::snprintf(buf, sizeof(buf), "%u,%u,%.10g,%.10g,%.10g,%u,%u,%.10g,%.10g,%.10g,%.10g,%.10g,%s\n",
                  c.n, c.m, c.lambda, c.nu, c.delta, c.trials, c.detected, c.rho_hat,
                  c.rho_theory, c.delta_star_mean, c.fit_slope, c.fit_intercept,
                  c.status.c_str());
    out << buf;
  }
}

}  // namespace bbnet::analysis
