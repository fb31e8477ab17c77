#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bbnet/analysis.hpp"

namespace bbnet::analysis {

// Grid sweep reproducing the stationary-prevalence law on generated
// networks: synthetic unit payload, permanent sources, per-trial graphs.
struct SweepGrid {
  std::vector<double> lambdas = {0.08, 0.10, 0.125, 0.15, 0.2};
  std::vector<std::uint32_t> ms = {3};
  std::vector<std::uint32_t> ns = {10000};
  std::uint32_t trials = 30;
  double delta = 1.0;                  // cure probability; nu = lambda * delta
  std::uint32_t synthetic_seeds = 10;  // permanently infectious sources
  std::uint32_t instants = 400;
  std::uint32_t window = kStationarityWindow;
  double tol = kStationarityTolerance;
  std::uint32_t jobs = 0;  // 0: hardware concurrency
};

struct SweepCell {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double lambda = 0;
  double nu = 0;
  double delta = 0;
  std::uint32_t trials = 0;
  std::uint32_t detected = 0;      // trials with a stationarity hit
  double rho_hat = 0;              // mean stationary level over detected trials
  double rho_theory = 0;           // exp(-1/(m*lambda))
  double delta_star_mean = 0;      // mean intervals to stationarity
  double fit_slope = 0;            // ln rho vs 1/lambda slope of this (n,m) group
  double fit_intercept = 0;
  std::string status = "ok";
};

struct SweepFit {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double slope = 0;      // target: -1/m
  double intercept = 0;
  std::size_t points = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<SweepFit> fits;
};

SweepResult run_sweep(const SweepGrid& grid, std::uint64_t seed);

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& file);

}  // namespace bbnet::analysis
