#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmclat/cbc.hpp"
#include "qmclat/pde.hpp"
#include "qmclat/random_field.hpp"

namespace qmclat {

// Counter-based uniform generator: the value depends only on
// (seed, shift_index, dim), so per-shift work can run in any order or in
// parallel without changing a single bit of the result.
double shift_uniform(std::uint64_t seed, std::uint64_t shift_index, std::uint64_t dim);

// Shifted lattice points t_k = {(k ztilde)/N + shift} - 1/2 for k = 1..N.
std::vector<std::vector<double>> lattice_points(const GeneratingVector& gv,
                                                std::span<const double> shift);

struct QmcEstimate {
  std::vector<double> per_shift;
  double mean = 0.0;
  // standard-error convention: sample std of the shift means / sqrt(R)
  double rmse = 0.0;
  // population convention: deviation of the shift means around the grand mean
  double rmse_pop = 0.0;
  std::int64_t points = 0;
  int dims = 0;
  int shifts = 0;
  std::uint64_t seed = 0;
};

QmcEstimate qmc_estimate(const GeneratingVector& gv,
                         const std::function<double(std::span<const double>)>& integrand,
                         int shifts, std::uint64_t seed, int threads = 1);

// Least-squares slope of log(y) against log(x); NaN when undefined.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

struct ExperimentConfig {
  RandomField field;
  std::vector<int> s_levels;     // truncation dimensions
  std::vector<int> mesh_levels;  // cells per mesh
  std::vector<int> m_levels;     // N = base^m
  std::int64_t base = 2;
  std::string schedule_rule;  // empty = all-zero reduction indices
  int shifts = 16;
  std::uint64_t seed = 1;
  double p = 0.6;
  double delta = 0.25;
  // NaN = derive from the field (C) or from the constant-one functionals.
  double C = std::numeric_limits<double>::quiet_NaN();
  double f_norm = std::numeric_limits<double>::quiet_NaN();
  double G_norm = std::numeric_limits<double>::quiet_NaN();
  std::function<double(double)> f;  // default 1
  std::function<double(double)> g;  // default 1
  bool order_dependent_gamma = false;  // Gamma(l) = kappa(l)^l instead of kappa^l
  int kappa_grid = 256;
  int threads = 1;
};

struct ExperimentRow {
  int s = 0;
  double h = 0.0;
  std::int64_t N = 0;
  int shifts = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double rmse_empirical = 0.0;  // population convention over shifts
  double bound_trunc = 0.0;
  double bound_fe = 0.0;
  double bound_qmc = 0.0;
  double slope_N = 0.0;
  double slope_h = 0.0;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  double reference = 0.0;  // finest (s, h, N) cell, 4x shifts
  std::vector<std::pair<std::string, std::string>> config_echo;
};

// Error-splitting table: QMC estimates and empirical RMSE per (s, h, N) cell
// alongside the truncation bound, the h^2 proxy and the shift-averaged QMC
// bound, plus fitted decay slopes versus N and h.
ExperimentReport error_splitting_experiment(const ExperimentConfig& config);

// CSV with the fixed header
// s,h,N,R,seed,estimate,rmse_empirical,bound_trunc,bound_fe,bound_qmc,slope_N,slope_h
// preceded by '#' lines echoing the resolved configuration.
void write_experiment_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace qmclat
