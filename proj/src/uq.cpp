#include "qmclat/uq.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qmclat/kernel.hpp"
#include "qmclat/summation.hpp"
#include "qmclat/weights.hpp"

namespace qmclat {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

void run_shifts(int shifts, int threads, const std::function<void(int)>& work) {
  if (threads <= 1 || shifts <= 1) {
    for (int r = 0; r < shifts; ++r) work(r);
    return;
  }
  std::atomic<int> next{0};
  const int workers = std::min(threads, shifts);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= shifts) break;
        work(r);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

double shift_uniform(std::uint64_t seed, std::uint64_t shift_index, std::uint64_t dim) {
  std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL * (shift_index + 1));
  key = mix64(key + 0xc2b2ae3d27d4eb4fULL * (dim + 1));
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

std::vector<std::vector<double>> lattice_points(const GeneratingVector& gv,
                                                std::span<const double> shift) {
  const int s = gv.dims();
  if (static_cast<int>(shift.size()) != s)
    throw std::invalid_argument("shift dimension does not match the vector");
  const std::int64_t n = gv.mod.n;
  std::vector<std::int64_t> zt(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) zt[static_cast<std::size_t>(j - 1)] = gv.ztilde(j);

  std::vector<std::vector<double>> points(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(s)));
  std::vector<std::int64_t> res(static_cast<std::size_t>(s), 0);
  for (std::int64_t k = 1; k <= n; ++k) {
    for (int j = 0; j < s; ++j) {
      auto& r = res[static_cast<std::size_t>(j)];
      r += zt[static_cast<std::size_t>(j)];
      if (r >= n) r -= n;
      const double frac = static_cast<double>(r) / static_cast<double>(n) +
                          shift[static_cast<std::size_t>(j)];
      points[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)] =
          (frac - std::floor(frac)) - 0.5;
    }
  }
  return points;
}

QmcEstimate qmc_estimate(const GeneratingVector& gv,
                         const std::function<double(std::span<const double>)>& integrand,
                         int shifts, std::uint64_t seed, int threads) {
  if (shifts < 1) throw std::invalid_argument("need at least one random shift");
  const int s = gv.dims();
  const std::int64_t n = gv.mod.n;
  std::vector<std::int64_t> zt(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) zt[static_cast<std::size_t>(j - 1)] = gv.ztilde(j);

  QmcEstimate est;
  est.per_shift.assign(static_cast<std::size_t>(shifts), 0.0);
  est.points = n;
  est.dims = s;
  est.shifts = shifts;
  est.seed = seed;

  run_shifts(shifts, threads, [&](int r) {
    std::vector<double> shift(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j)
      shift[static_cast<std::size_t>(j)] =
          shift_uniform(seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(j));
    std::vector<std::int64_t> res(static_cast<std::size_t>(s), 0);
    std::vector<double> y(static_cast<std::size_t>(s));
    CompensatedSum acc;
    for (std::int64_t k = 1; k <= n; ++k) {
      for (int j = 0; j < s; ++j) {
        auto& rr = res[static_cast<std::size_t>(j)];
        rr += zt[static_cast<std::size_t>(j)];
        if (rr >= n) rr -= n;
        const double frac = static_cast<double>(rr) / static_cast<double>(n) +
                            shift[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(j)] = (frac - std::floor(frac)) - 0.5;
      }
      acc.add(integrand(y));
    }
    est.per_shift[static_cast<std::size_t>(r)] = acc.value() / static_cast<double>(n);
  });

  CompensatedSum mean_acc;
  for (double v : est.per_shift) mean_acc.add(v);
  est.mean = mean_acc.value() / static_cast<double>(shifts);

  if (shifts >= 2) {
    CompensatedSum var;
    for (double v : est.per_shift) var.add((v - est.mean) * (v - est.mean));
    const double ss = var.value();
    est.rmse = std::sqrt(ss / (static_cast<double>(shifts) - 1.0)) /
               std::sqrt(static_cast<double>(shifts));
    est.rmse_pop = std::sqrt(ss / static_cast<double>(shifts));
  }
  return est;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    return std::numeric_limits<double>::quiet_NaN();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentReport error_splitting_experiment(const ExperimentConfig& config) {
  if (config.s_levels.empty() || config.mesh_levels.empty() || config.m_levels.empty())
    throw std::invalid_argument("experiment needs s, mesh and N levels");
  const int s_max_level = *std::max_element(config.s_levels.begin(), config.s_levels.end());
  if (s_max_level > config.field.s_max)
    throw std::invalid_argument("field expansion shorter than the largest s level");

  const auto f = config.f ? config.f : [](double) { return 1.0; };
  const auto g = config.g ? config.g : [](double) { return 1.0; };
  const auto kappas = compute_kappas(config.field, config.kappa_grid);
  const double lambda_p = choose_lambda(config.p, config.delta);

  // constant of the POD derivative-bound template; the sharper kappa wins
  const double C = std::isnan(config.C)
                       ? 1.0 / ((1.0 - kappas.kappa) * kappas.a0_min)
                       : config.C;
  // ||f||_{V*} = ||G||_{V*} = sqrt(1/12) for the constant-one defaults
  const double default_norm = std::sqrt(1.0 / 12.0);
  const double f_norm = std::isnan(config.f_norm) ? default_norm : config.f_norm;
  const double G_norm = std::isnan(config.G_norm) ? default_norm : config.G_norm;

  const KernelSpec sobolev{2, FunctionSpace::ShiftAveragedSobolev};

  struct Cell {
    GeneratingVector gv;
    PodWeights weights;
    std::vector<double> gamma_template;
    std::vector<double> b_tilde;
  };
  std::map<std::pair<int, int>, Cell> cells;  // (s, m) -> constructed rule

  for (int s : config.s_levels) {
    const auto gamma_template =
        kappa_gamma_template(kappas, s, config.order_dependent_gamma);
    std::vector<double> b_tilde(static_cast<std::size_t>(s));
    for (int j = 1; j <= s; ++j)
      b_tilde[static_cast<std::size_t>(j - 1)] =
          2.0 * config.field.b_at(j) / (1.0 - kappas.kappa);
    const ReductionSchedule schedule =
        config.schedule_rule.empty()
            ? ReductionSchedule(std::vector<int>(static_cast<std::size_t>(s), 0))
            : ReductionSchedule::from_rule(config.schedule_rule, s, config.base);
    const PodWeights weights =
        pod_weights_from_bounds(gamma_template, b_tilde, config.base, schedule, lambda_p);
    for (int m : config.m_levels) {
      const Modulus mod = Modulus::make(config.base, m);
      auto built = reduced_cbc_fast(mod, schedule, weights, sobolev);
      cells.emplace(std::make_pair(s, m),
                    Cell{std::move(built.vector), weights, gamma_template, b_tilde});
    }
  }

  const auto solve_value = [&](int s, int n_cells, std::span<const double> y) {
    const FemMesh mesh = FemMesh::make(n_cells);
    TruncatedCoefficient coeff{config.field, std::vector<double>(y.begin(), y.end())};
    (void)s;
    const auto u = assemble_solve(mesh, coeff, f);
    return functional_g(mesh, u, g);
  };

  // self-reference: finest cell, four times the shifts, decoupled seed
  const int s_ref = s_max_level;
  const int cells_ref = *std::max_element(config.mesh_levels.begin(), config.mesh_levels.end());
  const int m_ref = *std::max_element(config.m_levels.begin(), config.m_levels.end());
  const std::uint64_t seed_ref = config.seed ^ 0x5851f42d4c957f2dULL;
  const auto& ref_cell = cells.at(std::make_pair(s_ref, m_ref));
  const QmcEstimate ref_est = qmc_estimate(
      ref_cell.gv,
      [&](std::span<const double> y) { return solve_value(s_ref, cells_ref, y); },
      4 * config.shifts, seed_ref, config.threads);

  ExperimentReport report;
  report.reference = ref_est.mean;

  std::map<std::pair<int, double>, std::vector<std::size_t>> by_sh;  // (s, h) -> rows
  std::map<std::pair<int, std::int64_t>, std::vector<std::size_t>> by_sn;

  for (int s : config.s_levels) {
    for (int n_cells : config.mesh_levels) {
      for (int m : config.m_levels) {
        const auto& cell = cells.at(std::make_pair(s, m));
        const QmcEstimate est = qmc_estimate(
            cell.gv,
            [&](std::span<const double> y) { return solve_value(s, n_cells, y); },
            config.shifts, config.seed, config.threads);

        ExperimentRow row;
        row.s = s;
        row.h = 1.0 / static_cast<double>(n_cells);
        row.N = cell.gv.mod.n;
        row.shifts = config.shifts;
        row.seed = config.seed;
        row.estimate = est.mean;
        row.rmse_empirical = est.rmse_pop;
        row.bound_trunc = truncation_bound(
            TruncationConsts{kappas.a0_min, kappas.a0_max, kappas.kappa_bar, kappas.kappa,
                             G_norm, f_norm},
            config.field.b_tail_sup(s));
        row.bound_fe = row.h * row.h;
        row.bound_qmc =
            sobolev_rmse_bound(cell.gv, cell.weights, 1.0) *
            functional_norm_bound(C, f_norm, G_norm, cell.gamma_template, cell.b_tilde,
                                  cell.weights);
        by_sh[{s, row.h}].push_back(report.rows.size());
        by_sn[{s, row.N}].push_back(report.rows.size());
        report.rows.push_back(row);
      }
    }
  }

  for (auto& [key, idx] : by_sh) {
    std::vector<double> xs, ys;
    for (std::size_t i : idx) {
      xs.push_back(static_cast<double>(report.rows[i].N));
      ys.push_back(report.rows[i].rmse_empirical);
    }
    const double slope = fit_loglog_slope(xs, ys);
    for (std::size_t i : idx) report.rows[i].slope_N = slope;
  }
  for (auto& [key, idx] : by_sn) {
    std::vector<double> xs, ys;
    for (std::size_t i : idx) {
      xs.push_back(report.rows[i].h);
      ys.push_back(std::abs(report.rows[i].estimate - report.reference));
    }
    const double slope = fit_loglog_slope(xs, ys);
    for (std::size_t i : idx) report.rows[i].slope_h = slope;
  }

  auto echo = [&](const std::string& k, const std::string& v) {
    report.config_echo.emplace_back(k, v);
  };
  auto echo_num = [&](const std::string& k, double v) { echo(k, fmt17(v)); };
  echo("base", std::to_string(config.base));
  {
    std::string levels;
    for (int s : config.s_levels) levels += (levels.empty() ? "" : ",") + std::to_string(s);
    echo("s_levels", levels);
    levels.clear();
    for (int c : config.mesh_levels) levels += (levels.empty() ? "" : ",") + std::to_string(c);
    echo("mesh_levels", levels);
    levels.clear();
    for (int m : config.m_levels) levels += (levels.empty() ? "" : ",") + std::to_string(m);
    echo("m_levels", levels);
  }
  echo("schedule_rule", config.schedule_rule.empty() ? "zero" : config.schedule_rule);
  echo("shifts", std::to_string(config.shifts));
  echo("seed", std::to_string(config.seed));
  echo_num("p", config.p);
  echo_num("delta", config.delta);
  echo_num("lambda_p", lambda_p);
  echo_num("kappa_bar", kappas.kappa_bar);
  echo_num("kappa", kappas.kappa);
  echo_num("C", C);
  echo_num("f_norm", f_norm);
  echo_num("G_norm", G_norm);
  echo("kappa_grid", std::to_string(config.kappa_grid));
  echo_num("reference", report.reference);
  echo("reference_shifts", std::to_string(4 * config.shifts));
  echo("reference_seed", std::to_string(seed_ref));
  return report;
}

void write_experiment_csv(std::ostream& out, const ExperimentReport& report) {
  for (const auto& [k, v] : report.config_echo) out << "# " << k << " = " << v << '\n';
  out << "s,h,N,R,seed,estimate,rmse_empirical,bound_trunc,bound_fe,bound_qmc,slope_N,slope_h\n";
  for (const auto& r : report.rows) {
    out << r.s << ',' << fmt17(r.h) << ',' << r.N << ',' << r.shifts << ',' << r.seed << ','
        << fmt17(r.estimate) << ',' << fmt17(r.rmse_empirical) << ',' << fmt17(r.bound_trunc)
        << ',' << fmt17(r.bound_fe) << ',' << fmt17(r.bound_qmc) << ',' << fmt17(r.slope_N)
        << ',' << fmt17(r.slope_h) << '\n';
  }
}

}  // namespace qmclat
