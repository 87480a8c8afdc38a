// Command-line front end: lattice construction, error evaluation, randomized
// integration, the PDE error-splitting experiment and construction benchmarks.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation failure, 3 budget
// exceeded. Failures print a single "error: exit=<code>: <message>" line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmclat/cbc.hpp"
#include "qmclat/cli_lang.hpp"
#include "qmclat/config_file.hpp"
#include "qmclat/instrument.hpp"
#include "qmclat/kernel.hpp"
#include "qmclat/uq.hpp"
#include "qmclat/weights.hpp"

namespace {

using namespace qmclat;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  if (out.empty()) throw std::invalid_argument("empty integer list '" + csv + "'");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  return out;
}

struct ConstructArgs {
  std::int64_t b = 3;
  int m = 4;
  int s = 4;
  std::string w_rule = "linear:1";
  std::string gamma = "j^-2";
  std::string order = "one";
  int alpha = 2;
  bool sobolev = false;
  bool no_normalize = false;
  std::string out_path = "vector.txt";
  std::string log_path;
};

void echo_construct(std::ostream& os, const ConstructArgs& a, const CbcResult& result) {
  os << "# command = construct\n"
     << "# b = " << a.b << "\n# m = " << a.m << "\n# s = " << a.s << '\n'
     << "# w = " << a.w_rule << '\n'
     << "# gamma = " << a.gamma << '\n'
     << "# Gamma = " << a.order << '\n'
     << "# alpha = " << a.alpha << '\n'
     << "# space = " << (a.sobolev ? "sobolev" : "korobov") << '\n'
     << "# normalize_w1 = " << (a.no_normalize ? "off" : "on") << '\n'
     << "# w1_shift_applied = " << result.w1_shift << '\n'
     << "# out = " << a.out_path << '\n';
}

int cmd_construct(const ConstructArgs& a) {
  const Modulus mod = Modulus::make(a.b, a.m);
  const auto schedule = ReductionSchedule::from_rule(a.w_rule, a.s, a.b);
  const PodWeights weights(parse_order_weights(a.order, a.s),
                           parse_product_weights(a.gamma, a.s));
  KernelSpec spec{a.alpha,
                  a.sobolev ? FunctionSpace::ShiftAveragedSobolev : FunctionSpace::Korobov};
  CbcOptions options;
  options.normalize_w1 = !a.no_normalize;
  const CbcResult result = reduced_cbc_fast(mod, schedule, weights, spec, options);

  write_vector_file(a.out_path, result.vector);
  echo_construct(std::cout, a, result);

  std::ostream* log = &std::cout;
  std::ofstream log_file;
  if (!a.log_path.empty()) {
    log_file = open_out(a.log_path);
    log = &log_file;
    echo_construct(log_file, a, result);
  }
  *log << "j,w,z,e2\n";
  for (int j = 1; j <= a.s; ++j)
    *log << j << ',' << schedule.at(j) << ',' << result.vector.component(j) << ','
         << fmt17(result.step_sq_error[static_cast<std::size_t>(j - 1)]) << '\n';
  return 0;
}

struct WceArgs {
  std::string vector_path;
  std::string gamma = "j^-2";
  std::string order = "one";
  int alpha = 2;
  bool sobolev = false;
  bool oracle = false;
};

int cmd_wce(const WceArgs& a) {
  const GeneratingVector gv = read_vector_file(a.vector_path);
  const int s = gv.dims();
  const PodWeights weights(parse_order_weights(a.order, s), parse_product_weights(a.gamma, s));
  KernelSpec spec{a.alpha,
                  a.sobolev ? FunctionSpace::ShiftAveragedSobolev : FunctionSpace::Korobov};
  std::cout << "# command = wce\n# vector = " << a.vector_path << "\n# gamma = " << a.gamma
            << "\n# Gamma = " << a.order << "\n# alpha = " << a.alpha << "\n# space = "
            << (a.sobolev ? "sobolev" : "korobov") << "\n# oracle = "
            << (a.oracle ? "on" : "off") << '\n';
  const double fast = wce_fast(gv, weights, spec);
  std::cout << "e2 = " << fmt17(fast) << '\n';
  if (a.oracle) {
    const double brute = wce_bruteforce(gv, weights, spec);
    const double rel = std::abs(fast - brute) / std::max(std::abs(brute), 1e-300);
    std::cout << "e2_oracle = " << fmt17(brute) << '\n'
              << "rel_diff = " << fmt17(rel) << '\n';
  }
  return 0;
}

struct IntegrateArgs {
  std::string vector_path;
  std::string integrand = "product";
  int shifts = 16;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_path;
};

int cmd_integrate(const IntegrateArgs& a) {
  const GeneratingVector gv = read_vector_file(a.vector_path);
  const int s = gv.dims();

  std::function<double(std::span<const double>)> F;
  double truth = std::numeric_limits<double>::quiet_NaN();
  if (a.integrand.rfind("const:", 0) == 0) {
    const double c = std::stod(a.integrand.substr(6));
    F = [c](std::span<const double>) { return c; };
    truth = c;
  } else if (a.integrand.rfind("linear", 0) == 0) {
    int j = 1;
    if (a.integrand.rfind("linear:", 0) == 0) j = std::stoi(a.integrand.substr(7));
    if (j < 1 || j > s) throw std::invalid_argument("linear integrand index out of range");
    F = [j](std::span<const double> y) { return y[static_cast<std::size_t>(j - 1)]; };
    truth = 0.0;
  } else if (a.integrand == "product") {
    F = [](std::span<const double> y) {
      double p = 1.0;
      for (double v : y) p *= 1.0 + v;
      return p;
    };
    truth = 1.0;
  } else if (a.integrand.rfind("oscil", 0) == 0) {
    double w0 = 0.0;
    if (a.integrand.rfind("oscil:", 0) == 0) w0 = std::stod(a.integrand.substr(6));
    F = [w0](std::span<const double> y) {
      double arg = 2.0 * std::numbers::pi * w0;
      for (std::size_t j = 0; j < y.size(); ++j)
        arg += y[j] / static_cast<double>(j + 1);
      return std::cos(arg);
    };
    truth = std::cos(2.0 * std::numbers::pi * w0);
    for (int j = 1; j <= s; ++j) {
      const double c = 1.0 / static_cast<double>(j);
      truth *= 2.0 * std::sin(c / 2.0) / c;
    }
  } else {
    throw std::invalid_argument("unknown integrand family '" + a.integrand + "'");
  }

  const QmcEstimate est = qmc_estimate(gv, F, a.shifts, a.seed, a.threads);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!a.out_path.empty()) {
    file = open_out(a.out_path);
    out = &file;
  }
  *out << "# command = integrate\n# vector = " << a.vector_path << "\n# integrand = "
       << a.integrand << "\n# R = " << a.shifts << "\n# seed = " << a.seed
       << "\n# threads = " << a.threads << '\n';
  *out << "family,s,N,R,seed,estimate,rmse_stderr,rmse_pop,truth,abs_error\n";
  *out << a.integrand << ',' << s << ',' << est.points << ',' << est.shifts << ',' << est.seed
       << ',' << fmt17(est.mean) << ',' << fmt17(est.rmse) << ',' << fmt17(est.rmse_pop) << ','
       << fmt17(truth) << ',' << fmt17(std::abs(est.mean - truth)) << '\n';
  return 0;
}

struct PdeArgs {
  std::string config_path;
  std::string s_levels = "4,8,16";
  std::string mesh_levels = "32,64,128";
  std::string m_levels = "5,6,7,8";
  std::int64_t b = 2;
  int shifts = 16;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string schedule;
  std::string f_spec = "one";
  std::string g_spec = "one";
  bool order_dependent_gamma = false;
  std::string out_path;
};

int cmd_pde(const PdeArgs& a) {
  ExperimentConfig config;
  if (!a.config_path.empty()) {
    const ConfigFile cfg = ConfigFile::load(a.config_path);
    config.field = field_from_config(cfg);
    const BoundParams bounds = bounds_from_config(cfg);
    config.p = bounds.p;
    config.delta = bounds.delta;
    config.C = bounds.C;
    if (cfg.has("bounds", "f_norm")) config.f_norm = bounds.f_norm;
    if (cfg.has("bounds", "G_norm")) config.G_norm = bounds.G_norm;
    config.schedule_rule = schedule_rule_from_config(cfg);
  } else {
    config.field = RandomField::sine({});
  }
  if (!a.schedule.empty()) config.schedule_rule = a.schedule;
  config.s_levels = parse_int_list(a.s_levels);
  config.mesh_levels = parse_int_list(a.mesh_levels);
  config.m_levels = parse_int_list(a.m_levels);
  config.base = a.b;
  config.shifts = a.shifts;
  config.seed = a.seed;
  config.threads = a.threads;
  config.f = parse_function_spec(a.f_spec);
  config.g = parse_function_spec(a.g_spec);
  config.order_dependent_gamma = a.order_dependent_gamma;
  // norms of non-constant loads are not derived automatically
  if (a.f_spec != "one" && std::isnan(config.f_norm)) config.f_norm = 1.0;
  if (a.g_spec != "one" && std::isnan(config.G_norm)) config.G_norm = 1.0;

  const ExperimentReport report = error_splitting_experiment(config);
  if (a.out_path.empty()) {
    write_experiment_csv(std::cout, report);
  } else {
    auto out = open_out(a.out_path);
    write_experiment_csv(out, report);
  }
  return 0;
}

struct BenchArgs {
  std::int64_t b = 3;
  std::string m_levels = "5,6,7";
  std::string s_levels = "7,100,1000";
  std::string schedules = "linear:1;log";
  std::string gamma = "j^-2";
  std::string order = "one";
  std::string out_path;
};

int cmd_bench(const BenchArgs& a) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!a.out_path.empty()) {
    file = open_out(a.out_path);
    out = &file;
  }
  *out << "# command = bench\n# b = " << a.b << "\n# m_levels = " << a.m_levels
       << "\n# s_levels = " << a.s_levels << "\n# schedules = " << a.schedules
       << "\n# gamma = " << a.gamma << "\n# Gamma = " << a.order << '\n';
  *out << "b,m,s,schedule,s_star,adds,mults,ops_total,predicted,ratio,wall_ms\n";

  std::vector<std::string> rules;
  {
    std::stringstream ss(a.schedules);
    std::string tok;
    while (std::getline(ss, tok, ';'))
      if (!tok.empty()) rules.push_back(tok);
    if (rules.empty()) throw std::invalid_argument("no schedule rules given");
  }

  for (int m : parse_int_list(a.m_levels)) {
    const Modulus mod = Modulus::make(a.b, m);
    for (const auto& rule : rules) {
      for (int s : parse_int_list(a.s_levels)) {
        const auto schedule = ReductionSchedule::from_rule(rule, s, a.b);
        const PodWeights weights(parse_order_weights(a.order, s),
                                 parse_product_weights(a.gamma, s));
        ops::enable(true);
        ops::reset();
        const auto t0 = std::chrono::steady_clock::now();
        const auto result = reduced_cbc_fast(mod, schedule, weights, KernelSpec{});
        const auto t1 = std::chrono::steady_clock::now();
        const auto counts = ops::counters();
        ops::enable(false);
        (void)result;
        const std::uint64_t predicted = predicted_cost(mod, schedule, s);
        const double ratio = predicted > 0
                                 ? static_cast<double>(counts.total()) /
                                       static_cast<double>(predicted)
                                 : std::numeric_limits<double>::quiet_NaN();
        const double wall =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        *out << a.b << ',' << m << ',' << s << ',' << rule << ','
             << schedule.s_star(m) << ',' << counts.adds << ',' << counts.mults << ','
             << counts.total() << ',' << predicted << ',' << fmt17(ratio) << ','
             << fmt17(wall) << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-1 lattice construction by the fast reduced CBC method"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a generating vector");
  construct->add_option("--b", ca.b, "prime base");
  construct->add_option("--m", ca.m, "exponent, N = b^m");
  construct->add_option("--s", ca.s, "dimensions");
  construct->add_option("--w", ca.w_rule, "schedule: list | linear:k | log");
  construct->add_option("--gamma", ca.gamma, "product weights spec");
  construct->add_option("--Gamma", ca.order, "order weights spec");
  construct->add_option("--alpha", ca.alpha, "kernel smoothness");
  construct->add_flag("--sobolev", ca.sobolev, "shift-averaged Sobolev space");
  construct->add_flag("--no-normalize", ca.no_normalize, "skip the w1 normalization");
  construct->add_option("--out", ca.out_path, "vector file path");
  construct->add_option("--log", ca.log_path, "step log path (default stdout)");

  WceArgs wa;
  auto* wce = app.add_subcommand("wce", "evaluate the squared worst-case error");
  wce->add_option("--vector", wa.vector_path, "vector file")->required();
  wce->add_option("--gamma", wa.gamma, "product weights spec");
  wce->add_option("--Gamma", wa.order, "order weights spec");
  wce->add_option("--alpha", wa.alpha, "kernel smoothness");
  wce->add_flag("--sobolev", wa.sobolev, "shift-averaged Sobolev space");
  wce->add_flag("--oracle", wa.oracle, "also run the brute-force oracle");

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "randomized lattice integration");
  integrate->add_option("--vector", ia.vector_path, "vector file")->required();
  integrate->add_option("--integrand", ia.integrand,
                        "const:c | linear[:j] | product | oscil[:w0]");
  integrate->add_option("--R", ia.shifts, "number of random shifts");
  integrate->add_option("--seed", ia.seed, "shift seed");
  integrate->add_option("--threads", ia.threads, "parallel shift workers");
  integrate->add_option("--out", ia.out_path, "CSV path (default stdout)");

  PdeArgs pa;
  auto* pde = app.add_subcommand("pde", "error-splitting experiment");
  pde->add_option("--config", pa.config_path, "field/bounds configuration file");
  pde->add_option("--s-levels", pa.s_levels, "truncation dimensions");
  pde->add_option("--mesh-levels", pa.mesh_levels, "cells per mesh level");
  pde->add_option("--m-levels", pa.m_levels, "exponents, N = b^m");
  pde->add_option("--b", pa.b, "prime base");
  pde->add_option("--R", pa.shifts, "number of random shifts");
  pde->add_option("--seed", pa.seed, "shift seed");
  pde->add_option("--threads", pa.threads, "parallel shift workers");
  pde->add_option("--schedule", pa.schedule, "override schedule rule");
  pde->add_option("--f", pa.f_spec, "load: one | const:v | sin:k | cos:k");
  pde->add_option("--g", pa.g_spec, "functional representer spec");
  pde->add_flag("--order-dependent-Gamma", pa.order_dependent_gamma,
                "use the kappa(l)^l order template");
  pde->add_option("--out", pa.out_path, "CSV path (default stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "instrumented construction benchmark");
  bench->add_option("--b", ba.b, "prime base");
  bench->add_option("--m-levels", ba.m_levels, "exponents");
  bench->add_option("--s-levels", ba.s_levels, "dimension counts");
  bench->add_option("--schedules", ba.schedules, "schedule rules, ';' separated");
  bench->add_option("--gamma", ba.gamma, "product weights spec");
  bench->add_option("--Gamma", ba.order, "order weights spec");
  bench->add_option("--out", ba.out_path, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(ca);
    if (wce->parsed()) return cmd_wce(wa);
    if (integrate->parsed()) return cmd_integrate(ia);
    if (pde->parsed()) return cmd_pde(pa);
    if (bench->parsed()) return cmd_bench(ba);
  } catch (const qmclat::BudgetError& e) {
    std::cerr << "error: exit=3: " << e.what() << '\n';
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: exit=1: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: exit=2: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: exit=2: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: exit=2: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: exit=1: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
