#include "qmclat/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qmclat/kernel.hpp"

namespace qmclat {

KappaReport compute_kappas(const RandomField& field, int grid_size) {
  if (grid_size < 64) throw std::invalid_argument("kappa grid needs at least 64 cells");
  if (field.s_max < 0) throw std::invalid_argument("field without expansion terms");

  const int s = field.s_max;
  KappaReport report;
  report.kappa_of_order.assign(static_cast<std::size_t>(s), 0.0);
  std::vector<double> greedy(static_cast<std::size_t>(s), 0.0);
  report.a0_min = std::numeric_limits<double>::infinity();
  report.a0_max = -std::numeric_limits<double>::infinity();

  std::vector<double> ratio(static_cast<std::size_t>(s));
  for (int i = 0; i <= grid_size; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid_size);
    const double a0 = field.a0(x);
    if (!(a0 > 0.0))
      throw InadmissibleFieldError("a0 is not positive at x = " + std::to_string(x));
    report.a0_min = std::min(report.a0_min, a0);
    report.a0_max = std::max(report.a0_max, a0);

    double bar = 0.0;
    for (int j = 1; j <= s; ++j) {
      const double p = std::abs(field.psi(j, x)) / (2.0 * a0);
      bar += p;
      ratio[static_cast<std::size_t>(j - 1)] = p / field.b_at(j);
    }
    report.kappa_bar = std::max(report.kappa_bar, bar);

    // prefix sums over the smallest indices (monotone-family choice)
    double prefix = 0.0;
    for (int k = 1; k <= s; ++k) {
      prefix += ratio[static_cast<std::size_t>(k - 1)];
      auto& slot = report.kappa_of_order[static_cast<std::size_t>(k - 1)];
      slot = std::max(slot, prefix);
    }
    report.kappa = std::max(report.kappa, prefix);

    // greedy top-k per grid point, an upper bound for arbitrary fields
    std::sort(ratio.begin(), ratio.end(), std::greater<double>());
    double top = 0.0;
    for (int k = 1; k <= s; ++k) {
      top += ratio[static_cast<std::size_t>(k - 1)];
      auto& slot = greedy[static_cast<std::size_t>(k - 1)];
      slot = std::max(slot, top);
    }
  }

  double gap = 0.0;
  for (int k = 1; k <= s; ++k)
    gap = std::max(gap, greedy[static_cast<std::size_t>(k - 1)] -
                            report.kappa_of_order[static_cast<std::size_t>(k - 1)]);
  report.kappa_of_order_gap = gap;
  if (!field.sine_family) report.kappa_of_order = std::move(greedy);

  // analytic tail of the truncated series, scaled like the kappa sum
  double tail = field.psi_tail_sup();
  if (field.sine_family) {
    const double exponent = field.decay - field.b_decay;
    if (exponent > 1.0)
      tail = (field.amplitude / field.b_scale) *
             std::pow(static_cast<double>(field.s_max), 1.0 - exponent) / (exponent - 1.0);
    else
      tail = std::numeric_limits<double>::infinity();
  }
  report.tail_error = tail / (2.0 * report.a0_min);

  if (report.kappa >= 1.0)
    throw InadmissibleFieldError("field inadmissible: kappa = " + std::to_string(report.kappa) +
                                 " >= 1");
  return report;
}

std::vector<double> kappa_gamma_template(const KappaReport& report, int s,
                                         bool order_dependent) {
  if (s < 0) throw std::invalid_argument("order template needs s >= 0");
  std::vector<double> gamma(static_cast<std::size_t>(s) + 1, 1.0);
  for (int l = 1; l <= s; ++l) {
    double base = report.kappa;
    if (order_dependent) {
      const int idx = std::min<int>(l, static_cast<int>(report.kappa_of_order.size()));
      if (idx >= 1) base = report.kappa_of_order[static_cast<std::size_t>(idx - 1)];
    }
    gamma[static_cast<std::size_t>(l)] = std::pow(base, l);
  }
  return gamma;
}

PodWeights pod_weights_from_bounds(std::span<const double> gamma_template,
                                   std::span<const double> b_tilde, std::int64_t base,
                                   const ReductionSchedule& schedule, double lambda) {
  if (!(lambda > 0.5 && lambda <= 1.0))
    throw std::domain_error("weight synthesis requires lambda in (1/2, 1]");
  const int s = static_cast<int>(b_tilde.size());
  if (static_cast<int>(gamma_template.size()) < s + 1)
    throw std::invalid_argument("order template must cover orders 0..s");
  if (schedule.dims() < s) throw std::invalid_argument("schedule shorter than b~ sequence");
  if (gamma_template[0] != 1.0) throw std::invalid_argument("order template needs Gamma(0) = 1");

  const double expo = 1.0 / (1.0 + lambda);
  const double r = rho(lambda);

  std::vector<double> order(static_cast<std::size_t>(s) + 1);
  double w_product = 1.0;  // prod_{l=1}^{k-1} b^{w_l}
  for (int k = 0; k <= s; ++k) {
    const double g = gamma_template[static_cast<std::size_t>(k)];
    order[static_cast<std::size_t>(k)] = std::pow(g * g * w_product, expo);
    if (k >= 1 && k < s)
      w_product *= static_cast<double>(ipow(base, schedule.at(k)));
  }
  order[0] = 1.0;

  std::vector<double> product(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) {
    const double bt = b_tilde[static_cast<std::size_t>(j - 1)];
    const double denom = r * static_cast<double>(ipow(base, schedule.at(j)));
    product[static_cast<std::size_t>(j - 1)] = std::pow(bt * bt / denom, expo);
  }
  return PodWeights(std::move(order), std::move(product));
}

double choose_lambda(double p, double delta) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("sparsity p must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 0.5)) throw std::domain_error("delta must lie in (0, 1/2)");
  if (p <= 2.0 / 3.0) return 1.0 / (2.0 - 2.0 * delta);
  return p / (2.0 - p);
}

namespace {

// A_lambda and its dual form share the per-order grouping
//   sum_l coeff(l) e_l(t_1..t_s)
// with e_l the elementary symmetric polynomials.
double order_grouped_sum(const std::vector<double>& coeff, const std::vector<double>& t) {
  const int s = static_cast<int>(t.size());
  std::vector<double> sym(static_cast<std::size_t>(s) + 1, 0.0);
  sym[0] = 1.0;
  for (int j = 1; j <= s; ++j)
    for (int l = j; l >= 1; --l)
      sym[static_cast<std::size_t>(l)] +=
          t[static_cast<std::size_t>(j - 1)] * sym[static_cast<std::size_t>(l - 1)];
  double total = 0.0;
  for (int l = 0; l <= s; ++l)
    total += coeff[static_cast<std::size_t>(l)] * sym[static_cast<std::size_t>(l)];
  return total;
}

}  // namespace

double a_lambda_exact(const ALambdaInputs& in) {
  if (!(in.lambda > 0.5 && in.lambda <= 1.0))
    throw std::domain_error("A_lambda requires lambda in (1/2, 1]");
  const int s = static_cast<int>(in.b_tilde.size());
  if (static_cast<int>(in.gamma_template.size()) < s + 1)
    throw std::invalid_argument("order template must cover orders 0..s");
  if (in.schedule.dims() < s) throw std::invalid_argument("schedule shorter than b~ sequence");

  const double expo = 1.0 / (1.0 + in.lambda);
  const double r = rho(in.lambda);

  std::vector<double> t(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) {
    const double bt = in.b_tilde[static_cast<std::size_t>(j - 1)];
    t[static_cast<std::size_t>(j - 1)] =
        std::pow(r * std::pow(bt, 2.0 * in.lambda) *
                     static_cast<double>(ipow(in.base, in.schedule.at(j))),
                 expo);
  }
  std::vector<double> coeff(static_cast<std::size_t>(s) + 1);
  double w_product = 1.0;
  for (int l = 0; l <= s; ++l) {
    const double g = in.gamma_template[static_cast<std::size_t>(l)];
    coeff[static_cast<std::size_t>(l)] = std::pow(std::pow(g, 2.0 * in.lambda) / w_product, expo);
    if (l >= 1 && l < s) w_product *= static_cast<double>(ipow(in.base, in.schedule.at(l)));
  }
  const double value = order_grouped_sum(coeff, t);

  // dual route: sum_u gamma_u^{-1} Gamma(|u|)^2 prod b~_j^2 with the
  // synthesized weights; skipped when some b~_j vanishes (gamma_u = 0 there)
  bool positive = true;
  for (double bt : in.b_tilde) positive = positive && bt > 0.0;
  if (positive) {
    const PodWeights w =
        pod_weights_from_bounds(in.gamma_template, in.b_tilde, in.base, in.schedule, in.lambda);
    std::vector<double> td(static_cast<std::size_t>(s));
    for (int j = 1; j <= s; ++j) {
      const double bt = in.b_tilde[static_cast<std::size_t>(j - 1)];
      td[static_cast<std::size_t>(j - 1)] = bt * bt / w.product_factor(j);
    }
    std::vector<double> cd(static_cast<std::size_t>(s) + 1);
    for (int l = 0; l <= s; ++l) {
      const double g = in.gamma_template[static_cast<std::size_t>(l)];
      cd[static_cast<std::size_t>(l)] = g * g / w.order_factor(l);
    }
    const double dual = order_grouped_sum(cd, td);
    if (!(std::abs(dual - value) <= 1e-9 * std::max(std::abs(value), 1.0)))
      throw std::runtime_error("A_lambda dual-form cross-check failed: " +
                               std::to_string(value) + " vs " + std::to_string(dual));
  }
  return value;
}

ALambdaBound a_lambda_upper_bound(const BoundParams& params, std::span<const double> b_seq,
                                  std::int64_t base, const ReductionSchedule& schedule,
                                  double kappa) {
  if (!(params.p > 0.0 && params.p < 1.0))
    throw std::domain_error("sparsity p must lie in (0, 1)");
  if (!(params.lambda > 0.5 && params.lambda <= 1.0))
    throw std::domain_error("A_lambda bound requires lambda in (1/2, 1]");
  if (!(params.theta_scale > 0.0)) throw std::domain_error("theta must be positive");
  if (!(kappa >= 0.0 && kappa < 1.0)) throw std::domain_error("kappa must lie in [0, 1)");
  const int s = static_cast<int>(b_seq.size());
  if (schedule.dims() < s) throw std::invalid_argument("schedule shorter than b sequence");

  const double lambda = params.lambda;
  const double p = params.p;
  const double theta = params.theta_scale;

  std::vector<double> bw(static_cast<std::size_t>(s));  // b_j b^{w_j}
  double sigma = 0.0;                                   // Sigma = sum alpha_j
  for (int j = 1; j <= s; ++j) {
    bw[static_cast<std::size_t>(j - 1)] =
        b_seq[static_cast<std::size_t>(j - 1)] * static_cast<double>(ipow(base, schedule.at(j)));
    sigma += std::pow(bw[static_cast<std::size_t>(j - 1)], p) / theta;
  }

  const double L =
      kappa * std::pow(static_cast<double>(base), -0.5 * schedule.at(1)) / 2.0;
  ALambdaBound out;
  out.slack_ratio = 1.0 - L * sigma;
  out.slack_lambda = lambda - p / (2.0 - p);
  if (!(out.slack_ratio > 0.0))
    throw std::domain_error("admissibility condition violated: L * Sigma = " +
                            std::to_string(L * sigma) + " >= 1 (ratio-test condition)");
  if (out.slack_lambda < -1e-12)
    throw std::domain_error("admissibility condition violated: lambda = " +
                            std::to_string(lambda) + " below p/(2-p) = " +
                            std::to_string(p / (2.0 - p)) + " (summability condition)");

  // k-series: term_0 = 1, term_k = term_{k-1} * kappa * Sigma * b^{-w_{k-1}/2} / k,
  // with the schedule extended by its last index (non-decreasing, so the
  // extension only enlarges the terms).
  double series = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 1000; ++k) {
    double fold = 1.0;
    if (k >= 2)
      fold = std::pow(static_cast<double>(base),
                      -0.5 * schedule.at(std::min(k - 1, schedule.dims())));
    term *= kappa * sigma * fold / static_cast<double>(k);
    series += term;
    if (term < 1e-15 * series) break;
  }
  out.series = series;

  if (lambda == 1.0) {
    // Hoelder degenerates: the exponential factor tends to 1 when every
    // 4 rho(1) (theta (b_j b^{w_j})^{1-p})^2 / (1-kappa)^2 stays below 1,
    // and diverges otherwise.
    for (int j = 1; j <= s; ++j) {
      const double x = theta * std::pow(bw[static_cast<std::size_t>(j - 1)], 1.0 - p);
      const double q = 4.0 * rho(1.0) * x * x / ((1.0 - kappa) * (1.0 - kappa));
      if (q >= 1.0)
        throw std::domain_error(
            "admissibility condition violated at lambda = 1: exponential factor diverges "
            "for j = " + std::to_string(j));
    }
    out.exp_factor = 1.0;
  } else {
    // per-dimension base (4^lambda rho(lambda) / (1-kappa)^{2 lambda}) x^{2 lambda},
    // all raised to 1/(1-lambda)
    double tail = 0.0;
    const double common = std::pow(4.0, lambda) * rho(lambda) *
                          std::pow(1.0 - kappa, -2.0 * lambda);
    for (int j = 1; j <= s; ++j) {
      const double x = theta * std::pow(bw[static_cast<std::size_t>(j - 1)], 1.0 - p);
      tail += std::pow(common * std::pow(x, 2.0 * lambda), 1.0 / (1.0 - lambda));
    }
    out.exp_factor = std::exp((1.0 - lambda) / (1.0 + lambda) * tail);
  }

  out.value = std::pow(series, 2.0 * lambda / (1.0 + lambda)) * out.exp_factor;
  return out;
}

double truncation_bound(const TruncationConsts& c, double b_tail_sup) {
  if (!(c.a0_min > 0.0 && c.a0_max >= c.a0_min))
    throw std::domain_error("truncation bound needs 0 < a0_min <= a0_max");
  if (!(c.kappa_bar >= 0.0 && c.kappa_bar < 1.0 && c.kappa >= c.kappa_bar && c.kappa < 1.0))
    throw std::domain_error("truncation bound needs 0 <= kappa_bar <= kappa < 1");
  if (!(b_tail_sup >= 0.0)) throw std::domain_error("tail supremum must be nonnegative");

  const double base = (1.0 - c.kappa_bar) * c.a0_min;
  const double ratio = c.kappa * c.a0_max * b_tail_sup / base;
  if (!(ratio < 1.0))
    throw std::domain_error("truncation proviso violated: kappa a0_max sup b / ((1-kappa_bar) a0_min) = " +
                            std::to_string(ratio) + " >= 1");
  const double denom = base - c.a0_max * c.kappa * b_tail_sup;
  return c.G_norm * c.f_norm / denom * ratio * ratio;
}

double derivative_bound_rhs(double kappa_bar, double a0_min, double f_norm, int k,
                            double kappa_k) {
  if (k < 0) throw std::domain_error("derivative order must be nonnegative");
  if (!(kappa_bar >= 0.0 && kappa_bar < 1.0) || !(a0_min > 0.0))
    throw std::domain_error("derivative bound needs kappa_bar in [0,1) and a0_min > 0");
  return std::pow(2.0 * kappa_k / (1.0 - kappa_bar), static_cast<double>(k)) * f_norm /
         ((1.0 - kappa_bar) * a0_min);
}

namespace {

// sum_u Gamma(|u|)^2 prod_{j in u} b~_j^2 / gamma_u, order-grouped.
double norm_series(std::span<const double> gamma_template, std::span<const double> b_tilde,
                   const PodWeights& weights) {
  const int s = static_cast<int>(b_tilde.size());
  weights.require_dims(s);
  if (static_cast<int>(gamma_template.size()) < s + 1)
    throw std::invalid_argument("order template must cover orders 0..s");
  // vanishing template entries send their terms to zero faster than the
  // synthesized weights, so 0/0 resolves to 0 here
  std::vector<double> t(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) {
    const double bt = b_tilde[static_cast<std::size_t>(j - 1)];
    if (bt == 0.0) continue;
    const double g = weights.product_factor(j);
    if (!(g > 0.0))
      throw std::domain_error("norm series needs positive product weights");
    t[static_cast<std::size_t>(j - 1)] = bt * bt / g;
  }
  std::vector<double> coeff(static_cast<std::size_t>(s) + 1, 0.0);
  for (int l = 0; l <= s; ++l) {
    const double gt = gamma_template[static_cast<std::size_t>(l)];
    if (gt == 0.0) continue;
    const double gw = weights.order_factor(l);
    if (!(gw > 0.0)) throw std::domain_error("norm series needs positive order factors");
    coeff[static_cast<std::size_t>(l)] = gt * gt / gw;
  }
  return order_grouped_sum(coeff, t);
}

}  // namespace

double c_gamma_w_lambda(const GeneratingVector& gv, const PodWeights& weights,
                        std::span<const double> gamma_template,
                        std::span<const double> b_tilde, double lambda) {
  if (!(lambda > 0.5 && lambda <= 1.0))
    throw std::domain_error("C_{gamma,w,lambda} requires lambda in (1/2, 1]");
  const double series = weighted_error_series(gv, weights, rho(lambda), lambda);
  return std::pow(series, 1.0 / lambda) * norm_series(gamma_template, b_tilde, weights);
}

double functional_norm_bound(double C, double f_norm, double G_norm,
                             std::span<const double> gamma_template,
                             std::span<const double> b_tilde, const PodWeights& weights) {
  return C * f_norm * G_norm * std::sqrt(norm_series(gamma_template, b_tilde, weights));
}

}  // namespace qmclat
