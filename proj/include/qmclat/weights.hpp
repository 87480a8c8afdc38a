#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmclat/cbc.hpp"
#include "qmclat/pod_weights.hpp"
#include "qmclat/random_field.hpp"

namespace qmclat {

class InadmissibleFieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Admissibility constants of a random field, all suprema taken over a
// uniform grid (endpoints included):
//   kappa_bar = sup_x sum_j |psi_j| / (2 a0)       (must be < 1)
//   kappa     = sup_x sum_j |psi_j| / b_j / (2 a0) (must be < 1)
//   kappa_of_order[k-1] approximates sup over supports of size k.
struct KappaReport {
  double kappa_bar = 0.0;
  double kappa = 0.0;
  std::vector<double> kappa_of_order;
  double tail_error = 0.0;          // truncation slack of the psi series
  double kappa_of_order_gap = 0.0;  // greedy minus prefix value at k = s_max
  double a0_min = 0.0;
  double a0_max = 0.0;
};

KappaReport compute_kappas(const RandomField& field, int grid_size);

// Order-factor template Gamma(0..s): kappa^l by default, the sharper
// kappa(l)^l variant behind the flag.
std::vector<double> kappa_gamma_template(const KappaReport& report, int s,
                                         bool order_dependent = false);

// POD weights minimizing the quadrature constant for derivative bounds of
// the form C b~^nu Gamma(|nu|) ||f||:
//   order factor  (Gamma(l)^2 prod_{i<l} b^{w_i})^{1/(1+lambda)}
//   product factor (b~_j^2 / (rho(lambda) b^{w_j}))^{1/(1+lambda)}
PodWeights pod_weights_from_bounds(std::span<const double> gamma_template,
                                   std::span<const double> b_tilde, std::int64_t base,
                                   const ReductionSchedule& schedule, double lambda);

// Two-branch rule for the Hoelder exponent from the sparsity p:
// 1/(2-2 delta) on (0, 2/3], p/(2-p) on (2/3, 1).
double choose_lambda(double p, double delta);

struct ALambdaInputs {
  std::vector<double> gamma_template;  // Gamma(0..s)
  std::vector<double> b_tilde;         // b~_1..b~_s
  std::int64_t base = 2;
  ReductionSchedule schedule;
  double lambda = 1.0;
};

// A_lambda = sum_u [ Gamma(|u|)^{2 lambda} / prod_{l<|u|} b^{w_l}
//                    * prod_{j in u} rho(lambda) b~_j^{2 lambda} b^{w_j} ]^{1/(1+lambda)},
// evaluated by an order-grouped recursion and cross-checked against the dual
// form sum_u gamma_u^{-1} Gamma(|u|)^2 prod b~_j^2.
double a_lambda_exact(const ALambdaInputs& in);

struct BoundParams {
  double p = 0.5;            // sparsity exponent in (0,1)
  double delta = 0.25;       // lambda-rule parameter in (0,1/2)
  double theta_scale = 1.0;  // theta in alpha_j = (b_j b^{w_j})^p / theta
  double lambda = 1.0;
  double C = 1.0;  // derivative-bound constant
  double f_norm = 1.0;
  double G_norm = 1.0;
};

struct ALambdaBound {
  double value = 0.0;
  double series = 0.0;      // k-series factor before its exponent
  double exp_factor = 0.0;  // exponential factor
  double slack_ratio = 0.0;   // 1 - L * Sigma, positive when admissible
  double slack_lambda = 0.0;  // lambda - p/(2-p), nonnegative when admissible
};

// Closed upper bound on A_lambda with alpha_j = (b_j b^{w_j})^p / theta;
// throws std::domain_error naming the violated admissibility condition.
ALambdaBound a_lambda_upper_bound(const BoundParams& params, std::span<const double> b_seq,
                                  std::int64_t base, const ReductionSchedule& schedule,
                                  double kappa);

struct TruncationConsts {
  double a0_min = 1.0;
  double a0_max = 1.0;
  double kappa_bar = 0.0;
  double kappa = 0.0;
  double G_norm = 1.0;
  double f_norm = 1.0;
};

// Dimension-truncation bound
//   ||G|| ||f|| / ((1-kb) a0min - a0max k tau) * (a0max k tau / ((1-kb) a0min))^2
// with tau = sup_{j >= s+1} b_j; throws when the proviso fails.
double truncation_bound(const TruncationConsts& consts, double b_tail_sup);

// Scalar factor (2 kappa(k) / (1-kappa_bar))^k ||f|| / ((1-kappa_bar) a0min).
double derivative_bound_rhs(double kappa_bar, double a0_min, double f_norm, int k,
                            double kappa_k);

// Quadrature constant C_{gamma,w,lambda}: the product of the weighted error
// series (with b^{min{m, max w}}) and the norm series sum_u Gamma^2 prod b~^2 / gamma_u.
double c_gamma_w_lambda(const GeneratingVector& gv, const PodWeights& weights,
                        std::span<const double> gamma_template,
                        std::span<const double> b_tilde, double lambda);

// Integrand-norm surrogate C ||f|| ||G|| (sum_u Gamma(|u|)^2 prod b~_j^2 / gamma_u)^{1/2}.
double functional_norm_bound(double C, double f_norm, double G_norm,
                             std::span<const double> gamma_template,
                             std::span<const double> b_tilde, const PodWeights& weights);

}  // namespace qmclat
