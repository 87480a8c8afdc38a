#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmclat/kernel.hpp"
#include "qmclat/number_theory.hpp"
#include "qmclat/pod_weights.hpp"

namespace qmclat {

// Raised when an operation would exceed its configured work or memory budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-decreasing reduction indices w_1 <= ... <= w_s.
struct ReductionSchedule {
  std::vector<int> w;

  ReductionSchedule() = default;
  explicit ReductionSchedule(std::vector<int> indices);

  int dims() const { return static_cast<int>(w.size()); }
  int at(int j) const { return w[static_cast<std::size_t>(j - 1)]; }  // 1-based
  // Number of leading indices with w_j < m (the constructed dimensions).
  int s_star(int m) const;

  // "linear:k" -> w_j = floor((j-1)/k), "log" -> w_j = floor(log_b j),
  // otherwise a comma-separated explicit list.
  static ReductionSchedule from_rule(const std::string& rule, int s, std::int64_t base);
};

// Rank-1 lattice generating vector in reduced form: component j lives in
// Z_{b^{m-w_j}}^x and enters the rule as ztilde_j = b^{w_j} z_j.
struct GeneratingVector {
  Modulus mod;
  ReductionSchedule schedule;
  std::vector<std::int64_t> z;

  static GeneratingVector make(Modulus mod, ReductionSchedule schedule,
                               std::vector<std::int64_t> z);

  int dims() const { return static_cast<int>(z.size()); }
  std::int64_t component(int j) const { return z[static_cast<std::size_t>(j - 1)]; }
  std::int64_t ztilde(int j) const;
};

// Line-oriented text format: "b m s" then one "j w_j z_j ztilde_j" per line.
void write_vector_file(std::ostream& out, const GeneratingVector& gv);
void write_vector_file(const std::string& path, const GeneratingVector& gv);
GeneratingVector read_vector_file(std::istream& in);
GeneratingVector read_vector_file(const std::string& path);

struct BruteForceBudget {
  std::uint64_t max_terms = std::uint64_t(1) << 28;  // N * 2^s
};

// Literal triple sum over k, nonempty subsets u and their weights; the
// independent oracle for the recursive evaluator. Requires s <= 20.
double wce_bruteforce(const GeneratingVector& gv, const PodWeights& weights,
                      const KernelSpec& spec, const BruteForceBudget& budget = {});

// Same value through the per-k order recursion, O(N s^2).
double wce_fast(const GeneratingVector& gv, const PodWeights& weights,
                const KernelSpec& spec);

// Observer hook into the fast construction state (used by tests to check the
// fold-level identity of the q-vectors).
struct CbcStepView {
  int j = 0;              // dimension just finished (1-based)
  int level = 0;          // current fold level w
  int m = 0;              // adjusted exponent
  std::int64_t base = 0;
  double sq_error = 0.0;
  std::span<const std::vector<double>> q;  // q[l], l = 0..j
};

struct CbcOptions {
  bool normalize_w1 = true;  // shift the whole schedule so that w_1 = 0
  std::uint64_t max_state_doubles = std::uint64_t(1) << 28;
  std::function<void(const CbcStepView&)> observer;
};

struct CbcResult {
  GeneratingVector vector;
  std::vector<double> step_sq_error;  // e^2 after each dimension 1..s
  bool w1_normalized = false;
  int w1_shift = 0;
};

// Fast reduced CBC construction for POD weights: fold-and-sum state vectors,
// one block-circulant matvec per constructed dimension, smallest-z tie break.
CbcResult reduced_cbc_fast(const Modulus& mod, const ReductionSchedule& schedule,
                           const PodWeights& weights, const KernelSpec& spec,
                           const CbcOptions& options = {});

struct ReferenceBudget {
  std::uint64_t max_evals = std::uint64_t(1) << 36;  // candidate evaluations * N * s^2
};

// Reference construction: exhaustive candidate evaluation via wce_fast.
// Selections agree with reduced_cbc_fast exactly; used as the oracle.
CbcResult reduced_cbc_reference(const Modulus& mod, const ReductionSchedule& schedule,
                                const PodWeights& weights, const KernelSpec& spec,
                                const ReferenceBudget& budget = {});

// Order-grouped evaluation of
//   sum_{empty != u} gamma_u^lambda c^{|u|} b^{min{m, max_{j in u} w_j}}
// keyed by the largest element of u; exact, no subset enumeration.
double weighted_error_series(const GeneratingVector& gv, const PodWeights& weights,
                             double kernel_const, double lambda);

// Upper bound on the squared worst-case error of a vector produced by the
// reduced construction in the Korobov space, lambda in (1/alpha, 1]:
//   (sum_{u != 0} gamma_u^lambda (2 zeta(alpha lambda))^{|u|}
//        b^{min{m, max_{j in u} w_j}})^{1/lambda} (2/N)^{1/lambda}.
// Subsets are grouped by their largest element, so no enumeration is needed.
double korobov_wce_bound(const GeneratingVector& gv, const PodWeights& weights,
                         int alpha, double lambda);

// Shift-averaged RMSE factor in the unanchored Sobolev space (excludes the
// norm of the integrand), lambda in (1/2, 1]; uses rho(lambda) in place of
// 2 zeta(2 lambda) and exponent 1/(2 lambda).
double sobolev_rmse_bound(const GeneratingVector& gv, const PodWeights& weights,
                          double lambda);

// Cost model Sum_{j <= min(s, s*)} (m - w_j + j) b^{m - w_j} used by the
// instrumented construction benchmarks.
std::uint64_t predicted_cost(const Modulus& mod, const ReductionSchedule& schedule, int s);

}  // namespace qmclat
