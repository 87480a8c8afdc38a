#include "qmclat/cbc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qmclat/fold_fft.hpp"
#include "qmclat/instrument.hpp"
#include "qmclat/summation.hpp"

namespace qmclat {

ReductionSchedule::ReductionSchedule(std::vector<int> indices) : w(std::move(indices)) {
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] < 0) throw std::invalid_argument("reduction indices must be nonnegative");
    if (j > 0 && w[j] < w[j - 1])
      throw std::invalid_argument("reduction indices must be non-decreasing");
  }
}

int ReductionSchedule::s_star(int m) const {
  int count = 0;
  while (count < dims() && w[static_cast<std::size_t>(count)] < m) ++count;
  return count;
}

ReductionSchedule ReductionSchedule::from_rule(const std::string& rule, int s,
                                               std::int64_t base) {
  if (s < 0) throw std::invalid_argument("schedule size must be nonnegative");
  std::vector<int> w(static_cast<std::size_t>(s));
  if (rule.rfind("linear:", 0) == 0) {
    const int k = std::stoi(rule.substr(7));
    if (k < 1) throw std::invalid_argument("linear schedule needs a positive slope divisor");
    for (int j = 1; j <= s; ++j) w[static_cast<std::size_t>(j - 1)] = (j - 1) / k;
  } else if (rule == "log") {
    for (int j = 1; j <= s; ++j) {
      int e = 0;
      std::int64_t p = base;
      while (p <= j) {
        ++e;
        p *= base;
      }
      w[static_cast<std::size_t>(j - 1)] = e;
    }
  } else {
    std::stringstream ss(rule);
    std::string tok;
    std::vector<int> parsed;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) parsed.push_back(std::stoi(tok));
    if (static_cast<int>(parsed.size()) != s)
      throw std::invalid_argument("explicit schedule lists " + std::to_string(parsed.size()) +
                                  " indices, need " + std::to_string(s));
    w = std::move(parsed);
  }
  return ReductionSchedule(std::move(w));
}

GeneratingVector GeneratingVector::make(Modulus mod, ReductionSchedule schedule,
                                        std::vector<std::int64_t> z) {
  if (schedule.dims() != static_cast<int>(z.size()))
    throw std::invalid_argument("schedule and component counts differ");
  GeneratingVector gv{std::move(mod), std::move(schedule), std::move(z)};
  for (int j = 1; j <= gv.dims(); ++j) {
    const int wj = gv.schedule.at(j);
    const std::int64_t zj = gv.component(j);
    if (wj >= gv.mod.exponent) {
      if (zj != 0)
        throw std::invalid_argument("component " + std::to_string(j) +
                                    " must be 0 when w_j >= m");
    } else {
      const std::int64_t nj = ipow(gv.mod.base, gv.mod.exponent - wj);
      if (zj <= 0 || zj >= nj || zj % gv.mod.base == 0)
        throw std::invalid_argument("component " + std::to_string(j) +
                                    " is not a unit modulo b^{m-w_j}");
    }
  }
  return gv;
}

std::int64_t GeneratingVector::ztilde(int j) const {
  const int wj = schedule.at(j);
  if (wj >= mod.exponent) return 0;
  return ipow(mod.base, wj) * component(j);
}

void write_vector_file(std::ostream& out, const GeneratingVector& gv) {
  out << gv.mod.base << ' ' << gv.mod.exponent << ' ' << gv.dims() << '\n';
  for (int j = 1; j <= gv.dims(); ++j)
    out << j << ' ' << gv.schedule.at(j) << ' ' << gv.component(j) << ' ' << gv.ztilde(j)
        << '\n';
}

void write_vector_file(const std::string& path, const GeneratingVector& gv) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  write_vector_file(out, gv);
  if (!out) throw std::ios_base::failure("write to " + path + " failed");
}

GeneratingVector read_vector_file(std::istream& in) {
  std::int64_t b = 0;
  int m = 0, s = 0;
  if (!(in >> b >> m >> s) || s < 0)
    throw std::invalid_argument("vector file: malformed header");
  const Modulus mod = Modulus::make(b, m);
  std::vector<int> w(static_cast<std::size_t>(s));
  std::vector<std::int64_t> z(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) {
    int jj = 0, wj = 0;
    std::int64_t zj = 0, zt = 0;
    if (!(in >> jj >> wj >> zj >> zt))
      throw std::invalid_argument("vector file: truncated at line " + std::to_string(j + 1));
    if (jj != j) throw std::invalid_argument("vector file: dimensions out of order");
    w[static_cast<std::size_t>(j - 1)] = wj;
    z[static_cast<std::size_t>(j - 1)] = zj;
    const std::int64_t expect =
        (wj >= m) ? 0 : ipow(b, wj) * zj % mod.n;
    if (zt != expect)
      throw std::invalid_argument("vector file: ztilde_" + std::to_string(j) +
                                  " inconsistent with b^{w_j} z_j");
  }
  return GeneratingVector::make(mod, ReductionSchedule(std::move(w)), std::move(z));
}

GeneratingVector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_vector_file(in);
}

namespace {

// Both spaces evaluate through the Korobov kernel; the shift-averaged
// Sobolev space maps onto alpha = 2 with gamma_j / (2 pi^2).
struct Normalized {
  PodWeights weights;
  KernelSpec spec;
};

Normalized normalize_space(const PodWeights& weights, const KernelSpec& spec) {
  spec.validate();
  if (spec.sobolev())
    return {sobolev_to_korobov_weights(weights), KernelSpec{2, FunctionSpace::Korobov}};
  return {weights, spec};
}

std::vector<std::int64_t> scaled_components(const GeneratingVector& gv) {
  std::vector<std::int64_t> zt(static_cast<std::size_t>(gv.dims()));
  for (int j = 1; j <= gv.dims(); ++j) zt[static_cast<std::size_t>(j - 1)] = gv.ztilde(j);
  return zt;
}

// At alpha = 2 the kernel value at r/n is 2 pi^2 (6 r (r - n) + n^2) / (6 n^2)
// with an integer numerator, so a one-dimensional rule sums exactly; the
// closed-form anchors would otherwise drown in the cancellation of the
// kernel sum.
bool wce_single_dim_exact(const GeneratingVector& gv, const PodWeights& weights,
                          const KernelSpec& spec, double* out) {
  if (gv.dims() != 1 || spec.alpha != 2) return false;
  const std::int64_t n = gv.mod.n;
  if (n > 1000000) return false;
  const std::int64_t zt = gv.ztilde(1) % n;
  std::int64_t r = 0;
  std::int64_t numerator = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    numerator += 6 * r * (r - n) + n * n;
    r += zt;
    if (r >= n) r -= n;
  }
  const double pi = std::numbers::pi;
  const double nn = static_cast<double>(n);
  *out = weights.order_factor(1) * weights.product_factor(1) * 2.0 * pi * pi *
         static_cast<double>(numerator) / (6.0 * nn * nn * nn);
  return true;
}

}  // namespace

double wce_bruteforce(const GeneratingVector& gv, const PodWeights& weights_in,
                      const KernelSpec& spec_in, const BruteForceBudget& budget) {
  const auto [weights, spec] = normalize_space(weights_in, spec_in);
  const int s = gv.dims();
  weights.require_dims(s);
  if (s > 20) throw BudgetError("wce_bruteforce: subset enumeration limited to s <= 20");
  const std::int64_t n = gv.mod.n;
  const std::uint64_t terms = static_cast<std::uint64_t>(n) << s;
  if (terms > budget.max_terms)
    throw BudgetError("wce_bruteforce: N 2^s = " + std::to_string(terms) +
                      " exceeds the term budget");
  if (double exact = 0.0; wce_single_dim_exact(gv, weights, spec, &exact)) return exact;

  const auto table = omega_table(spec, n);
  const auto zt = scaled_components(gv);
  std::vector<std::int64_t> res(static_cast<std::size_t>(s), 0);
  std::vector<double> omega_k(static_cast<std::size_t>(s));
  const std::uint32_t masks = (s == 0) ? 1u : (1u << s);

  CompensatedSum total;
  for (std::int64_t k = 0; k < n; ++k) {
    for (int j = 0; j < s; ++j)
      omega_k[static_cast<std::size_t>(j)] = table[static_cast<std::size_t>(res[static_cast<std::size_t>(j)])];
    double inner = 0.0;
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
      double prod = weights.order_factor(std::popcount(mask));
      for (int j = 0; j < s; ++j)
        if (mask & (1u << j))
          prod *= weights.product_factor(j + 1) * omega_k[static_cast<std::size_t>(j)];
      inner += prod;
    }
    total.add(inner);
    for (int j = 0; j < s; ++j) {
      auto& r = res[static_cast<std::size_t>(j)];
      r += zt[static_cast<std::size_t>(j)];
      if (r >= n) r -= n;
    }
  }
  return total.value() / static_cast<double>(n);
}

double wce_fast(const GeneratingVector& gv, const PodWeights& weights_in,
                const KernelSpec& spec_in) {
  const auto [weights, spec] = normalize_space(weights_in, spec_in);
  const int s = gv.dims();
  weights.require_dims(s);
  if (s == 0) return 0.0;
  if (double exact = 0.0; wce_single_dim_exact(gv, weights, spec, &exact)) return exact;
  const std::int64_t n = gv.mod.n;

  const auto table = omega_table(spec, n);
  const auto zt = scaled_components(gv);
  std::vector<std::int64_t> res(static_cast<std::size_t>(s), 0);
  std::vector<double> p(static_cast<std::size_t>(s) + 1, 0.0);

  CompensatedSum total;
  for (std::int64_t k = 0; k < n; ++k) {
    p[0] = 1.0;
    std::fill(p.begin() + 1, p.end(), 0.0);
    for (int j = 1; j <= s; ++j) {
      const double wk = weights.product_factor(j) *
                        table[static_cast<std::size_t>(res[static_cast<std::size_t>(j - 1)])];
      for (int l = j; l >= 1; --l)
        p[static_cast<std::size_t>(l)] += weights.order_ratio(l) * wk * p[static_cast<std::size_t>(l - 1)];
    }
    double inner = 0.0;
    for (int l = 1; l <= s; ++l) inner += p[static_cast<std::size_t>(l)];
    total.add(inner);
    for (int j = 0; j < s; ++j) {
      auto& r = res[static_cast<std::size_t>(j)];
      r += zt[static_cast<std::size_t>(j)];
      if (r >= n) r -= n;
    }
  }
  return total.value() / static_cast<double>(n);
}

namespace {

// Exact candidate ties at step j. Scores of z and n-z always coincide (the
// kernel is symmetric). With exactly one active earlier dimension the folded
// state collapses, by the Bernoulli multiplication theorem, to
// a + b omega((k v mod n)/n), which additionally ties z with v^2 z^{-1}.
// With no surviving non-constant term every candidate ties. Both engines
// resolve these classes structurally, from the same integers, instead of
// comparing floating-point scores that are equal only in exact arithmetic.
struct StepTies {
  enum Kind { kAllTie, kFourClass, kHalfRange } kind = kHalfRange;
  std::int64_t v = 1;  // active component modulo n_j, kFourClass only
};

StepTies classify_step(const PodWeights& weights, std::span<const std::int64_t> z_prefix,
                       int j, std::int64_t nj) {
  int active = 0;
  int last_active = 0;
  for (int i = 1; i < j; ++i) {
    if (weights.product_factor(i) != 0.0) {
      ++active;
      last_active = i;
    }
  }
  bool nonconstant = false;
  for (int l = 2; l <= j; ++l) {
    if (weights.order_ratio(l) != 0.0 && l - 1 <= active) {
      nonconstant = true;
      break;
    }
  }
  if (!nonconstant) return {StepTies::kAllTie, 1};
  if (active == 1)
    return {StepTies::kFourClass, z_prefix[static_cast<std::size_t>(last_active - 1)] % nj};
  return {StepTies::kHalfRange, 1};
}

// True when z is the smallest member of its tie class.
bool canonical_candidate(std::int64_t z, std::int64_t nj, const StepTies& ties) {
  if (2 * z > nj) return false;
  if (ties.kind == StepTies::kFourClass) {
    const std::int64_t w =
        mul_mod(mul_mod(ties.v, ties.v, nj), inv_mod(z, nj), nj);
    if (std::min(w, nj - w) < z) return false;
  }
  return true;
}

void fold_state(std::vector<std::vector<double>>& q, std::int64_t base, int m, int& level,
                int target) {
  if (target == level) return;
  const FoldSpec spec = FoldSpec::make(base, m, level, target);
  for (auto& vec : q) vec = fold_and_sum(spec, vec);
  level = target;
}

}  // namespace

CbcResult reduced_cbc_fast(const Modulus& mod, const ReductionSchedule& schedule,
                           const PodWeights& weights_in, const KernelSpec& spec_in,
                           const CbcOptions& options) {
  const auto [weights, spec] = normalize_space(weights_in, spec_in);
  const int s = schedule.dims();
  weights.require_dims(s);

  const std::int64_t b = mod.base;
  const int shift = (options.normalize_w1 && s > 0)
                        ? std::min(schedule.at(1), mod.exponent)
                        : 0;
  const int m = mod.exponent - shift;
  const auto wa = [&](int j) { return schedule.at(j) - shift; };
  const int constructed = schedule.s_star(mod.exponent);

  // Peak q-state size: at step j there are j+2 vectors of length b^{m-w_j},
  // plus the unfolded initial state.
  {
    std::uint64_t peak = 2 * static_cast<std::uint64_t>(ipow(b, m));
    for (int j = 1; j <= constructed; ++j)
      peak = std::max(peak, (static_cast<std::uint64_t>(j) + 4) *
                                static_cast<std::uint64_t>(ipow(b, m - wa(j))));
    if (peak > options.max_state_doubles)
      throw BudgetError("reduced_cbc_fast: state of " + std::to_string(peak) +
                        " doubles exceeds the memory budget");
  }

  const double nn = static_cast<double>(ipow(b, m));
  std::vector<std::int64_t> z(static_cast<std::size_t>(s), 0);
  std::vector<double> e2(static_cast<std::size_t>(s), 0.0);

  std::vector<std::vector<double>> q;
  q.reserve(static_cast<std::size_t>(constructed) + 1);
  q.emplace_back(static_cast<std::size_t>(ipow(b, m)), 1.0);
  int level = 0;
  if (constructed >= 1) fold_state(q, b, m, level, wa(1));

  for (int j = 1; j <= constructed; ++j) {
    const Modulus modj = Modulus::make(b, m - wa(j));
    const std::int64_t nj = modj.n;
    const std::size_t len = static_cast<std::size_t>(nj);

    // weighted sum of the previous-order vectors
    std::vector<double> qbar(len, 0.0);
    for (int l = 1; l <= j; ++l) {
      const double r = weights.order_ratio(l);
      const auto& src = q[static_cast<std::size_t>(l - 1)];
      for (std::size_t k = 0; k < len; ++k) qbar[k] += r * src[k];
    }
    ops::mul(static_cast<std::uint64_t>(j) * len);
    ops::add(static_cast<std::uint64_t>(j) * len);

    std::int64_t zj = 1;
    const StepTies ties =
        classify_step(weights, std::span<const std::int64_t>(z.data(), z.size()), j, nj);
    if (ties.kind != StepTies::kAllTie) {
      const auto scores = omega_matvec(modj, spec, qbar);
      // ascending scan over class representatives = smallest-z tie break
      double best = std::numeric_limits<double>::infinity();
      std::size_t idx = 0;
      for (std::int64_t cand = 1; cand < nj; ++cand) {
        if (cand % b == 0) continue;
        if (canonical_candidate(cand, nj, ties) && scores[idx] < best) {
          best = scores[idx];
          zj = cand;
        }
        ++idx;
      }
    }
    z[static_cast<std::size_t>(j - 1)] = zj;

    // state update for the selected component
    const auto row = omega_row(spec, nj, zj);
    q.emplace_back(len, 0.0);
    const double gj = weights.product_factor(j);
    for (int l = j; l >= 1; --l) {
      const double c = weights.order_ratio(l) * gj;
      auto& dst = q[static_cast<std::size_t>(l)];
      const auto& src = q[static_cast<std::size_t>(l - 1)];
      for (std::size_t k = 0; k < len; ++k) dst[k] += c * row[k] * src[k];
    }
    ops::mul(2 * static_cast<std::uint64_t>(j) * len);
    ops::add(static_cast<std::uint64_t>(j) * len);

    CompensatedSum step_total;
    for (std::size_t k = 0; k < len; ++k) {
      double inner = 0.0;
      for (int l = 1; l <= j; ++l) inner += q[static_cast<std::size_t>(l)][k];
      step_total.add(inner);
    }
    ops::add(static_cast<std::uint64_t>(j) * len);
    e2[static_cast<std::size_t>(j - 1)] = step_total.value() / nn;

    if (options.observer) {
      CbcStepView view;
      view.j = j;
      view.level = level;
      view.m = m;
      view.base = b;
      view.sq_error = e2[static_cast<std::size_t>(j - 1)];
      view.q = std::span<const std::vector<double>>(q.data(), q.size());
      options.observer(view);
    }

    // fold-and-sum for the next step, performed before leaving this one
    if (j < constructed) fold_state(q, b, m, level, wa(j + 1));
  }

  // Dimensions past s* take component 0 and contribute omega(0) per k; the
  // aggregate recursion below reports their errors without touching the
  // instrumented construction cost.
  if (constructed < s) {
    const bool was = ops::enabled();
    ops::enable(false);
    const double omega0 = omega_at(spec, 0, 1);
    std::vector<double> agg(static_cast<std::size_t>(s) + 1, 0.0);
    for (const double v : q[0]) agg[0] += v;
    for (int l = 1; l <= constructed; ++l)
      for (const double v : q[static_cast<std::size_t>(l)]) agg[static_cast<std::size_t>(l)] += v;
    for (int j = constructed + 1; j <= s; ++j) {
      const double gj = weights.product_factor(j);
      for (int l = j; l >= 1; --l)
        agg[static_cast<std::size_t>(l)] +=
            weights.order_ratio(l) * gj * omega0 * agg[static_cast<std::size_t>(l - 1)];
      CompensatedSum sum;
      for (int l = 1; l <= j; ++l) sum.add(agg[static_cast<std::size_t>(l)]);
      e2[static_cast<std::size_t>(j - 1)] = sum.value() / nn;
    }
    ops::enable(was);
  }

  CbcResult result;
  result.vector = GeneratingVector::make(mod, schedule, std::move(z));
  result.step_sq_error = std::move(e2);
  result.w1_normalized = shift > 0;
  result.w1_shift = shift;
  return result;
}

CbcResult reduced_cbc_reference(const Modulus& mod, const ReductionSchedule& schedule,
                                const PodWeights& weights_in, const KernelSpec& spec_in,
                                const ReferenceBudget& budget) {
  const auto [weights, spec] = normalize_space(weights_in, spec_in);
  const int s = schedule.dims();
  weights.require_dims(s);
  const int constructed = schedule.s_star(mod.exponent);

  {
    std::uint64_t evals = 0;
    for (int j = 1; j <= constructed; ++j) {
      const std::int64_t nj = ipow(mod.base, mod.exponent - schedule.at(j));
      const std::uint64_t cands = static_cast<std::uint64_t>(totient(Modulus::make(mod.base, mod.exponent - schedule.at(j)))) / 2 + 1;
      evals += cands * static_cast<std::uint64_t>(mod.n) * static_cast<std::uint64_t>(j) *
               static_cast<std::uint64_t>(j);
      (void)nj;
    }
    if (evals > budget.max_evals)
      throw BudgetError("reduced_cbc_reference: exhaustive search exceeds the budget");
  }

  std::vector<std::int64_t> z;
  std::vector<double> e2(static_cast<std::size_t>(s), 0.0);
  std::vector<int> w_prefix;

  for (int j = 1; j <= s; ++j) {
    w_prefix.push_back(schedule.at(j));
    if (j <= constructed) {
      const std::int64_t nj = ipow(mod.base, mod.exponent - schedule.at(j));
      std::int64_t best_z = 1;
      const StepTies ties =
          classify_step(weights, std::span<const std::int64_t>(z.data(), z.size()), j, nj);
      if (ties.kind != StepTies::kAllTie) {
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t cand = 1; 2 * cand <= nj; ++cand) {
          if (cand % mod.base == 0) continue;
          if (!canonical_candidate(cand, nj, ties)) continue;
          auto trial = z;
          trial.push_back(cand);
          const auto gv = GeneratingVector::make(mod, ReductionSchedule(w_prefix), trial);
          const double score = wce_fast(gv, weights, spec);
          if (score < best) {
            best = score;
            best_z = cand;
          }
        }
      }
      z.push_back(best_z);
    } else {
      z.push_back(0);
    }
    const auto gv = GeneratingVector::make(mod, ReductionSchedule(w_prefix), z);
    e2[static_cast<std::size_t>(j - 1)] = wce_fast(gv, weights, spec);
  }

  CbcResult result;
  result.vector = GeneratingVector::make(mod, schedule, std::move(z));
  result.step_sq_error = std::move(e2);
  return result;
}

// Subsets keyed by their largest element M (w is non-decreasing, so
// max_{j in u} w_j = w_M); elementary symmetric polynomials carry the rest.
// The reduction factor here is b^{min{m, w_M}}. The weight-synthesis series
// uses the telescoped variant b^{sum_{j in u} w_j - sum_{l < |u|} w_l}, which
// dominates it but is not equal in general.
double weighted_error_series(const GeneratingVector& gv, const PodWeights& weights,
                             double kernel_const, double lambda) {
  const int s = gv.dims();
  weights.require_dims(s);
  const std::int64_t b = gv.mod.base;
  const int m = gv.mod.exponent;

  std::vector<double> gamma_pow(static_cast<std::size_t>(s) + 1);
  for (int l = 0; l <= s; ++l)
    gamma_pow[static_cast<std::size_t>(l)] = std::pow(weights.order_factor(l), lambda);
  std::vector<double> kc_pow(static_cast<std::size_t>(s) + 1, 1.0);
  for (int l = 1; l <= s; ++l)
    kc_pow[static_cast<std::size_t>(l)] = kc_pow[static_cast<std::size_t>(l - 1)] * kernel_const;

  std::vector<double> sym(static_cast<std::size_t>(s) + 1, 0.0);
  sym[0] = 1.0;  // elementary symmetric polynomials of gamma_i^lambda, i < M
  double total = 0.0;
  for (int M = 1; M <= s; ++M) {
    const double tM = std::pow(weights.product_factor(M), lambda);
    const double bf = std::pow(static_cast<double>(b),
                               static_cast<double>(std::min(m, gv.schedule.at(M))));
    double inner = 0.0;
    for (int l = 0; l < M; ++l)
      inner += gamma_pow[static_cast<std::size_t>(l + 1)] * kc_pow[static_cast<std::size_t>(l)] *
               sym[static_cast<std::size_t>(l)];
    total += kernel_const * tM * bf * inner;
    for (int l = M; l >= 1; --l)
      sym[static_cast<std::size_t>(l)] += tM * sym[static_cast<std::size_t>(l - 1)];
  }
  return total;
}

double korobov_wce_bound(const GeneratingVector& gv, const PodWeights& weights,
                         int alpha, double lambda) {
  KernelSpec spec{alpha, FunctionSpace::Korobov};
  spec.validate();
  if (!(lambda > 1.0 / alpha && lambda <= 1.0))
    throw std::domain_error("korobov_wce_bound requires lambda in (1/alpha, 1]");
  const double sum = weighted_error_series(gv, weights, 2.0 * zeta(alpha * lambda), lambda);
  const double factor = 2.0 / static_cast<double>(gv.mod.n);
  return std::pow(sum, 1.0 / lambda) * std::pow(factor, 1.0 / lambda);
}

double sobolev_rmse_bound(const GeneratingVector& gv, const PodWeights& weights,
                          double lambda) {
  if (!(lambda > 0.5 && lambda <= 1.0))
    throw std::domain_error("sobolev_rmse_bound requires lambda in (1/2, 1]");
  const double sum = weighted_error_series(gv, weights, rho(lambda), lambda);
  const double factor = 2.0 / static_cast<double>(gv.mod.n);
  return std::pow(sum, 0.5 / lambda) * std::pow(factor, 0.5 / lambda);
}

std::uint64_t predicted_cost(const Modulus& mod, const ReductionSchedule& schedule, int s) {
  const int limit = std::min(s, schedule.s_star(mod.exponent));
  std::uint64_t total = 0;
  for (int j = 1; j <= limit; ++j) {
    const int wj = schedule.at(j);
    total += static_cast<std::uint64_t>(mod.exponent - wj + j) *
             static_cast<std::uint64_t>(ipow(mod.base, mod.exponent - wj));
  }
  return total;
}

}  // namespace qmclat
