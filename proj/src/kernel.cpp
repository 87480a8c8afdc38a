#include "qmclat/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmclat/instrument.hpp"
#include "qmclat/summation.hpp"

namespace qmclat {

namespace {

constexpr double kPi = std::numbers::pi;

// B_alpha(x) through t = x(x-1): B2 = t + 1/6, B4 = t^2 - 1/30,
// B6 = t^2 (t - 1/2) + 1/42.
double bernoulli_even(int alpha, double t) {
  switch (alpha) {
    case 2: return t + 1.0 / 6.0;
    case 4: return t * t - 1.0 / 30.0;
    case 6: return t * t * (t - 0.5) + 1.0 / 42.0;
    default: throw std::invalid_argument("unsupported kernel smoothness");
  }
}

// (-1)^{alpha/2+1} (2 pi)^alpha / alpha!
double omega_scale(int alpha) {
  switch (alpha) {
    case 2: return 2.0 * kPi * kPi;
    case 4: return -(2.0 / 3.0) * kPi * kPi * kPi * kPi;
    case 6: {
      const double pi2 = kPi * kPi;
      return (4.0 / 45.0) * pi2 * pi2 * pi2;
    }
    default: throw std::invalid_argument("unsupported kernel smoothness");
  }
}

double omega_canonical(int alpha, double x) {
  if (x > 0.5) x = 1.0 - x;  // exact for x in (0.5, 1); makes the symmetry bitwise
  return omega_scale(alpha) * bernoulli_even(alpha, x * (x - 1.0));
}

}  // namespace

void KernelSpec::validate() const {
  if (alpha != 2 && alpha != 4 && alpha != 6)
    throw std::invalid_argument("kernel smoothness alpha must be one of 2, 4, 6");
  if (space == FunctionSpace::ShiftAveragedSobolev && alpha != 2)
    throw std::invalid_argument("shift-averaged Sobolev kernel requires alpha = 2");
}

double omega(const KernelSpec& spec, double x) {
  spec.validate();
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("omega argument must lie in [0, 1)");
  return omega_canonical(spec.alpha, x);
}

double omega_at(const KernelSpec& spec, std::int64_t r, std::int64_t n) {
  spec.validate();
  if (n < 1 || r < 0 || r >= n) throw std::domain_error("omega_at: residue out of range");
  if (2 * r > n) r = n - r;
  return omega_scale(spec.alpha) *
         bernoulli_even(spec.alpha, (static_cast<double>(r) / static_cast<double>(n)) *
                                        (static_cast<double>(r) / static_cast<double>(n) - 1.0));
}

std::vector<double> omega_table(const KernelSpec& spec, std::int64_t n) {
  spec.validate();
  if (n < 1) throw std::domain_error("omega_table: empty modulus");
  const double scale = omega_scale(spec.alpha);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> table(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r <= n / 2; ++r) {
    const double x = static_cast<double>(r) * inv_n;
    const double v = scale * bernoulli_even(spec.alpha, x * (x - 1.0));
    table[static_cast<std::size_t>(r)] = v;
    if (r > 0 && r < n - r) table[static_cast<std::size_t>(n - r)] = v;
  }
  ops::mul(static_cast<std::uint64_t>(n) * 3);
  ops::add(static_cast<std::uint64_t>(n) * 2);
  return table;
}

std::vector<double> omega_row(const KernelSpec& spec, std::int64_t n, std::int64_t z) {
  const auto table = omega_table(spec, n);
  std::vector<double> row(static_cast<std::size_t>(n));
  std::int64_t r = 0;
  z = ((z % n) + n) % n;
  for (std::int64_t k = 0; k < n; ++k) {
    row[static_cast<std::size_t>(k)] = table[static_cast<std::size_t>(r)];
    r += z;
    if (r >= n) r -= n;
  }
  return row;
}

double zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta requires s > 1");

  // Euler-Maclaurin: direct sum to N, integral tail, and ten B_{2i} corrections.
  constexpr int kCutoff = 32;
  static const double kB2[10] = {
      1.0 / 6.0,    -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,      5.0 / 66.0,
      -691.0 / 2730.0, 7.0 / 6.0,    -3617.0 / 510.0, 43867.0 / 798.0,  -174611.0 / 330.0};

  CompensatedSum acc;
  for (int k = 1; k <= kCutoff; ++k) acc.add(std::pow(static_cast<double>(k), -s));
  const double nn = static_cast<double>(kCutoff);
  acc.add(std::pow(nn, 1.0 - s) / (s - 1.0));
  acc.add(-0.5 * std::pow(nn, -s));

  double pochhammer = 1.0;     // s (s+1) ... (s + 2i - 2)
  double factorial = 1.0;      // (2i)!
  double power = std::pow(nn, -s - 1.0);  // N^{-s-2i+1}
  for (int i = 1; i <= 10; ++i) {
    if (i == 1) {
      pochhammer = s;
      factorial = 2.0;
    } else {
      pochhammer *= (s + 2.0 * i - 3.0) * (s + 2.0 * i - 2.0);
      factorial *= (2.0 * i - 1.0) * (2.0 * i);
      power /= nn * nn;
    }
    acc.add(kB2[i - 1] / factorial * pochhammer * power);
  }
  return acc.value();
}

double rho(double lambda) {
  if (!(lambda > 0.5 && lambda <= 1.0))
    throw std::domain_error("rho requires lambda in (1/2, 1]");
  return 2.0 * zeta(2.0 * lambda) * std::pow(2.0 * kPi * kPi, -lambda);
}

PodWeights sobolev_to_korobov_weights(const PodWeights& weights) {
  PodWeights mapped = weights;
  const double scale = 1.0 / (2.0 * kPi * kPi);
  for (double& g : mapped.product_factors) g *= scale;
  return mapped;
}

}  // namespace qmclat
