#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qmclat/kernel.hpp"

using namespace qmclat;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("omega closed-form anchors at alpha = 2") {
  const KernelSpec spec{2, FunctionSpace::Korobov};
  CHECK(omega(spec, 0.0) == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-15));
  CHECK(omega(spec, 0.0) == doctest::Approx(2.0 * zeta(2.0)).epsilon(1e-14));
  CHECK(omega(spec, 0.5) == doctest::Approx(-kPi * kPi / 6.0).epsilon(1e-15));
}

TEST_CASE("omega equals 2 zeta(alpha) at zero for every smoothness") {
  for (int alpha : {2, 4, 6}) {
    const KernelSpec spec{alpha, FunctionSpace::Korobov};
    CHECK(omega(spec, 0.0) ==
          doctest::Approx(2.0 * zeta(static_cast<double>(alpha))).epsilon(1e-13));
  }
}

TEST_CASE("omega symmetry") {
  const KernelSpec spec{2, FunctionSpace::Korobov};
  CHECK(omega(spec, 1.0 / 3.0) == doctest::Approx(omega(spec, 2.0 / 3.0)).epsilon(1e-14));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int alpha : {2, 4, 6}) {
    const KernelSpec sp{alpha, FunctionSpace::Korobov};
    for (int i = 0; i < 200; ++i) {
      const double x = uni(rng);
      CHECK(omega(sp, x) == doctest::Approx(omega(sp, 1.0 - x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("residue symmetry is bitwise") {
  // the evaluators index omega by integer residues, where the complement
  // folds exactly
  for (int alpha : {2, 4, 6}) {
    const KernelSpec sp{alpha, FunctionSpace::Korobov};
    for (std::int64_t n : {3, 9, 16, 125, 343}) {
      const auto table = omega_table(sp, n);
      for (std::int64_t r = 1; r < n; ++r)
        CHECK(table[static_cast<std::size_t>(r)] ==
              table[static_cast<std::size_t>(n - r)]);
    }
  }
}

TEST_CASE("omega validates input") {
  CHECK_THROWS_AS(omega(KernelSpec{3, FunctionSpace::Korobov}, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(omega(KernelSpec{2, FunctionSpace::Korobov}, 1.0), std::domain_error);
  CHECK_THROWS_AS(omega(KernelSpec{2, FunctionSpace::Korobov}, -0.1), std::domain_error);
  CHECK_THROWS_AS((KernelSpec{4, FunctionSpace::ShiftAveragedSobolev}).validate(),
                  std::invalid_argument);
}

TEST_CASE("riemann sum of omega has the closed B2 value") {
  const KernelSpec spec{2, FunctionSpace::Korobov};
  for (std::int64_t n : {8, 16, 27, 125}) {
    const auto table = omega_table(spec, n);
    double acc = 0.0;
    for (double v : table) acc += v;
    acc /= static_cast<double>(n);
    const double expected = kPi * kPi / (3.0 * static_cast<double>(n) * static_cast<double>(n));
    CHECK(acc == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("omega_row walks the residues") {
  const KernelSpec spec{2, FunctionSpace::Korobov};
  const auto row = omega_row(spec, 9, 2);
  for (std::int64_t k = 0; k < 9; ++k)
    CHECK(row[static_cast<std::size_t>(k)] == omega_at(spec, (2 * k) % 9, 9));
}

TEST_CASE("zeta closed forms") {
  CHECK(std::abs(zeta(2.0) - kPi * kPi / 6.0) < 1e-12);
  CHECK(std::abs(zeta(4.0) - std::pow(kPi, 4) / 90.0) < 1e-12);
  CHECK(std::abs(zeta(6.0) - std::pow(kPi, 6) / 945.0) < 1e-12);
}

TEST_CASE("zeta(1.5) against the direct-summation oracle") {
  // 10^7 terms plus the integral tail, sandwiched between the two integral
  // bounds; the midpoint carries an error below K^{-3/2}/2.
  const std::int64_t K = 10000000;
  double sum = 0.0;
  for (std::int64_t k = K; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    sum += 1.0 / (kd * std::sqrt(kd));
  }
  const double tail_hi = 2.0 / std::sqrt(static_cast<double>(K));
  const double tail_lo = 2.0 / std::sqrt(static_cast<double>(K + 1));
  const double oracle = sum + 0.5 * (tail_hi + tail_lo);
  CHECK(std::abs(zeta(1.5) - oracle) < 1e-9);
  CHECK(zeta(1.5) == doctest::Approx(2.612375348685488).epsilon(1e-12));
}

TEST_CASE("zeta domain and monotonicity") {
  CHECK_THROWS_AS(zeta(1.0), std::domain_error);
  CHECK_THROWS_AS(zeta(0.5), std::domain_error);
  double prev = zeta(1.01);
  for (double s : {1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0}) {
    const double cur = zeta(s);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(std::abs(zeta(40.0) - 1.0) < 1e-11);
}

TEST_CASE("rho values") {
  CHECK(rho(1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(rho(0.75) ==
        doctest::Approx(2.0 * zeta(1.5) * std::pow(2.0 * kPi * kPi, -0.75)).epsilon(1e-14));
  CHECK(rho(0.51) > 0.0);
  CHECK(std::isfinite(rho(0.51)));
  CHECK_THROWS_AS(rho(0.5), std::domain_error);
  CHECK_THROWS_AS(rho(1.1), std::domain_error);
}

TEST_CASE("sobolev weight mapping") {
  const double two_pi_sq = 2.0 * kPi * kPi;
  PodWeights w({1.0, 1.0, 1.0}, {two_pi_sq, two_pi_sq});
  const auto mapped = sobolev_to_korobov_weights(w);
  CHECK(mapped.product_factor(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mapped.product_factor(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mapped.order_factor(2) == 1.0);

  PodWeights single({1.0, 1.0}, {1.0});
  CHECK(sobolev_to_korobov_weights(single).product_factor(1) ==
        doctest::Approx(1.0 / two_pi_sq).epsilon(1e-15));
}

TEST_CASE("pod weights bookkeeping") {
  PodWeights w({1.0, 2.0, 6.0}, {0.5, 0.25});
  CHECK(w.order_ratio(1) == 2.0);
  CHECK(w.order_ratio(2) == 3.0);
  CHECK(w.order_factor(0) == 1.0);
  CHECK_THROWS_AS(w.order_factor(3), std::out_of_range);
  CHECK_THROWS_AS(w.product_factor(3), std::out_of_range);
  CHECK_THROWS_AS(PodWeights({2.0, 1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PodWeights({1.0, 0.0, 3.0}, {1.0, 1.0}), std::invalid_argument);

  // truncated order weights keep zero blocks zero
  PodWeights trunc({1.0, 1.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
  CHECK(trunc.order_ratio(2) == 0.0);
  CHECK(trunc.order_ratio(3) == 0.0);

  const auto ratios = PodWeights::from_order_ratios({0.5, 0.25}, {1.0, 1.0});
  CHECK(ratios.order_factor(2) == doctest::Approx(0.125));
  const auto prod = PodWeights::product_only({1.0, 2.0, 3.0});
  CHECK(prod.order_factor(3) == 1.0);
}
