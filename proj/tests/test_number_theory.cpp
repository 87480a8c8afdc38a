#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "qmclat/number_theory.hpp"

using namespace qmclat;

TEST_CASE("modulus validation") {
  CHECK(Modulus::make(3, 3).n == 27);
  CHECK(Modulus::make(2, 0).n == 1);
  CHECK_THROWS_AS(Modulus::make(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::make(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::make(3, -1), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::make(3, 63), std::invalid_argument);  // 3^63 overflows
}

TEST_CASE("totient") {
  CHECK(totient(Modulus::make(3, 3)) == 18);
  CHECK(totient(Modulus::make(2, 1)) == 1);
  CHECK(totient(Modulus::make(5, 0)) == 1);
  CHECK(totient(Modulus::make(7, 2)) == 42);
}

TEST_CASE("unit group") {
  CHECK(unit_group(Modulus::make(2, 3)) == std::vector<std::int64_t>{1, 3, 5, 7});
  CHECK(unit_group(Modulus::make(3, 2)) == std::vector<std::int64_t>{1, 2, 4, 5, 7, 8});
  CHECK(unit_group(Modulus::make(7, 0)) == std::vector<std::int64_t>{0});
}

TEST_CASE("unit group size matches totient") {
  for (std::int64_t b : {2, 3, 5, 7, 11, 13}) {
    for (int m = 0; m <= 4; ++m) {
      const Modulus mod = Modulus::make(b, m);
      if (mod.n > 1000000) break;
      CHECK(static_cast<std::int64_t>(unit_group(mod).size()) == totient(mod));
    }
  }
}

TEST_CASE("generator ordering examples") {
  CHECK(generator_ordering(Modulus::make(3, 1)) == std::vector<std::int64_t>{1, 2});
  CHECK(generator_ordering(Modulus::make(5, 1)) == std::vector<std::int64_t>{1, 2, 4, 3});

  // powers of 2 modulo 9, checked against an independent enumeration
  std::vector<std::int64_t> powers;
  std::int64_t x = 1;
  for (int i = 0; i < 6; ++i) {
    powers.push_back(x);
    x = (x * 2) % 9;
  }
  CHECK(generator_ordering(Modulus::make(3, 2)) == powers);
  CHECK(powers == std::vector<std::int64_t>{1, 2, 4, 8, 7, 5});
}

TEST_CASE("generator ordering rejects base 2") {
  CHECK_THROWS_AS(generator_ordering(Modulus::make(2, 3)), NonCyclicGroupError);
  CHECK_THROWS_AS(generator_ordering(Modulus::make(2, 1)), NonCyclicGroupError);
}

TEST_CASE("generator ordering permutes the unit group") {
  for (std::int64_t b : {3, 5, 7, 11, 13, 101}) {
    for (int m = 1; m <= 12; ++m) {
      std::int64_t n = 1;
      bool fits = true;
      for (int i = 0; i < m; ++i) {
        n *= b;
        if (n > 1000000) {
          fits = false;
          break;
        }
      }
      if (!fits) break;
      const Modulus mod = Modulus::make(b, m);
      auto order = generator_ordering(mod);
      std::sort(order.begin(), order.end());
      CHECK(order == unit_group(mod));
    }
  }
}

TEST_CASE("pow_mod and mul_mod") {
  CHECK(pow_mod(2, 10, 1000) == 24);
  CHECK(pow_mod(7, 0, 13) == 1);
  CHECK(pow_mod(5, 3, 1) == 0);
  CHECK(mul_mod(123456789012345, 987654321098765, 1000000007) ==
        (static_cast<__int128>(123456789012345) * 987654321098765) % 1000000007);
}

TEST_CASE("distinct prime factors") {
  CHECK(distinct_prime_factors(18) == std::vector<std::int64_t>{2, 3});
  CHECK(distinct_prime_factors(97) == std::vector<std::int64_t>{97});
  CHECK(distinct_prime_factors(360) == std::vector<std::int64_t>{2, 3, 5});
}
