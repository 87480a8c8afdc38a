#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qmclat {

// Thrown by generator_ordering: the unit group of 2^m (m >= 3) is not
// cyclic, callers fall back to direct multiplication.
class NonCyclicGroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Prime-power modulus n = base^exponent. exponent == 0 is the degenerate
// one-point group Z_1 whose only unit is 0.
struct Modulus {
  std::int64_t base = 2;
  int exponent = 0;
  std::int64_t n = 1;

  // Validates primality of base and that base^exponent fits in 64 bits.
  static Modulus make(std::int64_t base, int exponent);
};

bool is_prime(std::int64_t n);
std::int64_t ipow(std::int64_t base, int exponent);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t mod);
std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t mod);
std::int64_t inv_mod(std::int64_t a, std::int64_t mod);  // a coprime to mod
std::vector<std::int64_t> distinct_prime_factors(std::int64_t n);

// Euler totient of base^exponent; 1 for exponent 0.
std::int64_t totient(const Modulus& mod);

// All units of Z_{b^m} in ascending order; {0} for m == 0.
std::vector<std::int64_t> unit_group(const Modulus& mod);

// Smallest primitive root of Z_{b^m}^x for odd prime b, m >= 1.
std::int64_t smallest_primitive_root(const Modulus& mod);

// Units ordered as g^0, g^1, ..., g^{phi-1} for the smallest primitive
// root g. A permutation of unit_group(mod).
std::vector<std::int64_t> generator_ordering(const Modulus& mod);

}  // namespace qmclat
