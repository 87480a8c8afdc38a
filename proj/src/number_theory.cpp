#include "qmclat/number_theory.hpp"

#include <limits>
#include <string>
#include <utility>

namespace qmclat {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::int64_t d = 5; d * d <= n; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

std::int64_t ipow(std::int64_t base, int exponent) {
  if (base < 1 || exponent < 0) throw std::invalid_argument("ipow: bad arguments");
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / base)
      throw std::invalid_argument("ipow: " + std::to_string(base) + "^" +
                                  std::to_string(exponent) + " exceeds the 64-bit range");
    r *= base;
  }
  return r;
}

Modulus Modulus::make(std::int64_t base, int exponent) {
  if (!is_prime(base))
    throw std::invalid_argument("modulus base must be prime, got " + std::to_string(base));
  if (exponent < 0) throw std::invalid_argument("modulus exponent must be nonnegative");
  return Modulus{base, exponent, ipow(base, exponent)};
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t mod) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % mod);
}

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t mod) {
  if (mod == 1) return 0;
  std::int64_t r = 1;
  a %= mod;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, mod);
    a = mul_mod(a, a, mod);
    e >>= 1;
  }
  return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t mod) {
  if (mod == 1) return 0;
  std::int64_t r0 = mod, r1 = ((a % mod) + mod) % mod;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1) throw std::invalid_argument("inv_mod: argument not invertible");
  return ((t0 % mod) + mod) % mod;
}

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::int64_t totient(const Modulus& mod) {
  if (mod.exponent == 0) return 1;
  std::int64_t t = mod.base - 1;
  for (int i = 1; i < mod.exponent; ++i) t *= mod.base;
  return t;
}

std::vector<std::int64_t> unit_group(const Modulus& mod) {
  if (mod.exponent == 0) return {0};
  std::vector<std::int64_t> units;
  units.reserve(static_cast<std::size_t>(totient(mod)));
  for (std::int64_t z = 1; z < mod.n; ++z)
    if (z % mod.base != 0) units.push_back(z);
  return units;
}

std::int64_t smallest_primitive_root(const Modulus& mod) {
  if (mod.base == 2)
    throw NonCyclicGroupError("unit group of 2^m is not cyclic; no generator ordering");
  if (mod.exponent < 1)
    throw std::invalid_argument("generator ordering needs exponent >= 1");
  const std::int64_t phi = totient(mod);
  const auto factors = distinct_prime_factors(phi);
  for (std::int64_t g = 2; g < mod.n; ++g) {
    if (g % mod.base == 0) continue;
    bool primitive = true;
    for (std::int64_t p : factors) {
      if (pow_mod(g, phi / p, mod.n) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw std::logic_error("no primitive root below the modulus");  // cannot happen for odd prime powers
}

std::vector<std::int64_t> generator_ordering(const Modulus& mod) {
  const std::int64_t g = smallest_primitive_root(mod);
  const std::int64_t phi = totient(mod);
  std::vector<std::int64_t> order(static_cast<std::size_t>(phi));
  std::int64_t x = 1 % mod.n;
  for (std::int64_t i = 0; i < phi; ++i) {
    order[static_cast<std::size_t>(i)] = x;
    x = mul_mod(x, g, mod.n);
  }
  return order;
}

}  // namespace qmclat
