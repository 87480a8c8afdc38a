#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qmclat/kernel.hpp"
#include "qmclat/number_theory.hpp"

namespace qmclat {

// Fold-and-sum operator P^m_{w'',w'}: splits a length b^{m-w'} vector into
// b^{w''-w'} blocks of length b^{m-w''} and sums them.
struct FoldSpec {
  std::int64_t base = 2;
  int m = 0;
  int w_from = 0;  // w'
  int w_to = 0;    // w''
  std::int64_t in_len = 1;
  std::int64_t out_len = 1;

  static FoldSpec make(std::int64_t base, int m, int w_from, int w_to);
};

std::vector<double> fold_and_sum(const FoldSpec& spec, std::span<const double> v);

namespace fft {

// Complex FFT for arbitrary lengths: mixed-radix when every prime factor is
// small, Bluestein otherwise. Twiddle plans are cached and immutable after
// construction, so concurrent callers only ever read them.
void forward(std::vector<std::complex<double>>& x);
void inverse(std::vector<std::complex<double>>& x);

// Cyclic convolution of two equal-length real vectors.
std::vector<double> cyclic_convolve(std::span<const double> a, std::span<const double> b);

}  // namespace fft

// T[z] = sum_{k in Z_n} omega((k z mod n)/n) v[k] for every unit z, returned
// in ascending unit order. Odd prime bases run through generator reordering
// and per-divisor-class circulant blocks (FFT convolutions, O(n log n));
// base 2 falls back to the direct product, O(n phi(n)).
std::vector<double> omega_matvec(const Modulus& mod, const KernelSpec& spec,
                                 std::span<const double> v);

}  // namespace qmclat
