#include "qmclat/fold_fft.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "qmclat/instrument.hpp"

namespace qmclat {

FoldSpec FoldSpec::make(std::int64_t base, int m, int w_from, int w_to) {
  if (m < 0 || w_from < 0 || w_from > w_to || w_to > m)
    throw std::invalid_argument("fold spec requires 0 <= w' <= w'' <= m");
  FoldSpec s;
  s.base = base;
  s.m = m;
  s.w_from = w_from;
  s.w_to = w_to;
  s.in_len = ipow(base, m - w_from);
  s.out_len = ipow(base, m - w_to);
  return s;
}

std::vector<double> fold_and_sum(const FoldSpec& spec, std::span<const double> v) {
  if (static_cast<std::int64_t>(v.size()) != spec.in_len)
    throw std::invalid_argument("fold_and_sum: input length mismatch");
  const std::size_t out_len = static_cast<std::size_t>(spec.out_len);
  std::vector<double> out(v.begin(), v.begin() + spec.out_len);
  for (std::size_t off = out_len; off < v.size(); off += out_len)
    for (std::size_t k = 0; k < out_len; ++k) out[k] += v[off + k];
  ops::add(v.size() - out_len);
  return out;
}

namespace fft {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Largest prime handled by the naive in-loop DFT; longer prime factors
// switch the whole transform to Bluestein.
constexpr std::size_t kMaxNaiveRadix = 61;

struct Plan {
  std::size_t n = 0;
  std::vector<std::size_t> factors;  // smallest-first, empty for Bluestein
  std::vector<cplx> twiddle;         // e^{-2 pi i k / n}

  bool bluestein = false;
  std::size_t conv_n = 0;
  std::vector<cplx> chirp;       // e^{-i pi k^2 / n}
  std::vector<cplx> kernel_fft;  // FFT of the cyclically embedded conjugate chirp
  std::shared_ptr<const Plan> conv_plan;
};

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> f;
  for (std::size_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2))
    while (n % d == 0) {
      f.push_back(d);
      n /= d;
    }
  if (n > 1) f.push_back(n);
  return f;
}

std::vector<cplx> twiddle_table(std::size_t n) {
  std::vector<cplx> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    t[k] = cplx(std::cos(a), std::sin(a));
  }
  return t;
}

// Depth-first mixed-radix transform. Reads the strided input, writes the
// output contiguously; `mult` = n / current length selects twiddles from the
// single length-n table.
void transform(const cplx* in, std::size_t stride, cplx* out, std::size_t len,
               std::size_t mult, const Plan& plan, unsigned depth) {
  if (len == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = plan.factors[depth];
  const std::size_t q = len / p;
  for (std::size_t r = 0; r < p; ++r)
    transform(in + r * stride, stride * p, out + r * q, q, mult * p, plan, depth + 1);

  const std::size_t n = plan.n;
  std::array<cplx, kMaxNaiveRadix + 1> z, acc;
  for (std::size_t c = 0; c < q; ++c) {
    for (std::size_t r = 0; r < p; ++r)
      z[r] = out[r * q + c] * plan.twiddle[(r * c * mult) % n];
    for (std::size_t t = 0; t < p; ++t) {
      cplx s = z[0];
      for (std::size_t r = 1; r < p; ++r)
        s += z[r] * plan.twiddle[(r * t * q * mult) % n];
      acc[t] = s;
    }
    for (std::size_t t = 0; t < p; ++t) out[t * q + c] = acc[t];
  }
  ops::cmul(q * (p + p * (p - 1)));
  ops::cadd(q * p * (p - 1));
}

void run_plan(const Plan& plan, std::vector<cplx>& x);

std::shared_ptr<const Plan> make_plan(std::size_t n);

std::shared_ptr<const Plan> plan_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const Plan>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto plan = make_plan(n);  // built outside the lock; Bluestein recurses into plan_for
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(n, std::move(plan));
  (void)inserted;
  return it->second;
}

std::shared_ptr<const Plan> make_plan(std::size_t n) {
  auto plan = std::make_shared<Plan>();
  plan->n = n;
  auto factors = factorize(n);
  if (factors.empty() || factors.back() <= kMaxNaiveRadix) {
    plan->factors = std::move(factors);
    plan->twiddle = twiddle_table(n);
    return plan;
  }

  plan->bluestein = true;
  std::size_t conv_n = 1;
  while (conv_n < 2 * n - 1) conv_n *= 2;
  plan->conv_n = conv_n;
  plan->conv_plan = plan_for(conv_n);

  plan->chirp.resize(n);
  const std::int64_t two_n = 2 * static_cast<std::int64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t sq = (static_cast<std::int64_t>(k) * static_cast<std::int64_t>(k)) % two_n;
    const double a = -kPi * static_cast<double>(sq) / static_cast<double>(n);
    plan->chirp[k] = cplx(std::cos(a), std::sin(a));
  }

  std::vector<cplx> kernel(conv_n, cplx(0.0, 0.0));
  for (std::size_t t = 0; t < n; ++t) {
    const cplx v = std::conj(plan->chirp[t]);
    kernel[t] = v;
    if (t > 0) kernel[conv_n - t] = v;
  }
  run_plan(*plan->conv_plan, kernel);
  plan->kernel_fft = std::move(kernel);
  return plan;
}

void bluestein(const Plan& plan, std::vector<cplx>& x) {
  const std::size_t n = plan.n;
  std::vector<cplx> a(plan.conv_n, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * plan.chirp[k];
  ops::cmul(n);
  run_plan(*plan.conv_plan, a);
  for (std::size_t k = 0; k < plan.conv_n; ++k) a[k] *= plan.kernel_fft[k];
  ops::cmul(plan.conv_n);
  // inverse of the convolution plan via conjugation
  for (auto& v : a) v = std::conj(v);
  run_plan(*plan.conv_plan, a);
  const double scale = 1.0 / static_cast<double>(plan.conv_n);
  for (std::size_t k = 0; k < n; ++k)
    x[k] = std::conj(a[k] * scale) * plan.chirp[k];
  ops::cmul(2 * n);
}

void run_plan(const Plan& plan, std::vector<cplx>& x) {
  if (plan.n <= 1) return;
  if (plan.bluestein) {
    bluestein(plan, x);
    return;
  }
  std::vector<cplx> scratch(x);
  transform(scratch.data(), 1, x.data(), plan.n, 1, plan, 0);
}

}  // namespace

void forward(std::vector<cplx>& x) {
  if (x.empty()) return;
  run_plan(*plan_for(x.size()), x);
}

void inverse(std::vector<cplx>& x) {
  if (x.empty()) return;
  for (auto& v : x) v = std::conj(v);
  forward(x);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : x) v = std::conj(v) * scale;
  ops::mul(2 * x.size());
}

std::vector<double> cyclic_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cyclic_convolve: length mismatch");
  const std::size_t n = a.size();
  std::vector<cplx> fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = cplx(a[i], 0.0);
    fb[i] = cplx(b[i], 0.0);
  }
  forward(fa);
  forward(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  ops::cmul(n);
  inverse(fa);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace fft

std::vector<double> omega_matvec(const Modulus& mod, const KernelSpec& spec,
                                 std::span<const double> v) {
  spec.validate();
  if (mod.exponent < 1) throw std::invalid_argument("omega_matvec needs exponent >= 1");
  if (static_cast<std::int64_t>(v.size()) != mod.n)
    throw std::invalid_argument("omega_matvec: input length mismatch");

  const std::int64_t n = mod.n;
  const std::int64_t b = mod.base;

  if (b == 2) {
    // Z_{2^m}^x is not cyclic: direct product over the units (documented
    // performance cliff relative to the odd-prime FFT path).
    const auto table = omega_table(spec, n);
    const std::size_t phi = static_cast<std::size_t>(totient(mod));
    std::vector<double> out(phi);
    std::size_t idx = 0;
    for (std::int64_t z = 1; z < n; z += 2) {
      double acc = 0.0;
      std::int64_t r = 0;
      for (std::int64_t k = 0; k < n; ++k) {
        acc += table[static_cast<std::size_t>(r)] * v[static_cast<std::size_t>(k)];
        r += z;
        if (r >= n) r -= n;
      }
      out[idx++] = acc;
    }
    ops::mul(static_cast<std::uint64_t>(n) * phi);
    ops::add(static_cast<std::uint64_t>(n) * phi);
    return out;
  }

  const std::size_t phi = static_cast<std::size_t>(totient(mod));
  const double zero_col = omega_at(spec, 0, n) * v[0];
  std::vector<double> out(phi, zero_col);  // k = 0 contributes omega(0) v[0] to every row
  ops::mul(1);

  // Remaining columns split by divisor class k = b^t k' with k' a unit
  // modulo b^{m-t}; for each class the submatrix is circulant under the
  // generator ordering, so one cyclic convolution per class suffices.
  for (int t = 0; t < mod.exponent; ++t) {
    const Modulus sub = Modulus::make(b, mod.exponent - t);
    const std::int64_t bt = ipow(b, t);
    const auto order = generator_ordering(sub);
    const std::size_t phi_t = order.size();

    std::vector<std::int32_t> index_of(static_cast<std::size_t>(sub.n), -1);
    for (std::size_t i = 0; i < phi_t; ++i)
      index_of[static_cast<std::size_t>(order[i])] = static_cast<std::int32_t>(i);

    std::vector<double> kernel(phi_t), gathered(phi_t);
    for (std::size_t i = 0; i < phi_t; ++i)
      kernel[i] = omega_at(spec, order[i], sub.n);
    // correlation = convolution with the cyclically reversed gather
    gathered[0] = v[static_cast<std::size_t>(bt * order[0])];
    for (std::size_t i = 1; i < phi_t; ++i)
      gathered[i] = v[static_cast<std::size_t>(bt * order[phi_t - i])];

    std::vector<double> conv;
    if (phi_t == 1) {
      conv = {kernel[0] * gathered[0]};
      ops::mul(1);
    } else {
      conv = fft::cyclic_convolve(kernel, gathered);
    }

    std::size_t row = 0;
    for (std::int64_t z = 1; z < n; ++z) {
      if (z % b == 0) continue;
      out[row++] += conv[static_cast<std::size_t>(index_of[static_cast<std::size_t>(z % sub.n)])];
    }
    ops::add(phi);
  }
  return out;
}

}  // namespace qmclat
