#pragma once

#include <cstdint>
#include <vector>

#include "qmclat/pod_weights.hpp"

namespace qmclat {

enum class FunctionSpace {
  Korobov,
  ShiftAveragedSobolev,  // unanchored Sobolev over [-1/2,1/2]^s, random shifts
};

// Kernel selector: even smoothness alpha in {2,4,6}; the shift-averaged
// Sobolev space is only meaningful at alpha = 2, where its kernel equals the
// Korobov kernel after rescaling the weights by (2*pi^2)^{-|u|}.
struct KernelSpec {
  int alpha = 2;
  FunctionSpace space = FunctionSpace::Korobov;

  void validate() const;
  bool sobolev() const { return space == FunctionSpace::ShiftAveragedSobolev; }
};

// omega(x) = sum_{h != 0} e^{2 pi i h x} / |h|^alpha, evaluated through the
// closed Bernoulli-polynomial form. omega(x) == omega(1-x) holds bitwise.
double omega(const KernelSpec& spec, double x);

// omega(r/n) for an integer residue 0 <= r < n.
double omega_at(const KernelSpec& spec, std::int64_t r, std::int64_t n);

// Table of omega(r/n) for r = 0..n-1.
std::vector<double> omega_table(const KernelSpec& spec, std::int64_t n);

// Row (omega((k*z mod n)/n))_{k=0..n-1}.
std::vector<double> omega_row(const KernelSpec& spec, std::int64_t n, std::int64_t z);

// Riemann zeta on (1, inf), absolute error below 1e-12.
double zeta(double s);

// rho(lambda) = 2 zeta(2 lambda) (2 pi^2)^{-lambda}, lambda in (1/2, 1].
double rho(double lambda);

// Maps weights of the shift-averaged Sobolev space to the Korobov alpha = 2
// weights: each gamma_j is divided by 2 pi^2, order factors are unchanged.
PodWeights sobolev_to_korobov_weights(const PodWeights& weights);

}  // namespace qmclat
