#pragma once

#include <functional>
#include <vector>

namespace qmclat {

// Affine random diffusion coefficient a(x, y) = a0(x) + sum_j y_j psi_j(x)
// on [0,1], together with the regularity sequence b_j in (0,1] that scales
// the derivative bounds. The default basis is psi_j(x) = c j^{-theta} sin(j pi x).
struct RandomField {
  std::function<double(double)> a0;
  std::function<double(int, double)> psi;  // psi(j, x), 1-based j
  std::vector<double> b_seq;               // b_1..b_{s_max}
  int s_max = 0;

  // Analytic metadata for the sine family (tail bounds, monotone kappa(k)
  // shortcut). Zero amplitude marks a user-supplied field.
  double amplitude = 0.0;
  double decay = 0.0;    // theta
  double b_decay = 0.0;  // b_j = b_scale * j^{-b_decay}
  double b_scale = 0.0;
  bool sine_family = false;

  struct SineParams {
    double amplitude = 0.1;  // c
    double decay = 2.0;      // theta > 1
    double b_decay = 0.9;    // decay of the regularity sequence
    double b_scale = 1.0;
    int s_max = 100;
    double a0_const = 1.0;
  };
  static RandomField sine(const SineParams& params);

  double b_at(int j) const;           // b_j, analytic beyond s_max for the sine family
  double b_tail_sup(int s) const;     // sup_{j >= s+1} b_j
  // Upper bound on sup_x sum_{j > s_max} |psi_j(x)| (zero for custom fields).
  double psi_tail_sup() const;

  double coefficient(double x, const std::vector<double>& y) const;  // truncated at |y|
};

}  // namespace qmclat
