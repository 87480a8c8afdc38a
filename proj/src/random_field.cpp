#include "qmclat/random_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmclat {

RandomField RandomField::sine(const SineParams& params) {
  if (params.amplitude < 0.0) throw std::invalid_argument("sine family needs amplitude >= 0");
  if (params.decay <= 1.0) throw std::invalid_argument("sine family needs decay theta > 1");
  if (params.b_decay < 0.0 || params.b_scale <= 0.0 || params.b_scale > 1.0)
    throw std::invalid_argument("regularity sequence must stay in (0, 1]");
  if (params.s_max < 1) throw std::invalid_argument("sine family needs s_max >= 1");
  if (params.a0_const <= 0.0) throw std::invalid_argument("a0 must be positive");

  RandomField f;
  const double a0 = params.a0_const;
  f.a0 = [a0](double) { return a0; };
  const double c = params.amplitude;
  const double theta = params.decay;
  f.psi = [c, theta](int j, double x) {
    return c * std::pow(static_cast<double>(j), -theta) * std::sin(j * std::numbers::pi * x);
  };
  f.s_max = params.s_max;
  f.b_seq.resize(static_cast<std::size_t>(params.s_max));
  for (int j = 1; j <= params.s_max; ++j)
    f.b_seq[static_cast<std::size_t>(j - 1)] =
        params.b_scale * std::pow(static_cast<double>(j), -params.b_decay);
  f.amplitude = c;
  f.decay = theta;
  f.b_decay = params.b_decay;
  f.b_scale = params.b_scale;
  f.sine_family = true;
  return f;
}

double RandomField::b_at(int j) const {
  if (j < 1) throw std::out_of_range("b_j is 1-based");
  if (j <= static_cast<int>(b_seq.size())) return b_seq[static_cast<std::size_t>(j - 1)];
  if (sine_family) return b_scale * std::pow(static_cast<double>(j), -b_decay);
  throw std::out_of_range("b_j beyond the stored sequence of a custom field");
}

double RandomField::b_tail_sup(int s) const {
  if (s < 0) throw std::invalid_argument("truncation dimension must be nonnegative");
  if (s >= s_max && !sine_family) return 0.0;  // finite custom expansion
  return b_at(s + 1);  // monotone sequences: the first omitted index dominates
}

double RandomField::psi_tail_sup() const {
  if (!sine_family) return 0.0;
  // sum_{j > s_max} c j^{-theta} <= c s_max^{1-theta} / (theta - 1)
  return amplitude * std::pow(static_cast<double>(s_max), 1.0 - decay) / (decay - 1.0);
}

double RandomField::coefficient(double x, const std::vector<double>& y) const {
  double a = a0(x);
  for (std::size_t j = 0; j < y.size(); ++j)
    a += y[j] * psi(static_cast<int>(j + 1), x);
  return a;
}

}  // namespace qmclat
