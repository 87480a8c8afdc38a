#pragma once

#include <vector>

namespace qmclat {

// Product-and-order-dependent weights gamma_u = Gamma(|u|) * prod_{j in u} gamma_j,
// gamma_empty = 1. Order factors can alternatively be supplied as successive
// ratios Gamma(l)/Gamma(l-1), which is the form the fast construction consumes
// and avoids overflow for factorial-like sequences.
struct PodWeights {
  std::vector<double> order_factors;    // Gamma(0..L), Gamma(0) == 1
  std::vector<double> order_ratios;     // ratio[l-1] = Gamma(l)/Gamma(l-1)
  std::vector<double> product_factors;  // gamma_1..gamma_s

  PodWeights() = default;
  PodWeights(std::vector<double> order, std::vector<double> product);

  static PodWeights from_order_ratios(std::vector<double> ratios,
                                      std::vector<double> product);
  // Gamma == 1 everywhere (classic product weights).
  static PodWeights product_only(std::vector<double> product);

  int dims() const { return static_cast<int>(product_factors.size()); }
  int max_order() const { return static_cast<int>(order_ratios.size()); }

  double order_factor(int l) const;    // Gamma(l), l in [0, max_order]
  double order_ratio(int l) const;     // Gamma(l)/Gamma(l-1), l in [1, max_order]
  double product_factor(int j) const;  // gamma_j, 1-based

  // Order factors defined up to s and exactly s product factors.
  void require_dims(int s) const;
};

}  // namespace qmclat
