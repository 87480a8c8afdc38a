#include "qmclat/pod_weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmclat {

namespace {

void check_nonnegative(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

}  // namespace

PodWeights::PodWeights(std::vector<double> order, std::vector<double> product) {
  if (order.empty() || order.front() != 1.0)
    throw std::invalid_argument("order factors must start with Gamma(0) = 1");
  check_nonnegative(order, "order factors");
  check_nonnegative(product, "product factors");
  order_factors = std::move(order);
  product_factors = std::move(product);
  order_ratios.resize(order_factors.size() - 1);
  for (std::size_t l = 1; l < order_factors.size(); ++l) {
    const double prev = order_factors[l - 1];
    const double cur = order_factors[l];
    if (prev > 0.0)
      order_ratios[l - 1] = cur / prev;
    else if (cur == 0.0)
      order_ratios[l - 1] = 0.0;  // truncated-order weights: 0/0 blocks stay zero
    else
      throw std::invalid_argument("order factor ratio Gamma(" + std::to_string(l) +
                                  ")/Gamma(" + std::to_string(l - 1) + ") is undefined");
  }
}

PodWeights PodWeights::from_order_ratios(std::vector<double> ratios,
                                         std::vector<double> product) {
  check_nonnegative(ratios, "order ratios");
  check_nonnegative(product, "product factors");
  PodWeights w;
  w.order_factors.resize(ratios.size() + 1);
  w.order_factors[0] = 1.0;
  for (std::size_t l = 0; l < ratios.size(); ++l)
    w.order_factors[l + 1] = w.order_factors[l] * ratios[l];
  w.order_ratios = std::move(ratios);
  w.product_factors = std::move(product);
  return w;
}

PodWeights PodWeights::product_only(std::vector<double> product) {
  std::vector<double> order(product.size() + 1, 1.0);
  return PodWeights(std::move(order), std::move(product));
}

double PodWeights::order_factor(int l) const {
  if (l < 0 || l >= static_cast<int>(order_factors.size()))
    throw std::out_of_range("order factor Gamma(" + std::to_string(l) + ") not provided");
  return order_factors[static_cast<std::size_t>(l)];
}

double PodWeights::order_ratio(int l) const {
  if (l < 1 || l > static_cast<int>(order_ratios.size()))
    throw std::out_of_range("order ratio at l = " + std::to_string(l) + " not provided");
  return order_ratios[static_cast<std::size_t>(l - 1)];
}

double PodWeights::product_factor(int j) const {
  if (j < 1 || j > dims())
    throw std::out_of_range("product factor gamma_" + std::to_string(j) + " not provided");
  return product_factors[static_cast<std::size_t>(j - 1)];
}

void PodWeights::require_dims(int s) const {
  if (dims() < s)
    throw std::invalid_argument("weights provide " + std::to_string(dims()) +
                                " product factors, need " + std::to_string(s));
  if (max_order() < s)
    throw std::invalid_argument("order factors defined up to " + std::to_string(max_order()) +
                                ", need " + std::to_string(s));
}

}  // namespace qmclat
