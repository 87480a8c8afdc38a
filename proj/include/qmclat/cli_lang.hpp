#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmclat/config_file.hpp"
#include "qmclat/random_field.hpp"
#include "qmclat/weights.hpp"

namespace qmclat {

// Flag mini-language for per-dimension weights gamma_j, j = 1..s:
//   "j^-2"      gamma_j = j^(-2)
//   "const:0.5" gamma_j = 0.5
//   "geo:0.8"   gamma_j = 0.8^j
//   "file:P"    one value per line
std::vector<double> parse_product_weights(const std::string& spec, int s);

// Order factors Gamma(0..s):
//   "one"         Gamma = 1
//   "kappa^l:0.5" Gamma(l) = 0.5^l
//   "invfact"     Gamma(l) = 1/l!
//   "file:P"      values for l = 0..s, one per line
std::vector<double> parse_order_weights(const std::string& spec, int s);

// Scalar functions on [0,1] for loads and functionals:
//   "one" | "const:v" | "sin:k" (sin(k pi x)) | "cos:k" (cos(k pi x))
std::function<double(double)> parse_function_spec(const std::string& spec);

// Field and bound parameters from a weights configuration file.
RandomField field_from_config(const ConfigFile& cfg);
BoundParams bounds_from_config(const ConfigFile& cfg);
std::string schedule_rule_from_config(const ConfigFile& cfg);

}  // namespace qmclat
