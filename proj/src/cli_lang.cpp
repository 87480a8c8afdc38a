#include "qmclat/cli_lang.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace qmclat {

namespace {

std::vector<double> read_values(const std::string& path, int count, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open weight file " + path);
  std::vector<double> vals;
  double v = 0.0;
  while (in >> v) vals.push_back(v);
  if (static_cast<int>(vals.size()) < count)
    throw std::invalid_argument(std::string(what) + " file " + path + " has " +
                                std::to_string(vals.size()) + " values, need " +
                                std::to_string(count));
  vals.resize(static_cast<std::size_t>(count));
  return vals;
}

}  // namespace

std::vector<double> parse_product_weights(const std::string& spec, int s) {
  if (s < 0) throw std::invalid_argument("dimension must be nonnegative");
  std::vector<double> g(static_cast<std::size_t>(s));
  if (spec.rfind("j^", 0) == 0) {
    const double e = std::stod(spec.substr(2));
    for (int j = 1; j <= s; ++j)
      g[static_cast<std::size_t>(j - 1)] = std::pow(static_cast<double>(j), e);
  } else if (spec.rfind("const:", 0) == 0) {
    const double c = std::stod(spec.substr(6));
    for (auto& v : g) v = c;
  } else if (spec.rfind("geo:", 0) == 0) {
    const double r = std::stod(spec.substr(4));
    double acc = 1.0;
    for (int j = 1; j <= s; ++j) {
      acc *= r;
      g[static_cast<std::size_t>(j - 1)] = acc;
    }
  } else if (spec.rfind("file:", 0) == 0) {
    return read_values(spec.substr(5), s, "product weights");
  } else {
    throw std::invalid_argument("unknown product-weight spec '" + spec + "'");
  }
  return g;
}

std::vector<double> parse_order_weights(const std::string& spec, int s) {
  if (s < 0) throw std::invalid_argument("dimension must be nonnegative");
  std::vector<double> order(static_cast<std::size_t>(s) + 1, 1.0);
  if (spec == "one" || spec.empty()) {
    return order;
  }
  if (spec.rfind("kappa^l:", 0) == 0) {
    const double kappa = std::stod(spec.substr(8));
    for (int l = 1; l <= s; ++l)
      order[static_cast<std::size_t>(l)] = order[static_cast<std::size_t>(l - 1)] * kappa;
    return order;
  }
  if (spec == "invfact") {
    for (int l = 1; l <= s; ++l)
      order[static_cast<std::size_t>(l)] =
          order[static_cast<std::size_t>(l - 1)] / static_cast<double>(l);
    return order;
  }
  if (spec.rfind("file:", 0) == 0) {
    auto vals = read_values(spec.substr(5), s + 1, "order weights");
    if (vals.empty() || vals.front() != 1.0)
      throw std::invalid_argument("order-weight file must start with Gamma(0) = 1");
    return vals;
  }
  throw std::invalid_argument("unknown order-weight spec '" + spec + "'");
}

std::function<double(double)> parse_function_spec(const std::string& spec) {
  if (spec.empty() || spec == "one") return [](double) { return 1.0; };
  if (spec.rfind("const:", 0) == 0) {
    const double c = std::stod(spec.substr(6));
    return [c](double) { return c; };
  }
  if (spec.rfind("sin:", 0) == 0) {
    const double k = std::stod(spec.substr(4));
    return [k](double x) { return std::sin(k * std::numbers::pi * x); };
  }
  if (spec.rfind("cos:", 0) == 0) {
    const double k = std::stod(spec.substr(4));
    return [k](double x) { return std::cos(k * std::numbers::pi * x); };
  }
  throw std::invalid_argument("unknown function spec '" + spec + "'");
}

RandomField field_from_config(const ConfigFile& cfg) {
  RandomField::SineParams p;
  p.a0_const = cfg.get_number("field", "a0", 1.0);
  p.amplitude = cfg.get_number("field", "c", 0.1);
  p.decay = cfg.get_number("field", "theta", 2.0);
  p.b_decay = cfg.get_number("field", "b_theta", 0.9);
  p.b_scale = cfg.get_number("field", "b_scale", 1.0);
  p.s_max = static_cast<int>(cfg.get_integer("field", "s_max", 100));
  return RandomField::sine(p);
}

BoundParams bounds_from_config(const ConfigFile& cfg) {
  BoundParams b;
  b.p = cfg.get_number("bounds", "p", b.p);
  b.delta = cfg.get_number("bounds", "delta", b.delta);
  b.theta_scale = cfg.get_number("bounds", "theta", b.theta_scale);
  b.C = cfg.get_number("bounds", "C", b.C);
  b.f_norm = cfg.get_number("bounds", "f_norm", b.f_norm);
  b.G_norm = cfg.get_number("bounds", "G_norm", b.G_norm);
  b.lambda = cfg.has("bounds", "lambda") ? cfg.get_number("bounds", "lambda")
                                         : choose_lambda(b.p, b.delta);
  return b;
}

std::string schedule_rule_from_config(const ConfigFile& cfg) {
  return cfg.get_string("schedule", "rule", "");
}

}  // namespace qmclat
