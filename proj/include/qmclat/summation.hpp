#pragma once

#include <cmath>

namespace qmclat {

// Neumaier-compensated accumulator. The worst-case error evaluators sum
// many mixed-sign kernel values; plain accumulation loses enough digits to
// break the tight closed-form anchors.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace qmclat
