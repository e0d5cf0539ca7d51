#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace siegel {

// Neumaier's variant of Kahan summation. Also tracks the sum of magnitudes so
// callers can bound the accumulated rounding error.
template <typename T>
class CompensatedSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      double re = sum_.real(), re_c = comp_.real();
      double im = sum_.imag(), im_c = comp_.imag();
      add_real(re, re_c, x.real());
      add_real(im, im_c, x.imag());
      sum_ = T(re, im);
      comp_ = T(re_c, im_c);
    }
    magnitude_ += std::abs(x);
  }

  CompensatedSum& operator+=(const T& x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + comp_; }
  double magnitude() const { return magnitude_; }

 private:
  static void add_real(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T comp_{};
  double magnitude_ = 0.0;
};

}  // namespace siegel
