#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>

namespace siegel {

using cplx = std::complex<double>;

// A value bundled with an absolute error estimate, the method that produced
// it and the number of terms (or nodes) consumed.
template <typename T>
struct EvalResult {
  T value{};
  double err = 0.0;
  std::string_view method;  // static label
  std::int64_t terms = 0;

  // Sign certificates on the real part of [value - err, value + err].
  bool certainly_negative() const { return std::real(value) + err < 0.0; }
  bool certainly_positive() const { return std::real(value) - err > 0.0; }
};

using RealResult = EvalResult<double>;
using ComplexResult = EvalResult<cplx>;

}  // namespace siegel
