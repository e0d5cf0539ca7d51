#pragma once

#include <array>

#include "siegel/eval_result.hpp"

namespace siegel {

// Lanczos coefficients c_0..c_14 for g = 607/128:
//   Gamma(z + 1) = sqrt(2 pi) (z + g + 1/2)^{z + 1/2} e^{-(z + g + 1/2)} (c_0 + sum_k c_k / (z + k)).
using LanczosCoefficients = std::array<double, 15>;
const LanczosCoefficients& lanczos_coefficients();

// log Gamma(s) on some branch; only exp() of it and its real part are meaningful.
cplx log_gamma(cplx s);
cplx log_gamma_with(const LanczosCoefficients& coeffs, cplx s);

// Throws PoleError within 1e-12 of a nonpositive integer. Reflection is used for Re(s) < 1/2.
ComplexResult gamma(cplx s);
ComplexResult gamma_with(const LanczosCoefficients& coeffs, cplx s);

// |Gamma(sigma + it)| / (t^{sigma - 1/2} e^{-pi t / 2}); tends to sqrt(2 pi) as t grows. Requires t >= 1.
double stirling_decay_ratio(double sigma, double t);

// Hurwitz zeta by Euler-Maclaurin with 12 Bernoulli corrections. Requires
// Re(s) > 0, 0 < alpha <= 1 and |s - 1| > 1e-6 (PoleError otherwise).
ComplexResult hurwitz_zeta(cplx s, double alpha);
RealResult hurwitz_zeta(double s, double alpha);

// zeta(s, alpha) - 1/(s - 1), which is entire in s; s = 1 gives -digamma(alpha).
ComplexResult hurwitz_zeta_regular(cplx s, double alpha);
RealResult hurwitz_zeta_regular(double s, double alpha);

// Euler-Maclaurin evaluator with the cutoff planned once for a fixed s, for
// sums of zeta(s, alpha) over many alpha. T is double or cplx.
template <typename T>
class HurwitzSeries {
 public:
  explicit HurwitzSeries(T s);

  const T& s() const { return s_; }
  std::int64_t cutoff() const { return cutoff_; }

  EvalResult<T> full(double alpha) const;
  EvalResult<T> regular(double alpha) const;

 private:
  EvalResult<T> evaluate(double alpha, bool regular) const;

  T s_;
  std::int64_t cutoff_;
  double log_remainder_coeff_;
};

extern template class HurwitzSeries<double>;
extern template class HurwitzSeries<cplx>;

ComplexResult zeta(cplx s);
RealResult zeta(double s);

// zeta(sigma) = sigma/(sigma-1) - sigma * int_1^inf {x} x^{-sigma-1} dx on 0 < sigma < 1,
// integrated exactly on each [n, n+1) and closed with an asymptotic tail.
RealResult zeta_via_fractional_part_integral(double sigma);

}  // namespace siegel
