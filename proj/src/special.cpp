#include "siegel/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "siegel/error.hpp"
#include "siegel/summation.hpp"

namespace siegel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kGammaPoleRadius = 1e-12;
constexpr double kZetaPoleRadius = 1e-6;

constexpr LanczosCoefficients kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

// B_{2k} / (2k)! for k = 1..12.
constexpr int kEulerMaclaurinOrder = 12;
constexpr std::array<double, kEulerMaclaurinOrder> kBernoulliOverFactorial = [] {
  constexpr std::array<double, kEulerMaclaurinOrder> num = {
      1.0, -1.0, 1.0, -1.0, 5.0, -691.0, 7.0, -3617.0, 43867.0, -174611.0, 854513.0, -236364091.0};
  constexpr std::array<double, kEulerMaclaurinOrder> den = {6.0,   30.0,  42.0,  30.0,  66.0,  2730.0,
                                                            6.0,   510.0, 798.0, 330.0, 138.0, 2730.0};
  std::array<double, kEulerMaclaurinOrder> out{};
  double factorial = 1.0;
  for (int k = 1; k <= kEulerMaclaurinOrder; ++k) {
    factorial *= (2.0 * k - 1.0) * (2.0 * k);
    out[k - 1] = num[k - 1] / den[k - 1] / factorial;
  }
  return out;
}();

bool near_gamma_pole(cplx s) {
  if (s.real() > 0.5) return false;
  const double n = std::round(s.real());
  return n <= 0.0 && std::abs(s - cplx(n, 0.0)) < kGammaPoleRadius;
}

// log sin(pi s) without overflow for large |Im s|; branch is irrelevant.
cplx log_sin_pi(cplx s) {
  const cplx z = kPi * s;
  const cplx i(0.0, 1.0);
  if (std::abs(z.imag()) < 30.0) return std::log(std::sin(z));
  if (z.imag() > 0.0) return -i * z + std::log(1.0 - std::exp(2.0 * i * z)) + std::log(cplx(0.0, 0.5));
  return i * z + std::log(1.0 - std::exp(-2.0 * i * z)) - std::log(cplx(0.0, 2.0));
}

ComplexResult gamma_impl(const LanczosCoefficients& coeffs, cplx s, const char* method) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("gamma: non-finite argument");
  if (near_gamma_pole(s))
    throw PoleError("gamma: argument within 1e-12 of the pole at " + std::to_string(std::round(s.real())));
  const cplx lg = log_gamma_with(coeffs, s);
  cplx value = std::exp(lg);
  // Gamma is real on the real axis; the log form leaves rounding residue in the imaginary part.
  if (s.imag() == 0.0) value.imag(0.0);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw OverflowError("gamma: result overflows binary64");
  ComplexResult r;
  r.value = value;
  r.err = std::abs(value) * kEps * (16.0 + 2.0 * (std::abs(lg.real()) + std::abs(lg.imag())));
  r.method = method;
  r.terms = static_cast<std::int64_t>(coeffs.size());
  return r;
}

double abs_real(double x) { return std::abs(x); }
double abs_real(cplx x) { return std::abs(x); }

// expm1(u)/u, continuous at u = 0.
double exprel(double u) { return u == 0.0 ? 1.0 : std::expm1(u) / u; }
cplx exprel(cplx u) {
  if (std::abs(u) < 0.5) {
    cplx term(1.0, 0.0), sum(1.0, 0.0);
    for (int k = 2; k < 40; ++k) {
      term *= u / static_cast<double>(k);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(u) - 1.0) / u;
}

template <typename T>
T power_neg(double base_log, T s) {
  return std::exp(-s * base_log);
}

}  // namespace

const LanczosCoefficients& lanczos_coefficients() { return kLanczos; }

cplx log_gamma_with(const LanczosCoefficients& coeffs, cplx s) {
  if (s.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(s) - log_gamma_with(coeffs, 1.0 - s);
  }
  const cplx z = s - 1.0;
  cplx series(coeffs[0], 0.0);
  for (std::size_t k = 1; k < coeffs.size(); ++k) series += coeffs[k] / (z + static_cast<double>(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

cplx log_gamma(cplx s) { return log_gamma_with(kLanczos, s); }

ComplexResult gamma(cplx s) { return gamma_impl(kLanczos, s, "lanczos-607/128"); }

ComplexResult gamma_with(const LanczosCoefficients& coeffs, cplx s) {
  return gamma_impl(coeffs, s, "lanczos-custom");
}

double stirling_decay_ratio(double sigma, double t) {
  if (!(t >= 1.0)) throw DomainError("stirling_decay_ratio: requires t >= 1");
  const cplx s(sigma, t);
  if (near_gamma_pole(s)) throw PoleError("stirling_decay_ratio: pole");
  const double log_abs_gamma = log_gamma(s).real();
  return std::exp(log_abs_gamma - (sigma - 0.5) * std::log(t) + kPi * t / 2.0);
}

template <typename T>
HurwitzSeries<T>::HurwitzSeries(T s) : s_(s) {
  const double sigma = std::real(s);
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(std::imag(s)))
    throw DomainError("hurwitz_zeta: requires Re(s) > 0");
  // Remainder after p corrections, for any 0 < alpha <= 1:
  //   |B_2p|/(2p)! |(s)_2p| (N+alpha)^{1-sigma-2p} / (sigma+2p-1).
  constexpr int p = kEulerMaclaurinOrder;
  double log_poch = 0.0;
  for (int j = 0; j < 2 * p; ++j) log_poch += std::log(abs_real(s + static_cast<double>(j)));
  const double decay = sigma + 2.0 * p - 1.0;
  log_remainder_coeff_ = std::log(std::abs(kBernoulliOverFactorial[p - 1])) + log_poch - std::log(decay);
  constexpr double target = 0x1p-54;
  double n = std::ceil(std::exp((log_remainder_coeff_ - std::log(target)) / decay));
  if (n < 1.0) n = 1.0;
  if (n > 1e7) throw ConvergenceError("hurwitz_zeta: |s| too large for Euler-Maclaurin at this order");
  cutoff_ = static_cast<std::int64_t>(n);
}

template <typename T>
EvalResult<T> HurwitzSeries<T>::full(double alpha) const {
  return evaluate(alpha, false);
}

template <typename T>
EvalResult<T> HurwitzSeries<T>::regular(double alpha) const {
  return evaluate(alpha, true);
}

template <typename T>
EvalResult<T> HurwitzSeries<T>::evaluate(double a, bool regular) const {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: requires 0 < alpha <= 1");
  const T& s = s_;
  const T one(1.0);
  if (!regular && abs_real(s - one) <= kZetaPoleRadius)
    throw PoleError("hurwitz_zeta: s within 1e-6 of the pole at s = 1");
  constexpr int p = kEulerMaclaurinOrder;
  const std::int64_t N = cutoff_;
  const double sigma = std::real(s);

  const bool unit = std::imag(s) == 0.0 && sigma == 1.0;
  CompensatedSum<T> direct;
  for (std::int64_t n = N - 1; n >= 0; --n) {
    const double base = static_cast<double>(n) + a;
    direct += unit ? T(1.0 / base) : power_neg(std::log(base), s);
  }

  const double w = static_cast<double>(N) + a;
  const double lw = std::log(w);
  const T w_neg_s = unit ? T(1.0 / w) : power_neg(lw, s);
  // zeta(s, a) carries w^{1-s}/(s-1); the regular part subtracts 1/(s-1).
  const T integral = regular ? T(-lw * exprel((one - s) * lw)) : T(w * w_neg_s / (s - one));

  CompensatedSum<T> tail;
  tail += integral;
  tail += 0.5 * w_neg_s;
  T poch = s;             // (s)_{2k-1}
  T w_pow = w_neg_s / w;  // w^{-s-2k+1}
  const double inv_w2 = 1.0 / (w * w);
  for (int k = 1; k <= p; ++k) {
    tail += kBernoulliOverFactorial[k - 1] * poch * w_pow;
    poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    w_pow *= inv_w2;
  }

  EvalResult<T> r;
  r.value = direct.value() + tail.value();
  const double remainder = std::exp(log_remainder_coeff_ + (1.0 - sigma - 2.0 * p) * lw);
  const double phase = 4.0 + abs_real(s) * std::log(w + 1.0);
  r.err = remainder + kEps * phase * (direct.magnitude() + tail.magnitude());
  r.method = regular ? "euler-maclaurin-regularized" : "euler-maclaurin";
  r.terms = N + p;
  return r;
}

template class HurwitzSeries<double>;
template class HurwitzSeries<cplx>;

ComplexResult hurwitz_zeta(cplx s, double alpha) { return HurwitzSeries<cplx>(s).full(alpha); }
RealResult hurwitz_zeta(double s, double alpha) { return HurwitzSeries<double>(s).full(alpha); }
ComplexResult hurwitz_zeta_regular(cplx s, double alpha) { return HurwitzSeries<cplx>(s).regular(alpha); }
RealResult hurwitz_zeta_regular(double s, double alpha) { return HurwitzSeries<double>(s).regular(alpha); }

ComplexResult zeta(cplx s) { return hurwitz_zeta(s, 1.0); }
RealResult zeta(double s) { return hurwitz_zeta(s, 1.0); }

RealResult zeta_via_fractional_part_integral(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw DomainError("zeta_via_fractional_part_integral: requires 0 < sigma < 1");

  // B_{2k}/(2k)! for k = 1..8, kept separate from the Euler-Maclaurin table.
  constexpr std::array<double, 8> bern = {1.0 / 6.0 / 2.0,
                                          -1.0 / 30.0 / 24.0,
                                          1.0 / 42.0 / 720.0,
                                          -1.0 / 30.0 / 40320.0,
                                          5.0 / 66.0 / 3628800.0,
                                          -691.0 / 2730.0 / 479001600.0,
                                          7.0 / 6.0 / 87178291200.0,
                                          -3617.0 / 510.0 / 20922789888000.0};
  constexpr int m = static_cast<int>(bern.size());

  // (sigma+1)_{2m-2}
  double rising = 1.0;
  for (int j = 0; j < 2 * m - 2; ++j) rising *= sigma + 1.0 + j;

  std::int64_t N = 16;
  double remainder = 0.0;
  for (;;) {
    remainder = std::abs(bern[m - 1]) * rising * std::pow(static_cast<double>(N), -sigma - 2.0 * m + 1.0);
    if (remainder <= 1e-15) break;
    N *= 2;
  }

  // Segments [n, n+1): int (x - n) x^{-sigma-1} dx in closed form.
  CompensatedSum<double> integral;
  double cancelled = 0.0;
  for (std::int64_t n = 1; n < N; ++n) {
    const double nd = static_cast<double>(n);
    const double l1p = std::log1p(1.0 / nd);
    const double first = std::pow(nd, 1.0 - sigma) * std::expm1((1.0 - sigma) * l1p) / (1.0 - sigma);
    const double second = nd * std::pow(nd, -sigma) * -std::expm1(-sigma * l1p) / sigma;
    integral += first - second;
    cancelled += std::abs(first) + std::abs(second);
  }

  // int_N^inf {x} x^{-sigma-1} dx = N^{-sigma}/(2 sigma) - sum_k B_2k/(2k)! (sigma+1)_{2k-2} N^{-sigma-2k+1} + R.
  const double Nd = static_cast<double>(N);
  integral += std::pow(Nd, -sigma) / (2.0 * sigma);
  double poch = 1.0;
  double npow = std::pow(Nd, -sigma - 1.0);
  for (int k = 1; k <= m; ++k) {
    integral += -bern[k - 1] * poch * npow;
    poch *= (sigma + 2.0 * k - 1.0) * (sigma + 2.0 * k);
    npow /= Nd * Nd;
  }

  RealResult r;
  r.value = sigma / (sigma - 1.0) - sigma * integral.value();
  r.err = sigma * remainder + 16.0 * kEps * (std::abs(sigma / (sigma - 1.0)) + sigma * (cancelled + integral.magnitude()));
  r.method = "fractional-part-integral";
  r.terms = N + m;
  return r;
}

}  // namespace siegel
