#include "siegel/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "siegel/coeffs.hpp"
#include "siegel/error.hpp"
#include "siegel/lfun.hpp"
#include "siegel/special.hpp"
#include "siegel/summation.hpp"

namespace siegel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr double kSqrtTwoPi = 2.5066282746310002;
constexpr double kSmoothedTol = 1e-13;

struct NodeValue {
  cplx value;
  double err = 0.0;
};

// Trapezoid over [-T', T'] with T' = n h, n even, using g(-t) = conj g(t).
// tail is the certified bound on (1/2 pi) int_{|t| > T'} |g|.
template <typename Integrand>
ContourResult integrate_line(Integrand&& g, const ContourSpec& spec, double tail, bool mirror) {
  const double h = spec.step;
  auto n = static_cast<std::int64_t>(std::floor(spec.height / h + 1e-9));
  n -= n % 2;

  CompensatedSum<double> fine, coarse, mirrored_im;
  double node_err = 0.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * h;
    const NodeValue v = g(t);
    const double weight = (k == 0 || k == n) ? 1.0 : 2.0;
    fine += weight * v.value.real();
    node_err += weight * v.err;
    if (k % 2 == 0) coarse += weight * v.value.real();
    if (mirror && k == 0) mirrored_im += v.value.imag();
    if (mirror && k > 0) {
      const NodeValue m = g(-t);
      const double half = (k == n) ? 0.5 : 1.0;
      mirrored_im += half * (v.value.imag() + m.value.imag());
    }
  }

  const double scale = h / (2.0 * kPi);
  ContourResult r;
  r.value = scale * fine.value();
  const double coarse_value = 2.0 * scale * coarse.value();
  r.truncation_err = tail;
  r.discretization_err = std::abs(r.value - coarse_value);
  r.integrand_err = scale * (node_err + 16.0 * kEps * fine.magnitude());
  r.err = r.truncation_err + r.discretization_err + r.integrand_err;
  r.terms = n + 1;
  if (mirror) {
    r.imag = scale * mirrored_im.value();
    r.imag_checked = true;
  }
  return r;
}

}  // namespace

void validate(const ContourSpec& spec, bool involves_f) {
  if (!(spec.height > 0.0) || !std::isfinite(spec.height)) throw DomainError("contour: height must be positive");
  if (!(spec.step > 0.0) || spec.step > spec.height / 100.0)
    throw DomainError("contour: step must satisfy 0 < step <= height/100");
  if (!(spec.abscissa > 0.0) || !std::isfinite(spec.abscissa))
    throw DomainError("contour: abscissa must be positive (the line must pass right of Gamma's poles)");
  if (involves_f && spec.abscissa < 1.5) throw DomainError("contour: abscissa must be >= 1.5 for integrals of f");
}

double gamma_envelope_constant(double sigma, double height) {
  // The ratio tends to sqrt(2 pi) monotonically for large t; 10% headroom.
  return 1.1 * std::max(stirling_decay_ratio(sigma, std::max(height, 1.0)), kSqrtTwoPi);
}

double power_exp_tail(double a, double b, double T) {
  // t^a e^{-bt} has logarithmic derivative a/t - b <= a/T - b on [T, inf) when a >= 0.
  const double rate = a >= 0.0 ? b - a / T : b;
  if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
  return std::exp(a * std::log(T) - b * T) / rate;
}

ContourResult inverse_mellin_exp(double y, const ContourSpec& spec, bool check_mirror) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("inverse_mellin_exp: y must be positive");
  validate(spec, false);
  const double sigma = spec.abscissa;
  const double log_y = std::log(y);
  auto g = [&](double t) {
    const cplx s(sigma, t);
    const auto gm = gamma(s);
    const cplx ys = std::exp(-s * log_y);
    return NodeValue{ys * gm.value, std::abs(ys) * gm.err};
  };
  const double tail = std::exp(-sigma * log_y) * gamma_envelope_constant(sigma, spec.height) *
                      power_exp_tail(sigma - 0.5, kPi / 2.0, spec.height) / kPi;
  auto r = integrate_line(g, spec, tail, check_mirror);
  r.method = "trapezoid-vertical-line";
  return r;
}

PlannedContour inverse_mellin_exp_adaptive(double y, double abscissa, double tol) {
  if (!(tol > 0.0)) throw DomainError("inverse_mellin_exp_adaptive: tol must be positive");
  if (!(y > 0.0)) throw DomainError("inverse_mellin_exp_adaptive: y must be positive");
  ContourSpec spec{abscissa, 5.0, 0.05};
  const double scale = std::exp(-abscissa * std::log(y));
  while (scale * gamma_envelope_constant(abscissa, spec.height) *
             power_exp_tail(abscissa - 0.5, kPi / 2.0, spec.height) / kPi >
         tol / 2.0) {
    spec.height += 5.0;
    if (spec.height > 400.0) throw ConvergenceError("inverse_mellin_exp_adaptive: truncation height exceeds 400");
  }
  spec.step = spec.height / 100.0;
  ContourResult previous = inverse_mellin_exp(y, spec);
  for (int halving = 0; halving < 20; ++halving) {
    ContourSpec finer = spec;
    finer.step = spec.step / 2.0;
    ContourResult next = inverse_mellin_exp(y, finer);
    const double change = std::abs(next.value - previous.value);
    spec = finer;
    previous = next;
    if (change <= tol / 2.0) return {spec, previous};
  }
  throw ConvergenceError("inverse_mellin_exp_adaptive: step halving did not converge");
}

ContourResult contour_integral_I(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, double x,
                                 double beta, const ContourSpec& spec, double rel_budget, bool check_mirror) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("contour_integral_I: x must be positive");
  if (!(beta > 0.0 && beta < kBetaCeiling)) throw DomainError("contour_integral_I: beta must lie in (0, 1 - 1e-3)");
  validate(spec, true);
  if (!(spec.abscissa + beta > 1.5)) throw DomainError("contour_integral_I: abscissa + beta must exceed 1.5");

  const double sigma = spec.abscissa;
  const double log_x = std::log(x);
  auto g = [&](double t) {
    const cplx s(sigma, t);
    const auto gm = gamma(s);
    const auto f = f_value(chi1, chi2, s + beta);
    const cplx xs = std::exp(s * log_x);
    const double mag = std::abs(xs);
    return NodeValue{xs * gm.value * f.value,
                     mag * (std::abs(gm.value) * f.err + gm.err * std::abs(f.value) + gm.err * f.err)};
  };
  // |f(sigma + beta + it)| <= f(sigma + beta) because the coefficients are nonnegative.
  const auto f_axis = f_value(chi1, chi2, sigma + beta);
  const double tail = std::exp(sigma * log_x) * (std::abs(f_axis.value) + f_axis.err) *
                      gamma_envelope_constant(sigma, spec.height) *
                      power_exp_tail(sigma - 0.5, kPi / 2.0, spec.height) / kPi;
  auto r = integrate_line(g, spec, tail, check_mirror);
  r.method = "trapezoid-vertical-line";

  if (!(r.err <= rel_budget * std::abs(r.value))) {
    const char* dominant = "integrand";
    double largest = r.integrand_err;
    if (r.truncation_err > largest) {
      dominant = "truncation";
      largest = r.truncation_err;
    }
    if (r.discretization_err > largest) dominant = "discretization";
    throw ConvergenceError(std::string("contour_integral_I: error ") + std::to_string(r.err) +
                           " exceeds budget; dominant contributor: " + dominant);
  }
  return r;
}

ResidueDecomposition residue_decomposition_check(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2,
                                                 double beta, std::span<const double> x_grid) {
  if (!(beta > 0.0 && beta < kBetaCeiling))
    throw DomainError("residue_decomposition_check: beta must lie in (0, 1 - 1e-3)");
  for (double x : x_grid) {
    if (!(x >= 1.0) || !std::isfinite(x))
      throw DomainError("residue_decomposition_check: grid point " + std::to_string(x) + " is below 1");
  }

  ResidueDecomposition out;
  out.beta = beta;
  out.lambda = residue_lambda(chi1, chi2);
  const auto g = gamma(cplx(1.0 - beta, 0.0));
  out.gamma_one_minus_beta = RealResult{g.value.real(), g.err, g.method, g.terms};
  out.f_beta = f_value(chi1, chi2, beta);

  const double main_coeff = out.gamma_one_minus_beta.value * out.lambda.value;
  const double main_coeff_err = out.gamma_one_minus_beta.err * out.lambda.value +
                                out.gamma_one_minus_beta.value * out.lambda.err +
                                out.gamma_one_minus_beta.err * out.lambda.err;

  for (double x : x_grid) {
    const auto S = smoothed_sum_S(chi1, chi2, x, beta, kSmoothedTol);
    const double growth = std::pow(x, 1.0 - beta);
    ResidueRow row;
    row.x = x;
    row.R = S.value - growth * main_coeff - out.f_beta.value;
    row.R_scaled = row.R * std::pow(x, beta);
    row.R_err = S.err + growth * main_coeff_err + out.f_beta.err +
                4.0 * kEps * (std::abs(S.value) + growth * std::abs(main_coeff) + std::abs(out.f_beta.value));
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace siegel
