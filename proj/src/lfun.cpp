#include "siegel/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "siegel/error.hpp"
#include "siegel/special.hpp"
#include "siegel/summation.hpp"

namespace siegel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFPoleGuard = 1e-3;

double magnitude(double x) { return std::abs(x); }
double magnitude(cplx x) { return std::abs(x); }

// Hurwitz decomposition over one period of character values. A nonzero period
// sum contributes (sum chi)/(s-1) explicitly; for nonprincipal characters it vanishes.
template <typename T>
EvalResult<T> l_from_period(const std::vector<int>& values, T s, bool allow_principal) {
  const auto q = static_cast<std::int64_t>(values.size());
  std::int64_t period_sum = 0;
  for (int v : values) period_sum += v;
  if (period_sum != 0 && !allow_principal)
    throw DomainError("l_value: principal character rejected (period sum " + std::to_string(period_sum) + ")");

  const HurwitzSeries<T> hurwitz(s);
  CompensatedSum<T> acc;
  double err = 0.0;
  const double qd = static_cast<double>(q);
  for (std::int64_t a = 1; a <= q; ++a) {
    const int c = values[static_cast<std::size_t>(a - 1)];
    if (c == 0) continue;
    const auto z = hurwitz.regular(static_cast<double>(a) / qd);
    acc += static_cast<double>(c) * z.value;
    err += z.err;
  }
  T total = acc.value();
  if (period_sum != 0) {
    const T one(1.0);
    if (magnitude(s - one) <= 1e-6) throw PoleError("L-function of a principal character at s = 1");
    total += static_cast<double>(period_sum) / (s - one);
  }
  const T scale = std::exp(-s * std::log(qd));
  EvalResult<T> r;
  r.value = scale * total;
  r.err = magnitude(scale) * (err + 8.0 * kEps * (acc.magnitude() + magnitude(total)));
  r.method = "hurwitz-decomposition";
  r.terms = q * hurwitz.cutoff();
  return r;
}

void check_product_modulus(const ProductCharacter& chi) {
  if (chi.modulus() > kMaxProductModulus)
    throw DomainError("product character modulus " + std::to_string(chi.modulus()) + " exceeds cap " +
                      std::to_string(kMaxProductModulus));
}

template <typename T>
void check_right_half_plane(T s) {
  if (!(std::real(s) > 0.0)) throw DomainError("L-function evaluation requires Re(s) > 0");
}

// err of a product of independently bounded factors.
template <typename T>
EvalResult<T> multiply(std::initializer_list<EvalResult<T>> factors) {
  EvalResult<T> r;
  r.value = T(1.0);
  double upper = 1.0;
  double central = 1.0;
  for (const auto& f : factors) {
    r.value *= f.value;
    upper *= magnitude(f.value) + f.err;
    central *= magnitude(f.value);
    r.terms += f.terms;
  }
  r.err = (upper - central) + 4.0 * kEps * central * static_cast<double>(factors.size());
  return r;
}

template <typename T>
EvalResult<T> f_impl(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, T s) {
  check_right_half_plane(s);
  if (magnitude(s - T(1.0)) < kFPoleGuard) throw PoleError("f_value: |s - 1| < 1e-3");
  const ProductCharacter prod(chi1, chi2);
  check_product_modulus(prod);
  if (chi1.is_principal() || chi2.is_principal())
    throw DomainError("f_value: both characters must be nonprincipal");
  auto z = zeta(s);
  auto l1 = l_from_period(period_values(chi1), s, false);
  auto l2 = l_from_period(period_values(chi2), s, false);
  auto l12 = l_from_period(period_values(prod), s, true);
  auto r = multiply<T>({z, l1, l2, l12});
  r.method = "zeta*L*L*L";
  return r;
}

template <typename Character>
ZeroScanResult scan_zeros(const Character& chi, std::int64_t label, double lo, double hi, double step,
                          double tol) {
  if (!(lo > 0.0 && lo < hi && hi <= kBetaCeiling))
    throw DomainError("find_real_zeros: requires 0 < lo < hi <= 1 - 1e-3");
  if (!(step > 0.0)) throw DomainError("find_real_zeros: grid_step must be positive");
  if (!(tol > 0.0)) throw DomainError("find_real_zeros: refine_tol must be positive");

  const auto values = period_values(chi);
  ZeroScanResult out;
  out.discriminant = label;
  out.lo = lo;
  out.hi = hi;
  out.grid_step = step;
  out.refined_tol = tol;
  out.zeros = sign_change_zeros([&](double s) { return l_from_period(values, s, false).value; }, lo, hi, step, tol);
  return out;
}

}  // namespace

std::vector<double> sign_change_zeros(const std::function<double(double)>& g, double lo, double hi, double step,
                                      double tol) {
  if (!(lo < hi)) throw DomainError("sign_change_zeros: requires lo < hi");
  if (!(step > 0.0)) throw DomainError("sign_change_zeros: grid_step must be positive");
  if (!(tol > 0.0)) throw DomainError("sign_change_zeros: refine_tol must be positive");

  const auto intervals = static_cast<std::int64_t>(std::ceil((hi - lo) / step - 1e-9));
  auto node = [&](std::int64_t k) { return k >= intervals ? hi : lo + static_cast<double>(k) * step; };

  std::vector<double> zeros;
  double a = lo;
  double fa = g(a);
  for (std::int64_t k = 1; k <= intervals; ++k) {
    const double b = node(k);
    const double fb = g(b);
    if (fb == 0.0 && b < hi) {
      zeros.push_back(b);
    } else if (fa != 0.0 && fb != 0.0 && std::signbit(fa) != std::signbit(fb)) {
      double left = a, right = b, fleft = fa;
      double zero = 0.5 * (left + right);
      for (int it = 0; it < 200; ++it) {
        zero = 0.5 * (left + right);
        const double fm = g(zero);
        if (std::abs(fm) <= tol || right - left <= 4.0 * kEps * std::abs(right)) break;
        if (std::signbit(fm) == std::signbit(fleft)) {
          left = zero;
          fleft = fm;
        } else {
          right = zero;
        }
      }
      if (zero > lo && zero < hi) zeros.push_back(zero);
    }
    a = b;
    fa = fb;
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

ComplexResult l_value(const QuadraticCharacter& chi, cplx s) {
  check_right_half_plane(s);
  return l_from_period(period_values(chi), s, false);
}

RealResult l_value(const QuadraticCharacter& chi, double s) {
  check_right_half_plane(s);
  return l_from_period(period_values(chi), s, false);
}

ComplexResult l_value(const ProductCharacter& chi, cplx s) {
  check_right_half_plane(s);
  check_product_modulus(chi);
  return l_from_period(period_values(chi), s, false);
}

RealResult l_value(const ProductCharacter& chi, double s) {
  check_right_half_plane(s);
  check_product_modulus(chi);
  return l_from_period(period_values(chi), s, false);
}

ComplexResult f_value(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, cplx s) {
  return f_impl(chi1, chi2, s);
}

RealResult f_value(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, double s) {
  return f_impl(chi1, chi2, s);
}

RealResult residue_lambda(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2) {
  if (chi1.is_principal() || chi2.is_principal())
    throw DomainError("residue_lambda: both characters must be nonprincipal");
  const ProductCharacter prod(chi1, chi2);
  if (prod.is_principal())
    throw DomainError("residue_lambda: chi1 = chi2 makes chi1*chi2 principal (degenerate configuration)");
  const auto l1 = l_value(chi1, 1.0);
  const auto l2 = l_value(chi2, 1.0);
  const auto l12 = l_value(prod, 1.0);
  for (const auto* l : {&l1, &l2, &l12}) {
    if (!l->certainly_positive())
      throw InvariantError("residue_lambda: L(1, chi) = " + std::to_string(l->value) +
                           " is not certified positive");
  }
  auto r = multiply<double>({l1, l2, l12});
  r.method = "L(1)*L(1)*L(1)";
  if (!r.certainly_positive()) throw InvariantError("residue_lambda: lambda not certified positive");
  return r;
}

double l1_explicit_bound(const QuadraticCharacter& chi) {
  if (chi.is_principal()) throw DomainError("l1_explicit_bound: character must be nonprincipal");
  return 3.0 + std::log(static_cast<double>(chi.modulus()));
}

ZeroScanResult find_real_zeros(const QuadraticCharacter& chi, double lo, double hi, double grid_step,
                               double refine_tol) {
  if (chi.is_principal()) throw DomainError("find_real_zeros: character must be nonprincipal");
  return scan_zeros(chi, chi.discriminant(), lo, hi, grid_step, refine_tol);
}

ZeroScanResult find_real_zeros(const ProductCharacter& chi, double lo, double hi, double grid_step,
                               double refine_tol) {
  if (chi.is_principal()) throw DomainError("find_real_zeros: character must be nonprincipal");
  check_product_modulus(chi);
  return scan_zeros(chi, chi.left().discriminant() * chi.right().discriminant(), lo, hi, grid_step,
                    refine_tol);
}

std::string_view to_string(BetaMode mode) { return mode == BetaMode::zero ? "zero" : "negative"; }

BetaSelection select_beta(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw DomainError("select_beta: epsilon must lie in (0, 1/2]");
  const double lo = 1.0 - epsilon;
  const double hi = kBetaCeiling;
  if (!(lo < hi)) throw DomainError("select_beta: epsilon must exceed 1e-3");
  if (chi1.is_principal() || chi2.is_principal())
    throw DomainError("select_beta: both characters must be nonprincipal");
  const ProductCharacter prod(chi1, chi2);
  if (prod.is_principal())
    throw DomainError("select_beta: chi1 = chi2 is a degenerate configuration (f is then a square times zeta^2)");

  constexpr double refine_tol = 1e-12;
  const double step = std::min(1e-3, (hi - lo) / 10.0);
  const ZeroScanResult scans[] = {find_real_zeros(chi1, lo, hi, step, refine_tol),
                                  find_real_zeros(chi2, lo, hi, step, refine_tol),
                                  find_real_zeros(prod, lo, hi, step, refine_tol)};

  BetaSelection sel;
  bool found = false;
  for (const auto& scan : scans) {
    if (!scan.zeros.empty() && (!found || scan.zeros.back() > sel.beta)) {
      sel.beta = scan.zeros.back();
      sel.zero_discriminant = scan.discriminant;
      found = true;
    }
  }

  if (found) {
    sel.mode = BetaMode::zero;
    sel.f = f_value(chi1, chi2, sel.beta);
    // The vanishing factor is at most refine_tol; the other three are O(|f|/|factor|).
    const auto z = zeta(sel.beta);
    const double others = std::abs(z.value) * (std::abs(l_value(chi1, sel.beta).value) + 1.0) *
                          (std::abs(l_value(chi2, sel.beta).value) + 1.0) *
                          (std::abs(l_value(prod, sel.beta).value) + 1.0);
    if (std::abs(sel.f.value) > sel.f.err + refine_tol * others)
      throw InvariantError("select_beta: f(beta) = " + std::to_string(sel.f.value) +
                           " at a located zero exceeds the combined tolerance");
    return sel;
  }

  sel.mode = BetaMode::negative;
  sel.beta = 1.0 - epsilon / 2.0;
  if (sel.beta > hi) sel.beta = 0.5 * (lo + hi);
  sel.f = f_value(chi1, chi2, sel.beta);
  if (!sel.f.certainly_negative())
    throw InvariantError("select_beta: f(" + std::to_string(sel.beta) + ") = " + std::to_string(sel.f.value) +
                         " +- " + std::to_string(sel.f.err) +
                         " is not certified negative although no factor changes sign on the scan");
  return sel;
}

}  // namespace siegel
