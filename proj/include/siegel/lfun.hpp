#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "siegel/characters.hpp"
#include "siegel/eval_result.hpp"

namespace siegel {

// Largest modulus accepted for pointwise product characters.
inline constexpr std::int64_t kMaxProductModulus = 1'000'000;

// Real abscissae used for L(s, chi) scans stay at or below this.
inline constexpr double kBetaCeiling = 1.0 - 1e-3;

// L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q), with the 1/(s-1) parts of
// the Hurwitz terms cancelled exactly, so s = 1 is fine. Principal characters
// are rejected.
ComplexResult l_value(const QuadraticCharacter& chi, cplx s);
RealResult l_value(const QuadraticCharacter& chi, double s);
ComplexResult l_value(const ProductCharacter& chi, cplx s);
RealResult l_value(const ProductCharacter& chi, double s);

// f(s) = zeta(s) L(s,chi1) L(s,chi2) L(s,chi1 chi2). Requires |s - 1| >= 1e-3.
// chi1 = chi2 is allowed; the product factor is then principal and evaluated with its pole.
ComplexResult f_value(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, cplx s);
RealResult f_value(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, double s);

// lambda = L(1,chi1) L(1,chi2) L(1,chi1 chi2), the residue of f at s = 1.
// Throws InvariantError unless lambda is certified positive.
RealResult residue_lambda(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2);

// 3 + log q, an upper bound for |L(1, chi)| (partial sums up to N = q, phi(q) <= q).
double l1_explicit_bound(const QuadraticCharacter& chi);

struct ZeroScanResult {
  std::int64_t discriminant = 0;  // d1 * d2 for a product character
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> zeros;  // ascending
  double grid_step = 0.0;
  double refined_tol = 0.0;
};

// Zeros of g on (lo, hi) located as sign changes between grid nodes spaced
// grid_step apart, each bisected until |g| <= refine_tol or the bracket is a
// few ulp wide. Returned ascending.
std::vector<double> sign_change_zeros(const std::function<double(double)>& g, double lo, double hi,
                                      double grid_step, double refine_tol);

// Sign-change zeros of L(s, chi) on a grid over (lo, hi), refined by bisection
// until |L| <= refine_tol. Touching zeros are invisible to this scan.
ZeroScanResult find_real_zeros(const QuadraticCharacter& chi, double lo, double hi, double grid_step,
                               double refine_tol);
ZeroScanResult find_real_zeros(const ProductCharacter& chi, double lo, double hi, double grid_step,
                               double refine_tol);

enum class BetaMode { zero, negative };
std::string_view to_string(BetaMode mode);

struct BetaSelection {
  double beta = 0.0;
  BetaMode mode = BetaMode::negative;
  RealResult f;                       // f(beta)
  std::int64_t zero_discriminant = 0;  // factor that vanishes, mode == zero only
};

// Picks 1 - epsilon < beta <= 1 - 1e-3 with f(beta) <= 0: the largest real zero
// of a factor if the scan finds one, else beta = 1 - epsilon/2 with f(beta) < 0
// certified. Throws DomainError for chi1 = chi2 and InvariantError if the
// negativity certificate fails.
BetaSelection select_beta(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, double epsilon);

}  // namespace siegel
