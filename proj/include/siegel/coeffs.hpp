#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "siegel/characters.hpp"
#include "siegel/eval_result.hpp"

namespace siegel {

// w_n = sum_{d | n} u_d v_{n/d}, 1-based in meaning, stored 0-based. Throws
// OverflowError if any partial sum leaves int64.
std::vector<std::int64_t> dirichlet_convolve(std::span<const std::int64_t> u,
                                             std::span<const std::int64_t> v);

// Dirichlet coefficients a_1..a_N of zeta(s) L(s,chi1) L(s,chi2) L(s,chi1 chi2).
// Construction checks a_1 = 1 and a_n >= 0; multiplicativity holds by construction.
class CoefficientTable {
 public:
  CoefficientTable(std::vector<std::int64_t> values, std::int64_t d1, std::int64_t d2);

  std::int64_t length() const { return static_cast<std::int64_t>(values_.size()); }
  // 1-based access.
  std::int64_t operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n - 1)]; }
  std::span<const std::int64_t> values() const { return values_; }
  std::int64_t d1() const { return d1_; }
  std::int64_t d2() const { return d2_; }

 private:
  std::vector<std::int64_t> values_;
  std::int64_t d1_;
  std::int64_t d2_;
};

CoefficientTable coefficients_of_f(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2,
                                   std::int64_t N);

// A(x, beta) = sum_{n <= x} a_n n^{-beta}.
double partial_sum_A(const CoefficientTable& table, double x, double beta);

// Number of terms M after which the tail sum_{n > M} n^{3-beta} e^{-n/x} is
// below tol. M starts at ceil(8x) and doubles. Throws ConvergenceError past max_terms.
std::int64_t smoothed_sum_terms(double x, double beta, double tol,
                                std::int64_t max_terms = std::int64_t{1} << 26);

// Certified tail bound used by smoothed_sum_terms.
double smoothed_tail_bound(std::int64_t M, double x, double beta);

// S(x, beta) = sum_n a_n n^{-beta} e^{-n/x} with a certified tail. The table
// must reach smoothed_sum_terms(x, beta, tol).
RealResult smoothed_sum_S(const CoefficientTable& table, double x, double beta, double tol);

// As above, building a table of exactly the required length.
RealResult smoothed_sum_S(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2,
                          double x, double beta, double tol);

}  // namespace siegel
