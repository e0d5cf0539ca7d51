#include "siegel/coeffs.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "siegel/error.hpp"
#include "siegel/summation.hpp"

namespace siegel {

std::vector<std::int64_t> dirichlet_convolve(std::span<const std::int64_t> u,
                                             std::span<const std::int64_t> v) {
  if (u.empty() || u.size() != v.size())
    throw DomainError("dirichlet_convolve: inputs must have the same nonzero length");
  const std::size_t N = u.size();
  std::vector<std::int64_t> w(N, 0);
  for (std::size_t d = 1; d <= N; ++d) {
    const std::int64_t ud = u[d - 1];
    if (ud == 0) continue;
    for (std::size_t m = 1; d * m <= N; ++m) {
      const std::int64_t vm = v[m - 1];
      if (vm == 0) continue;
      std::int64_t prod = 0;
      if (__builtin_mul_overflow(ud, vm, &prod) || __builtin_add_overflow(w[d * m - 1], prod, &w[d * m - 1]))
        throw OverflowError("dirichlet_convolve: int64 overflow at n = " + std::to_string(d * m));
    }
  }
  return w;
}

CoefficientTable::CoefficientTable(std::vector<std::int64_t> values, std::int64_t d1, std::int64_t d2)
    : values_(std::move(values)), d1_(d1), d2_(d2) {
  if (values_.empty()) throw DomainError("coefficient table must have length >= 1");
  if (values_[0] != 1)
    throw InvariantError("coefficient table: a_1 = " + std::to_string(values_[0]) + ", expected 1");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0)
      throw InvariantError("coefficient table: negative coefficient at n = " + std::to_string(i + 1) +
                           " (a_n = " + std::to_string(values_[i]) + ")");
  }
}

CoefficientTable coefficients_of_f(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2,
                                   std::int64_t N) {
  if (N < 1) throw DomainError("coefficients_of_f: N must be >= 1");
  const auto n = static_cast<std::size_t>(N);
  std::vector<std::int64_t> one(n, 1), c1(n), c2(n), c12(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto i = static_cast<std::int64_t>(k);
    c1[k - 1] = chi1.value(i);
    c2[k - 1] = chi2.value(i);
    c12[k - 1] = c1[k - 1] * c2[k - 1];
  }
  auto a = dirichlet_convolve(one, c1);
  a = dirichlet_convolve(a, c2);
  a = dirichlet_convolve(a, c12);
  return CoefficientTable(std::move(a), chi1.discriminant(), chi2.discriminant());
}

double partial_sum_A(const CoefficientTable& table, double x, double beta) {
  if (!(x >= 1.0)) throw DomainError("partial_sum_A: x must be >= 1");
  const auto M = static_cast<std::int64_t>(std::floor(x));
  if (M > table.length())
    throw DomainError("partial_sum_A: x = " + std::to_string(x) + " exceeds table length " +
                      std::to_string(table.length()));
  CompensatedSum<double> sum;
  for (std::int64_t n = 1; n <= M; ++n) {
    const std::int64_t a = table[n];
    if (a != 0) sum += static_cast<double>(a) * std::pow(static_cast<double>(n), -beta);
  }
  return sum.value();
}

double smoothed_tail_bound(std::int64_t M, double x, double beta) {
  // a_n <= tau_4(n) <= n^3; the term ratio (1 + 1/n)^{3-beta} e^{-1/x} decreases in n.
  const double first = static_cast<double>(M + 1);
  const double log_ratio = (3.0 - beta) * std::log1p(1.0 / first) - 1.0 / x;
  if (log_ratio >= 0.0) return std::numeric_limits<double>::infinity();
  const double log_first = (3.0 - beta) * std::log(first) - first / x;
  return std::exp(log_first) / -std::expm1(log_ratio);
}

std::int64_t smoothed_sum_terms(double x, double beta, double tol, std::int64_t max_terms) {
  if (!(x > 0.0)) throw DomainError("smoothed sum: x must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("smoothed sum: beta must lie in (0, 1)");
  if (!(tol > 0.0)) throw DomainError("smoothed sum: tol must be positive");
  auto M = static_cast<std::int64_t>(std::ceil(8.0 * x));
  if (M < 1) M = 1;
  while (smoothed_tail_bound(M, x, beta) > tol) {
    M *= 2;
    if (M > max_terms)
      throw ConvergenceError("smoothed sum: tail not certified below " + std::to_string(tol) +
                             " within " + std::to_string(max_terms) + " terms");
  }
  return M;
}

RealResult smoothed_sum_S(const CoefficientTable& table, double x, double beta, double tol) {
  const std::int64_t M = smoothed_sum_terms(x, beta, tol);
  if (M > table.length())
    throw ConvergenceError("smoothed sum: needs " + std::to_string(M) + " coefficients, table has " +
                           std::to_string(table.length()));
  CompensatedSum<double> sum;
  for (std::int64_t n = 1; n <= M; ++n) {
    const std::int64_t a = table[n];
    if (a == 0) continue;
    const double nd = static_cast<double>(n);
    sum += static_cast<double>(a) * std::exp(-beta * std::log(nd) - nd / x);
  }
  RealResult r;
  r.value = sum.value();
  r.err = smoothed_tail_bound(M, x, beta) +
          8.0 * std::numeric_limits<double>::epsilon() * sum.magnitude();
  r.method = "direct-sum";
  r.terms = M;
  return r;
}

RealResult smoothed_sum_S(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2,
                          double x, double beta, double tol) {
  const std::int64_t M = smoothed_sum_terms(x, beta, tol);
  return smoothed_sum_S(coefficients_of_f(chi1, chi2, M), x, beta, tol);
}

}  // namespace siegel
