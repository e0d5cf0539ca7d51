#include "siegel/characters.hpp"

#include <numeric>
#include <string>

#include "siegel/error.hpp"

namespace siegel {

namespace {

constexpr std::int64_t kMagnitudeCap = std::int64_t{1} << 62;

std::int64_t mod_positive(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Jacobi symbol (a/b) for odd b > 0 and 0 <= a < b.
int jacobi(std::int64_t a, std::int64_t b) {
  int sign = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::int64_t r = b & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, b);
    if ((a & 3) == 3 && (b & 3) == 3) sign = -sign;
    a %= b;
  }
  return b == 1 ? sign : 0;
}

bool is_squarefree(std::int64_t m) {
  if (m < 0) m = -m;
  if (m == 0) return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  return true;
}

}  // namespace

int kronecker(std::int64_t d, std::int64_t n) {
  if (n < 0) throw DomainError("kronecker: n must be nonnegative, got " + std::to_string(n));
  if (d == 0 && n == 0) throw DomainError("kronecker: (0|0) is undefined");
  if (n > kMagnitudeCap || d > kMagnitudeCap || d < -kMagnitudeCap)
    throw OverflowError("kronecker: argument magnitude exceeds 2^62");

  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  if ((d & 1) == 0 && (n & 1) == 0) return 0;

  int sign = 1;
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos & 1) {
    // (d|2) for odd d: +1 when d = +-1 (mod 8), -1 when d = +-3 (mod 8)
    const std::int64_t r = mod_positive(d, 8);
    if (r == 3 || r == 5) sign = -sign;
  }
  if (n == 1) return sign;
  return sign * jacobi(mod_positive(d, n), n);
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d > kMagnitudeCap || d < -kMagnitudeCap) return false;
  const std::int64_t r = mod_positive(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t mr = mod_positive(m, 4);
  return (mr == 2 || mr == 3) && is_squarefree(m);
}

QuadraticCharacter::QuadraticCharacter(std::int64_t discriminant)
    : d_(discriminant), q_(discriminant < 0 ? -discriminant : discriminant) {
  if (!is_fundamental_discriminant(discriminant))
    throw DomainError("not a fundamental discriminant: " + std::to_string(discriminant));
}

int QuadraticCharacter::value(std::int64_t n) const {
  if (n <= 0) throw DomainError("character argument must be positive, got " + std::to_string(n));
  return kronecker(d_, n);
}

int char_value(const QuadraticCharacter& chi, std::int64_t n) { return chi.value(n); }

std::vector<std::int64_t> enumerate_fundamental_discriminants(std::int64_t limit) {
  if (limit < 3) throw DomainError("enumerate_fundamental_discriminants: limit must be >= 3");
  std::vector<std::int64_t> out;
  for (std::int64_t a = 2; a <= limit; ++a) {
    if (is_fundamental_discriminant(a)) out.push_back(a);
    if (is_fundamental_discriminant(-a)) out.push_back(-a);
  }
  return out;
}

ProductCharacter::ProductCharacter(QuadraticCharacter left, QuadraticCharacter right)
    : left_(left), right_(right), q_(std::lcm(left.modulus(), right.modulus())) {}

ProductCharacter product_character(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2) {
  return ProductCharacter(chi1, chi2);
}

}  // namespace siegel
