#pragma once

#include <cstdint>
#include <vector>

namespace siegel {

// Kronecker symbol (d|n) for n >= 0. Throws DomainError for d = n = 0 and
// OverflowError when |d| or n exceeds 2^62.
int kronecker(std::int64_t d, std::int64_t n);

// d = 1 (mod 4) squarefree, or d = 4m with m squarefree and m = 2, 3 (mod 4).
// d = 1 counts (trivial character); d = 0 does not.
bool is_fundamental_discriminant(std::int64_t d);

// Primitive real character n -> (d|n) of modulus |d|, d a fundamental discriminant.
class QuadraticCharacter {
 public:
  explicit QuadraticCharacter(std::int64_t discriminant);

  std::int64_t discriminant() const { return d_; }
  std::int64_t modulus() const { return q_; }
  bool is_principal() const { return d_ == 1; }

  int value(std::int64_t n) const;

  friend bool operator==(const QuadraticCharacter&, const QuadraticCharacter&) = default;

 private:
  std::int64_t d_;
  std::int64_t q_;
};

int char_value(const QuadraticCharacter& chi, std::int64_t n);

// All fundamental d with 1 < |d| <= limit, ordered by |d| and then positive before negative.
std::vector<std::int64_t> enumerate_fundamental_discriminants(std::int64_t limit);

// Pointwise product chi1 * chi2 of modulus lcm(q1, q2). Not reduced to the
// inducing primitive character, so it may be imprimitive (or principal when
// chi1 = chi2).
class ProductCharacter {
 public:
  ProductCharacter(QuadraticCharacter left, QuadraticCharacter right);

  const QuadraticCharacter& left() const { return left_; }
  const QuadraticCharacter& right() const { return right_; }
  std::int64_t modulus() const { return q_; }

  // True when the product is a principal character (chi1 = chi2, or both trivial).
  bool is_principal() const { return left_.discriminant() == right_.discriminant(); }

  int value(std::int64_t n) const { return left_.value(n) * right_.value(n); }

 private:
  QuadraticCharacter left_;
  QuadraticCharacter right_;
  std::int64_t q_;
};

ProductCharacter product_character(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2);

// chi(1), ..., chi(q) for one full period.
template <typename Character>
std::vector<int> period_values(const Character& chi) {
  std::vector<int> out(static_cast<std::size_t>(chi.modulus()));
  for (std::int64_t a = 1; a <= chi.modulus(); ++a) out[static_cast<std::size_t>(a - 1)] = chi.value(a);
  return out;
}

}  // namespace siegel
