#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "siegel/characters.hpp"
#include "siegel/error.hpp"
#include "siegel/lfun.hpp"
#include "siegel/special.hpp"

using namespace siegel;

namespace {

constexpr double pi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("L(1) and L(2) against independent oracles") {
  const double leibniz = oracle::leibniz_pi_over_4();
  CHECK(leibniz == doctest::Approx(pi / 4).epsilon(1e-14));
  CHECK(std::abs(l_value(QuadraticCharacter(-4), 1.0).value - leibniz) <= 1e-12);

  const double l3 = oracle::l1_closed_form_minus3();
  CHECK(std::abs(l_value(QuadraticCharacter(-3), 1.0).value - l3) <= 1e-12);

  const double catalan = oracle::catalan_direct();
  CHECK(std::abs(catalan - 0.915965594177219015054603514932) <= 1e-12);
  CHECK(std::abs(l_value(QuadraticCharacter(-4), 2.0).value - catalan) <= 1e-12);
}

TEST_CASE("L(2) by Hurwitz decomposition matches the direct series") {
  std::mt19937_64 rng(17);
  const auto discs = enumerate_fundamental_discriminants(100);
  std::uniform_int_distribution<std::size_t> pick(0, discs.size() - 1);
  for (int i = 0; i < 10; ++i) {
    const std::int64_t d = discs[pick(rng)];
    const auto series = oracle::direct_l2(d);
    const auto r = l_value(QuadraticCharacter(d), 2.0);
    INFO("d = " << d);
    CHECK(std::abs(r.value - series.value) <= 1e-10);
    CHECK(std::abs(r.value - series.value) <= r.err + series.err);
  }
}

TEST_CASE("complex L values") {
  const auto r = l_value(QuadraticCharacter(5), cplx(0.5, 14.0));
  CHECK(rel(r.value, cplx(4.24158395996044573641450151483, -0.247729709280757745183561993074)) < 1e-13);
  CHECK(r.err < 1e-12);
  // real and complex paths agree on the real axis
  for (std::int64_t d : {-3, -4, 5, -7, 8, 12, -163}) {
    const QuadraticCharacter chi(d);
    for (double s : {0.3, 0.9, 1.0, 1.7, 3.0}) {
      const auto a = l_value(chi, s);
      const auto b = l_value(chi, cplx(s, 0.0));
      CHECK(std::abs(a.value - b.value.real()) <= a.err + b.err);
    }
  }
}

TEST_CASE("product characters") {
  const QuadraticCharacter m4(-4), m3(-3), m8(-8), m15(-15), five(5);
  // chi_-4 chi_-3 is the primitive character of conductor 12
  for (const cplx s : {cplx(2, 0), cplx(0.7, 3), cplx(1, 0), cplx(0.95, 0)}) {
    CHECK(rel(l_value(ProductCharacter(m4, m3), s).value, l_value(QuadraticCharacter(12), s).value) < 1e-12);
    // chi_-3 chi_-15 = chi_5 away from 3: L = L(s, chi_5) (1 - chi_5(3) 3^{-s})
    const cplx euler = 1.0 - static_cast<double>(five.value(3)) * std::pow(3.0, -s);
    CHECK(rel(l_value(ProductCharacter(m3, m15), s).value, l_value(five, s).value * euler) < 1e-12);
    // chi_-4 chi_-8 coincides with chi_8 (both vanish on even n)
    CHECK(rel(l_value(ProductCharacter(m4, m8), s).value, l_value(QuadraticCharacter(8), s).value) < 1e-12);
  }
}

TEST_CASE("l_value rejects bad input") {
  CHECK_THROWS_AS(l_value(QuadraticCharacter(1), 2.0), DomainError);
  CHECK_THROWS_AS(l_value(ProductCharacter(QuadraticCharacter(-4), QuadraticCharacter(-4)), 2.0), DomainError);
  CHECK_THROWS_AS(l_value(QuadraticCharacter(-4), 0.0), DomainError);
  CHECK_THROWS_AS(l_value(QuadraticCharacter(-4), cplx(-0.5, 3)), DomainError);
  CHECK_THROWS_AS(l_value(ProductCharacter(QuadraticCharacter(-1999), QuadraticCharacter(2001)), 2.0), DomainError);
}

TEST_CASE("f values") {
  const QuadraticCharacter a(-4), b(-3);
  const double expected = oracle::zeta2_closed_form() * oracle::catalan_direct() * oracle::direct_l2(-3).value *
                          oracle::direct_l2(12).value;
  const auto f2 = f_value(a, b, 2.0);
  CHECK(std::abs(f2.value - expected) <= 1e-10);
  CHECK(f2.value == doctest::Approx(1.11798168534773839377707068562).epsilon(1e-13));

  const auto f09 = f_value(a, b, 0.9);
  CHECK(f09.certainly_negative());

  const cplx s(1.4, 7.0);
  const cplx product = zeta(s).value * l_value(a, s).value * l_value(b, s).value * l_value(QuadraticCharacter(12), s).value;
  const auto fc = f_value(a, b, s);
  CHECK(std::abs(fc.value - product) <= fc.err);
  CHECK(fc.err < 1e-11 * std::abs(product));

  CHECK_THROWS_AS(f_value(a, b, 1.0005), PoleError);
  CHECK_THROWS_AS(f_value(a, b, cplx(1.0, 5e-4)), PoleError);
  CHECK_THROWS_AS(f_value(QuadraticCharacter(1), b, 2.0), DomainError);

  // chi1 = chi2: f = zeta(s) L(s,chi)^2 zeta(s) (1 - 2^{-s}) for chi_-4
  const auto deg = f_value(a, a, 2.0);
  const double z2 = oracle::zeta2_closed_form(), g = oracle::catalan_direct();
  CHECK(deg.value == doctest::Approx(z2 * g * g * z2 * 0.75).epsilon(1e-12));
}

TEST_CASE("residue lambda") {
  const QuadraticCharacter a(-4), b(-3);
  const auto lam = residue_lambda(a, b);
  const double expected = oracle::leibniz_pi_over_4() * oracle::l1_closed_form_minus3() * l_value(QuadraticCharacter(12), 1.0).value;
  CHECK(lam.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(lam.certainly_positive());
  CHECK(residue_lambda(b, a).value == doctest::Approx(lam.value).epsilon(1e-14));
  for (std::int64_t d1 : {-3, -4, 5, -7, 8, -8, 12, -15}) {
    for (std::int64_t d2 : {-3, 5, -19, 21, -23}) {
      if (d1 == d2) continue;
      const QuadraticCharacter c1(d1), c2(d2);
      const auto l = residue_lambda(c1, c2);
      const double q1 = static_cast<double>(c1.modulus()), q2 = static_cast<double>(c2.modulus());
      CHECK(l.value > 0);
      CHECK(l.value <= (3 + std::log(q1)) * (3 + std::log(q2)) * (3 + std::log(q1 * q2)));
    }
  }
  CHECK_THROWS_AS(residue_lambda(a, a), DomainError);
  CHECK_THROWS_AS(residue_lambda(QuadraticCharacter(1), a), DomainError);
}

TEST_CASE("explicit L(1) bound") {
  CHECK(l1_explicit_bound(QuadraticCharacter(-3)) == doctest::Approx(4.0986).epsilon(1e-4));
  CHECK(oracle::leibniz_pi_over_4() <= l1_explicit_bound(QuadraticCharacter(-4)));
  for (std::int64_t d : enumerate_fundamental_discriminants(1000)) {
    const QuadraticCharacter chi(d);
    const auto r = l_value(chi, 1.0);
    REQUIRE_MESSAGE(std::abs(r.value) + r.err <= l1_explicit_bound(chi), "d = " << d);
  }
  CHECK_THROWS_AS(l1_explicit_bound(QuadraticCharacter(1)), DomainError);
}

TEST_CASE("L(1) is positive for |d| <= 2000") {
  for (std::int64_t d : enumerate_fundamental_discriminants(2000))
    REQUIRE_MESSAGE(l_value(QuadraticCharacter(d), 1.0).certainly_positive(), "d = " << d);
}

TEST_CASE("real zero scans") {
  const auto r4 = find_real_zeros(QuadraticCharacter(-4), 0.5, 0.999, 1e-3, 1e-10);
  CHECK(r4.zeros.empty());
  CHECK(r4.discriminant == -4);
  CHECK(r4.grid_step == 1e-3);
  CHECK(r4.refined_tol == 1e-10);
  CHECK(find_real_zeros(QuadraticCharacter(-3), 0.8, 0.999, 1e-3, 1e-10).zeros.empty());
  // dense-grid oracle: L(s, chi_-4) > 0 on the interval
  for (double s = 0.5; s <= 0.999; s += 1e-2) CHECK(l_value(QuadraticCharacter(-4), s).certainly_positive());

  const auto prod = find_real_zeros(ProductCharacter(QuadraticCharacter(-4), QuadraticCharacter(5)), 0.5, 0.999, 1e-2, 1e-10);
  CHECK(prod.discriminant == -20);
  CHECK(prod.zeros.empty());

  CHECK_THROWS_AS(find_real_zeros(QuadraticCharacter(-4), 0.9, 0.8, 1e-3, 1e-10), DomainError);
  CHECK_THROWS_AS(find_real_zeros(QuadraticCharacter(-4), 0.9, 0.9, 1e-3, 1e-10), DomainError);
  CHECK_THROWS_AS(find_real_zeros(QuadraticCharacter(-4), 0.5, 0.9995, 1e-3, 1e-10), DomainError);
  CHECK_THROWS_AS(find_real_zeros(QuadraticCharacter(-4), 0.5, 0.9, 0.0, 1e-10), DomainError);
}

TEST_CASE("sign-change refinement on synthetic functions") {
  const auto two = sign_change_zeros([](double s) { return (s - 0.7) * (s - 0.93); }, 0.5, 0.999, 1e-3, 1e-13);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(two[1] == doctest::Approx(0.93).epsilon(1e-12));
  // node exactly on a root
  const auto on_node = sign_change_zeros([](double s) { return s - 0.75; }, 0.5, 1.0, 0.25, 1e-14);
  REQUIRE(on_node.size() == 1);
  CHECK(on_node[0] == 0.75);
  // a touching root is invisible to a sign-change scan
  CHECK(sign_change_zeros([](double s) { return (s - 0.8003) * (s - 0.8003); }, 0.5, 0.999, 1e-3, 1e-13).empty());
  // a steep function terminates on bracket width
  const auto steep = sign_change_zeros([](double s) { return 1e20 * (s - 0.6180339887); }, 0.5, 0.9, 1e-2, 1e-30);
  REQUIRE(steep.size() == 1);
  CHECK(steep[0] == doctest::Approx(0.6180339887).epsilon(1e-14));
  CHECK_THROWS_AS(sign_change_zeros([](double s) { return s; }, 1.0, 0.5, 1e-3, 1e-10), DomainError);
}

TEST_CASE("beta selection") {
  const QuadraticCharacter a(-4), b(-3);
  const auto sel = select_beta(a, b, 0.2);
  CHECK(sel.mode == BetaMode::negative);
  CHECK(to_string(sel.mode) == "negative");
  CHECK(sel.beta == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(sel.f.certainly_negative());
  for (double eps : {0.5, 0.1, 0.01, 0.002}) {
    const auto s = select_beta(a, b, eps);
    CHECK(s.beta > 1 - eps);
    CHECK(s.beta <= kBetaCeiling);
    CHECK(s.f.value <= 0.0);
  }
  CHECK_THROWS_AS(select_beta(a, b, 0.0), DomainError);
  CHECK_THROWS_AS(select_beta(a, b, 0.6), DomainError);
  CHECK_THROWS_AS(select_beta(a, b, 5e-4), DomainError);
  CHECK_THROWS_AS(select_beta(a, a, 0.2), DomainError);
}

TEST_CASE("negative mode gives f < 0 across pairs") {
  for (std::int64_t d1 : {-3, -4, 5, -7, 8}) {
    for (std::int64_t d2 : {-8, 12, 13, -15}) {
      const auto s = select_beta(QuadraticCharacter(d1), QuadraticCharacter(d2), 0.1);
      if (s.mode == BetaMode::negative) CHECK(s.f.certainly_negative());
    }
  }
}
