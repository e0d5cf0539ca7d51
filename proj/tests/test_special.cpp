#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "siegel/error.hpp"
#include "siegel/special.hpp"

using namespace siegel;
using Big = boost::multiprecision::cpp_dec_float_50;
using lcplx = std::complex<long double>;

namespace {

constexpr double pi = std::numbers::pi;

// B_0..B_m from the binomial recurrence at 50 digits.
std::vector<long double> bernoulli(int m) {
  std::vector<Big> b(static_cast<std::size_t>(m + 1));
  b[0] = 1;
  for (int n = 1; n <= m; ++n) {
    Big acc = 0, binom = 1;  // binom = C(n+1, k)
    for (int k = 0; k < n; ++k) {
      acc += binom * b[static_cast<std::size_t>(k)];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(n)] = -acc / (n + 1);
  }
  std::vector<long double> out;
  for (const auto& v : b) out.push_back(v.convert_to<long double>());
  return out;
}

const std::vector<long double>& bern() {
  static const auto b = bernoulli(52);
  return b;
}

// Euler-Maclaurin with 24 corrections and a cutoff twice the library's.
lcplx oracle_hurwitz(lcplx s, long double a, std::int64_t cutoff) {
  const std::int64_t N = 2 * cutoff + 20;
  lcplx sum = 0;
  for (std::int64_t n = 0; n < N; ++n) sum += std::pow(lcplx(n + a), -s);
  const lcplx Na(N + a);
  sum += std::pow(Na, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(Na, -s);
  lcplx rising = s;  // (s)_{2k-1}
  long double fact = 2.0L;
  for (int k = 1; k <= 24; ++k) {
    sum += bern()[static_cast<std::size_t>(2 * k)] / fact * rising * std::pow(Na, -s - (2.0L * k - 1));
    rising *= (s + (2.0L * k - 1)) * (s + 2.0L * k);
    fact *= (2.0L * k + 1) * (2.0L * k + 2);
  }
  return sum;
}

// log Gamma by upward shift and a 20-term Stirling series.
lcplx oracle_log_gamma(lcplx z) {
  lcplx shift = 0;
  while (std::abs(z) < 40.0L || z.real() < 20.0L) {
    shift += std::log(z);
    z += 1.0L;
  }
  const long double half_log_2pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  lcplx r = (z - 0.5L) * std::log(z) - z + half_log_2pi;
  lcplx zp = z;
  for (int k = 1; k <= 20; ++k) {
    r += bern()[static_cast<std::size_t>(2 * k)] / ((2.0L * k) * (2.0L * k - 1)) / zp;
    zp *= z * z;
  }
  return r - shift;
}

lcplx oracle_gamma(lcplx z) {
  if (z.real() < 0.5L) {
    const long double p = std::numbers::pi_v<long double>;
    return p / (std::sin(p * z) * std::exp(oracle_log_gamma(1.0L - z)));
  }
  return std::exp(oracle_log_gamma(z));
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("gamma examples") {
  CHECK(gamma(cplx(1, 0)).value.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma(cplx(5, 0)).value.real() == doctest::Approx(24.0).epsilon(1e-14));
  // Gamma(1/2)^2 = pi / sin(pi/2)
  const double half = gamma(cplx(0.5, 0)).value.real();
  CHECK(half * half == doctest::Approx(pi / std::sin(pi / 2)).epsilon(1e-14));
  CHECK(half == doctest::Approx(1.7724538509).epsilon(1e-10));
}

TEST_CASE("gamma matches frozen high-precision values") {
  CHECK(rel(gamma(cplx(0.3, 7.5)).value, cplx(6.73621544856935530772604025785e-6, 1.09017934043642705988266272221e-5)) <
        1e-12);
  CHECK(rel(gamma(cplx(-2.7, 1.2)).value,
            cplx(-0.0301247818960743044450019923029, -0.0309685592529743694569929492011)) < 1e-12);
  CHECK(rel(gamma(cplx(12.5, -30)).value,
            cplx(0.00516713431504848923457450470017, -0.00340238418822724882020439637461)) < 1e-12);
}

TEST_CASE("gamma against std::tgamma on the real line") {
  for (double x = -9.75; x <= 100.0; x += 0.37) {
    if (std::abs(x - std::round(x)) < 1e-3 && x <= 0) continue;
    const double expected = std::tgamma(x);
    const auto r = gamma(cplx(x, 0));
    REQUIRE_MESSAGE(std::abs(r.value.real() - expected) <= 1e-12 * std::abs(expected), "x = " << x);
    REQUIRE(r.value.imag() == 0.0);
  }
}

TEST_CASE("gamma against the Stirling-series oracle for |s| <= 100") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> re(-60.0, 60.0), im(-60.0, 60.0);
  int checked = 0;
  while (checked < 400) {
    const cplx s(re(rng), im(rng));
    if (std::abs(s) > 100.0) continue;
    if (s.real() < 0 && std::abs(s.imag()) < 0.2 && std::abs(s.real() - std::round(s.real())) < 0.1) continue;
    const auto r = gamma(s);
    const lcplx o = oracle_gamma(lcplx(s.real(), s.imag()));
    const cplx expected(static_cast<double>(o.real()), static_cast<double>(o.imag()));
    if (!std::isfinite(std::abs(expected)) || std::abs(expected) < 1e-300) continue;
    REQUIRE_MESSAGE(rel(r.value, expected) <= 1e-12, "s = " << s.real() << " + " << s.imag() << "i");
    REQUIRE(r.err <= 1e-12 * std::abs(r.value));
    ++checked;
  }
}

TEST_CASE("gamma recurrence and reflection") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> radius(0.0, 50.0), angle(0.0, 2 * pi);
  int checked = 0;
  while (checked < 500) {
    const cplx s = std::polar(radius(rng), angle(rng));
    const double nearest = std::round(s.real());
    if (nearest <= 0.0 && std::abs(s - cplx(nearest, 0)) < 0.1) continue;
    if (std::abs(s + 1.0) > 50.0 && s.real() > 0) continue;
    const cplx lhs = gamma(s + 1.0).value, rhs = s * gamma(s).value;
    REQUIRE(rel(lhs, rhs) <= 1e-10);
    ++checked;
  }
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  for (int i = 0; i < 200; ++i) {
    const double s = unit(rng);
    const double product = gamma(cplx(s, 0)).value.real() * gamma(cplx(1 - s, 0)).value.real() * std::sin(pi * s) / pi;
    REQUIRE(std::abs(product - 1.0) <= 1e-9);
  }
}

TEST_CASE("gamma poles and determinism") {
  CHECK_THROWS_AS(gamma(cplx(0, 0)), PoleError);
  CHECK_THROWS_AS(gamma(cplx(-3, 1e-13)), PoleError);
  CHECK_NOTHROW(gamma(cplx(-3, 1e-6)));
  CHECK_THROWS_AS(gamma(cplx(200, 0)), OverflowError);
  const auto a = gamma(cplx(0.37, -12.1)), b = gamma(cplx(0.37, -12.1));
  CHECK(a.value == b.value);
  CHECK(a.err == b.err);
}

TEST_CASE("log_gamma stays finite where gamma underflows") {
  const cplx lg = log_gamma(cplx(0.5, 400.0));
  const lcplx o = oracle_log_gamma(lcplx(0.5L, 400.0L));
  CHECK(std::abs(lg.real() - static_cast<double>(o.real())) < 1e-10 * std::abs(lg.real()));
}

TEST_CASE("stirling decay ratio") {
  for (double sigma : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
    for (double t : {10.0, 20.0, 50.0}) {
      const double r = stirling_decay_ratio(sigma, t);
      CHECK(r >= 2.3);
      CHECK(r <= 2.7);
      // oracle: |Gamma| from the Stirling series
      const double o = std::exp(static_cast<double>(oracle_log_gamma(lcplx(sigma, t)).real()) -
                                (sigma - 0.5) * std::log(t) + pi * t / 2);
      CHECK(r == doctest::Approx(o).epsilon(1e-10));
    }
    for (double t : {20.0, 40.0, 80.0}) {
      const double q = stirling_decay_ratio(sigma, 2 * t) / stirling_decay_ratio(sigma, t);
      CHECK(q >= 0.9);
      CHECK(q <= 1.1);
    }
  }
  const double r1 = stirling_decay_ratio(0.5, 30);
  CHECK((r1 >= 2.4 && r1 <= 2.6));
  const double r2 = stirling_decay_ratio(2, 50);
  CHECK((r2 >= 2.4 && r2 <= 2.6));
  CHECK_THROWS_AS(stirling_decay_ratio(0.5, 0.5), DomainError);
}

TEST_CASE("hurwitz zeta closed forms") {
  CHECK(hurwitz_zeta(2.0, 1.0).value == doctest::Approx(pi * pi / 6).epsilon(1e-14));
  CHECK(hurwitz_zeta(2.0, 0.5).value == doctest::Approx((4.0 - 1.0) * pi * pi / 6).epsilon(1e-14));
  CHECK(hurwitz_zeta(2.0, 0.5).value == doctest::Approx(pi * pi / 2).epsilon(1e-14));
  CHECK(hurwitz_zeta(0.5, 1.0).value == doctest::Approx(-1.4603545088095868).epsilon(1e-14));
  // zeta(s, 1/4) - zeta(s, 3/4) = 4^s L(s, chi_-4); at s = 2 that is 16 G
  const double catalan = 0.915965594177219015054603514932;
  CHECK(hurwitz_zeta(2.0, 0.25).value - hurwitz_zeta(2.0, 0.75).value == doctest::Approx(16 * catalan).epsilon(1e-13));
}

TEST_CASE("hurwitz zeta matches the doubled-order Euler-Maclaurin oracle") {
  const std::vector<cplx> points{{0.5, 0}, {0.01, 0}, {0.999, 0}, {1.5, 0},  {2.4, -15}, {0.75, 40},
                                 {0.9, 14}, {3.0, 120}, {0.2, 200}, {1.0, 1}, {1.9, 30},  {1.001, 0}};
  const std::vector<double> alphas{1.0, 0.5, 1.0 / 7, 0.3, 0.999, 1e-3, 0.25};
  for (const cplx& s : points) {
    const HurwitzSeries<cplx> series(s);
    for (double a : alphas) {
      const auto r = hurwitz_zeta(s, a);
      const lcplx o = oracle_hurwitz(lcplx(s.real(), s.imag()), a, series.cutoff());
      const cplx expected(static_cast<double>(o.real()), static_cast<double>(o.imag()));
      const double diff = std::abs(r.value - expected);
      INFO("s = " << s.real() << " + " << s.imag() << "i, a = " << a);
      CHECK(diff <= r.err + 1e-15 * std::abs(expected));
      CHECK(diff <= 1e-12 * std::max(1.0, std::abs(expected)));
      // The estimate includes a worst-case phase rounding term that grows with |t| log N;
      // contours and scans stay within |t| <= 60.
      if (std::abs(s.imag()) <= 60.0) CHECK(r.err <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("hurwitz zeta matches frozen high-precision values") {
  CHECK(rel(hurwitz_zeta(cplx(0.75, 40), 0.3).value,
            cplx(-2.73397272472498989975314590685, -1.48496351682368291557395845354)) < 1e-13);
  CHECK(rel(hurwitz_zeta(cplx(2.4, -15), 1.0 / 7).value,
            cplx(-65.3906851513152969038968835717, 85.0009752843445833619520508461)) < 1e-13);
}

TEST_CASE("hurwitz zeta: real and complex paths agree, series class agrees") {
  for (double s : {0.3, 0.9, 1.2, 2.0, 5.0}) {
    for (double a : {0.1, 0.5, 1.0}) {
      const auto real = hurwitz_zeta(s, a);
      const auto comp = hurwitz_zeta(cplx(s, 0), a);
      CHECK(std::abs(real.value - comp.value.real()) <= real.err + comp.err);
      CHECK(HurwitzSeries<double>(s).full(a).value == real.value);
    }
  }
}

TEST_CASE("regularized hurwitz zeta") {
  constexpr double euler_gamma = 0.57721566490153286060651209;
  CHECK(hurwitz_zeta_regular(1.0, 1.0).value == doctest::Approx(euler_gamma).epsilon(1e-14));
  CHECK(hurwitz_zeta_regular(1.0, 0.5).value == doctest::Approx(euler_gamma + 2 * std::log(2.0)).epsilon(1e-14));
  // continuity across s = 1 against the full function at s = 1 +- 1e-3
  for (double a : {0.2, 0.7, 1.0}) {
    const double s = 1.001;
    CHECK(hurwitz_zeta_regular(s, a).value == doctest::Approx(hurwitz_zeta(s, a).value - 1.0 / (s - 1)).epsilon(1e-10));
    const cplx sc(1.0, 1e-3);
    CHECK(rel(hurwitz_zeta_regular(sc, a).value, hurwitz_zeta(sc, a).value - 1.0 / (sc - 1.0)) < 1e-9);
  }
}

TEST_CASE("hurwitz zeta domain checks") {
  CHECK_THROWS_AS(hurwitz_zeta(1.0 + 1e-7, 0.5), PoleError);
  CHECK_THROWS_AS(hurwitz_zeta(cplx(1.0, 5e-7), 0.5), PoleError);
  CHECK_NOTHROW(hurwitz_zeta(1.0 + 2e-6, 0.5));
  CHECK_THROWS_AS(hurwitz_zeta(-0.5, 0.5), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 1.5), DomainError);
}

TEST_CASE("zeta examples and negativity") {
  CHECK(zeta(2.0).value == doctest::Approx(pi * pi / 6).epsilon(1e-14));
  CHECK(zeta(0.5).value == doctest::Approx(-1.4603545088).epsilon(1e-10));
  CHECK(zeta(0.9).value < 0);
  CHECK(std::abs(zeta(cplx(0.5, 14.134725141734693)).value) < 1e-8);     // first nontrivial zero
  for (int k = 1; k <= 19; ++k) {
    const double sigma = 0.05 * k;
    const auto r = zeta(sigma);
    CHECK(r.certainly_negative());
    CHECK(hurwitz_zeta(sigma, 1.0).value == r.value);
  }
}

TEST_CASE("fractional-part integral route") {
  for (int k = 1; k <= 9; ++k) {
    const double sigma = 0.1 * k;
    const auto a = zeta_via_fractional_part_integral(sigma);
    const auto b = zeta(sigma);
    CHECK(std::abs(a.value - b.value) <= 1e-9);
    CHECK(std::abs(a.value - b.value) <= a.err + b.err);
    CHECK(a.err <= 1e-10);
    CHECK(a.value <= sigma / (sigma - 1));
  }
  CHECK(zeta_via_fractional_part_integral(0.5).value == doctest::Approx(-1.4603545).epsilon(1e-7));
  CHECK(zeta_via_fractional_part_integral(0.9).value <= -9.0);
  CHECK(zeta_via_fractional_part_integral(0.01).value == doctest::Approx(-0.509290714039839925).epsilon(1e-10));
  CHECK(zeta(0.01).value == doctest::Approx(-0.509290714039839925).epsilon(1e-12));
  CHECK_THROWS_AS(zeta_via_fractional_part_integral(1.0), DomainError);
  CHECK_THROWS_AS(zeta_via_fractional_part_integral(0.0), DomainError);
}
