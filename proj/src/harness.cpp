#include "siegel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "siegel/characters.hpp"
#include "siegel/coeffs.hpp"
#include "siegel/error.hpp"
#include "siegel/lfun.hpp"
#include "siegel/report.hpp"

namespace siegel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSandwichLowerSlack = 1e-9;
constexpr double kSmoothedTol = 1e-13;

void check_beta(double beta, const char* where) {
  if (!(beta > 0.0 && beta < kBetaCeiling))
    throw DomainError(std::string(where) + ": beta must lie in (0, 1 - 1e-3)");
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [0, n) on `jobs` threads; rethrows the first failure by index.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

SandwichReport verify_sandwich(std::int64_t d1, std::int64_t d2, double x, double beta) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("verify_sandwich: x must be >= 1");
  check_beta(beta, "verify_sandwich");
  const QuadraticCharacter chi1(d1), chi2(d2);

  const std::int64_t M = smoothed_sum_terms(x, beta, kSmoothedTol);
  const auto length = std::max(M, static_cast<std::int64_t>(std::floor(x)));
  const auto table = coefficients_of_f(chi1, chi2, length);

  SandwichReport r;
  r.d1 = d1;
  r.d2 = d2;
  r.x = x;
  r.beta = beta;
  r.A = partial_sum_A(table, x, beta);
  const auto S = smoothed_sum_S(table, x, beta, kSmoothedTol);
  r.S = S.value;
  const double e = std::numbers::e;
  const double upper_slack = e * S.err + 16.0 * kEps * r.A;
  r.passed = (r.A >= 1.0 - kSandwichLowerSlack) && (r.A <= e * r.S + upper_slack);
  return r;
}

ResidueDecayReport verify_residue_decay(std::int64_t d1, std::int64_t d2, double beta,
                                        std::span<const double> x_grid, double threshold) {
  if (x_grid.empty()) throw DomainError("verify_residue_decay: empty grid");
  if (!(threshold >= 1.0)) throw DomainError("verify_residue_decay: threshold must be >= 1");
  check_beta(beta, "verify_residue_decay");
  const QuadraticCharacter chi1(d1), chi2(d2);
  const auto decomposition = residue_decomposition_check(chi1, chi2, beta, x_grid);

  ResidueDecayReport r;
  r.d1 = d1;
  r.d2 = d2;
  r.beta = beta;
  r.threshold = threshold;
  r.lambda = decomposition.lambda.value;
  r.f_beta = decomposition.f_beta.value;
  r.rows = decomposition.rows;

  const auto by_scaled = [](const ResidueRow& a, const ResidueRow& b) {
    return std::abs(a.R_scaled) < std::abs(b.R_scaled);
  };
  const auto& lo = *std::min_element(r.rows.begin(), r.rows.end(), by_scaled);
  const auto& hi = *std::max_element(r.rows.begin(), r.rows.end(), by_scaled);
  const auto by_x = [](const ResidueRow& a, const ResidueRow& b) { return a.x < b.x; };
  const auto& first = *std::min_element(r.rows.begin(), r.rows.end(), by_x);
  const auto& last = *std::max_element(r.rows.begin(), r.rows.end(), by_x);

  r.passed = true;
  if (std::abs(hi.R_scaled) > threshold * std::abs(lo.R_scaled)) {
    r.passed = false;
    r.failure = "|R| x^beta spread exceeds " + fmt(threshold) + ": max at x = " + fmt(hi.x) + ", min at x = " +
                fmt(lo.x);
  } else if (r.rows.size() > 1 && !(std::abs(last.R) < std::abs(first.R))) {
    r.passed = false;
    r.failure = "|R| does not decrease: |R(" + fmt(last.x) + ")| >= |R(" + fmt(first.x) + ")|";
  }
  return r;
}

ScanReport siegel_scan(std::int64_t limit, double epsilon, unsigned jobs) {
  if (limit < 3 || limit > 100000) throw DomainError("siegel_scan: limit must lie in [3, 1e5]");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw DomainError("siegel_scan: epsilon must lie in (0, 1/2]");
  const auto discriminants = enumerate_fundamental_discriminants(limit);

  ScanReport r;
  r.epsilon = epsilon;
  r.limit = limit;
  r.rows.resize(discriminants.size());
  parallel_for(discriminants.size(), jobs, [&](std::size_t i) {
    const QuadraticCharacter chi(discriminants[i]);
    const auto L1 = l_value(chi, 1.0);
    if (!L1.certainly_positive())
      throw InvariantError("siegel_scan: L(1, chi_" + std::to_string(chi.discriminant()) +
                           ") = " + fmt(L1.value) + " +- " + fmt(L1.err) + " is not certified positive");
    const double q = static_cast<double>(chi.modulus());
    r.rows[i] = ScanRow{chi.discriminant(), chi.modulus(), L1.value, L1.value * std::pow(q, epsilon)};
  });

  r.min_weighted = std::numeric_limits<double>::infinity();
  for (const auto& row : r.rows) {
    if (row.weighted < r.min_weighted) {
      r.min_weighted = row.weighted;
      r.argmin_d = row.d;
    }
  }
  return r;
}

int LemmaSummary::exit_code() const {
  switch (status) {
    case SuiteStatus::passed:
      return 0;
    case SuiteStatus::failed:
      return 1;
    case SuiteStatus::empty:
      break;
  }
  return 2;
}

const std::vector<std::string>& lemma_check_names() {
  static const std::vector<std::string> names = {"gamma-recurrence", "gamma-decay", "mellin-identity",
                                                 "zeta-negativity",  "l1-bound",    "positivity",
                                                 "zero-free"};
  return names;
}

namespace {

struct CheckOutcome {
  bool passed;
  std::string detail;
};

CheckOutcome check_gamma_recurrence(const LemmaSuiteConfig& config) {
  const LanczosCoefficients& coeffs = config.gamma_coefficients ? *config.gamma_coefficients : lanczos_coefficients();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coord(-50.0, 50.0), unit(0.0, 1.0);
  double worst_recurrence = 0.0;
  int tested = 0;
  while (tested < 500) {
    const cplx s(coord(rng), coord(rng));
    if (std::abs(s) > 50.0) continue;
    const double nearest = std::round(s.real());
    if (nearest <= 0.0 && std::abs(s - cplx(nearest, 0.0)) < 0.1) continue;
    const cplx lhs = gamma_with(coeffs, s + 1.0).value;
    const cplx rhs = s * gamma_with(coeffs, s).value;
    worst_recurrence = std::max(worst_recurrence, std::abs(lhs - rhs) / std::abs(rhs));
    ++tested;
  }
  double worst_reflection = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double s = unit(rng);
    if (s < 1e-3 || s > 1.0 - 1e-3) continue;
    const double product = (gamma_with(coeffs, s).value * gamma_with(coeffs, 1.0 - s).value).real() *
                           std::sin(std::numbers::pi * s) / std::numbers::pi;
    worst_reflection = std::max(worst_reflection, std::abs(product - 1.0));
  }
  return {worst_recurrence <= 1e-10 && worst_reflection <= 1e-9,
          "max recurrence rel err " + fmt(worst_recurrence) + "; max reflection err " + fmt(worst_reflection)};
}

CheckOutcome check_gamma_decay() {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double sigma : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
    for (double t : {10.0, 20.0, 50.0}) {
      const double r = stirling_decay_ratio(sigma, t);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {lo >= 2.3 && hi <= 2.7, "ratio range [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

CheckOutcome check_mellin() {
  const ContourSpec spec{2.0, 40.0, 0.01};
  double worst = 0.0, worst_err = 0.0;
  bool ok = true;
  for (double y : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto r = inverse_mellin_exp(y, spec);
    const double diff = std::abs(r.value - std::exp(-y));
    ok = ok && diff <= r.err && r.err <= 1e-6;
    worst = std::max(worst, diff);
    worst_err = std::max(worst_err, r.err);
  }
  return {ok, "max |I - e^-y| " + fmt(worst) + "; max reported err " + fmt(worst_err)};
}

CheckOutcome check_zeta_negativity() {
  bool ok = true;
  double worst_gap = 0.0;
  double largest = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 19; ++k) {
    const double sigma = 0.05 * k;
    const auto em = zeta(sigma);
    const auto fp = zeta_via_fractional_part_integral(sigma);
    ok = ok && em.certainly_negative() && fp.value <= sigma / (sigma - 1.0);
    worst_gap = std::max(worst_gap, std::abs(em.value - fp.value));
    largest = std::max(largest, em.value);
  }
  ok = ok && worst_gap <= 1e-9;
  return {ok, "max zeta " + fmt(largest) + "; max path disagreement " + fmt(worst_gap)};
}

CheckOutcome check_l1_bound(std::int64_t limit) {
  double worst_ratio = 0.0;
  std::int64_t worst_d = 0;
  for (std::int64_t d : enumerate_fundamental_discriminants(limit)) {
    const QuadraticCharacter chi(d);
    const auto L = l_value(chi, 1.0);
    const double ratio = (std::abs(L.value) + L.err) / l1_explicit_bound(chi);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_d = d;
    }
  }
  return {worst_ratio <= 1.0, "max |L(1)|/(3 + log q) " + fmt(worst_ratio) + " at d = " + std::to_string(worst_d)};
}

CheckOutcome check_positivity(std::int64_t limit, unsigned jobs) {
  const auto scan = siegel_scan(limit, 0.1, jobs);
  double min_l1 = std::numeric_limits<double>::infinity();
  std::int64_t at = 0;
  for (const auto& row : scan.rows) {
    if (row.L1 < min_l1) {
      min_l1 = row.L1;
      at = row.d;
    }
  }
  return {min_l1 > 0.0, std::to_string(scan.rows.size()) + " characters; min L(1) " + fmt(min_l1) +
                            " at d = " + std::to_string(at)};
}

CheckOutcome check_zero_free(std::int64_t limit, unsigned jobs) {
  const auto ds = enumerate_fundamental_discriminants(limit);
  std::vector<std::size_t> zero_counts(ds.size(), 0);
  parallel_for(ds.size(), jobs, [&](std::size_t i) {
    zero_counts[i] = find_real_zeros(QuadraticCharacter(ds[i]), 0.5, 0.999, 1e-3, 1e-10).zeros.size();
  });
  std::ostringstream with_zeros;
  bool ok = true;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (zero_counts[i] != 0) {
      ok = false;
      with_zeros << ' ' << ds[i];
    }
  }
  return {ok, std::to_string(ds.size()) + " characters scanned on (0.5, 0.999)" +
                  (ok ? std::string("; no sign changes") : "; zeros for d =" + with_zeros.str())};
}

}  // namespace

LemmaSummary lemma_suite(const LemmaSuiteConfig& config) {
  LemmaSummary summary;
  auto run = [&](const std::string& name, const std::function<CheckOutcome()>& body) {
    LemmaCheck check;
    check.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto outcome = body();
      check.passed = outcome.passed;
      check.detail = outcome.detail;
    } catch (const std::exception& e) {
      check.passed = false;
      check.detail = std::string("error: ") + e.what();
    }
    check.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    summary.checks.push_back(std::move(check));
  };

  for (const auto& name : config.checks) {
    if (std::find(lemma_check_names().begin(), lemma_check_names().end(), name) == lemma_check_names().end())
      run(name, [&]() -> CheckOutcome { return {false, "unknown check"}; });
  }
  for (const auto& name : lemma_check_names()) {
    if (!config.checks.contains(name)) continue;
    if (name == "gamma-recurrence") run(name, [&] { return check_gamma_recurrence(config); });
    if (name == "gamma-decay") run(name, [] { return check_gamma_decay(); });
    if (name == "mellin-identity") run(name, [] { return check_mellin(); });
    if (name == "zeta-negativity") run(name, [] { return check_zeta_negativity(); });
    if (name == "l1-bound") run(name, [&] { return check_l1_bound(config.l1_bound_limit); });
    if (name == "positivity") run(name, [&] { return check_positivity(config.positivity_limit, config.jobs); });
    if (name == "zero-free") run(name, [&] { return check_zero_free(config.zero_scan_limit, config.jobs); });
  }

  if (summary.checks.empty()) {
    summary.status = SuiteStatus::empty;
  } else {
    const bool all = std::all_of(summary.checks.begin(), summary.checks.end(),
                                 [](const LemmaCheck& c) { return c.passed; });
    summary.status = all ? SuiteStatus::passed : SuiteStatus::failed;
  }
  return summary;
}

}  // namespace siegel
