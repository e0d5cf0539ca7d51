#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "siegel/mellin.hpp"
#include "siegel/special.hpp"

namespace siegel {

// 1 <= A(x, beta) <= e S(x, beta), with 1e-9 slack on the lower edge and the
// combined error bound on the upper one.
struct SandwichReport {
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  double x = 0.0;
  double beta = 0.0;
  double A = 0.0;
  double S = 0.0;
  bool passed = false;
};

SandwichReport verify_sandwich(std::int64_t d1, std::int64_t d2, double x, double beta);

inline constexpr double kDefaultResidueSpread = 1e3;

struct ResidueDecayReport {
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  double beta = 0.0;
  double threshold = kDefaultResidueSpread;  // allowed sup/inf of |R| x^beta
  double lambda = 0.0;
  double f_beta = 0.0;
  std::vector<ResidueRow> rows;
  bool passed = false;
  std::string failure;  // empty when passed
};

// |R(x)| x^beta stays within a factor `threshold` across the grid, and |R|
// at the largest x is below |R| at the smallest.
ResidueDecayReport verify_residue_decay(std::int64_t d1, std::int64_t d2, double beta,
                                        std::span<const double> x_grid,
                                        double threshold = kDefaultResidueSpread);

struct ScanRow {
  std::int64_t d = 0;
  std::int64_t q = 0;
  double L1 = 0.0;
  double weighted = 0.0;  // L1 * q^epsilon
};

struct ScanReport {
  double epsilon = 0.0;
  std::int64_t limit = 0;
  std::vector<ScanRow> rows;  // ordered as enumerate_fundamental_discriminants
  double min_weighted = 0.0;
  std::int64_t argmin_d = 0;
};

// L(1, chi_d) for every fundamental 1 < |d| <= limit. Rows are computed on
// `jobs` threads (0 = hardware concurrency) and merged in enumeration order.
// Throws InvariantError on any L1 not certified positive.
ScanReport siegel_scan(std::int64_t limit, double epsilon, unsigned jobs = 0);

struct LemmaCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;  // wall time; excluded from machine-readable output
};

enum class SuiteStatus { passed, failed, empty };

struct LemmaSummary {
  std::vector<LemmaCheck> checks;
  SuiteStatus status = SuiteStatus::empty;
  // 0 passed, 1 failed, 2 nothing was checked.
  int exit_code() const;
};

// Names accepted in LemmaSuiteConfig::checks, in execution order.
const std::vector<std::string>& lemma_check_names();

struct LemmaSuiteConfig {
  std::set<std::string> checks{lemma_check_names().begin(), lemma_check_names().end()};
  std::int64_t l1_bound_limit = 1000;
  std::int64_t positivity_limit = 10000;
  std::int64_t zero_scan_limit = 100;
  unsigned jobs = 0;
  // Fault injection: the gamma-recurrence check evaluates Gamma with these coefficients.
  std::optional<LanczosCoefficients> gamma_coefficients;
};

LemmaSummary lemma_suite(const LemmaSuiteConfig& config = {});

}  // namespace siegel
