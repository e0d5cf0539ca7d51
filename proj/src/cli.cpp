#include "siegel/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "siegel/characters.hpp"
#include "siegel/coeffs.hpp"
#include "siegel/error.hpp"
#include "siegel/harness.hpp"
#include "siegel/lfun.hpp"
#include "siegel/mellin.hpp"
#include "siegel/report.hpp"

namespace siegel::cli {

namespace {

// Raised for input rejected before any computation starts.
struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

void require_fundamental(std::int64_t d, const char* flag) {
  require(d != 1 && is_fundamental_discriminant(d),
          std::string(flag) + " must be a nonprincipal fundamental discriminant, got " + std::to_string(d));
}

void require_beta(double beta) { require(beta > 0.0 && beta < kBetaCeiling, "--beta must lie in (0, 0.999)"); }

struct Common {
  std::string format = "csv";
  std::string out_path;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", common.out_path, "Write data to PATH instead of standard output");
}

Format parse_format(const std::string& s) { return s == "json" ? Format::json : Format::csv; }

// Rendering goes through a buffer so a failed run never leaves a partial file behind.
class Output {
 public:
  Output(const Common& common, std::ostream& stdout_stream)
      : format_(parse_format(common.format)), path_(common.out_path), stdout_(stdout_stream) {}

  std::ostream& stream() { return buffer_; }
  Format format() const { return format_; }

  void flush() {
    if (path_.empty()) {
      stdout_ << buffer_.str();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw InvalidArgument("cannot open --out path " + path_);
    file << buffer_.str();
  }

 private:
  Format format_;
  std::string path_;
  std::ostream& stdout_;
  std::ostringstream buffer_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification toolkit for L(1, chi) lower-bound machinery", "siegel"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  Common common;
  std::int64_t limit = 100, d = -4, d1 = -4, d2 = -3, N = 100;
  std::int64_t d2_product = 0;
  double s = 1.0, t = 0.0, x = 10.0, beta = 0.9, epsilon = 0.1;
  double lo = 0.5, hi = 0.999, step = 1e-3, tol = 1e-10;
  double sigma0 = 2.0, height = 40.0, threshold = kDefaultResidueSpread;
  unsigned jobs = 0;
  std::vector<double> ys = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<double> x_grid = {10.0, 100.0, 1000.0, 10000.0};
  std::vector<double> xs = {5.0, 10.0, 50.0};
  std::string checks_arg = "all";
  std::int64_t l1_limit = 1000, positivity_limit = 10000, zero_limit = 100;
  bool sabotage = false;

  auto* chars = app.add_subcommand("chars", "List fundamental discriminants 1 < |d| <= limit");
  chars->add_option("--limit", limit, "Largest |d|")->capture_default_str();
  add_common(chars, common);

  auto* coeffs = app.add_subcommand("coeffs", "Dirichlet coefficients a_1..a_N of f(s)");
  coeffs->add_option("--d1", d1, "First discriminant")->capture_default_str();
  coeffs->add_option("--d2", d2, "Second discriminant")->capture_default_str();
  coeffs->add_option("--N", N, "Number of coefficients")->capture_default_str();
  add_common(coeffs, common);

  auto* lvalue = app.add_subcommand("lvalue", "L(s, chi_d) by Hurwitz decomposition");
  lvalue->add_option("--d", d, "Discriminant")->capture_default_str();
  lvalue->add_option("--s", s, "Real part of s")->capture_default_str();
  lvalue->add_option("--t", t, "Imaginary part of s")->capture_default_str();
  add_common(lvalue, common);

  auto* fvalue = app.add_subcommand("fvalue", "f(s) = zeta L L L");
  fvalue->add_option("--d1", d1, "First discriminant")->capture_default_str();
  fvalue->add_option("--d2", d2, "Second discriminant")->capture_default_str();
  fvalue->add_option("--s", s, "Real part of s")->capture_default_str();
  fvalue->add_option("--t", t, "Imaginary part of s")->capture_default_str();
  add_common(fvalue, common);

  auto* zeros = app.add_subcommand("zeros", "Real sign-change zeros of L(s, chi_d) on (lo, hi)");
  zeros->add_option("--d", d, "Discriminant")->capture_default_str();
  zeros->add_option("--d2", d2_product, "Scan chi_d * chi_d2 instead (0 = off)")->capture_default_str();
  zeros->add_option("--lo", lo, "Left end")->capture_default_str();
  zeros->add_option("--hi", hi, "Right end")->capture_default_str();
  zeros->add_option("--step", step, "Grid step")->capture_default_str();
  zeros->add_option("--tol", tol, "Bisection stops once |L| <= tol")->capture_default_str();
  add_common(zeros, common);

  auto* mellin = app.add_subcommand("mellin-check", "Inverse Mellin identity e^{-y} = (1/2 pi i) int y^{-s} Gamma(s) ds");
  mellin->add_option("--y", ys, "Values of y")->capture_default_str();
  mellin->add_option("--sigma0", sigma0, "Abscissa")->capture_default_str();
  mellin->add_option("--T", height, "Truncation height")->capture_default_str();
  mellin->add_option("--step", step, "Trapezoid step")->capture_default_str();
  mellin->add_option("--tol", tol, "Allowed |quadrature - e^{-y}|")->capture_default_str();
  add_common(mellin, common);

  auto* contour = app.add_subcommand("contour", "Contour integral I against the smoothed sum S");
  contour->add_option("--d1", d1, "First discriminant")->capture_default_str();
  contour->add_option("--d2", d2, "Second discriminant")->capture_default_str();
  contour->add_option("--x", xs, "Values of x")->capture_default_str();
  contour->add_option("--beta", beta, "Shift beta")->capture_default_str();
  contour->add_option("--sigma0", sigma0, "Abscissa")->capture_default_str();
  contour->add_option("--T", height, "Truncation height")->capture_default_str();
  contour->add_option("--step", step, "Trapezoid step")->capture_default_str();
  contour->add_option("--tol", tol, "Allowed relative |I - S|")->capture_default_str();
  add_common(contour, common);

  auto* sandwich = app.add_subcommand("sandwich", "Check 1 <= A(x, beta) <= e S(x, beta)");
  sandwich->add_option("--d1", d1, "First discriminant")->capture_default_str();
  sandwich->add_option("--d2", d2, "Second discriminant")->capture_default_str();
  sandwich->add_option("--x", x, "Cutoff x")->capture_default_str();
  sandwich->add_option("--beta", beta, "Exponent beta")->capture_default_str();
  add_common(sandwich, common);

  auto* residue = app.add_subcommand("residue-decay", "Residue decomposition remainder R(x) over a grid");
  residue->add_option("--d1", d1, "First discriminant")->capture_default_str();
  residue->add_option("--d2", d2, "Second discriminant")->capture_default_str();
  residue->add_option("--beta", beta, "Exponent beta")->capture_default_str();
  residue->add_option("--x", x_grid, "Grid of x values")->capture_default_str();
  residue->add_option("--threshold", threshold, "Allowed sup/inf of |R| x^beta")->capture_default_str();
  add_common(residue, common);

  auto* scan = app.add_subcommand("scan", "L(1, chi_d) and L(1, chi_d) |d|^epsilon for all 1 < |d| <= limit");
  scan->add_option("--limit", limit, "Largest |d|")->capture_default_str();
  scan->add_option("--epsilon", epsilon, "Exponent epsilon")->capture_default_str();
  scan->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  add_common(scan, common);

  auto* suite = app.add_subcommand("lemma-suite", "Run the lemma-level property checks");
  suite->add_option("--checks", checks_arg, "Comma-separated check names, or 'all'")->capture_default_str();
  suite->add_option("--l1-limit", l1_limit, "Largest |d| for the L(1) bound")->capture_default_str();
  suite->add_option("--positivity-limit", positivity_limit, "Largest |d| for L(1) > 0")->capture_default_str();
  suite->add_option("--zero-limit", zero_limit, "Largest |d| for the real-zero scan")->capture_default_str();
  suite->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  suite->add_flag("--sabotage-gamma", sabotage, "Test mode: perturb the Gamma coefficients of the recurrence check");
  add_common(suite, common);

  std::vector<std::string> argv_storage;
  argv_storage.emplace_back("siegel");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kInvalidInput;
  }

  try {
    Output output(common, out);
    int code = kSuccess;

    if (chars->parsed()) {
      require(limit >= 3, "--limit must be >= 3");
      Table table({"d", "q"});
      for (std::int64_t disc : enumerate_fundamental_discriminants(limit))
        table.add_row({disc, disc < 0 ? -disc : disc});
      table.write(output.stream(), output.format());
    } else if (coeffs->parsed()) {
      require(d1 == 1 || is_fundamental_discriminant(d1), "--d1 must be a fundamental discriminant");
      require(d2 == 1 || is_fundamental_discriminant(d2), "--d2 must be a fundamental discriminant");
      require(N >= 1 && N <= 100'000'000, "--N must lie in [1, 1e8]");
      write_report(output.stream(), output.format(),
                   coefficients_of_f(QuadraticCharacter(d1), QuadraticCharacter(d2), N));
    } else if (lvalue->parsed()) {
      require_fundamental(d, "--d");
      require(s > 0.0, "--s must be positive");
      const auto r = l_value(QuadraticCharacter(d), cplx(s, t));
      Table table({"d", "s", "t", "value_re", "value_im", "err", "method"});
      table.add_row({d, s, t, r.value.real(), r.value.imag(), r.err, std::string(r.method)});
      table.write(output.stream(), output.format());
    } else if (fvalue->parsed()) {
      require_fundamental(d1, "--d1");
      require_fundamental(d2, "--d2");
      require(s > 0.0, "--s must be positive");
      require(std::abs(cplx(s - 1.0, t)) >= 1e-3, "|s - 1| must be >= 1e-3");
      const auto r = f_value(QuadraticCharacter(d1), QuadraticCharacter(d2), cplx(s, t));
      Table table({"d1", "d2", "s", "t", "value_re", "value_im", "err"});
      table.add_row({d1, d2, s, t, r.value.real(), r.value.imag(), r.err});
      table.write(output.stream(), output.format());
    } else if (zeros->parsed()) {
      require_fundamental(d, "--d");
      require(lo > 0.0 && lo < hi && hi <= kBetaCeiling, "need 0 < --lo < --hi <= 0.999");
      require(step > 0.0 && tol > 0.0, "--step and --tol must be positive");
      ZeroScanResult r;
      if (d2_product != 0) {
        require_fundamental(d2_product, "--d2");
        require(d2_product != d, "--d2 must differ from --d (the product would be principal)");
        r = find_real_zeros(ProductCharacter(QuadraticCharacter(d), QuadraticCharacter(d2_product)), lo, hi, step,
                            tol);
      } else {
        r = find_real_zeros(QuadraticCharacter(d), lo, hi, step, tol);
      }
      write_report(output.stream(), output.format(), r);
    } else if (mellin->parsed()) {
      for (double y : ys) require(y > 0.0, "--y values must be positive");
      require(height > 0.0 && step > 0.0 && step <= height / 100.0, "need 0 < --step <= --T/100");
      require(sigma0 > 0.0, "--sigma0 must be positive");
      require(tol > 0.0, "--tol must be positive");
      Table table({"y", "value", "expected", "err", "abs_diff", "passed"});
      for (double y : ys) {
        const auto r = inverse_mellin_exp(y, ContourSpec{sigma0, height, step});
        const double expected = std::exp(-y);
        const double diff = std::abs(r.value - expected);
        const bool passed = diff <= tol && diff <= r.err;
        if (!passed) code = kVerificationFailed;
        table.add_row({y, r.value, expected, r.err, diff, passed});
      }
      table.write(output.stream(), output.format());
    } else if (contour->parsed()) {
      require_fundamental(d1, "--d1");
      require_fundamental(d2, "--d2");
      require_beta(beta);
      for (double xv : xs) require(xv > 0.0, "--x values must be positive");
      require(height > 0.0 && step > 0.0 && step <= height / 100.0, "need 0 < --step <= --T/100");
      require(sigma0 >= 1.5, "--sigma0 must be >= 1.5");
      require(tol > 0.0, "--tol must be positive");
      const QuadraticCharacter chi1(d1), chi2(d2);
      Table table({"x", "I", "I_err", "S", "S_err", "rel_diff", "passed"});
      for (double xv : xs) {
        const auto I = contour_integral_I(chi1, chi2, xv, beta, ContourSpec{sigma0, height, step}, tol);
        const auto S = smoothed_sum_S(chi1, chi2, xv, beta, 1e-13);
        const double rel = std::abs(I.value - S.value) / std::abs(S.value);
        const bool passed = rel <= tol;
        if (!passed) code = kVerificationFailed;
        table.add_row({xv, I.value, I.err, S.value, S.err, rel, passed});
      }
      table.write(output.stream(), output.format());
    } else if (sandwich->parsed()) {
      require_fundamental(d1, "--d1");
      require_fundamental(d2, "--d2");
      require(x >= 1.0, "--x must be >= 1");
      require_beta(beta);
      const auto r = verify_sandwich(d1, d2, x, beta);
      if (d1 == d2) err << "note: d1 = d2 is a degenerate configuration (f = zeta^2 L^2 times Euler factors)\n";
      if (!r.passed) code = kVerificationFailed;
      write_report(output.stream(), output.format(), r);
    } else if (residue->parsed()) {
      require_fundamental(d1, "--d1");
      require_fundamental(d2, "--d2");
      require(d1 != d2, "--d1 and --d2 must differ (the residue needs a nonprincipal product)");
      require_beta(beta);
      require(!x_grid.empty(), "--x grid must not be empty");
      for (double xv : x_grid) require(xv >= 1.0, "--x grid values must be >= 1");
      require(threshold >= 1.0, "--threshold must be >= 1");
      const auto r = verify_residue_decay(d1, d2, beta, x_grid, threshold);
      if (!r.passed) {
        code = kVerificationFailed;
        err << "residue-decay failed: " << r.failure << '\n';
      }
      write_report(output.stream(), output.format(), r);
    } else if (scan->parsed()) {
      require(limit >= 3 && limit <= 100000, "--limit must lie in [3, 1e5]");
      require(epsilon > 0.0 && epsilon <= 0.5, "--epsilon must lie in (0, 0.5]");
      const auto r = siegel_scan(limit, epsilon, jobs);
      if (output.format() == Format::csv)
        err << "min_weighted=" << format_double(r.min_weighted) << " argmin_d=" << r.argmin_d << '\n';
      write_report(output.stream(), output.format(), r);
    } else if (suite->parsed()) {
      LemmaSuiteConfig config;
      if (checks_arg != "all") {
        config.checks.clear();
        std::stringstream ss(checks_arg);
        std::string name;
        while (std::getline(ss, name, ',')) {
          if (name.empty()) continue;
          require(std::find(lemma_check_names().begin(), lemma_check_names().end(), name) !=
                      lemma_check_names().end(),
                  "unknown check '" + name + "'");
          config.checks.insert(name);
        }
      }
      require(l1_limit >= 3 && positivity_limit >= 3 && positivity_limit <= 100000 && zero_limit >= 3,
              "check limits must lie in [3, 1e5]");
      config.l1_bound_limit = l1_limit;
      config.positivity_limit = positivity_limit;
      config.zero_scan_limit = zero_limit;
      config.jobs = jobs;
      if (sabotage) {
        auto coeffs_copy = lanczos_coefficients();
        coeffs_copy[3] *= 1.0 + 1e-6;
        config.gamma_coefficients = coeffs_copy;
      }
      const auto summary = lemma_suite(config);
      for (const auto& c : summary.checks)
        err << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << format_double(c.seconds) << " s)\n";
      if (summary.status == SuiteStatus::empty) err << "no checks selected\n";
      code = summary.exit_code();
      write_report(output.stream(), output.format(), summary);
    }

    output.flush();
    return code;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const InvariantError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace siegel::cli
