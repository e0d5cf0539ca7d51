#pragma once

#include <span>
#include <vector>

#include "siegel/characters.hpp"
#include "siegel/eval_result.hpp"

namespace siegel {

// Truncated vertical line Re(s) = abscissa, |Im(s)| <= height, uniform step.
struct ContourSpec {
  double abscissa = 2.0;
  double height = 40.0;
  double step = 0.01;
};

// Throws DomainError unless step <= height/100 and abscissa > 0; when
// involves_f, also abscissa >= 1.5.
void validate(const ContourSpec& spec, bool involves_f);

// Result of a composite trapezoid along a vertical line, with the error split by source.
struct ContourResult : RealResult {
  double truncation_err = 0.0;      // certified |t| > height tail
  double discretization_err = 0.0;  // |Q_h - Q_2h|
  double integrand_err = 0.0;       // propagated node errors plus rounding
  double imag = 0.0;                // imaginary part, mirrored nodes evaluated independently
  bool imag_checked = false;
};

// Upper bound on |Gamma(sigma + it)| t^{1/2 - sigma} e^{pi t/2} over t >= height.
double gamma_envelope_constant(double sigma, double height);

// int_T^inf t^a e^{-b t} dt, bounded in closed form. Infinite if b <= a/T.
double power_exp_tail(double a, double b, double T);

// (1/2 pi i) int y^{-s} Gamma(s) ds, which equals e^{-y}.
ContourResult inverse_mellin_exp(double y, const ContourSpec& spec, bool check_mirror = false);

// Chooses the height from the Gamma envelope (tail <= tol/2), then halves the
// step from height/100 until consecutive trapezoid values differ by <= tol/2.
struct PlannedContour {
  ContourSpec spec;
  ContourResult result;
};
PlannedContour inverse_mellin_exp_adaptive(double y, double abscissa, double tol);

// I = (1/2 pi i) int x^s Gamma(s) f(s + beta) ds, f evaluated by the Hurwitz path.
// Throws ConvergenceError naming the dominant error source when err exceeds
// rel_budget * |I|.
ContourResult contour_integral_I(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2, double x,
                                 double beta, const ContourSpec& spec, double rel_budget = 1e-6,
                                 bool check_mirror = false);

struct ResidueRow {
  double x = 0.0;
  double R = 0.0;         // S(x, beta) - x^{1-beta} Gamma(1-beta) lambda - f(beta)
  double R_scaled = 0.0;  // R x^beta
  double R_err = 0.0;
};

struct ResidueDecomposition {
  double beta = 0.0;
  RealResult lambda;
  RealResult gamma_one_minus_beta;
  RealResult f_beta;
  std::vector<ResidueRow> rows;
};

// R(x) by subtraction from the smoothed sum; reports without judging.
ResidueDecomposition residue_decomposition_check(const QuadraticCharacter& chi1, const QuadraticCharacter& chi2,
                                                 double beta, std::span<const double> x_grid);

}  // namespace siegel
