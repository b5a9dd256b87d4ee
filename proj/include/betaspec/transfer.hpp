#pragma once

#include <span>
#include <utility>
#include <vector>

#include "betaspec/spectra.hpp"

namespace betaspec {

struct StepTerm {
  Point x;
  cplx c;
};

// f = sum c_i 1_[0, x_i]. Canonical form: breakpoints strictly increasing in (0, 1],
// no zero coefficients. Breakpoint 0 is a point mass and is dropped.
struct StepFunction {
  std::vector<StepTerm> terms;

  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
};

StepFunction canonical(const BetaSpec& beta, std::vector<StepTerm> terms);
StepFunction indicator(const BetaSpec& beta, const Point& x, cplx c = 1.0);
StepFunction indicator(const BetaSpec& beta, double x, cplx c = 1.0);
StepFunction constant(const BetaSpec& beta, cplx c = 1.0);

// a f + b g
StepFunction combine(const BetaSpec& beta, cplx a, const StepFunction& f, cplx b, const StepFunction& g);
StepFunction scaled(const StepFunction& f, cplx a);

// Pointwise product, re-expressed in the indicator span.
StepFunction product(const BetaSpec& beta, const StepFunction& f, const StepFunction& g);

// Value on the constancy interval containing x (left-closed at the breakpoints).
cplx evaluate(const StepFunction& f, double x);

StepFunction apply_L(const BetaSpec& beta, const StepFunction& f);
StepFunction apply_L(const BetaSpec& beta, const StepFunction& f, int times);

double variation(const StepFunction& f);
double sup_norm(const StepFunction& f);
double bv_norm(const StepFunction& f);
cplx integral_lebesgue(const StepFunction& f);
cplx integral_product(const StepFunction& f, const StepFunction& g);

// Normalized invariant density. Finite and eventually periodic orbits of 1 are
// summed in closed form; otherwise the series is cut at `horizon` (0: smallest
// horizon with tail below tol).
StepFunction parry_density(const BetaSpec& beta, double tol = 1e-12, int horizon = 0);

// |int (L f) g - int f (g o tau)|, the right side integrated branch by branch.
double duality_check(const BetaSpec& beta, const StepFunction& f, const StepFunction& g);

// x_0 = 1 followed by count - 1 simple points: greedy words of Chebyshev nodes
// in (0, 1) cut at `depth` digits.
std::vector<Point> default_breakpoints(const BetaSpec& beta, int count, int depth = 8);

// Coefficients c with sum c_i x_i = 0 and sum c_i F_lambda_j(x_i) = 0 for every j,
// from the null space of the constraint matrix, scaled to unit max coefficient.
StepFunction good_decay_construct(const BetaSpec& beta, std::span<const Eigenvalue> subleading,
                                  std::span<const Point> breakpoints, double tol = 1e-10);
StepFunction good_decay_construct(const BetaSpec& beta, std::span<const Eigenvalue> subleading, int extra = 1,
                                  double tol = 1e-10);

struct DecayFit {
  std::vector<std::pair<int, double>> rates;  // (n, ||L^n f||_BV), n = 0..n_max
  double fitted_alpha = 0.0;
  std::pair<int, int> fit_window{0, 0};
  double r_squared = 0.0;
  double slope_stderr = 0.0;  // of log(bv_norm) against n
  bool underflow = false;
};

// Norms of L^n f with the invariant-density part (int L^n f) h removed at each
// step. Log-linear fit over [n_lo, n_max]; n_lo < 0 means n_max / 2.
DecayFit decay_fit(const BetaSpec& beta, const StepFunction& f, int n_max, int n_lo = -1);

// int f (g o tau^n) dmu - int f dmu int g dmu for the invariant measure.
cplx correlation(const BetaSpec& beta, const StepFunction& f, const StepFunction& g, int n, double tol = 1e-12);

}  // namespace betaspec
