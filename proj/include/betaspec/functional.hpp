#pragma once

#include <vector>

#include "betaspec/series.hpp"

namespace betaspec {

struct FunctionalEval {
  cplx value;
  double tail_bound = 0.0;  // floor(beta) q^(N+1) / (1 - q), q = 1/|beta lambda|; 0 for finite expansions
  double x = 0.0;
  cplx lambda;
  int terms = 0;
};

// F_lambda(x) = sum a_n(beta, x) (beta lambda)^-n from greedy digits.
FunctionalEval eval_F(const BetaSpec& beta, cplx lambda, const Point& x, double tol = 1e-12);
FunctionalEval eval_F(const BetaSpec& beta, cplx lambda, double x, double tol = 1e-12);

// Same sum over quasi-greedy digits: the limit of F_lambda from the left.
FunctionalEval left_limit_F(const BetaSpec& beta, cplx lambda, const Point& x, double tol = 1e-12);
FunctionalEval left_limit_F(const BetaSpec& beta, cplx lambda, double x, double tol = 1e-12);

// |1 - phi_hat(1/lambda)|.
double continuity_residual(const BetaSpec& beta, cplx lambda, double tol = 1e-12);

struct LipschitzPoint {
  int depth = 0;
  double x = 0.0;
  double quotient = 0.0;
};

// x0 = 0 uses x_N = beta^-N; otherwise truncations of the quasi-greedy expansion of x0
// at its nonzero digits.
std::vector<LipschitzPoint> lipschitz_probe(const BetaSpec& beta, cplx lambda, double x0, int depth);

struct Decomposition {
  cplx rho;
  cplx F;
  double reconstruction_error = 0.0;  // |F - x/lambda - (1/lambda - 1) rho|
  double bound = 0.0;                 // combined truncation and rounding bound
};

Decomposition takagi_decomposition(const BetaSpec& beta, cplx lambda, double x, double tol = 1e-12);

struct DetectorResult {
  std::vector<cplx> lambdas;
  std::vector<double> residuals;
  int grid = 0;
  double threshold = 0.0;
};

// Zeros of the continuity residual: local minima on a polar grid of
// 1/(ceiling beta) <= |lambda| <= 1, refined by Newton on 1 - phi_hat, kept below
// the threshold and merged.
DetectorResult residual_zero_set(const BetaSpec& beta, double threshold, int grid = 200, double ceiling = 0.95,
                                 int threads = 1);

}  // namespace betaspec
