#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "betaspec/spectra.hpp"

namespace betaspec {

struct EigenCurve {
  std::vector<double> betas;  // ascending, contains beta0
  std::vector<cplx> lambdas;
  std::vector<double> residuals;
  double beta0 = 0.0;
  cplx lambda0;
  int multiplicity = 1;
  bool truncated_left = false;
  bool truncated_right = false;
  bool non_canonical = false;  // multiplicity >= 2: one Newton basin followed
};

struct TrackOptions {
  double tol = 1e-8;
  int horizon = BetaSpec::kDefaultHorizon;
  int max_halvings = 12;
};

// Continues the zero 1/lambda0 of psi across the grid lo + (hi - lo) i / (steps - 1).
EigenCurve track(const BetaSpec& beta0, cplx lambda0, double lo, double hi, int steps, const TrackOptions& options = {});

struct HoelderEstimate {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double alpha0 = 0.0;
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::optional<double> fitted_left;
  std::optional<double> fitted_right;
  int horizon = 64;
  int multiplicity = 1;
  bool parry = false;  // gammas are exactly 1
  std::vector<std::string> notes;
};

HoelderEstimate holder_constants(const BetaSpec& beta0, cplx lambda0, int multiplicity = 1, int horizon = 64);

// Indices n with d_n(beta0, 1) != 0, n >= min_depth, and n congruent to the first
// such index modulo `stride` when stride > 1.
std::vector<int> approximant_depths(const BetaSpec& beta0, int count, int min_depth = 2, int stride = 1);

// beta_N solving 1 = sum_{n <= l} d_n beta_N^-n for each depth l.
std::vector<BetaSpec> left_parry_approximants(const BetaSpec& beta0, std::span<const int> depths);
std::vector<BetaSpec> left_parry_approximants(const BetaSpec& beta0, int count);

struct ProbePoint {
  int depth = 0;
  std::string beta_definition;
  double beta = 0.0;
  double gap = 0.0;  // beta0 - beta_N, computed in double-double
  cplx lambda;
  double lambda_shift = 0.0;  // |lambda0 - lambda_N|
  double quotient = 0.0;
  double residual = 0.0;
};

struct ProbeOptions {
  int min_depth = 0;  // 0: smallest n with |beta0 lambda0|^n >= 4
  int stride = 0;     // 0: period of the quasi-greedy word of 1 when it is periodic
  double tol = 1e-10;
};

std::vector<ProbePoint> nondiff_probe(const BetaSpec& beta0, cplx lambda0, int count, const ProbeOptions& options = {});

// Least-squares slope of log lambda_shift against log gap over the last k points within tol.
std::optional<double> fit_exponent(std::span<const ProbePoint> points, int k = 5, double tol = 1e-10);

}  // namespace betaspec
