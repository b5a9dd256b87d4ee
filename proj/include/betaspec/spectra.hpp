#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betaspec/series.hpp"

namespace betaspec {

enum class EigenKind { Leading, NonLeading };

struct Eigenvalue {
  cplx lambda;
  cplx z;  // 1 / lambda, the zero of 1 - phi
  int multiplicity = 1;
  double residual = 0.0;  // |1 - phi(z)| plus its error bound
  EigenKind kind = EigenKind::NonLeading;
};

struct SpectrumOptions {
  double tol = 0.0;  // 0 picks 1e-10 for Parry bases, 1e-8 otherwise
  double ceiling = 0.95;
  bool polish_dd = true;
};

struct SpectrumReport {
  std::string beta;
  double beta_value = 0.0;
  bool exact = false;
  double tol = 0.0;
  std::vector<Eigenvalue> eigenvalues;
  double r_inner = 1.0;
  double r_outer = 0.0;
  // Winding of 1 - phi on |z| = r_outer; counts the leading zero z = 1 too.
  int contour_winding_total = 0;
  std::optional<double> subleading_modulus;

  int nonleading_count() const;
};

struct Subleading {
  double modulus = 0.0;
  std::vector<Eigenvalue> eigenvalues;
  std::vector<bool> simple;
};

// Winding number of 1 - phi around the annulus r_inner < |z| < r_outer.
int count_zeros(const BetaSpec& beta, double r_inner, double r_outer);

SpectrumReport locate_eigenvalues(const BetaSpec& beta, const SpectrumOptions& options = {});
std::optional<Subleading> subleading(const BetaSpec& beta, const SpectrumOptions& options = {});
std::optional<Subleading> subleading(const SpectrumReport& report);

// Newton on psi from a seed; nullopt when it leaves |z| < rmax or stalls.
std::optional<cplx> newton_psi(const BetaSeries& series, cplx seed, double rmax);

// Newton on 1 - phi in double-double from a nearby simple zero.
ComplexDD polish_zero(const BetaSeries& series, ComplexDD z, int iterations = 8);

struct ScanPoint {
  std::string beta;
  double beta_value = 0.0;
  std::optional<SpectrumReport> report;
  std::string error_kind;
  std::string message;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  double nonleading_fraction = 0.0;  // over points without errors
};

// Grid lo + (hi - lo) i / (grid - 1), i = 0..grid-1, each as an exact rational base.
ScanResult scan_beta_range(const Rational& lo, const Rational& hi, int grid, int threads = 1,
                           const SpectrumOptions& options = {}, int horizon = BetaSpec::kDefaultHorizon);
ScanResult scan_beta_range(double lo, double hi, int grid, int threads = 1, const SpectrumOptions& options = {});

}  // namespace betaspec
