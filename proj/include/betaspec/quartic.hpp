#pragma once

#include <array>
#include <string>
#include <vector>

#include "betaspec/spectra.hpp"

namespace betaspec {

enum class Family { P, Q, R };

std::string to_string(Family f);
Family parse_family(std::string_view text);

// P: x^4 - n x^3 - (n-1) x^2 - n        (n >= 3)
// Q: x^4 - n x^3 - (n-1) x - n          (n >= 4)
// R: x^4 - (n+1) x^3 + n x - (n-1)      (n >= 4)
class QuarticFamily {
 public:
  QuarticFamily(Family family, int n);

  Family family() const { return family_; }
  int n() const { return n_; }
  const std::array<long long, 5>& coefficients() const { return coeffs_; }  // leading first
  std::string beta_definition() const;  // poly:...@(n,n+1)
  BetaSpec beta(int horizon = BetaSpec::kDefaultHorizon) const;
  double eval(double x) const;

 private:
  Family family_;
  int n_;
  std::array<long long, 5> coeffs_{};
};

struct QuarticRoots {
  double beta = 0.0;
  std::vector<double> real_roots;  // ascending, beta included
  std::vector<cplx> complex_pairs;  // one per pair, positive imaginary part
  std::vector<cplx> all() const;
  double vieta_error = 0.0;
};

// Newton with deflation in double-double, then a simultaneous polish on the full quartic.
QuarticRoots quartic_roots(const QuarticFamily& fam, double tol = 1e-14);

struct ExpectedProfile {
  std::vector<int> head;   // digits of 1
  std::vector<int> cycle;  // repeating part; empty for simple
  bool simple = true;
  int nonleading_count = 0;
  bool real = true;
  std::vector<cplx> lambdas;  // root / beta for 1 < |root| < beta, modulus then imaginary part descending

  int digit(int k) const;  // 1-based
};

ExpectedProfile expected_profile(const QuarticFamily& fam);

struct Clause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  Family family = Family::P;
  int n = 0;
  std::string beta_definition;
  double beta = 0.0;
  double tol = 0.0;
  QuarticRoots roots;
  ExpectedProfile expected;
  SpectrumReport spectrum;
  std::vector<Clause> clauses;  // a: digits, b: eigenvalues, c: factorization, d: simplicity
  double seconds = 0.0;

  bool passed() const;
};

VerificationReport verify_example(const QuarticFamily& fam, double tol = 1e-9, int digit_count = 24);

// Throws VerificationFailure naming the first failing clause.
void require_verified(const VerificationReport& report);

}  // namespace betaspec
