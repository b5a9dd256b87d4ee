#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "betaspec/beta.hpp"

namespace betaspec {

using cplx = std::complex<double>;

struct SeriesEval {
  cplx value;
  double tail_bound = 0.0;  // truncation tail plus rounding
  int terms_used = 0;
};

// Value and derivative of a function together with error bounds.
struct Jet {
  cplx f;
  cplx df;
  double err = 0.0;
  double derr = 0.0;
  int terms = 0;
};

struct JetDD {
  ComplexDD f;
  ComplexDD df;
  double err = 0.0;
};

// sum_{n>=1} c_n w^n with nonnegative coefficients: either head + repeated
// cycle (closed form; empty cycle means a polynomial) or a truncated list
// with a coefficient bound for the tail.
class CoefficientSeries {
 public:
  static CoefficientSeries periodic(std::vector<dd> head, std::vector<dd> cycle);
  static CoefficientSeries truncated(std::vector<dd> coeffs, double bound);

  bool exact() const { return exact_; }
  int available() const { return static_cast<int>(head_.size()); }
  Jet eval(cplx w, double tol, int max_terms = 0) const;
  JetDD eval_dd(const ComplexDD& w, double tol) const;
  double majorant(double r) const;
  double majorant_derivative(double r) const;
  int terms_for(double r, double tol) const;

 private:
  std::pair<double, double> real_jet(double r, int n) const;

  std::vector<dd> head_;
  std::vector<dd> cycle_;
  std::vector<double> head_d_;
  std::vector<double> cycle_d_;
  bool exact_ = true;
  double bound_ = 0.0;
};

// The three series attached to a base: phi (greedy digits of 1), phi_hat
// (quasi-greedy digits) and psi (orbit of 1), all in the variable z with w = z/beta.
class BetaSeries {
 public:
  static constexpr double kTruncatedCeiling = 0.97;

  explicit BetaSeries(const BetaSpec& beta);

  bool exact() const { return exact_; }
  double beta() const { return beta_; }
  dd beta_dd() const { return beta_dd_; }
  int floor() const { return floor_; }
  int simple_length() const { return simple_length_; }
  double max_radius() const;

  SeriesEval phi(cplx z, int horizon = 0) const;
  SeriesEval phi_hat(cplx z, int horizon = 0) const;
  SeriesEval psi(cplx z, int horizon = 0) const;

  Jet one_minus_phi(cplx z, double tol = 1e-16) const;
  Jet one_minus_phi_hat(cplx z, double tol = 1e-16) const;
  Jet psi_jet(cplx z, double tol = 1e-16) const;
  JetDD one_minus_phi_dd(const ComplexDD& z, double tol = 1e-32) const;
  JetDD one_minus_phi_hat_dd(const ComplexDD& z, double tol = 1e-32) const;
  // Closed-form rational continuation of 1 - phi_hat to all z; exact bases only.
  cplx one_minus_phi_hat_continued(cplx z) const;

  // Bounds on |phi'| and |psi'| over the closed disk of radius r.
  double phi_slope(double r) const;
  double psi_slope(double r) const;

 private:
  void check_domain(double r) const;
  Jet jet(const CoefficientSeries& s, cplx z, double tol, int horizon, bool one_minus) const;
  JetDD jet_dd(const CoefficientSeries& s, const ComplexDD& z, double tol) const;

  CoefficientSeries digits_;
  CoefficientSeries quasi_;
  CoefficientSeries orbit_;
  double beta_ = 0.0;
  dd beta_dd_{0.0};
  int floor_ = 0;
  int simple_length_ = 0;
  bool exact_ = false;
};

SeriesEval phi(const BetaSpec& beta, cplx z, int horizon = 0);
SeriesEval phi_hat(const BetaSpec& beta, cplx z, int horizon = 0);
SeriesEval psi(const BetaSpec& beta, cplx z, int horizon = 0);

struct ZetaEval {
  cplx value;
  double bound = 0.0;
};

ZetaEval zeta(const BetaSpec& beta, cplx z, int horizon = 0);
long long fix_count(const BetaSpec& beta, int n);
ZetaEval zeta_series(const BetaSpec& beta, cplx z, int n_max);

}  // namespace betaspec
