#pragma once

#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "betaspec/dd.hpp"

namespace betaspec {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Integer polynomial, coefficients in ascending order of degree.
using IntPoly = std::vector<BigInt>;

namespace poly {
void trim(IntPoly& p);
int degree(const IntPoly& p);
Rational eval(const IntPoly& p, const Rational& x);
int sign_at(const IntPoly& p, const Rational& x);
IntPoly derivative(const IntPoly& p);
IntPoly primitive(IntPoly p);
IntPoly gcd(IntPoly a, IntPoly b);
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);
int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi);
}  // namespace poly

dd to_dd(const BigInt& x);
dd ratio_to_dd(const BigInt& num, const BigInt& den);
dd to_dd(const Rational& q);
Rational to_rational(double x);
Rational to_rational(const dd& x);
Rational parse_decimal(std::string_view text);

// Element of Q(beta) written as (sum num[k] beta^k) / den with den > 0.
struct Element {
  std::vector<BigInt> num;
  BigInt den{1};
};

// Q[x]/(P) together with a distinguished real root beta of P, located by an
// isolating interval. P is kept squarefree with P(0) != 0, so an element is
// zero at beta exactly when gcd(E, P) vanishes at beta.
class NumberField {
 public:
  NumberField(IntPoly poly, const Rational& lo, const Rational& hi, bool check_isolation = true);
  explicit NumberField(const Rational& value);

  int degree() const { return static_cast<int>(modulus_.size()) - 1; }
  const IntPoly& modulus() const { return modulus_; }
  const Rational& lower() const { return lo_; }
  const Rational& upper() const { return hi_; }
  dd root() const { return root_; }
  double root_error() const { return root_err_; }
  bool is_rational() const { return degree() == 1; }

  Element zero() const;
  Element from_int(long long k) const;
  Element from_rational(const Rational& q) const;
  Element generator() const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element add_int(Element a, long long k) const;
  Element scale(Element a, const Rational& q) const;
  Element mul_root(const Element& a) const;
  Element div_root(const Element& a) const;
  void normalize(Element& a) const;

  dd value(const Element& a) const;
  double value_error(const Element& a) const;
  bool is_zero(const Element& a) const;
  int sign(const Element& a) const;
  int compare(const Element& a, const Element& b) const;
  long long floor(const Element& a) const;

 private:
  IntPoly as_poly(const Element& a) const;
  int refine_sign(const Element& a) const;
  void settle_root();

  IntPoly modulus_;
  Rational lo_;
  Rational hi_;
  dd root_{0.0};
  double root_err_ = 0.0;
  std::vector<dd> mod_dd_;
};

}  // namespace betaspec
