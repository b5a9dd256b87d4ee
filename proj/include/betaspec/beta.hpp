#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "betaspec/dd.hpp"
#include "betaspec/field.hpp"

namespace betaspec {

// Infinite digit word given by an explicit head followed by either zeros,
// a repeated cycle, or nothing known.
struct DigitWord {
  enum class Tail { Zeros, Cycle, Unknown };

  std::vector<int> head;
  std::vector<int> cycle;
  Tail tail = Tail::Unknown;

  bool known(int n) const;
  int digit(int n) const;  // 1-based
  std::vector<int> take(int count) const;
  int known_length() const;
};

// Exact point of [0,1] in Q(beta) with a cached double-double value.
struct Point {
  Element exact;
  dd value;
};

enum class OrbitKind { Finite, EventuallyPeriodic, Open };

// Orbit of 1 under the beta-map, computed once per base.
struct OneOrbit {
  OrbitKind kind = OrbitKind::Open;
  std::vector<int> digits;   // a_1 .. a_m
  std::vector<dd> values;    // tau^0(1) .. tau^m(1)
  std::vector<Element> elements;  // kept only when the orbit is finite or periodic
  int length = 0;     // Finite: tau^length(1) = 0
  int preperiod = 0;  // EventuallyPeriodic: tau^pre(1) = tau^(pre+period)(1)
  int period = 0;

  int computed() const { return static_cast<int>(digits.size()); }
  bool is_parry() const { return kind != OrbitKind::Open; }
  bool is_simple() const { return kind == OrbitKind::Finite; }
  int digit(int n) const;
  dd value(int n) const;
  DigitWord greedy_word() const;
  DigitWord quasi_word() const;
};

class BetaSpec {
 public:
  static constexpr int kDefaultHorizon = 1024;

  static BetaSpec from_rational(const Rational& value, int horizon = kDefaultHorizon);
  static BetaSpec from_double(double value, int horizon = kDefaultHorizon);
  static BetaSpec from_decimal(std::string_view text, int horizon = kDefaultHorizon);
  // Coefficients in descending order, as written c_d x^d + ... + c_0.
  static BetaSpec from_polynomial(const std::vector<long long>& descending, const Rational& lo, const Rational& hi,
                                  int horizon = kDefaultHorizon);
  static BetaSpec from_int_poly(IntPoly ascending, const Rational& lo, const Rational& hi, int horizon,
                                bool check_isolation, std::string definition);
  // Either a decimal literal or poly:c_d,...,c_0@(lo,hi).
  static BetaSpec parse(std::string_view spec, int horizon = kDefaultHorizon);

  double value() const { return value_dd().to_double(); }
  dd value_dd() const;
  int floor() const;
  int precision_bits() const { return 106; }
  int horizon() const;
  const std::string& definition() const;
  const NumberField& field() const;
  const OneOrbit& one() const;
  bool is_polynomial_defined() const;

  Point point(const Rational& x) const;
  Point point(double x) const { return point(to_rational(x)); }
  Point make_point(Element e) const;
  Point unit() const;
  Point origin() const;
  Point from_word(std::span<const int> word) const;
  std::pair<int, Point> step(const Point& x) const;
  int compare(const Point& a, const Point& b) const;
  bool is_zero(const Point& x) const;

 private:
  struct Impl;
  explicit BetaSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static BetaSpec build(NumberField field, int horizon, std::string definition);

  std::shared_ptr<const Impl> impl_;
};

}  // namespace betaspec
