#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace betaspec {

inline double two_sum(double a, double b, double& err) {
  const double s = a + b;
  const double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline double quick_two_sum(double a, double b, double& err) {
  const double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  const double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, about 106 significant bits.
class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT implicit by design

  static DoubleDouble from_sum(double a, double b) {
    double e = 0.0;
    const double s = two_sum(a, b, e);
    return raw(s, e);
  }
  static constexpr DoubleDouble raw(double hi, double lo) {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }
  constexpr double to_double() const { return hi_ + lo_; }

  DoubleDouble operator-() const { return raw(-hi_, -lo_); }

  friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    double e1 = 0.0, e2 = 0.0;
    double s = two_sum(a.hi_, b.hi_, e1);
    const double t = two_sum(a.lo_, b.lo_, e2);
    e1 += t;
    s = quick_two_sum(s, e1, e1);
    e1 += e2;
    s = quick_two_sum(s, e1, e1);
    return raw(s, e1);
  }
  friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    double e = 0.0;
    double p = two_prod(a.hi_, b.hi_, e);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    p = quick_two_sum(p, e, e);
    return raw(p, e);
  }
  friend DoubleDouble operator*(const DoubleDouble& a, double b) {
    double e = 0.0;
    double p = two_prod(a.hi_, b, e);
    e += a.lo_ * b;
    p = quick_two_sum(p, e, e);
    return raw(p, e);
  }
  friend DoubleDouble operator*(double a, const DoubleDouble& b) { return b * a; }

  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    const double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * q1;
    const double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    const double q3 = r.hi_ / b.hi_;
    double e = 0.0;
    const double q = quick_two_sum(q1, q2, e);
    return DoubleDouble::raw(q, e) + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(const DoubleDouble& o) { return *this = *this + o; }
  DoubleDouble& operator-=(const DoubleDouble& o) { return *this = *this - o; }
  DoubleDouble& operator*=(const DoubleDouble& o) { return *this = *this * o; }
  DoubleDouble& operator/=(const DoubleDouble& o) { return *this = *this / o; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
  friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
  }
  friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
  friend bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
  friend bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

using dd = DoubleDouble;

inline dd abs(const dd& a) { return a.hi() < 0.0 ? -a : a; }

inline dd sqrt(const dd& a) {
  if (a.hi() <= 0.0) return dd(0.0);
  const double x = std::sqrt(a.hi());
  const dd xx = dd(x);
  return xx + (a - xx * xx) / (2.0 * xx);
}

inline dd floor(const dd& a) {
  const double fh = std::floor(a.hi());
  if (fh != a.hi()) return dd(fh);
  return dd::from_sum(fh, std::floor(a.lo()));
}

inline dd ldexp(const dd& a, int e) { return dd::raw(std::ldexp(a.hi(), e), std::ldexp(a.lo(), e)); }

inline dd powi(dd base, long long e) {
  if (e < 0) return dd(1.0) / powi(base, -e);
  dd r(1.0);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline constexpr double kDdEps = 4.93038065763132e-32;  // 2^-104

struct ComplexDD {
  dd re;
  dd im;

  constexpr ComplexDD() = default;
  constexpr ComplexDD(double r) : re(r), im(0.0) {}  // NOLINT
  constexpr ComplexDD(dd r) : re(r), im(0.0) {}  // NOLINT
  constexpr ComplexDD(dd r, dd i) : re(r), im(i) {}
  ComplexDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  ComplexDD operator-() const { return {-re, -im}; }
  friend ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexDD operator-(const ComplexDD& a, const ComplexDD& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexDD operator*(const ComplexDD& a, const dd& s) { return {a.re * s, a.im * s}; }
  friend ComplexDD operator*(const dd& s, const ComplexDD& a) { return a * s; }
  friend ComplexDD operator/(const ComplexDD& a, const ComplexDD& b) {
    const dd den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  friend ComplexDD operator/(const ComplexDD& a, const dd& s) { return {a.re / s, a.im / s}; }
  ComplexDD& operator+=(const ComplexDD& o) { return *this = *this + o; }
  ComplexDD& operator-=(const ComplexDD& o) { return *this = *this - o; }
  ComplexDD& operator*=(const ComplexDD& o) { return *this = *this * o; }
  ComplexDD& operator/=(const ComplexDD& o) { return *this = *this / o; }
  friend bool operator==(const ComplexDD& a, const ComplexDD& b) { return a.re == b.re && a.im == b.im; }

  bool is_zero() const { return re.hi() == 0.0 && im.hi() == 0.0; }
};

inline ComplexDD conj(const ComplexDD& z) { return {z.re, -z.im}; }
inline dd norm2(const ComplexDD& z) { return z.re * z.re + z.im * z.im; }
inline dd abs(const ComplexDD& z) { return sqrt(norm2(z)); }
inline double abs_d(const ComplexDD& z) { return std::hypot(z.re.to_double(), z.im.to_double()); }

inline ComplexDD powi(ComplexDD base, long long e) {
  if (e < 0) return ComplexDD(dd(1.0)) / powi(base, -e);
  ComplexDD r(dd(1.0));
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace betaspec
