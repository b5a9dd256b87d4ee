#include "betaspec/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "betaspec/errors.hpp"

namespace betaspec {

namespace mp = boost::multiprecision;

namespace {

using QPoly = std::vector<Rational>;

void trim_q(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const IntPoly& p) { return QPoly(p.begin(), p.end()); }

QPoly rem_q(QPoly a, const QPoly& b) {
  trim_q(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim_q(a);
  }
  return a;
}

int sign_q(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc.sign();
}

int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_q(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

dd small_int_to_dd(const BigInt& x) {
  const double hi = x.convert_to<double>();
  const BigInt rem = x - BigInt(hi);
  return dd::from_sum(hi, rem.convert_to<double>());
}

}  // namespace

namespace poly {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

Rational eval(const IntPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const IntPoly& p, const Rational& x) { return eval(p, x).sign(); }

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

IntPoly primitive(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  BigInt g = 0;
  for (const auto& c : p) g = mp::gcd(g, c);
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

IntPoly gcd(IntPoly a, IntPoly b) {
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = a;
    while (r.size() >= b.size()) {
      const BigInt lr = r.back();
      const BigInt lb = b.back();
      const std::size_t shift = r.size() - b.size();
      for (auto& c : r) c *= lb;
      for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= lr * b[i];
      trim(r);
    }
    a = std::move(b);
    b = primitive(std::move(r));
  }
  return primitive(std::move(a));
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  QPoly r = to_q(a);
  const QPoly bq = to_q(b);
  trim_q(r);
  if (r.size() < bq.size()) return {};
  QPoly q(r.size() - bq.size() + 1);
  while (r.size() >= bq.size()) {
    const Rational f = r.back() / bq.back();
    const std::size_t shift = r.size() - bq.size();
    q[shift] = f;
    for (std::size_t i = 0; i < bq.size(); ++i) r[shift + i] -= f * bq[i];
    r.pop_back();
    trim_q(r);
  }
  BigInt l = 1;
  for (const auto& c : q) l = mp::lcm(l, mp::denominator(c));
  IntPoly out;
  for (const auto& c : q) out.push_back(mp::numerator(c) * (l / mp::denominator(c)));
  return primitive(std::move(out));
}

int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<QPoly> chain;
  chain.push_back(to_q(p));
  chain.push_back(to_q(derivative(p)));
  while (chain.back().size() > 1) {
    QPoly r = rem_q(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

}  // namespace poly

dd to_dd(const BigInt& x) { return ratio_to_dd(x, BigInt(1)); }

dd ratio_to_dd(const BigInt& num, const BigInt& den) {
  if (num == 0) return dd(0.0);
  const bool neg = (num < 0) != (den < 0);
  const BigInt a = mp::abs(num);
  const BigInt b = mp::abs(den);
  const long na = static_cast<long>(mp::msb(a));
  const long nb = static_cast<long>(mp::msb(b));
  const long sa = std::max(0L, na - 120);
  const long sb = std::max(0L, nb - 120);
  const dd qa = small_int_to_dd(sa > 0 ? BigInt(a >> sa) : a);
  const dd qb = small_int_to_dd(sb > 0 ? BigInt(b >> sb) : b);
  dd r = ldexp(qa / qb, static_cast<int>(sa - sb));
  return neg ? -r : r;
}

dd to_dd(const Rational& q) { return ratio_to_dd(mp::numerator(q), mp::denominator(q)); }

Rational to_rational(double x) {
  require(std::isfinite(x), "non-finite value");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  const int shift = e - 53;
  BigInt n(mant);
  if (shift >= 0) return Rational(BigInt(n << shift));
  return Rational(n, BigInt(1) << -shift);
}

Rational to_rational(const dd& x) { return to_rational(x.hi()) + to_rational(x.lo()); }

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  auto fail_parse = [&] { fail(ErrorKind::Precondition, "malformed decimal literal: " + std::string(text)); };
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  BigInt mant = 0;
  long long exp10 = 0;
  int digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mant = mant * 10 + (text[i++] - '0');
    ++digits;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mant = mant * 10 + (text[i++] - '0');
      --exp10;
      ++digits;
    }
  }
  if (digits == 0) fail_parse();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    long long e = 0;
    int ed = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      if (++ed > 6) fail_parse();
    }
    if (ed == 0) fail_parse();
    exp10 += eneg ? -e : e;
  }
  if (i != text.size()) fail_parse();
  if (neg) mant = -mant;
  const BigInt p = mp::pow(BigInt(10), static_cast<unsigned>(std::llabs(exp10)));
  return exp10 >= 0 ? Rational(mant * p) : Rational(mant, p);
}

NumberField::NumberField(const Rational& value) {
  modulus_ = {-mp::numerator(value), mp::denominator(value)};
  lo_ = hi_ = value;
  root_ = to_dd(value);
  root_err_ = std::abs(root_.to_double()) * 1e-31;
  mod_dd_ = {to_dd(modulus_[0]), to_dd(modulus_[1])};
}

NumberField::NumberField(IntPoly p, const Rational& lo, const Rational& hi, bool check_isolation) {
  poly::trim(p);
  require(poly::degree(p) >= 1, "defining polynomial must have degree >= 1");
  while (!p.empty() && p.front() == 0) p.erase(p.begin());
  require(poly::degree(p) >= 1, "defining polynomial has no nonzero root");
  p = poly::primitive(std::move(p));
  const IntPoly g = poly::gcd(p, poly::derivative(p));
  if (poly::degree(g) > 0) p = poly::exact_quotient(p, g);
  require(lo < hi, "isolating interval must satisfy lo < hi");
  const int slo = poly::sign_at(p, lo);
  const int shi = poly::sign_at(p, hi);
  require(slo != 0 && shi != 0, "isolating interval endpoint is a root");
  require(slo != shi, "polynomial does not change sign on the isolating interval");
  if (check_isolation) require(poly::sturm_count(p, lo, hi) == 1, "interval does not isolate a single root");
  if (poly::degree(p) == 1) {
    *this = NumberField(Rational(-p[0], p[1]));
    return;
  }
  modulus_ = std::move(p);
  lo_ = lo;
  hi_ = hi;
  for (const auto& c : modulus_) mod_dd_.push_back(to_dd(c));
  settle_root();
}

void NumberField::settle_root() {
  const int slo = poly::sign_at(modulus_, lo_);
  auto bisect = [&](const Rational& target_width) {
    while (hi_ - lo_ > target_width) {
      const Rational m = (lo_ + hi_) / 2;
      const int s = poly::sign_at(modulus_, m);
      if (s == 0) {
        lo_ = m - target_width / 4;
        hi_ = m + target_width / 4;
        return;
      }
      (s == slo ? lo_ : hi_) = m;
    }
  };
  const Rational scale = mp::abs(lo_) + mp::abs(hi_) + 1;
  bisect(scale / Rational(BigInt(1) << 50));
  dd x = to_dd((lo_ + hi_) / 2);
  for (int it = 0; it < 4; ++it) {
    dd v(0.0), dv(0.0);
    for (int k = degree(); k >= 0; --k) {
      dv = dv * x + v;
      v = v * x + mod_dd_[static_cast<std::size_t>(k)];
    }
    if (dv.hi() == 0.0) break;
    x = x - v / dv;
  }
  const dd delta = dd(std::abs(x.hi()) * 0x1p-100);
  const Rational a = to_rational(x - delta);
  const Rational b = to_rational(x + delta);
  if (a > lo_ && b < hi_ && poly::sign_at(modulus_, a) == slo && poly::sign_at(modulus_, b) == -slo) {
    lo_ = a;
    hi_ = b;
  } else {
    bisect(scale / Rational(BigInt(1) << 112));
  }
  root_ = to_dd((lo_ + hi_) / 2);
  root_err_ = (hi_ - lo_).convert_to<double>() * 0.5001 + std::abs(root_.to_double()) * 1e-31;
}

Element NumberField::zero() const {
  Element e;
  e.num.assign(static_cast<std::size_t>(degree()), BigInt(0));
  e.den = 1;
  return e;
}

Element NumberField::from_int(long long k) const {
  Element e = zero();
  e.num[0] = k;
  return e;
}

Element NumberField::from_rational(const Rational& q) const {
  Element e = zero();
  e.num[0] = mp::numerator(q);
  e.den = mp::denominator(q);
  return e;
}

Element NumberField::generator() const {
  if (degree() == 1) return from_rational(lo_);
  Element e = zero();
  e.num[1] = 1;
  return e;
}

Element NumberField::add(const Element& a, const Element& b) const {
  Element r = zero();
  if (a.den == b.den) {
    for (std::size_t k = 0; k < r.num.size(); ++k) r.num[k] = a.num[k] + b.num[k];
    r.den = a.den;
  } else {
    for (std::size_t k = 0; k < r.num.size(); ++k) r.num[k] = a.num[k] * b.den + b.num[k] * a.den;
    r.den = a.den * b.den;
  }
  return r;
}

Element NumberField::sub(const Element& a, const Element& b) const {
  Element nb = b;
  for (auto& c : nb.num) c = -c;
  return add(a, nb);
}

Element NumberField::add_int(Element a, long long k) const {
  a.num[0] += a.den * k;
  return a;
}

Element NumberField::scale(Element a, const Rational& q) const {
  for (auto& c : a.num) c *= mp::numerator(q);
  a.den *= mp::denominator(q);
  return a;
}

Element NumberField::mul_root(const Element& a) const {
  const std::size_t d = static_cast<std::size_t>(degree());
  const BigInt& lead = modulus_[d];
  const BigInt top = a.num[d - 1];
  Element r = zero();
  for (std::size_t k = 0; k < d; ++k) {
    BigInt shifted = k == 0 ? BigInt(0) : a.num[k - 1];
    if (lead != 1) shifted *= lead;
    r.num[k] = shifted - top * modulus_[k];
  }
  r.den = lead == 1 ? a.den : a.den * lead;
  return r;
}

Element NumberField::div_root(const Element& a) const {
  const std::size_t d = static_cast<std::size_t>(degree());
  const BigInt& c0 = modulus_[0];
  Element r = zero();
  for (std::size_t k = 0; k < d; ++k) {
    const BigInt next = k + 1 < d ? a.num[k + 1] : BigInt(0);
    r.num[k] = c0 * next - a.num[0] * modulus_[k + 1];
  }
  r.den = a.den * c0;
  if (r.den < 0) {
    r.den = -r.den;
    for (auto& c : r.num) c = -c;
  }
  return r;
}

void NumberField::normalize(Element& a) const {
  BigInt g = a.den;
  for (const auto& c : a.num) {
    if (g == 1) return;
    g = mp::gcd(g, c);
  }
  if (g == 1) return;
  for (auto& c : a.num) c /= g;
  a.den /= g;
}

IntPoly NumberField::as_poly(const Element& a) const {
  IntPoly p = a.num;
  poly::trim(p);
  return p;
}

dd NumberField::value(const Element& a) const {
  if (degree() == 1) return ratio_to_dd(a.num[0], a.den);
  dd acc(0.0);
  for (auto it = a.num.rbegin(); it != a.num.rend(); ++it) acc = acc * root_ + ratio_to_dd(*it, a.den);
  return acc;
}

double NumberField::value_error(const Element& a) const {
  if (degree() == 1) return std::abs(ratio_to_dd(a.num[0], a.den).to_double()) * 1e-30 + 1e-300;
  const double b = std::abs(root_.to_double());
  double major = 0.0, dmajor = 0.0, pw = 1.0, dpw = 0.0;
  for (std::size_t k = 0; k < a.num.size(); ++k) {
    const double c = std::abs(ratio_to_dd(a.num[k], a.den).to_double());
    major += c * pw;
    dmajor += c * dpw * static_cast<double>(k);
    dpw = pw;
    pw *= b;
  }
  return major * (static_cast<double>(degree()) + 4.0) * 1e-31 + dmajor * root_err_ * 1.01 + 1e-300;
}

bool NumberField::is_zero(const Element& a) const {
  const IntPoly p = as_poly(a);
  if (p.empty()) return true;
  if (degree() == 1) return false;
  const double v = std::abs(value(a).to_double());
  if (v > 2.0 * value_error(a)) return false;
  const IntPoly g = poly::gcd(p, modulus_);
  if (poly::degree(g) < 1) return false;
  return poly::sign_at(g, lo_) * poly::sign_at(g, hi_) < 0;
}

int NumberField::sign(const Element& a) const {
  bool all_zero = true;
  for (const auto& c : a.num) all_zero = all_zero && c == 0;
  if (all_zero) return 0;
  if (degree() == 1) return a.num[0].sign();
  const double v = value(a).to_double();
  if (std::abs(v) > 2.0 * value_error(a)) return v > 0 ? 1 : -1;
  if (is_zero(a)) return 0;
  return refine_sign(a);
}

int NumberField::refine_sign(const Element& a) const {
  const IntPoly e = as_poly(a);
  Rational lo = lo_, hi = hi_;
  const int slo = poly::sign_at(modulus_, lo);
  for (int it = 0; it < 4000; ++it) {
    const Rational m = (lo + hi) / 2;
    const Rational r = mp::abs(lo) > mp::abs(hi) ? mp::abs(lo) : mp::abs(hi);
    Rational slope = 0, pw = 1;
    for (std::size_t k = 1; k < e.size(); ++k) {
      slope += mp::abs(Rational(e[k])) * static_cast<long>(k) * pw;
      pw *= r;
    }
    const Rational em = poly::eval(e, m);
    if (mp::abs(em) > slope * (hi - lo) / 2) return em.sign();
    const int s = poly::sign_at(modulus_, m);
    if (s == 0) return em.sign();
    (s == slo ? lo : hi) = m;
  }
  fail(ErrorKind::AmbiguousDigit, "sign undecided after interval refinement");
}

int NumberField::compare(const Element& a, const Element& b) const { return sign(sub(a, b)); }

long long NumberField::floor(const Element& a) const {
  const dd v = value(a);
  const double err = value_error(a);
  const dd f = betaspec::floor(v);
  long long k = static_cast<long long>(f.hi()) + static_cast<long long>(f.lo());
  const double below = (v - dd(static_cast<double>(k))).to_double();
  const double above = (dd(static_cast<double>(k + 1)) - v).to_double();
  if (below > err && above > err) return k;
  while (sign(add_int(a, -k)) < 0) --k;
  while (sign(add_int(a, -(k + 1))) >= 0) ++k;
  return k;
}

}  // namespace betaspec
