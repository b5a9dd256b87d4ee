#include "betaspec/beta.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <sstream>

#include "betaspec/errors.hpp"

namespace betaspec {

bool DigitWord::known(int n) const { return n <= static_cast<int>(head.size()) || tail != Tail::Unknown; }

int DigitWord::known_length() const { return tail == Tail::Unknown ? static_cast<int>(head.size()) : INT_MAX; }

int DigitWord::digit(int n) const {
  require(n >= 1, "digit index starts at 1");
  const int h = static_cast<int>(head.size());
  if (n <= h) return head[static_cast<std::size_t>(n - 1)];
  switch (tail) {
    case Tail::Zeros: return 0;
    case Tail::Cycle: return cycle[static_cast<std::size_t>((n - h - 1) % static_cast<int>(cycle.size()))];
    case Tail::Unknown: break;
  }
  fail(ErrorKind::InsufficientDigits, "digit " + std::to_string(n) + " beyond computed horizon");
}

std::vector<int> DigitWord::take(int count) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int n = 1; n <= count; ++n) out.push_back(digit(n));
  return out;
}

int OneOrbit::digit(int n) const {
  require(n >= 1, "digit index starts at 1");
  const int m = computed();
  if (n <= m) return digits[static_cast<std::size_t>(n - 1)];
  switch (kind) {
    case OrbitKind::Finite: return 0;
    case OrbitKind::EventuallyPeriodic:
      return digits[static_cast<std::size_t>(preperiod + (n - preperiod - 1) % period)];
    case OrbitKind::Open: break;
  }
  fail(ErrorKind::InsufficientDigits, "digit " + std::to_string(n) + " of 1 beyond computed horizon");
}

dd OneOrbit::value(int n) const {
  require(n >= 0, "orbit index must be nonnegative");
  const int m = computed();
  if (n <= m) return values[static_cast<std::size_t>(n)];
  switch (kind) {
    case OrbitKind::Finite: return dd(0.0);
    case OrbitKind::EventuallyPeriodic: return values[static_cast<std::size_t>(preperiod + (n - preperiod) % period)];
    case OrbitKind::Open: break;
  }
  fail(ErrorKind::InsufficientDigits, "orbit point " + std::to_string(n) + " beyond computed horizon");
}

DigitWord OneOrbit::greedy_word() const {
  DigitWord w;
  switch (kind) {
    case OrbitKind::Finite:
      w.head = digits;
      w.tail = DigitWord::Tail::Zeros;
      break;
    case OrbitKind::EventuallyPeriodic:
      w.head.assign(digits.begin(), digits.begin() + preperiod);
      w.cycle.assign(digits.begin() + preperiod, digits.end());
      w.tail = DigitWord::Tail::Cycle;
      break;
    case OrbitKind::Open:
      w.head = digits;
      w.tail = DigitWord::Tail::Unknown;
      break;
  }
  return w;
}

DigitWord OneOrbit::quasi_word() const {
  if (kind != OrbitKind::Finite) return greedy_word();
  DigitWord w;
  w.cycle = digits;
  w.cycle.back() -= 1;
  w.tail = DigitWord::Tail::Cycle;
  return w;
}

struct BetaSpec::Impl {
  NumberField field;
  OneOrbit one;
  int floor = 0;
  int horizon = 0;
  std::string definition;
};

namespace {

OneOrbit compute_orbit(const NumberField& f, int horizon) {
  OneOrbit o;
  const bool algebraic = f.degree() >= 2;
  Element x = f.from_int(1);
  o.values.push_back(dd(1.0));
  if (algebraic) o.elements.push_back(x);
  std::multimap<double, int> seen;
  for (int n = 1; n <= horizon; ++n) {
    const Element v = f.mul_root(x);
    const long long k = f.floor(v);
    x = f.add_int(v, -k);
    if (algebraic) f.normalize(x);
    const dd val = f.value(x);
    o.digits.push_back(static_cast<int>(k));
    o.values.push_back(val);
    if (algebraic) o.elements.push_back(x);
    if (f.is_zero(x)) {
      o.kind = OrbitKind::Finite;
      o.length = n;
      o.values.back() = dd(0.0);
      return o;
    }
    if (!algebraic) continue;
    const double window = std::max(1e-24, 4.0 * f.value_error(x));
    const double key = val.to_double();
    for (auto it = seen.lower_bound(key - window); it != seen.end() && it->first <= key + window; ++it) {
      if (f.is_zero(f.sub(x, o.elements[static_cast<std::size_t>(it->second)]))) {
        o.kind = OrbitKind::EventuallyPeriodic;
        o.preperiod = it->second;
        o.period = n - it->second;
        o.digits.resize(static_cast<std::size_t>(n));
        return o;
      }
    }
    seen.emplace(key, n);
  }
  o.kind = OrbitKind::Open;
  o.elements.clear();
  return o;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Rational parse_number(std::string_view text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string::npos) return parse_decimal(t);
  const Rational p = parse_decimal(t.substr(0, slash));
  const Rational q = parse_decimal(t.substr(slash + 1));
  require(q != 0, "zero denominator");
  return p / q;
}

}  // namespace

BetaSpec BetaSpec::build(NumberField field, int horizon, std::string definition) {
  require(horizon >= 1, "horizon must be positive");
  const Element gen = field.generator();
  require(field.sign(field.add_int(gen, -1)) > 0, "base must exceed 1");
  const long long fl = field.floor(gen);
  require(!field.is_zero(field.add_int(gen, -fl)), "integer base rejected");
  auto impl = std::make_shared<Impl>(Impl{std::move(field), {}, static_cast<int>(fl), horizon, std::move(definition)});
  impl->one = compute_orbit(impl->field, horizon);
  return BetaSpec(std::move(impl));
}

BetaSpec BetaSpec::from_rational(const Rational& value, int horizon) {
  return build(NumberField(value), horizon, value.str());
}

BetaSpec BetaSpec::from_double(double value, int horizon) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return build(NumberField(to_rational(value)), horizon, os.str());
}

BetaSpec BetaSpec::from_decimal(std::string_view text, int horizon) {
  return build(NumberField(parse_number(text)), horizon, trim(text));
}

BetaSpec BetaSpec::from_int_poly(IntPoly ascending, const Rational& lo, const Rational& hi, int horizon,
                                 bool check_isolation, std::string definition) {
  return build(NumberField(std::move(ascending), lo, hi, check_isolation), horizon, std::move(definition));
}

BetaSpec BetaSpec::from_polynomial(const std::vector<long long>& descending, const Rational& lo, const Rational& hi,
                                   int horizon) {
  IntPoly p;
  for (auto it = descending.rbegin(); it != descending.rend(); ++it) p.emplace_back(*it);
  std::ostringstream os;
  os << "poly:";
  for (std::size_t i = 0; i < descending.size(); ++i) os << (i ? "," : "") << descending[i];
  os << "@(" << lo.str() << "," << hi.str() << ")";
  return from_int_poly(std::move(p), lo, hi, horizon, true, os.str());
}

BetaSpec BetaSpec::parse(std::string_view spec, int horizon) {
  const std::string s = trim(spec);
  if (s.rfind("poly:", 0) != 0) return from_decimal(s, horizon);
  const auto at = s.find('@');
  require(at != std::string::npos, "polynomial spec needs @(lo,hi)");
  std::vector<long long> coeffs;
  std::stringstream cs(s.substr(5, at - 5));
  std::string item;
  while (std::getline(cs, item, ',')) {
    const Rational c = parse_decimal(trim(item));
    require(boost::multiprecision::denominator(c) == 1, "polynomial coefficients must be integers");
    coeffs.push_back(boost::multiprecision::numerator(c).convert_to<long long>());
  }
  std::string iv = trim(s.substr(at + 1));
  require(iv.size() >= 5 && iv.front() == '(' && iv.back() == ')', "interval must look like (lo,hi)");
  iv = iv.substr(1, iv.size() - 2);
  const auto comma = iv.find(',');
  require(comma != std::string::npos, "interval must look like (lo,hi)");
  const Rational lo = parse_number(iv.substr(0, comma));
  const Rational hi = parse_number(iv.substr(comma + 1));
  IntPoly p;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p.emplace_back(*it);
  return from_int_poly(std::move(p), lo, hi, horizon, true, s);
}

dd BetaSpec::value_dd() const { return impl_->field.root(); }
int BetaSpec::floor() const { return impl_->floor; }
int BetaSpec::horizon() const { return impl_->horizon; }
const std::string& BetaSpec::definition() const { return impl_->definition; }
const NumberField& BetaSpec::field() const { return impl_->field; }
const OneOrbit& BetaSpec::one() const { return impl_->one; }
bool BetaSpec::is_polynomial_defined() const { return impl_->field.degree() >= 2; }

Point BetaSpec::point(const Rational& x) const {
  require(x >= 0 && x <= 1, "point must lie in [0,1]");
  return make_point(impl_->field.from_rational(x));
}

Point BetaSpec::make_point(Element e) const {
  const dd v = impl_->field.value(e);
  return Point{std::move(e), v};
}

Point BetaSpec::unit() const { return Point{impl_->field.from_int(1), dd(1.0)}; }
Point BetaSpec::origin() const { return Point{impl_->field.zero(), dd(0.0)}; }

Point BetaSpec::from_word(std::span<const int> word) const {
  const NumberField& f = impl_->field;
  Element x = f.zero();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    x = f.div_root(f.add_int(x, *it));
    if (f.degree() >= 2) f.normalize(x);
  }
  return make_point(std::move(x));
}

std::pair<int, Point> BetaSpec::step(const Point& x) const {
  const NumberField& f = impl_->field;
  const Element v = f.mul_root(x.exact);
  const long long k = f.floor(v);
  Element t = f.add_int(v, -k);
  if (f.degree() >= 2) f.normalize(t);
  return {static_cast<int>(k), make_point(std::move(t))};
}

int BetaSpec::compare(const Point& a, const Point& b) const {
  const double gap = (a.value - b.value).to_double();
  if (std::abs(gap) > 1e-25) return gap > 0 ? 1 : -1;
  return impl_->field.compare(a.exact, b.exact);
}

bool BetaSpec::is_zero(const Point& x) const { return impl_->field.is_zero(x.exact); }

}  // namespace betaspec
