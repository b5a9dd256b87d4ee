#include "betaspec/expansion.hpp"

#include <algorithm>
#include <sstream>

#include "betaspec/errors.hpp"

namespace betaspec {

namespace {

bool is_one(const BetaSpec& beta, const Point& x) {
  return x.value.to_double() == 1.0 && beta.field().is_zero(beta.field().add_int(x.exact, -1));
}

DigitWord concat(const std::vector<int>& head, const DigitWord& rest) {
  DigitWord w;
  w.head = head;
  w.head.insert(w.head.end(), rest.head.begin(), rest.head.end());
  w.cycle = rest.cycle;
  w.tail = rest.tail;
  return w;
}

void fill_lists(DigitSequence& s, int horizon) {
  const int g = std::min(horizon, s.greedy_word.known_length());
  const int q = std::min(horizon, s.quasi_word.known_length());
  s.greedy = s.greedy_word.take(g);
  s.quasi_greedy = s.quasi_word.take(q);
  s.trust_horizon = std::min(g, horizon);
}

}  // namespace

DigitSequence greedy_digits(const BetaSpec& beta, const Point& x, int horizon) {
  require(horizon >= 1, "horizon must be positive");
  require(x.value >= dd(0.0) && x.value <= dd(1.0), "point must lie in [0,1]");
  DigitSequence s;
  s.point = x.value.to_double();
  s.horizon = horizon;
  if (is_one(beta, x)) {
    const OneOrbit& one = beta.one();
    s.greedy_word = one.greedy_word();
    s.quasi_word = one.quasi_word();
    if (one.is_simple()) s.simple_index = one.length;
    fill_lists(s, horizon);
    return s;
  }
  std::vector<int> digits;
  Point y = x;
  bool zero_start = beta.is_zero(x);
  for (int n = 1; n <= horizon && !zero_start; ++n) {
    auto [k, next] = beta.step(y);
    digits.push_back(k);
    if (beta.is_zero(next)) {
      s.simple_index = n;
      break;
    }
    y = std::move(next);
  }
  if (zero_start || s.simple_index) {
    s.greedy_word.head = digits;
    s.greedy_word.tail = DigitWord::Tail::Zeros;
  } else {
    s.greedy_word.head = digits;
    s.greedy_word.tail = DigitWord::Tail::Unknown;
  }
  if (s.simple_index) {
    std::vector<int> head = digits;
    head.back() -= 1;
    s.quasi_word = concat(head, beta.one().quasi_word());
  } else {
    s.quasi_word = s.greedy_word;
  }
  fill_lists(s, horizon);
  return s;
}

DigitSequence greedy_digits(const BetaSpec& beta, const Rational& x, int horizon) {
  return greedy_digits(beta, beta.point(x), horizon);
}

DigitSequence quasi_greedy_digits(const BetaSpec& beta, const Point& x, int horizon) {
  require(x.value > dd(0.0), "quasi-greedy expansion needs x > 0");
  return greedy_digits(beta, x, horizon);
}

DigitSequence quasi_greedy_digits(const BetaSpec& beta, const Rational& x, int horizon) {
  return quasi_greedy_digits(beta, beta.point(x), horizon);
}

std::optional<int> classify_simple(const BetaSpec& beta, const Point& x, int horizon) {
  return greedy_digits(beta, x, horizon).simple_index;
}

bool is_admissible(std::span<const int> word, const DigitWord& quasi_one, int max_digit, Shifts shifts) {
  for (int w : word)
    if (w < 0 || w > max_digit) return false;
  const int len = static_cast<int>(word.size());
  for (int i = shifts == Shifts::All ? 0 : 1; i < len; ++i) {
    int verdict = 0;
    for (int k = 1; k <= len - i && verdict == 0; ++k) {
      const int t = word[static_cast<std::size_t>(i + k - 1)];
      const int q = quasi_one.digit(k);
      if (t != q) verdict = t < q ? -1 : 1;
    }
    if (verdict > 0) return false;
    if (verdict == 0 && quasi_one.tail == DigitWord::Tail::Zeros &&
        static_cast<int>(quasi_one.head.size()) <= len - i)
      return false;
  }
  return true;
}

BetaSpec beta_from_digits(std::span<const int> word, int horizon) {
  std::vector<int> w(word.begin(), word.end());
  while (!w.empty() && w.back() == 0) w.pop_back();
  if (w.empty() || w.front() < 1) fail(ErrorKind::InadmissibleWord, "word must start with a positive digit");
  for (int d : w)
    if (d < 0) fail(ErrorKind::InadmissibleWord, "negative digit");
  if (w.size() == 1) fail(ErrorKind::Precondition, "single-digit word gives an integer base");
  const std::size_t n = w.size();
  for (std::size_t i = 1; i < n; ++i) {
    int verdict = 0;
    for (std::size_t k = 0; k < n && verdict == 0; ++k) {
      const int t = i + k < n ? w[i + k] : 0;
      if (t != w[k]) verdict = t < w[k] ? -1 : 1;
    }
    if (verdict >= 0) fail(ErrorKind::InadmissibleWord, "shifted tail is not smaller than the word");
  }
  IntPoly p;
  for (auto it = w.rbegin(); it != w.rend(); ++it) p.emplace_back(-*it);
  p.emplace_back(1);
  std::ostringstream def;
  def << "poly:1";
  for (int d : w) def << "," << -d;
  def << "@(" << w.front() << "," << w.front() + 1 << ")";
  BetaSpec beta = BetaSpec::from_int_poly(std::move(p), Rational(w.front()), Rational(w.front() + 1), horizon,
                                          false, def.str());
  const OneOrbit& one = beta.one();
  if (!one.is_simple() || one.digits != w) fail(ErrorKind::InadmissibleWord, "word is not the expansion of 1");
  return beta;
}

dd word_value(const DigitWord& w, int shift, const dd& beta, double* tail_bound) {
  const int h = static_cast<int>(w.head.size());
  dd acc(0.0);
  if (tail_bound) *tail_bound = 0.0;
  if (w.tail == DigitWord::Tail::Cycle) {
    const int c = static_cast<int>(w.cycle.size());
    const int phase = shift >= h ? (shift - h) % c : 0;
    for (int j = c - 1; j >= 0; --j) acc = (acc + dd(w.cycle[static_cast<std::size_t>((phase + j) % c)])) / beta;
    acc = acc / (dd(1.0) - dd(1.0) / powi(beta, c));
  } else if (w.tail == DigitWord::Tail::Unknown && tail_bound) {
    const double b = beta.to_double();
    *tail_bound = b * std::pow(b, -static_cast<double>(std::max(h - shift, 0))) / (b - 1.0);
  }
  for (int j = h; j > shift; --j) acc = (acc + dd(w.head[static_cast<std::size_t>(j - 1)])) / beta;
  return acc;
}

OrbitOfOne orbit_of_one(const BetaSpec& beta, int horizon) {
  require(horizon >= 1, "horizon must be positive");
  const OneOrbit& one = beta.one();
  const DigitWord q = one.quasi_word();
  OrbitOfOne o;
  for (int n = 0; n <= horizon; ++n) {
    o.forward.push_back(one.value(n).to_double());
    o.left_limits.push_back(n == 0 ? 1.0 : word_value(q, n, beta.value_dd()).to_double());
  }
  return o;
}

}  // namespace betaspec
