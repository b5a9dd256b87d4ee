#include "betaspec/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "betaspec/errors.hpp"

namespace betaspec {

namespace {

constexpr double kEps = 0x1p-53;

cplx ipow(cplx w, int e) {
  cplx r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= w;
    w *= w;
    e >>= 1;
  }
  return r;
}

// Horner with derivative on coefficients c[0..] attached to powers 1..n.
template <class T, class C>
void horner(const std::vector<C>& c, std::size_t n, const T& w, T& val, T& der) {
  val = T(0.0);
  der = T(0.0);
  for (std::size_t k = n; k >= 1; --k) {
    der = der * w + val;
    val = val * w + T(c[k - 1]);
  }
  der = der * w + val;
  val = val * w;
}

std::vector<dd> slice(const std::vector<dd>& v, std::size_t from, std::size_t to) {
  return std::vector<dd>(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to));
}

std::vector<dd> as_dd(const std::vector<int>& v) { return std::vector<dd>(v.begin(), v.end()); }

}  // namespace

CoefficientSeries CoefficientSeries::periodic(std::vector<dd> head, std::vector<dd> cycle) {
  CoefficientSeries s;
  s.head_ = std::move(head);
  s.cycle_ = std::move(cycle);
  for (const auto& c : s.head_) s.head_d_.push_back(c.to_double());
  for (const auto& c : s.cycle_) s.cycle_d_.push_back(c.to_double());
  s.exact_ = true;
  return s;
}

CoefficientSeries CoefficientSeries::truncated(std::vector<dd> coeffs, double bound) {
  CoefficientSeries s = periodic(std::move(coeffs), {});
  s.exact_ = false;
  s.bound_ = bound;
  return s;
}

int CoefficientSeries::terms_for(double r, double tol) const {
  const int avail = available();
  if (exact_) return avail;
  if (r <= 0.0) return std::min(avail, 1);
  const double need = std::log(tol * (1.0 - r) / bound_) / std::log(r) - 1.0;
  const int n = static_cast<int>(std::ceil(std::max(need, 1.0)));
  return std::min(n, avail);
}

std::pair<double, double> CoefficientSeries::real_jet(double r, int n) const {
  double v = 0.0, d = 0.0;
  horner(head_d_, static_cast<std::size_t>(n), r, v, d);
  if (exact_ && !cycle_d_.empty()) {
    double c = 0.0, dc = 0.0;
    horner(cycle_d_, cycle_d_.size(), r, c, dc);
    const double hn = static_cast<double>(head_d_.size()), cn = static_cast<double>(cycle_d_.size());
    const double wh = std::pow(r, hn), whm = hn > 0 ? std::pow(r, hn - 1) : 0.0;
    const double q = 1.0 - std::pow(r, cn), wcm = std::pow(r, cn - 1);
    v += wh * c / q;
    d += (hn * whm * c + wh * dc) / q + wh * c * cn * wcm / (q * q);
  }
  return {v, d};
}

double CoefficientSeries::majorant(double r) const {
  double v = real_jet(r, available()).first;
  if (!exact_) v += bound_ * std::pow(r, available() + 1.0) / (1.0 - r);
  return v * (1.0 + 1e-12);
}

double CoefficientSeries::majorant_derivative(double r) const {
  double d = real_jet(r, available()).second;
  if (!exact_) {
    const double n = available();
    d += bound_ * ((n + 1) * std::pow(r, n) - n * std::pow(r, n + 1)) / ((1.0 - r) * (1.0 - r));
  }
  return d * (1.0 + 1e-12);
}

Jet CoefficientSeries::eval(cplx w, double tol, int max_terms) const {
  const double r = std::abs(w);
  Jet out;
  if (exact_) {
    cplx h, dh;
    horner(head_d_, head_d_.size(), w, h, dh);
    out.f = h;
    out.df = dh;
    const std::size_t hn = head_d_.size(), cn = cycle_d_.size();
    if (cn > 0) {
      cplx c, dc;
      horner(cycle_d_, cn, w, c, dc);
      const cplx wh = ipow(w, static_cast<int>(hn));
      const cplx whm = hn > 0 ? ipow(w, static_cast<int>(hn) - 1) : cplx(0.0);
      const cplx wc = ipow(w, static_cast<int>(cn));
      const cplx wcm = ipow(w, static_cast<int>(cn) - 1);
      const cplx q = 1.0 - wc;
      out.f += wh * c / q;
      out.df += (static_cast<double>(hn) * whm * c + wh * dc) / q + wh * c * static_cast<double>(cn) * wcm / (q * q);
    }
    const double scale = 8.0 * static_cast<double>(hn + cn + 4) * kEps;
    out.err = scale * majorant(r);
    out.derr = scale * majorant_derivative(r);
    out.terms = static_cast<int>(hn + cn);
    return out;
  }
  int n = terms_for(r, tol);
  if (max_terms > 0) n = std::min(n, max_terms);
  horner(head_d_, static_cast<std::size_t>(n), w, out.f, out.df);
  const double nn = n;
  const double tail = bound_ * std::pow(r, nn + 1) / (1.0 - r);
  const double dtail = bound_ * ((nn + 1) * std::pow(r, nn) - nn * std::pow(r, nn + 1)) / ((1.0 - r) * (1.0 - r));
  out.err = tail + 4.0 * (nn + 2) * kEps * bound_ * r / (1.0 - r);
  out.derr = dtail + 4.0 * (nn + 2) * kEps * bound_ / ((1.0 - r) * (1.0 - r));
  out.terms = n;
  return out;
}

JetDD CoefficientSeries::eval_dd(const ComplexDD& w, double tol) const {
  const double r = abs_d(w);
  JetDD out;
  if (exact_) {
    ComplexDD h, dh;
    horner(head_, head_.size(), w, h, dh);
    out.f = h;
    out.df = dh;
    const std::size_t hn = head_.size(), cn = cycle_.size();
    if (cn > 0) {
      ComplexDD c, dc;
      horner(cycle_, cn, w, c, dc);
      const ComplexDD wh = powi(w, static_cast<long long>(hn));
      const ComplexDD whm = hn > 0 ? powi(w, static_cast<long long>(hn) - 1) : ComplexDD(dd(0.0));
      const ComplexDD wc = powi(w, static_cast<long long>(cn));
      const ComplexDD wcm = powi(w, static_cast<long long>(cn) - 1);
      const ComplexDD q = ComplexDD(dd(1.0)) - wc;
      out.f += wh * c / q;
      out.df += (whm * c * dd(static_cast<double>(hn)) + wh * dc) / q +
                wh * c * wcm * dd(static_cast<double>(cn)) / (q * q);
    }
    out.err = 8.0 * static_cast<double>(hn + cn + 4) * kDdEps * majorant(r);
    return out;
  }
  const int n = terms_for(r, tol);
  horner(head_, static_cast<std::size_t>(n), w, out.f, out.df);
  out.err = bound_ * std::pow(r, n + 1.0) / (1.0 - r) + 4.0 * (n + 2.0) * kDdEps * bound_ * r / (1.0 - r);
  return out;
}

}  // namespace betaspec

namespace betaspec {

BetaSeries::BetaSeries(const BetaSpec& beta)
    : beta_(beta.value()), beta_dd_(beta.value_dd()), floor_(beta.floor()) {
  const OneOrbit& one = beta.one();
  exact_ = one.is_parry();
  const std::size_t m = static_cast<std::size_t>(one.computed());
  switch (one.kind) {
    case OrbitKind::Finite: {
      simple_length_ = one.length;
      digits_ = CoefficientSeries::periodic(as_dd(one.digits), {});
      std::vector<dd> cyc = as_dd(one.digits);
      cyc.back() -= dd(1.0);
      quasi_ = CoefficientSeries::periodic({}, std::move(cyc));
      orbit_ = CoefficientSeries::periodic(slice(one.values, 1, m), {});
      break;
    }
    case OrbitKind::EventuallyPeriodic: {
      const auto pre = static_cast<std::size_t>(one.preperiod);
      const std::vector<dd> all = as_dd(one.digits);
      digits_ = CoefficientSeries::periodic(slice(all, 0, pre), slice(all, pre, m));
      quasi_ = digits_;
      orbit_ = CoefficientSeries::periodic(slice(one.values, 1, pre + 1), slice(one.values, pre + 1, m + 1));
      break;
    }
    case OrbitKind::Open:
      digits_ = CoefficientSeries::truncated(as_dd(one.digits), floor_);
      quasi_ = digits_;
      orbit_ = CoefficientSeries::truncated(slice(one.values, 1, m + 1), 1.0);
      break;
  }
}

double BetaSeries::max_radius() const { return exact_ ? beta_ : kTruncatedCeiling * beta_; }

void BetaSeries::check_domain(double r) const {
  if (!(r < beta_)) fail(ErrorKind::DomainError, "|z| must be below beta");
  if (!exact_ && r > kTruncatedCeiling * beta_)
    fail(ErrorKind::DomainError, "|z| above 0.97 beta needs an unbounded horizon");
}

Jet BetaSeries::jet(const CoefficientSeries& s, cplx z, double tol, int horizon, bool one_minus) const {
  check_domain(std::abs(z));
  Jet j = s.eval(z / beta_, tol, horizon);
  j.df /= beta_;
  j.derr /= beta_;
  j.err += std::abs(j.f) * 4 * kEps;
  if (one_minus) {
    j.f = 1.0 - j.f;
    j.df = -j.df;
  }
  return j;
}

JetDD BetaSeries::jet_dd(const CoefficientSeries& s, const ComplexDD& z, double tol) const {
  check_domain(abs_d(z));
  JetDD j = s.eval_dd(z / beta_dd_, tol);
  j.df = j.df / beta_dd_;
  j.f = ComplexDD(dd(1.0)) - j.f;
  j.df = -j.df;
  return j;
}

SeriesEval BetaSeries::phi(cplx z, int horizon) const {
  const Jet j = jet(digits_, z, 1e-17, horizon, false);
  return {j.f, j.err, j.terms};
}

SeriesEval BetaSeries::phi_hat(cplx z, int horizon) const {
  const Jet j = jet(quasi_, z, 1e-17, horizon, false);
  return {j.f, j.err, j.terms};
}

SeriesEval BetaSeries::psi(cplx z, int horizon) const {
  const Jet j = jet(orbit_, z, 1e-17, horizon, false);
  return {1.0 + j.f, j.err, j.terms};
}

Jet BetaSeries::one_minus_phi(cplx z, double tol) const { return jet(digits_, z, tol, 0, true); }
Jet BetaSeries::one_minus_phi_hat(cplx z, double tol) const { return jet(quasi_, z, tol, 0, true); }

Jet BetaSeries::psi_jet(cplx z, double tol) const {
  Jet j = jet(orbit_, z, tol, 0, false);
  j.f += 1.0;
  return j;
}

cplx BetaSeries::one_minus_phi_hat_continued(cplx z) const {
  require(exact_, "continuation needs an exact base");
  return 1.0 - quasi_.eval(z / beta_, 0.0).f;
}

JetDD BetaSeries::one_minus_phi_dd(const ComplexDD& z, double tol) const { return jet_dd(digits_, z, tol); }
JetDD BetaSeries::one_minus_phi_hat_dd(const ComplexDD& z, double tol) const { return jet_dd(quasi_, z, tol); }

double BetaSeries::phi_slope(double r) const { return digits_.majorant_derivative(r / beta_) / beta_; }
double BetaSeries::psi_slope(double r) const { return orbit_.majorant_derivative(r / beta_) / beta_; }

SeriesEval phi(const BetaSpec& beta, cplx z, int horizon) { return BetaSeries(beta).phi(z, horizon); }
SeriesEval phi_hat(const BetaSpec& beta, cplx z, int horizon) { return BetaSeries(beta).phi_hat(z, horizon); }
SeriesEval psi(const BetaSpec& beta, cplx z, int horizon) { return BetaSeries(beta).psi(z, horizon); }

ZetaEval zeta(const BetaSpec& beta, cplx z, int horizon) {
  require(std::abs(z) < 1.0, "zeta needs |z| < 1");
  const BetaSeries s(beta);
  const SeriesEval ph = s.phi(z, horizon);
  const cplx g = 1.0 - ph.value;
  const double gabs = std::abs(g);
  if (gabs <= ph.tail_bound) fail(ErrorKind::NearPole, "1 - phi(z) is within its error bound of zero");
  const cplx p = s.simple_length() > 0 ? 1.0 - ipow(z / s.beta(), s.simple_length()) : cplx(1.0);
  const cplx v = p / g;
  return {v, std::abs(p) * ph.tail_bound / (gabs * (gabs - ph.tail_bound)) + std::abs(v) * 8 * kEps};
}

long long fix_count(const BetaSpec& beta, int n) {
  require(n >= 1, "period must be positive");
  if (n > 8) fail(ErrorKind::TooLarge, "fixed-point enumeration limited to n <= 8");
  const int base = beta.floor() + 1;
  const double total = std::pow(static_cast<double>(base), n);
  if (total > 2e7) fail(ErrorKind::TooLarge, "too many candidate words");
  const DigitWord q = beta.one().quasi_word();
  // Two eventually periodic words agree forever once they agree on head + n*cycle digits.
  const int horizon = q.tail == DigitWord::Tail::Cycle
                          ? static_cast<int>(q.head.size()) + n * static_cast<int>(q.cycle.size()) + n
                          : q.known_length();
  const std::vector<int> qd = q.take(std::min(horizon, q.known_length()));
  const int limit = static_cast<int>(qd.size());
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  long long count = 0;
  const auto words = static_cast<long long>(total);
  for (long long code = 0; code < words; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(c % base);
      c /= base;
    }
    bool ok = true;
    for (int rot = 0; rot < n && ok; ++rot) {
      int verdict = 0;
      for (int k = 0; k < limit && verdict == 0; ++k) {
        const int t = w[static_cast<std::size_t>((rot + k) % n)];
        if (t != qd[static_cast<std::size_t>(k)]) verdict = t < qd[static_cast<std::size_t>(k)] ? -1 : 1;
      }
      if (verdict == 0 && q.tail != DigitWord::Tail::Cycle)
        fail(ErrorKind::InsufficientDigits, "comparison with the expansion of 1 undecided");
      ok = verdict < 0;
    }
    if (ok) ++count;
  }
  return count;
}

ZetaEval zeta_series(const BetaSpec& beta, cplx z, int n_max) {
  const double r = std::abs(z);
  require(r < 1.0, "zeta series needs |z| < 1");
  require(n_max >= 1, "n_max must be positive");
  const double b = beta.value();
  cplx sum(0.0);
  for (int n = 1; n <= n_max; ++n)
    sum += ipow(z / b, n) * (static_cast<double>(fix_count(beta, n)) / n);
  const cplx v = std::exp(sum);
  const double tail = b / (b - 1.0) * std::pow(r, n_max + 1.0) / ((n_max + 1.0) * (1.0 - r));
  return {v, std::abs(v) * std::expm1(tail)};
}

}  // namespace betaspec
