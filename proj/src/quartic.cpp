#include "betaspec/quartic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"
#include "betaspec/series.hpp"

namespace betaspec {

namespace {

using DdPoly = std::vector<dd>;  // leading first

dd horner(const DdPoly& p, const dd& x) {
  dd v(0.0);
  for (const dd& c : p) v = v * x + c;
  return v;
}

dd horner_derivative(const DdPoly& p, const dd& x) {
  dd v(0.0);
  const auto deg = static_cast<long long>(p.size()) - 1;
  for (long long k = 0; k < deg; ++k) v = v * x + p[static_cast<std::size_t>(k)] * static_cast<double>(deg - k);
  return v;
}

ComplexDD horner(const DdPoly& p, const ComplexDD& z) {
  ComplexDD v(0.0);
  for (const dd& c : p) v = v * z + ComplexDD(c);
  return v;
}

DdPoly deflate(const DdPoly& p, const dd& r) {
  DdPoly q;
  dd acc(0.0);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    acc = acc * r + p[k];
    q.push_back(acc);
  }
  return q;
}

// Bisection to a short bracket then Newton, all in double-double.
dd real_root(const DdPoly& p, dd lo, dd hi) {
  int slo = horner(p, lo).hi() < 0 ? -1 : 1;
  for (int it = 0; it < 200 && (hi - lo).to_double() > 1e-12 * std::max(1.0, std::abs(lo.to_double())); ++it) {
    const dd mid = (lo + hi) * 0.5;
    const dd v = horner(p, mid);
    if (v.hi() == 0.0) return mid;
    if ((v.hi() < 0 ? -1 : 1) == slo) lo = mid;
    else hi = mid;
  }
  dd x = (lo + hi) * 0.5;
  for (int it = 0; it < 8; ++it) {
    const dd d = horner_derivative(p, x);
    if (d.hi() == 0.0) break;
    x -= horner(p, x) / d;
  }
  return x;
}

double cauchy_bound(const DdPoly& p) {
  double m = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) m = std::max(m, std::abs((p[k] / p[0]).to_double()));
  return 1.0 + m;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::P: return "P";
    case Family::Q: return "Q";
    case Family::R: return "R";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "P" || text == "p") return Family::P;
  if (text == "Q" || text == "q") return Family::Q;
  if (text == "R" || text == "r") return Family::R;
  fail(ErrorKind::Precondition, "family must be P, Q or R");
}

QuarticFamily::QuarticFamily(Family family, int n) : family_(family), n_(n) {
  const long long m = n;
  switch (family) {
    case Family::P:
      require(n >= 3, "family P needs n >= 3");
      coeffs_ = {1, -m, -(m - 1), 0, -m};
      break;
    case Family::Q:
      require(n >= 4, "family Q needs n >= 4");
      coeffs_ = {1, -m, 0, -(m - 1), -m};
      break;
    case Family::R:
      require(n >= 4, "family R needs n >= 4");
      coeffs_ = {1, -(m + 1), 0, m, -(m - 1)};
      break;
  }
}

std::string QuarticFamily::beta_definition() const {
  std::ostringstream s;
  s << "poly:";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) s << (k ? "," : "") << coeffs_[k];
  s << "@(" << n_ << "," << n_ + 1 << ")";
  return s.str();
}

BetaSpec QuarticFamily::beta(int horizon) const { return BetaSpec::parse(beta_definition(), horizon); }

double QuarticFamily::eval(double x) const {
  double v = 0.0;
  for (long long c : coeffs_) v = v * x + static_cast<double>(c);
  return v;
}

std::vector<cplx> QuarticRoots::all() const {
  std::vector<cplx> out(real_roots.begin(), real_roots.end());
  for (const cplx& z : complex_pairs) {
    out.push_back(z);
    out.push_back(std::conj(z));
  }
  return out;
}

QuarticRoots quartic_roots(const QuarticFamily& fam, double tol) {
  const DdPoly p(fam.coefficients().begin(), fam.coefficients().end());
  const int n = fam.n();
  const dd beta = real_root(p, dd(n), dd(n + 1));
  std::vector<ComplexDD> roots{ComplexDD(beta)};
  std::vector<bool> real{true};
  const DdPoly cubic = deflate(p, beta);
  const double b = cauchy_bound(cubic);
  const dd r2 = real_root(cubic, dd(-b), dd(b));
  roots.emplace_back(r2);
  real.push_back(true);
  const DdPoly quad = deflate(cubic, r2);
  const dd qb = quad[1] / quad[0], qc = quad[2] / quad[0];
  const dd disc = qb * qb - qc * 4.0;
  if (disc.hi() < 0.0) {
    const dd im = sqrt(-disc) * 0.5;
    roots.emplace_back(-qb * 0.5, im);
    roots.emplace_back(-qb * 0.5, -im);
    real.insert(real.end(), {false, false});
  } else {
    const dd s = sqrt(disc);
    const dd q = (qb.hi() >= 0 ? -(qb + s) : -(qb - s)) * 0.5;
    roots.emplace_back(q);
    roots.emplace_back(q.hi() == 0.0 ? dd(0.0) : qc / q);
    real.insert(real.end(), {true, true});
  }
  // simultaneous polish on the undeflated quartic
  for (int it = 0; it < 4; ++it) {
    std::vector<ComplexDD> next = roots;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      ComplexDD den(1.0);
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i) den *= roots[i] - roots[j];
      if (norm2(den).hi() == 0.0) continue;
      next[i] = roots[i] - horner(p, roots[i]) / den;
      if (real[i]) next[i].im = dd(0.0);
    }
    roots = std::move(next);
  }
  QuarticRoots out;
  out.beta = roots[0].re.to_double();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (real[i]) out.real_roots.push_back(roots[i].re.to_double());
    else if (roots[i].im.hi() > 0) out.complex_pairs.push_back(roots[i].to_complex());
  }
  std::sort(out.real_roots.begin(), out.real_roots.end());
  ComplexDD sum(0.0), prod(1.0);
  for (const auto& z : roots) {
    sum += z;
    prod *= z;
  }
  const auto& c = fam.coefficients();
  out.vieta_error = std::max(abs_d(sum + ComplexDD(static_cast<double>(c[1]))),
                             abs_d(prod - ComplexDD(static_cast<double>(c[4]))));
  if (out.vieta_error > tol * (1.0 + std::abs(static_cast<double>(c[4]))))
    fail(ErrorKind::VerificationFailure, "quartic roots fail the Vieta check");
  return out;
}

int ExpectedProfile::digit(int k) const {
  const auto h = static_cast<int>(head.size());
  if (k <= h) return head[static_cast<std::size_t>(k - 1)];
  if (cycle.empty()) return 0;
  return cycle[static_cast<std::size_t>((k - h - 1) % static_cast<int>(cycle.size()))];
}

ExpectedProfile expected_profile(const QuarticFamily& fam) {
  const int n = fam.n();
  ExpectedProfile e;
  switch (fam.family()) {
    case Family::P: e.head = {n, n - 1, 0, n}; break;
    case Family::Q: e.head = {n, 0, n - 1, n}; break;
    case Family::R:
      e.head = {n, n, 0};
      e.cycle = {n - 1};
      e.simple = false;
      break;
  }
  const QuarticRoots r = quartic_roots(fam);
  for (const cplx& z : r.all()) {
    const double m = std::abs(z);
    if (m > 1.0 && m < r.beta * (1.0 - 1e-12)) e.lambdas.push_back(z / r.beta);
  }
  std::sort(e.lambdas.begin(), e.lambdas.end(), [](cplx a, cplx b) {
    if (std::abs(std::abs(a) - std::abs(b)) > 1e-12) return std::abs(a) > std::abs(b);
    return a.imag() > b.imag();
  });
  e.nonleading_count = static_cast<int>(e.lambdas.size());
  e.real = std::all_of(e.lambdas.begin(), e.lambdas.end(), [](cplx l) { return l.imag() == 0.0; });
  return e;
}

bool VerificationReport::passed() const {
  return !clauses.empty() && std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.passed; });
}

VerificationReport verify_example(const QuarticFamily& fam, double tol, int digit_count) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.family = fam.family();
  rep.n = fam.n();
  rep.beta_definition = fam.beta_definition();
  rep.tol = tol;
  const BetaSpec beta = fam.beta();
  rep.beta = beta.value();
  rep.roots = quartic_roots(fam);
  rep.expected = expected_profile(fam);
  const ExpectedProfile& e = rep.expected;
  digit_count = std::max(digit_count, static_cast<int>(e.head.size()) + 20);

  {
    Clause c{"a", true, ""};
    const DigitSequence ds = greedy_digits(beta, beta.unit(), digit_count);
    std::ostringstream why;
    for (int k = 1; k <= digit_count && c.passed; ++k) {
      const int got = k <= static_cast<int>(ds.greedy.size()) ? ds.greedy[static_cast<std::size_t>(k - 1)] : 0;
      if (got != e.digit(k)) {
        c.passed = false;
        why << "digit " << k << " is " << got << ", expected " << e.digit(k);
      }
    }
    if (c.passed && beta.one().is_simple() != e.simple) {
      c.passed = false;
      why << "simple flag mismatch";
    }
    if (c.passed) why << digit_count << " digits match";
    c.detail = why.str();
    rep.clauses.push_back(c);
  }

  Clause cb{"b", false, ""};
  Clause cd{"d", false, ""};
  try {
    rep.spectrum = locate_eigenvalues(beta);
    std::vector<cplx> got;
    for (const Eigenvalue& ev : rep.spectrum.eigenvalues)
      if (ev.kind == EigenKind::NonLeading) got.push_back(ev.lambda);
    std::ostringstream why;
    if (got.size() != e.lambdas.size()) {
      why << got.size() << " non-leading eigenvalues, expected " << e.lambdas.size();
    } else {
      double worst = 0.0;
      bool in_annulus = true;
      for (const cplx& l : e.lambdas) {
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& g : got) best = std::min(best, std::abs(g - l));
        worst = std::max(worst, best);
        in_annulus = in_annulus && std::abs(l) > 1.0 / rep.beta && std::abs(l) < 1.0;
      }
      cb.passed = worst <= tol && in_annulus;
      why << "max deviation " << worst << (in_annulus ? "" : ", outside (1/beta, 1)");
    }
    cb.detail = why.str();
    const auto sub = subleading(rep.spectrum);
    if (!sub) {
      cd.detail = "no subleading eigenvalue";
    } else {
      cd.passed = std::all_of(sub->simple.begin(), sub->simple.end(), [](bool s) { return s; });
      cd.detail = cd.passed ? "all subleading eigenvalues simple" : "subleading eigenvalue with multiplicity >= 2";
    }
  } catch (const Error& err) {
    cb.detail = std::string(to_string(err.kind())) + ": " + err.what();
    cd.detail = cb.detail;
  }
  rep.clauses.push_back(cb);

  {
    Clause c{"c", true, ""};
    const BetaSeries s(beta);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double mag = 1.2 + 0.1 * (k / 2);
      const double x = k % 2 == 0 ? mag : -mag;
      const double lhs = fam.eval(x);
      const double pre = fam.family() == Family::R ? std::pow(x, 4) - std::pow(x, 3) : std::pow(x, 4);
      const double rhs = pre * s.one_minus_phi(cplx(rep.beta / x)).f.real();
      double scale = 0.0;
      for (long long cf : fam.coefficients()) scale = scale * std::abs(x) + std::abs(static_cast<double>(cf));
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    c.passed = worst <= tol;
    std::ostringstream why;
    why << "max relative gap " << worst << " at 50 points";
    c.detail = why.str();
    rep.clauses.push_back(c);
  }
  rep.clauses.push_back(cd);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void require_verified(const VerificationReport& report) {
  for (const Clause& c : report.clauses)
    if (!c.passed)
      fail(ErrorKind::VerificationFailure, "clause (" + c.name + ") failed for " + to_string(report.family) +
                                               std::to_string(report.n) + ": " + c.detail);
}

}  // namespace betaspec
