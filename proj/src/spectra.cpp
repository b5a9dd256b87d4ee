#include "betaspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "betaspec/errors.hpp"
#include "betaspec/parallel.hpp"

namespace betaspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSectorOffset = 0.1234;

enum class Target { OneMinusPhi, Psi };

struct Sample {
  cplx value;
  double err;
};

Sample sample(const BetaSeries& s, Target f, cplx z) {
  if (f == Target::Psi) {
    const SeriesEval e = s.psi(z);
    return {e.value, e.tail_bound};
  }
  const SeriesEval e = s.phi(z);
  return {1.0 - e.value, e.tail_bound + 2.3e-16 * (1.0 + std::abs(e.value))};
}

double slope(const BetaSeries& s, Target f, double r) { return f == Target::Psi ? s.psi_slope(r) : s.phi_slope(r); }

struct Path {
  std::function<cplx(double)> at;
  double speed;  // bound on |dz/dt|
  double rmax;
};

Path circle(cplx centre, double r, double theta0 = 0.0) {
  return {[=](double t) { return centre + std::polar(r, theta0 + kTwoPi * t); }, kTwoPi * r, std::abs(centre) + r};
}

Path arc(double r, double a, double b) {
  return {[=](double t) { return std::polar(r, a + (b - a) * t); }, r * std::abs(b - a), r};
}

Path radial(double theta, double r0, double r1) {
  return {[=](double t) { return std::polar(r0 + (r1 - r0) * t, theta); }, std::abs(r1 - r0), std::max(r0, r1)};
}

// Argument change along a path. Each step keeps the true function within half
// its modulus of the sampled value, so no increment can reach pi/2.
double arg_change(const BetaSeries& s, Target f, const Path& p) {
  const double lip = slope(s, f, p.rmax) * p.speed;
  double t = 0.0;
  Sample a = sample(s, f, p.at(0.0));
  double total = 0.0;
  while (t < 1.0) {
    const double room = 0.5 * std::abs(a.value) - 2.0 * a.err;
    if (!(room > 0.0)) fail(ErrorKind::BoundaryZero, "function too small on the contour");
    double dt = lip > 0.0 ? room / lip : 1.0;
    if (dt < 1e-11) fail(ErrorKind::BoundaryZero, "zero too close to the contour");
    dt = std::min(dt, 0.125);
    const double tn = std::min(1.0, t + dt);
    const Sample b = sample(s, f, p.at(tn));
    total += std::arg(b.value / a.value);
    a = b;
    t = tn;
  }
  return total;
}

int winding(const BetaSeries& s, Target f, std::initializer_list<Path> loop) {
  double total = 0.0;
  for (const Path& p : loop) total += arg_change(s, f, p);
  const double turns = total / kTwoPi;
  const double k = std::round(turns);
  if (std::abs(turns - k) > 0.05) fail(ErrorKind::BoundaryZero, "winding did not close");
  return static_cast<int>(k);
}

struct Cell {
  double r0, r1, a, b;
  int count;
};

int cell_winding(const BetaSeries& s, const Cell& c) {
  return winding(s, Target::Psi,
                 {arc(c.r1, c.a, c.b), radial(c.b, c.r1, c.r0), arc(c.r0, c.b, c.a), radial(c.a, c.r0, c.r1)});
}

bool inside(const Cell& c, cplx z) {
  const double r = std::abs(z);
  if (r <= c.r0 || r >= c.r1) return false;
  double t = std::arg(z);
  while (t < c.a) t += kTwoPi;
  while (t >= c.a + kTwoPi) t -= kTwoPi;
  return t < c.b;
}

int small_circle_multiplicity(const BetaSeries& s, cplx z) {
  double rho = 1e-5 * std::abs(z);
  for (int k = 0; k < 6; ++k, rho *= 1.7) {
    try {
      return winding(s, Target::Psi, {circle(z, rho, 0.3)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryZero) throw;
    }
  }
  fail(ErrorKind::BoundaryZero, "no clean small circle around the zero");
}

struct Zero {
  cplx z;
  int multiplicity;
};

struct Attempt {
  std::vector<Zero> zeros;
  int total_phi = 0;
};

Attempt resolve(const BetaSeries& s, double r0, double r_out, double theta0) {
  const int total = winding(s, Target::Psi, {circle(0.0, r_out, theta0)});
  Attempt out;
  out.total_phi = winding(s, Target::OneMinusPhi, {circle(0.0, r_out, theta0)});
  if (out.total_phi != total + 1) fail(ErrorKind::VerificationFailure, "psi and 1 - phi windings disagree");
  if (total == 0) return out;

  std::vector<Cell> stack;
  int sum = 0;
  for (int k = 3; k >= 0; --k) {
    Cell c{r0, r_out, theta0 + k * kTwoPi / 4, theta0 + (k + 1) * kTwoPi / 4, 0};
    c.count = cell_winding(s, c);
    sum += c.count;
    stack.push_back(c);
  }
  if (sum != total) fail(ErrorKind::VerificationFailure, "sector windings do not add up");

  const double rmax = std::min(s.max_radius() * 0.999, r_out * 1.05);
  static constexpr double kSplits[] = {0.5, 0.537, 0.459, 0.583, 0.417, 0.631, 0.372, 0.678};
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    if (c.count == 0) continue;
    const double rm = 0.5 * (c.r0 + c.r1), tm = 0.5 * (c.a + c.b);
    if (auto z = newton_psi(s, std::polar(rm, tm), rmax); z && inside(c, *z)) {
      const int m = small_circle_multiplicity(s, *z);
      if (m == c.count) {
        out.zeros.push_back({*z, m});
        continue;
      }
    }
    const double radial_len = c.r1 - c.r0, arc_len = rm * (c.b - c.a);
    if (std::max(radial_len, arc_len) < 1e-11 * c.r1) fail(ErrorKind::NonConvergence, "cell shrank without isolating");
    bool split = false;
    for (double frac : kSplits) {
      Cell lo = c, hi = c;
      if (radial_len >= arc_len) {
        lo.r1 = hi.r0 = c.r0 + frac * radial_len;
      } else {
        lo.b = hi.a = c.a + frac * (c.b - c.a);
      }
      try {
        lo.count = cell_winding(s, lo);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BoundaryZero) throw;
        continue;
      }
      hi.count = c.count - lo.count;
      if (lo.count < 0 || hi.count < 0) fail(ErrorKind::VerificationFailure, "negative cell count");
      stack.push_back(hi);
      stack.push_back(lo);
      split = true;
      break;
    }
    if (!split) fail(ErrorKind::BoundaryZero, "no clean split of a cell");
  }
  return out;
}

template <class Fn>
auto with_jitter(Fn&& fn) {
  for (int k = 0;; ++k) {
    try {
      return fn(k);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryZero || k >= 16) throw;
    }
  }
}

// Attempt k uses radius factor 1, 1-e, 1+e, 1-2e, 1+2e, ... with e = 1e-4 doubling.
double jitter_factor(int k) {
  if (k == 0) return 1.0;
  const double eps = 1e-4 * std::ldexp(1.0, (k - 1) / 2);
  return k % 2 == 1 ? 1.0 - eps : 1.0 + eps;
}

double residual_at(const BetaSeries& s, const ComplexDD& z) {
  const JetDD j = s.one_minus_phi_dd(z, 1e-32);
  return abs_d(j.f) + j.err;
}

bool lambda_order(const Eigenvalue& x, const Eigenvalue& y) {
  if (x.kind != y.kind) return x.kind == EigenKind::Leading;
  const double mx = std::abs(x.lambda), my = std::abs(y.lambda);
  if (std::abs(mx - my) > 1e-12) return mx > my;
  return x.lambda.imag() > y.lambda.imag();
}

}  // namespace

std::optional<cplx> newton_psi(const BetaSeries& s, cplx seed, double rmax) {
  cplx z = seed;
  double last = 0.0;
  for (int it = 0; it < 100; ++it) {
    Jet j;
    try {
      j = s.psi_jet(z, 1e-17);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (j.df == cplx(0.0)) return std::nullopt;
    const cplx dz = j.f / j.df;
    z -= dz;
    last = std::abs(dz);
    if (!(std::abs(z) < rmax) || std::abs(z) < 0.5) return std::nullopt;
    if (last <= 4e-16 * std::abs(z)) return z;
  }
  if (last <= 1e-7 * std::abs(z)) return z;
  return std::nullopt;
}

int SpectrumReport::nonleading_count() const {
  return static_cast<int>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                        [](const Eigenvalue& e) { return e.kind == EigenKind::NonLeading; }));
}

ComplexDD polish_zero(const BetaSeries& series, ComplexDD z, int iterations) {
  const ComplexDD start = z;
  const double r0 = abs_d(series.one_minus_phi_dd(z, 1e-32).f);
  for (int it = 0; it < iterations; ++it) {
    const JetDD j = series.one_minus_phi_dd(z, 1e-32);
    if (j.df.is_zero()) break;
    const ComplexDD dz = j.f / j.df;
    z -= dz;
    if (abs_d(dz) <= 1e-31 * abs_d(z)) break;
  }
  if (abs_d(z - start) > 1e-8 * abs_d(start) || abs_d(series.one_minus_phi_dd(z, 1e-32).f) > r0) return start;
  return z;
}

int count_zeros(const BetaSpec& beta, double r_inner, double r_outer) {
  const BetaSeries s(beta);
  require(r_inner >= 1.0 && r_inner < r_outer, "need 1 <= r_inner < r_outer");
  if (r_outer > BetaSeries::kTruncatedCeiling * s.beta() * (1 + 1e-12))
    fail(ErrorKind::DomainError, "r_outer above 0.97 beta");
  return with_jitter([&](int k) {
    const double f = jitter_factor(k);
    const double ro = std::min(r_outer * f, BetaSeries::kTruncatedCeiling * s.beta());
    const double ri = std::max(r_inner * (2.0 - f), 1.0);
    const double t0 = 0.05 * k;
    return winding(s, Target::OneMinusPhi, {circle(0.0, ro, t0)}) -
           winding(s, Target::OneMinusPhi, {circle(0.0, ri, t0)});
  });
}

SpectrumReport locate_eigenvalues(const BetaSpec& beta, const SpectrumOptions& options) {
  require(options.ceiling > 0.0 && options.ceiling <= BetaSeries::kTruncatedCeiling, "ceiling must lie in (0, 0.97]");
  const BetaSeries s(beta);
  SpectrumReport rep;
  rep.beta = beta.definition();
  rep.beta_value = s.beta();
  rep.exact = s.exact();
  rep.tol = options.tol > 0.0 ? options.tol : (s.exact() ? 1e-10 : 1e-8);
  const double nominal = options.ceiling * s.beta();
  require(nominal > 1.0, "ceiling leaves no annulus above |z| = 1");

  double r_out = nominal;
  const Attempt found = with_jitter([&](int k) {
    r_out = std::min(nominal * jitter_factor(k), BetaSeries::kTruncatedCeiling * s.beta());
    const double r0 = k == 0 ? 1.0 : 1.0 - 1e-4 * k;
    return resolve(s, r0, r_out, kSectorOffset + 0.0371 * k);
  });
  rep.r_outer = r_out;
  rep.contour_winding_total = found.total_phi;

  Eigenvalue lead;
  lead.lambda = 1.0;
  lead.z = 1.0;
  lead.kind = EigenKind::Leading;
  lead.residual = residual_at(s, ComplexDD(1.0));
  rep.eigenvalues.push_back(lead);

  for (const Zero& zero : found.zeros) {
    ComplexDD z(zero.z);
    if (options.polish_dd && zero.multiplicity == 1) z = polish_zero(s, z);
    Eigenvalue e;
    e.z = z.to_complex();
    e.lambda = (ComplexDD(1.0) / z).to_complex();
    e.multiplicity = zero.multiplicity;
    e.residual = residual_at(s, z);
    if (zero.multiplicity == 1) {
      const Sample d = sample(s, Target::OneMinusPhi, e.z);
      e.residual = std::min(e.residual, std::abs(d.value) + d.err);
    }
    if (e.residual > rep.tol) fail(ErrorKind::NonConvergence, "residual above tolerance at a located zero");
    rep.eigenvalues.push_back(e);
  }
  std::stable_sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), lambda_order);

  int mult = 0;
  for (const Eigenvalue& e : rep.eigenvalues) mult += e.multiplicity;
  if (mult != rep.contour_winding_total) fail(ErrorKind::VerificationFailure, "multiplicities do not match winding");
  if (auto sub = subleading(rep)) rep.subleading_modulus = sub->modulus;
  return rep;
}

std::optional<Subleading> subleading(const SpectrumReport& report) {
  Subleading out;
  for (const Eigenvalue& e : report.eigenvalues)
    if (e.kind == EigenKind::NonLeading) out.modulus = std::max(out.modulus, std::abs(e.lambda));
  if (out.modulus == 0.0) return std::nullopt;
  for (const Eigenvalue& e : report.eigenvalues) {
    if (e.kind == EigenKind::NonLeading && std::abs(e.lambda) >= out.modulus * (1.0 - 1e-9)) {
      out.eigenvalues.push_back(e);
      out.simple.push_back(e.multiplicity == 1);
    }
  }
  return out;
}

std::optional<Subleading> subleading(const BetaSpec& beta, const SpectrumOptions& options) {
  return subleading(locate_eigenvalues(beta, options));
}

ScanResult scan_beta_range(const Rational& lo, const Rational& hi, int grid, int threads,
                           const SpectrumOptions& options, int horizon) {
  require(grid >= 2, "grid needs at least two points");
  require(lo > 1 && lo < hi, "need 1 < lo < hi");
  require(threads >= 1, "threads must be positive");
  ScanResult out;
  out.points.resize(static_cast<std::size_t>(grid));
  parallel_for(grid, threads, [&](int i) {
    const Rational b = lo + (hi - lo) * Rational(i, grid - 1);
    ScanPoint& p = out.points[static_cast<std::size_t>(i)];
    p.beta = b.str();
    p.beta_value = to_dd(b).to_double();
    try {
      p.report = locate_eigenvalues(BetaSpec::from_rational(b, horizon), options);
    } catch (const Error& e) {
      p.error_kind = to_string(e.kind());
      p.message = e.what();
    }
  });
  int ok = 0, with = 0;
  for (const ScanPoint& p : out.points) {
    if (!p.report) continue;
    ++ok;
    if (p.report->nonleading_count() > 0) ++with;
  }
  out.nonleading_fraction = ok > 0 ? static_cast<double>(with) / ok : 0.0;
  return out;
}

ScanResult scan_beta_range(double lo, double hi, int grid, int threads, const SpectrumOptions& options) {
  return scan_beta_range(to_rational(lo), to_rational(hi), grid, threads, options);
}

}  // namespace betaspec
