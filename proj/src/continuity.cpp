#include "betaspec/continuity.hpp"

#include <algorithm>
#include <cmath>

#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"

namespace betaspec {

namespace {

struct Certified {
  Eigenvalue eigen;
  double separation = 0.0;  // distance from 1/lambda to the nearest other zero of 1 - phi
  bool leading = false;
};

Certified certify(const BetaSpec& beta0, cplx lambda0) {
  Certified c;
  if (std::abs(lambda0 - 1.0) < 1e-12) {
    c.leading = true;
    c.eigen.lambda = 1.0;
    c.eigen.z = 1.0;
    c.eigen.kind = EigenKind::Leading;
    return c;
  }
  const SpectrumReport rep = locate_eigenvalues(beta0);
  const Eigenvalue* best = nullptr;
  for (const Eigenvalue& e : rep.eigenvalues)
    if (e.kind == EigenKind::NonLeading && (!best || std::abs(e.lambda - lambda0) < std::abs(best->lambda - lambda0)))
      best = &e;
  if (!best || std::abs(best->lambda - lambda0) > 1e-6 * std::max(1.0, std::abs(lambda0)))
    fail(ErrorKind::Precondition, "lambda0 is not a located eigenvalue of beta0");
  c.eigen = *best;
  c.separation = std::abs(best->z - 1.0);
  for (const Eigenvalue& e : rep.eigenvalues)
    if (&e != best) c.separation = std::min(c.separation, std::abs(e.z - best->z));
  return c;
}

struct Side {
  std::vector<double> betas;
  std::vector<cplx> zs;
  std::vector<double> residuals;
  bool truncated = false;
};

double residual(const BetaSeries& s, cplx z) {
  const Jet j = s.one_minus_phi(z);
  return std::abs(j.f) + j.err;
}

Side continue_side(double beta0, cplx z0, const std::vector<double>& targets, double spacing, double separation,
                   const TrackOptions& o) {
  Side side;
  double b_prev = beta0, b_pp = beta0;
  cplx z_prev = z0, z_pp = z0;
  bool have_pp = false;
  double step = spacing;
  const double floor = spacing * std::ldexp(1.0, -o.max_halvings);
  for (double target : targets) {
    while (b_prev != target) {
      const double dir = target > b_prev ? 1.0 : -1.0;
      const double h = std::min(step, std::abs(target - b_prev));
      const double b_new = h == std::abs(target - b_prev) ? target : b_prev + dir * h;
      const cplx pred = have_pp ? z_prev + (z_prev - z_pp) * ((b_new - b_prev) / (b_prev - b_pp)) : z_prev;
      bool ok = false;
      cplx corr;
      double res = 0.0;
      try {
        const BetaSeries s(BetaSpec::from_double(b_new, o.horizon));
        for (cplx seed : {pred, z_prev}) {
          const auto z = newton_psi(s, seed, s.max_radius() * 0.999);
          if (!z) continue;
          corr = *z;
          res = residual(s, corr);
          ok = std::abs(corr - seed) < 0.5 * separation && res <= o.tol;
          if (ok || seed == z_prev) break;
        }
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        step *= 0.5;
        if (step < floor) {
          side.truncated = true;
          return side;
        }
        continue;
      }
      z_pp = z_prev;
      b_pp = b_prev;
      have_pp = true;
      z_prev = corr;
      b_prev = b_new;
      step = std::min(2.0 * step, spacing);
      if (b_new == target) {
        side.betas.push_back(target);
        side.zs.push_back(corr);
        side.residuals.push_back(res);
      }
    }
  }
  return side;
}

}  // namespace

EigenCurve track(const BetaSpec& beta0, cplx lambda0, double lo, double hi, int steps, const TrackOptions& options) {
  const double b0 = beta0.value();
  require(lo <= b0 && b0 <= hi, "interval must contain beta0");
  require(steps >= 1, "steps must be positive");
  require(lo == hi || steps >= 2, "a proper interval needs at least two steps");
  const Certified cert = certify(beta0, lambda0);
  EigenCurve curve;
  curve.beta0 = b0;
  curve.lambda0 = cert.eigen.lambda;
  curve.multiplicity = cert.eigen.multiplicity;
  curve.non_canonical = cert.eigen.multiplicity >= 2;

  std::vector<double> left, right;
  if (lo < hi) {
    for (int i = 0; i < steps; ++i) {
      const double b = lo + (hi - lo) * i / (steps - 1);
      if (std::abs(b - b0) <= 1e-15 * b0) continue;
      (b < b0 ? left : right).push_back(b);
    }
  }
  std::reverse(left.begin(), left.end());

  if (cert.leading) {
    std::vector<double> all(left.rbegin(), left.rend());
    all.push_back(b0);
    all.insert(all.end(), right.begin(), right.end());
    curve.betas = all;
    curve.lambdas.assign(all.size(), cplx(1.0));
    curve.residuals.assign(all.size(), 0.0);
    return curve;
  }

  const double spacing = lo < hi ? (hi - lo) / (steps - 1) : 0.0;
  const Side l = continue_side(b0, cert.eigen.z, left, spacing, cert.separation, options);
  const Side r = continue_side(b0, cert.eigen.z, right, spacing, cert.separation, options);
  curve.truncated_left = l.truncated;
  curve.truncated_right = r.truncated;
  for (std::size_t i = l.betas.size(); i-- > 0;) {
    curve.betas.push_back(l.betas[i]);
    curve.lambdas.push_back(1.0 / l.zs[i]);
    curve.residuals.push_back(l.residuals[i]);
  }
  curve.betas.push_back(b0);
  curve.lambdas.push_back(cert.eigen.lambda);
  curve.residuals.push_back(cert.eigen.residual);
  for (std::size_t i = 0; i < r.betas.size(); ++i) {
    curve.betas.push_back(r.betas[i]);
    curve.lambdas.push_back(1.0 / r.zs[i]);
    curve.residuals.push_back(r.residuals[i]);
  }
  return curve;
}

HoelderEstimate holder_constants(const BetaSpec& beta0, cplx lambda0, int multiplicity, int horizon) {
  require(multiplicity >= 1, "multiplicity must be positive");
  require(horizon >= 1, "horizon must be positive");
  const double b = beta0.value();
  const double scaled = b * std::abs(lambda0);
  require(scaled > 1.0, "need |beta0 lambda0| > 1");
  HoelderEstimate h;
  h.horizon = horizon;
  h.multiplicity = multiplicity;
  const double top = std::log(scaled) / multiplicity;
  h.alpha0 = top / std::log(b);
  if (beta0.one().is_parry()) {
    h.parry = true;
    h.gamma1 = h.gamma2 = 1.0;
  } else {
    const OrbitOfOne orbit = orbit_of_one(beta0, horizon);
    h.gamma1 = h.gamma2 = 1.0;
    for (int n = 1; n <= horizon; ++n) {
      const double left = orbit.left_limits[static_cast<std::size_t>(n)];
      const double gap = 1.0 - orbit.forward[static_cast<std::size_t>(n)];
      if (h.gamma1 > 0.0) {
        if (left < 1e-300) {
          h.gamma1 = 0.0;
          h.notes.push_back("DegenerateOrbit: left-limit orbit value underflows at n=" + std::to_string(n));
        } else {
          h.gamma1 = std::min(h.gamma1, std::pow(left, 1.0 / n));
        }
      }
      if (h.gamma2 > 0.0) {
        if (gap < 1e-300) {
          h.gamma2 = 0.0;
          h.notes.push_back("DegenerateOrbit: 1 - orbit value underflows at n=" + std::to_string(n));
        } else {
          h.gamma2 = std::min(h.gamma2, std::pow(gap, 1.0 / n));
        }
      }
    }
  }
  if (h.gamma1 > 0.0) h.alpha1 = top / (std::log(b) - std::log(h.gamma1));
  if (h.gamma2 > 0.0) h.alpha2 = top / (std::log(b) - std::log(h.gamma2));
  return h;
}

std::vector<int> approximant_depths(const BetaSpec& beta0, int count, int min_depth, int stride) {
  require(count >= 1, "count must be positive");
  const DigitWord q = beta0.one().quasi_word();
  const bool endless = q.tail == DigitWord::Tail::Cycle;
  std::vector<int> out;
  int residue = -1;
  for (int n = std::max(min_depth, 2); static_cast<int>(out.size()) < count; ++n) {
    if (!endless && n > q.known_length())
      fail(ErrorKind::InsufficientDigits, "quasi-greedy digits of 1 exhausted");
    if (q.digit(n) == 0) continue;
    if (stride > 1) {
      if (residue < 0) residue = n % stride;
      if (n % stride != residue) continue;
    }
    out.push_back(n);
  }
  return out;
}

std::vector<BetaSpec> left_parry_approximants(const BetaSpec& beta0, std::span<const int> depths) {
  const DigitWord q = beta0.one().quasi_word();
  std::vector<BetaSpec> out;
  dd prev(1.0);
  for (int l : depths) {
    const std::vector<int> word = q.take(l);
    BetaSpec b = beta_from_digits(word, beta0.horizon());
    if (!(b.value_dd() > prev) || !(b.value_dd() < beta0.value_dd()))
      fail(ErrorKind::VerificationFailure, "approximants are not increasing towards beta0");
    prev = b.value_dd();
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<BetaSpec> left_parry_approximants(const BetaSpec& beta0, int count) {
  const std::vector<int> depths = approximant_depths(beta0, count);
  return left_parry_approximants(beta0, depths);
}

std::vector<ProbePoint> nondiff_probe(const BetaSpec& beta0, cplx lambda0, int count, const ProbeOptions& options) {
  require(count >= 1, "count must be positive");
  const Certified cert = certify(beta0, lambda0);
  int min_depth = options.min_depth;
  if (min_depth <= 0) {
    const double scaled = beta0.value() * std::abs(cert.eigen.lambda);
    min_depth = cert.leading ? 2 : static_cast<int>(std::ceil(std::log(4.0) / std::log(scaled)));
  }
  int stride = options.stride;
  if (stride <= 0) {
    const DigitWord q = beta0.one().quasi_word();
    stride = q.tail == DigitWord::Tail::Cycle ? static_cast<int>(q.cycle.size()) : 1;
  }
  const std::vector<int> depths = approximant_depths(beta0, count, min_depth, stride);
  const std::vector<BetaSpec> betas = left_parry_approximants(beta0, depths);

  const BetaSeries s0(beta0);
  const ComplexDD z0 = cert.leading ? ComplexDD(1.0) : polish_zero(s0, ComplexDD(cert.eigen.z));
  const ComplexDD lambda_dd = ComplexDD(1.0) / z0;
  std::vector<ProbePoint> out;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    ProbePoint p;
    p.depth = depths[i];
    p.beta_definition = betas[i].definition();
    p.beta = betas[i].value();
    p.gap = (beta0.value_dd() - betas[i].value_dd()).to_double();
    if (cert.leading) {
      p.lambda = 1.0;
      out.push_back(p);
      continue;
    }
    const BetaSeries s(betas[i]);
    const auto z = newton_psi(s, z0.to_complex(), s.max_radius() * 0.999);
    if (!z || std::abs(*z - z0.to_complex()) > 0.5 * cert.separation)
      fail(ErrorKind::BranchLoss, "continued zero left the basin at depth " + std::to_string(p.depth));
    const ComplexDD zn = polish_zero(s, ComplexDD(*z));
    const ComplexDD ln = ComplexDD(1.0) / zn;
    p.lambda = ln.to_complex();
    p.lambda_shift = abs_d(lambda_dd - ln);
    p.quotient = p.lambda_shift / p.gap;
    const JetDD j = s.one_minus_phi_dd(zn, 1e-32);
    p.residual = abs_d(j.f) + j.err;
    out.push_back(p);
  }
  return out;
}

std::optional<double> fit_exponent(std::span<const ProbePoint> points, int k, double tol) {
  std::vector<std::pair<double, double>> xy;
  for (const ProbePoint& p : points)
    if (p.residual <= tol && p.lambda_shift > 0.0 && p.gap > 0.0)
      xy.emplace_back(std::log(p.gap), std::log(p.lambda_shift));
  if (static_cast<int>(xy.size()) > k) xy.erase(xy.begin(), xy.end() - k);
  if (xy.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : xy) mx += x, my += y;
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : xy) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace betaspec
