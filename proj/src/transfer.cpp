#include "betaspec/transfer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"
#include "betaspec/functional.hpp"

namespace betaspec {

namespace {

double at(const Point& p) { return p.value.to_double(); }

// Values on (x_{k-1}, x_k] for canonical f: suffix sums of the coefficients.
std::vector<cplx> levels(const StepFunction& f) {
  std::vector<cplx> v(f.size());
  cplx acc(0.0);
  for (std::size_t k = f.size(); k-- > 0;) {
    acc += f.terms[k].c;
    v[k] = acc;
  }
  return v;
}

}  // namespace

StepFunction canonical(const BetaSpec& beta, std::vector<StepTerm> terms) {
  std::erase_if(terms, [&](const StepTerm& t) { return t.c == cplx(0.0) || beta.is_zero(t.x); });
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const StepTerm& a, const StepTerm& b) { return beta.compare(a.x, b.x) < 0; });
  StepFunction out;
  for (auto& t : terms) {
    if (!out.terms.empty() && beta.compare(out.terms.back().x, t.x) == 0) {
      out.terms.back().c += t.c;
      continue;
    }
    require(at(t.x) <= 1.0 + 1e-15, "breakpoint above 1");
    out.terms.push_back(std::move(t));
  }
  std::erase_if(out.terms, [](const StepTerm& t) { return t.c == cplx(0.0); });
  return out;
}

StepFunction indicator(const BetaSpec& beta, const Point& x, cplx c) { return canonical(beta, {{x, c}}); }

StepFunction indicator(const BetaSpec& beta, double x, cplx c) {
  require(x >= 0.0 && x <= 1.0, "breakpoint must lie in [0,1]");
  return indicator(beta, beta.point(x), c);
}

StepFunction constant(const BetaSpec& beta, cplx c) { return indicator(beta, beta.unit(), c); }

StepFunction combine(const BetaSpec& beta, cplx a, const StepFunction& f, cplx b, const StepFunction& g) {
  std::vector<StepTerm> t;
  t.reserve(f.size() + g.size());
  for (const auto& s : f.terms) t.push_back({s.x, a * s.c});
  for (const auto& s : g.terms) t.push_back({s.x, b * s.c});
  return canonical(beta, std::move(t));
}

StepFunction scaled(const StepFunction& f, cplx a) {
  if (a == cplx(0.0)) return {};
  StepFunction out = f;
  for (auto& t : out.terms) t.c *= a;
  return out;
}

StepFunction product(const BetaSpec& beta, const StepFunction& f, const StepFunction& g) {
  const std::vector<cplx> fv = levels(f), gv = levels(g);
  std::vector<Point> cuts;
  std::vector<cplx> vals;
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    int cmp;
    if (i == f.size()) cmp = 1;
    else if (j == g.size()) cmp = -1;
    else cmp = beta.compare(f.terms[i].x, g.terms[j].x);
    const cplx a = i < f.size() ? fv[i] : cplx(0.0);
    const cplx b = j < g.size() ? gv[j] : cplx(0.0);
    vals.push_back(a * b);
    if (cmp <= 0) {
      cuts.push_back(f.terms[i].x);
      ++i;
      if (cmp == 0) ++j;
    } else {
      cuts.push_back(g.terms[j].x);
      ++j;
    }
  }
  std::vector<StepTerm> t;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const cplx next = k + 1 < vals.size() ? vals[k + 1] : cplx(0.0);
    t.push_back({cuts[k], vals[k] - next});
  }
  return canonical(beta, std::move(t));
}

cplx evaluate(const StepFunction& f, double x) {
  cplx v(0.0);
  for (const auto& t : f.terms)
    if (x <= at(t.x)) v += t.c;
  return v;
}

StepFunction apply_L(const BetaSpec& beta, const StepFunction& f) {
  const double inv = 1.0 / beta.value();
  std::vector<StepTerm> t;
  t.reserve(2 * f.size());
  const Point one = beta.unit();
  for (const auto& s : f.terms) {
    auto [digit, next] = beta.step(s.x);
    if (digit > 0) t.push_back({one, s.c * (digit * inv)});
    t.push_back({std::move(next), s.c * inv});
  }
  return canonical(beta, std::move(t));
}

StepFunction apply_L(const BetaSpec& beta, const StepFunction& f, int times) {
  require(times >= 0, "iteration count must be nonnegative");
  StepFunction g = f;
  for (int k = 0; k < times; ++k) g = apply_L(beta, g);
  return g;
}

double variation(const StepFunction& f) {
  double v = 0.0;
  for (const auto& t : f.terms)
    if (at(t.x) < 1.0) v += std::abs(t.c);
  return v;
}

double sup_norm(const StepFunction& f) {
  double s = 0.0;
  for (const cplx& v : levels(f)) s = std::max(s, std::abs(v));
  return s;
}

double bv_norm(const StepFunction& f) { return variation(f) + sup_norm(f); }

cplx integral_lebesgue(const StepFunction& f) {
  cplx s(0.0);
  for (const auto& t : f.terms) s += t.c * at(t.x);
  return s;
}

cplx integral_product(const StepFunction& f, const StepFunction& g) {
  cplx s(0.0);
  for (const auto& a : f.terms)
    for (const auto& b : g.terms) s += a.c * b.c * std::min(at(a.x), at(b.x));
  return s;
}

StepFunction parry_density(const BetaSpec& beta, double tol, int horizon) {
  require(tol > 0.0, "tolerance must be positive");
  const double b = beta.value();
  const OneOrbit& one = beta.one();
  std::vector<StepTerm> t;
  Point x = beta.unit();
  double w = 1.0;
  if (one.is_parry()) {
    const int pre = one.is_simple() ? one.length : one.preperiod;
    const int per = one.is_simple() ? 0 : one.period;
    const double cyc = per > 0 ? 1.0 / (1.0 - std::pow(b, -per)) : 1.0;
    for (int n = 0; n < pre + per; ++n) {
      t.push_back({x, w * (n >= pre ? cyc : 1.0)});
      x = beta.step(x).second;
      w /= b;
    }
  } else {
    if (horizon <= 0) horizon = static_cast<int>(std::ceil(std::log(tol * (1.0 - 1.0 / b)) / -std::log(b)));
    require(horizon >= 1, "horizon must be positive");
    for (int n = 0; n <= horizon; ++n) {
      t.push_back({x, w});
      if (beta.is_zero(x)) break;
      x = beta.step(x).second;
      w /= b;
    }
  }
  StepFunction h = canonical(beta, std::move(t));
  return scaled(h, 1.0 / integral_lebesgue(h));
}

double duality_check(const BetaSpec& beta, const StepFunction& f, const StepFunction& g) {
  const cplx left = integral_product(apply_L(beta, f), g);
  const double b = beta.value();
  const int top = beta.floor();
  cplx right(0.0);
  for (const auto& s : f.terms) {
    const double x = at(s.x);
    for (const auto& r : g.terms) {
      const double y = at(r.x);
      double len = 0.0;
      for (int k = 0; k <= top; ++k) len += std::max(0.0, std::min({x, (k + y) / b, 1.0}) - k / b);
      right += s.c * r.c * len;
    }
  }
  return std::abs(left - right);
}

std::vector<Point> default_breakpoints(const BetaSpec& beta, int count, int depth) {
  require(count >= 2, "need at least two breakpoints");
  require(depth >= 1, "depth must be positive");
  std::vector<Point> out{beta.unit()};
  const int m = count - 1;
  for (int k = 1; k <= m; ++k) {
    const double t = 0.5 * (1.0 - std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * m)));
    const DigitSequence ds = greedy_digits(beta, to_rational(t), depth);
    std::vector<int> word(ds.greedy.begin(), ds.greedy.begin() + std::min<std::ptrdiff_t>(depth, ssize(ds.greedy)));
    Point p = beta.from_word(word);
    const bool fresh = !beta.is_zero(p) && std::none_of(out.begin(), out.end(), [&](const Point& q) {
      return beta.compare(p, q) == 0;
    });
    if (!fresh) fail(ErrorKind::DegenerateBreakpoints, "breakpoints collide; raise the depth");
    out.push_back(std::move(p));
  }
  return out;
}

StepFunction good_decay_construct(const BetaSpec& beta, std::span<const Eigenvalue> subleading,
                                  std::span<const Point> breakpoints, double tol) {
  for (const Eigenvalue& e : subleading)
    if (e.multiplicity >= 2) fail(ErrorKind::NotSimple, "subleading eigenvalue is not simple");
  const auto rows = static_cast<Eigen::Index>(subleading.size() + 1);
  const auto cols = static_cast<Eigen::Index>(breakpoints.size());
  require(cols >= rows + 1, "need at least one more breakpoint than constraints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    require(at(breakpoints[i]) > 0.0 && at(breakpoints[i]) <= 1.0, "breakpoints must lie in (0,1]");
    for (std::size_t j = 0; j < i; ++j)
      if (beta.compare(breakpoints[i], breakpoints[j]) == 0)
        fail(ErrorKind::DegenerateBreakpoints, "breakpoints must be distinct");
  }
  Eigen::MatrixXcd a(rows, cols);
  for (Eigen::Index i = 0; i < cols; ++i) {
    const Point& x = breakpoints[static_cast<std::size_t>(i)];
    a(0, i) = at(x);
    for (Eigen::Index j = 1; j < rows; ++j)
      a(j, i) = eval_F(beta, subleading[static_cast<std::size_t>(j - 1)].lambda, x, tol * 1e-3).value;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(rows - 1) > 1e-12 * sv(0)))
    fail(ErrorKind::DegenerateBreakpoints, "constraint matrix is rank deficient; choose other breakpoints");
  const Eigen::MatrixXcd null = svd.matrixV().rightCols(cols - rows);
  Eigen::VectorXcd v = null.col(null.cols() - 1);
  if (null.cols() > 1) {
    const Eigen::VectorXcd p = null * (null.adjoint() * Eigen::VectorXcd::Ones(cols));
    if (p.norm() > 1e-8) v = p;
  }
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v /= v(big);
  const Eigen::VectorXcd r = a * v;
  if (r.cwiseAbs().maxCoeff() > tol) fail(ErrorKind::DegenerateBreakpoints, "null-space residual above tolerance");
  std::vector<StepTerm> t;
  for (Eigen::Index i = 0; i < cols; ++i) t.push_back({breakpoints[static_cast<std::size_t>(i)], v(i)});
  return canonical(beta, std::move(t));
}

StepFunction good_decay_construct(const BetaSpec& beta, std::span<const Eigenvalue> subleading, int extra,
                                  double tol) {
  require(extra >= 1, "need at least one extra breakpoint");
  const std::vector<Point> x = default_breakpoints(beta, static_cast<int>(subleading.size()) + 1 + extra);
  return good_decay_construct(beta, subleading, x, tol);
}

DecayFit decay_fit(const BetaSpec& beta, const StepFunction& f, int n_max, int n_lo) {
  require(n_max >= 10, "n_max must be at least 10");
  if (n_lo < 0) n_lo = n_max / 2;
  require(n_lo < n_max, "empty fit window");
  DecayFit out;
  const StepFunction h = parry_density(beta, 1e-14);
  StepFunction g = f;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) g = apply_L(beta, g);
    g = combine(beta, 1.0, g, -integral_lebesgue(g), h);
    out.rates.emplace_back(n, bv_norm(g));
  }
  std::vector<double> xs, ys;
  for (int n = n_lo; n <= n_max; ++n) {
    const double v = out.rates[static_cast<std::size_t>(n)].second;
    if (!(v >= 1e-300)) {
      out.underflow = true;
      break;
    }
    xs.push_back(n);
    ys.push_back(std::log(v));
  }
  if (xs.size() < 3) {
    out.underflow = true;
    out.fit_window = {n_lo, n_lo};
    return out;
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k] / m;
    my += ys[k] / m;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  const double sse = std::max(0.0, syy - slope * sxy);
  out.fitted_alpha = std::exp(slope);
  out.fit_window = {n_lo, static_cast<int>(xs.back())};
  out.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  out.slope_stderr = std::sqrt(sse / (m - 2.0) / sxx);
  return out;
}

cplx correlation(const BetaSpec& beta, const StepFunction& f, const StepFunction& g, int n, double tol) {
  require(n >= 0, "n must be nonnegative");
  const StepFunction h = parry_density(beta, tol);
  const StepFunction fh = product(beta, f, h);
  const cplx joint = integral_product(apply_L(beta, fh, n), g);
  return joint - integral_lebesgue(fh) * integral_product(g, h);
}

}  // namespace betaspec
