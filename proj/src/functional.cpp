#include "betaspec/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"
#include "betaspec/parallel.hpp"

namespace betaspec {

namespace {

constexpr int kMaxTerms = 4096;

double ratio(const BetaSpec& beta, cplx lambda) {
  const double q = 1.0 / (beta.value() * std::abs(lambda));
  if (!(q < 1.0)) fail(ErrorKind::DomainError, "need |lambda| > 1/beta");
  return q;
}

double tail_after(const BetaSpec& beta, double q, int n) {
  return beta.floor() * std::pow(q, n + 1.0) / (1.0 - q);
}

int terms_for(const BetaSpec& beta, double q, double tol) {
  require(tol > 0.0, "tolerance must be positive");
  const double need = std::log(tol * (1.0 - q) / std::max(beta.floor(), 1)) / std::log(q) - 1.0;
  return std::clamp(static_cast<int>(std::ceil(need)), 1, kMaxTerms);
}

cplx horner(const std::vector<int>& digits, std::size_t count, cplx w) {
  cplx acc(0.0);
  for (std::size_t k = count; k >= 1; --k) acc = (acc + static_cast<double>(digits[k - 1])) * w;
  return acc;
}

// sum_n word_n w^n; finite and periodic words are summed exactly.
FunctionalEval sum_word(const BetaSpec& beta, const DigitWord& word, cplx lambda, double q, int terms) {
  FunctionalEval out;
  out.lambda = lambda;
  const cplx w = 1.0 / (beta.value() * lambda);
  const std::size_t h = word.head.size();
  switch (word.tail) {
    case DigitWord::Tail::Zeros:
      out.value = horner(word.head, h, w);
      out.terms = static_cast<int>(h);
      break;
    case DigitWord::Tail::Cycle: {
      const std::size_t c = word.cycle.size();
      out.value = horner(word.head, h, w) + std::pow(w, static_cast<double>(h)) * horner(word.cycle, c, w) /
                                                 (1.0 - std::pow(w, static_cast<double>(c)));
      out.terms = static_cast<int>(h + c);
      break;
    }
    case DigitWord::Tail::Unknown: {
      const int n = std::min(terms, static_cast<int>(h));
      out.value = horner(word.head, static_cast<std::size_t>(n), w);
      out.tail_bound = tail_after(beta, q, n);
      out.terms = n;
      break;
    }
  }
  return out;
}

}  // namespace

FunctionalEval eval_F(const BetaSpec& beta, cplx lambda, const Point& x, double tol) {
  const double q = ratio(beta, lambda);
  const int n = terms_for(beta, q, tol);
  const DigitSequence ds = greedy_digits(beta, x, n);
  FunctionalEval out = sum_word(beta, ds.greedy_word, lambda, q, n);
  out.x = x.value.to_double();
  return out;
}

FunctionalEval eval_F(const BetaSpec& beta, cplx lambda, double x, double tol) {
  return eval_F(beta, lambda, beta.point(x), tol);
}

FunctionalEval left_limit_F(const BetaSpec& beta, cplx lambda, const Point& x, double tol) {
  const double q = ratio(beta, lambda);
  const int n = terms_for(beta, q, tol);
  const DigitSequence ds = quasi_greedy_digits(beta, x, n);
  FunctionalEval out = sum_word(beta, ds.quasi_word, lambda, q, n);
  out.x = x.value.to_double();
  return out;
}

FunctionalEval left_limit_F(const BetaSpec& beta, cplx lambda, double x, double tol) {
  return left_limit_F(beta, lambda, beta.point(x), tol);
}

double continuity_residual(const BetaSpec& beta, cplx lambda, double tol) {
  require(lambda != cplx(0.0), "lambda must be nonzero");
  const BetaSeries s(beta);
  if (s.exact() && beta.value() * std::abs(lambda) <= 1.0) return std::abs(s.one_minus_phi_hat_continued(1.0 / lambda));
  ratio(beta, lambda);
  const Jet j = s.one_minus_phi_hat(1.0 / lambda, tol);
  return std::abs(j.f);
}

std::vector<LipschitzPoint> lipschitz_probe(const BetaSpec& beta, cplx lambda, double x0, int depth) {
  require(depth >= 1, "depth must be positive");
  require(x0 >= 0.0 && x0 <= 1.0, "x0 must lie in [0,1]");
  ratio(beta, lambda);
  std::vector<LipschitzPoint> out;
  if (x0 == 0.0) {
    std::vector<int> word;
    for (int n = 1; n <= depth; ++n) {
      word.assign(static_cast<std::size_t>(n), 0);
      word.back() = 1;
      const Point xn = beta.from_word(word);
      const FunctionalEval f = eval_F(beta, lambda, xn);
      out.push_back({n, xn.value.to_double(), (abs(ComplexDD(f.value)) / xn.value).to_double()});
    }
    return out;
  }
  const Point p0 = beta.point(x0);
  const FunctionalEval f0 = eval_F(beta, lambda, p0);
  DigitWord q;
  for (int h = 4 * depth + 16;; h *= 2) {
    h = std::min(h, beta.horizon());
    q = quasi_greedy_digits(beta, p0, h).quasi_word;
    int nonzero = 0;
    for (int n = 1; q.known(n) && n <= h && nonzero < depth; ++n) nonzero += q.digit(n) != 0;
    if (nonzero >= depth || h == beta.horizon() || q.tail != DigitWord::Tail::Unknown) break;
  }
  int n = 0;
  while (static_cast<int>(out.size()) < depth) {
    ++n;
    if (!q.known(n)) fail(ErrorKind::InsufficientDigits, "quasi-greedy digits of x0 exhausted");
    if (q.digit(n) == 0) continue;
    const Point xk = beta.from_word(q.take(n));
    const dd gap = beta.field().value(beta.field().sub(p0.exact, xk.exact));
    const FunctionalEval fk = eval_F(beta, lambda, xk);
    out.push_back({n, xk.value.to_double(), std::abs(fk.value - f0.value) / gap.to_double()});
  }
  return out;
}

Decomposition takagi_decomposition(const BetaSpec& beta, cplx lambda, double x, double tol) {
  require(x >= 0.0 && x <= 1.0, "x must lie in [0,1]");
  const double q = ratio(beta, lambda);
  const int n = terms_for(beta, q, tol);
  const cplx w = 1.0 / (beta.value() * lambda);
  Decomposition d;
  Point y = beta.point(x);
  cplx wn = 1.0;
  bool finite = beta.is_zero(y);
  int used = 0;
  for (int k = 1; k <= n && !finite; ++k) {
    auto [digit, next] = beta.step(y);
    wn *= w;
    d.F += static_cast<double>(digit) * wn;
    d.rho += next.value.to_double() * wn;
    finite = beta.is_zero(next);
    y = std::move(next);
    used = k;
  }
  const cplx c = 1.0 / lambda - 1.0;
  const double xv = beta.point(x).value.to_double();
  d.reconstruction_error = std::abs(d.F - xv / lambda - c * d.rho);
  const double tails = finite ? 0.0 : tail_after(beta, q, used) + std::abs(c) * std::pow(q, used + 1.0) / (1.0 - q);
  const double scale = std::abs(d.F) + std::abs(xv / lambda) + std::abs(c) * std::abs(d.rho) + beta.floor() / (1.0 - q);
  d.bound = tails + 8.0 * (used + 2) * std::numeric_limits<double>::epsilon() * scale;
  return d;
}

DetectorResult residual_zero_set(const BetaSpec& beta, double threshold, int grid, double ceiling, int threads) {
  require(grid >= 3, "grid needs at least three points per axis");
  require(threshold > 0.0, "threshold must be positive");
  const BetaSeries s(beta);
  require(ceiling > 0.0 && ceiling * s.beta() > 1.0 && ceiling <= BetaSeries::kTruncatedCeiling,
          "ceiling out of range");
  const double rmin = 1.0 / (ceiling * s.beta());
  const auto g = static_cast<std::size_t>(grid);
  auto lambda_at = [&](std::size_t i, std::size_t j) {
    const double r = rmin + (1.0 - rmin) * static_cast<double>(i) / (grid - 1);
    return std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / grid);
  };
  std::vector<double> res(g * g, std::numeric_limits<double>::infinity());
  parallel_for(grid, threads, [&](int ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < g; ++j) res[i * g + j] = std::abs(s.one_minus_phi_hat(1.0 / lambda_at(i, j)).f);
  });

  DetectorResult out;
  out.grid = grid;
  out.threshold = threshold;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      const double v = res[i * g + j];
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di) {
        for (int dj = -1; dj <= 1 && minimum; ++dj) {
          if (di == 0 && dj == 0) continue;
          const long ni = static_cast<long>(i) + di;
          if (ni < 0 || ni >= grid) continue;
          const std::size_t nj = (j + g + static_cast<std::size_t>(dj + 1) - 1) % g;
          if (res[static_cast<std::size_t>(ni) * g + nj] < v) minimum = false;
        }
      }
      if (!minimum) continue;
      cplx z = 1.0 / lambda_at(i, j);
      bool ok = false;
      try {
        for (int it = 0; it < 60; ++it) {
          const Jet jt = s.one_minus_phi_hat(z);
          if (jt.df == cplx(0.0)) break;
          const cplx dz = jt.f / jt.df;
          z -= dz;
          if (std::abs(dz) <= 1e-15 * std::abs(z)) {
            ok = true;
            break;
          }
        }
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) continue;
      const cplx lam = 1.0 / z;
      const double m = std::abs(lam);
      if (m < rmin * (1.0 - 1e-12) || m > 1.0 + 1e-12) continue;
      const double r = std::abs(s.one_minus_phi_hat(z).f);
      if (r > threshold) continue;
      const bool known = std::any_of(out.lambdas.begin(), out.lambdas.end(),
                                     [&](cplx l) { return std::abs(l - lam) < 1e-7; });
      if (known) continue;
      out.lambdas.push_back(lam);
      out.residuals.push_back(r);
    }
  }
  std::vector<std::size_t> order(out.lambdas.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const cplx x = out.lambdas[a], y = out.lambdas[b];
    if (std::abs(std::abs(x) - std::abs(y)) > 1e-12) return std::abs(x) > std::abs(y);
    return x.imag() > y.imag();
  });
  DetectorResult sorted = out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted.lambdas[k] = out.lambdas[order[k]];
    sorted.residuals[k] = out.residuals[order[k]];
  }
  return sorted;
}

}  // namespace betaspec
