// One PASS/FAIL line per acceptance criterion; exit status is the failure count.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "betaspec/continuity.hpp"
#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"
#include "betaspec/functional.hpp"
#include "betaspec/quartic.hpp"
#include "betaspec/series.hpp"
#include "betaspec/spectra.hpp"
#include "betaspec/transfer.hpp"
#include "oracle.hpp"

using namespace betaspec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<QuarticFamily> family(Family f) {
  std::vector<QuarticFamily> out;
  for (int n = f == Family::P ? 3 : 4; n <= 8; ++n) out.emplace_back(f, n);
  return out;
}

std::vector<QuarticFamily> all_families() {
  std::vector<QuarticFamily> out;
  for (Family f : {Family::P, Family::Q, Family::R}) {
    const auto part = family(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<cplx> oracle_lambdas(const QuarticFamily& f) {
  const auto& c = f.coefficients();
  return oracle::expected_nonleading(oracle::quartic(double(c[1]), double(c[2]), double(c[3]), double(c[4])));
}

BetaSpec beta_of(const QuarticFamily& f) { return BetaSpec::parse(f.beta_definition()); }

std::vector<Eigenvalue> nonleading(const SpectrumReport& r) {
  std::vector<Eigenvalue> out;
  for (const Eigenvalue& e : r.eigenvalues)
    if (e.kind == EigenKind::NonLeading) out.push_back(e);
  return out;
}

// Worst distance from each oracle value to the nearest located eigenvalue, and back.
double spectrum_gap(const std::vector<Eigenvalue>& found, const std::vector<cplx>& expect) {
  if (found.size() != expect.size()) return INFINITY;
  double worst = 0.0;
  for (const cplx& l : expect) {
    double best = INFINITY;
    for (const Eigenvalue& e : found) best = std::min(best, std::abs(e.lambda - l));
    worst = std::max(worst, best);
  }
  for (const Eigenvalue& e : found) {
    double best = INFINITY;
    for (const cplx& l : expect) best = std::min(best, std::abs(e.lambda - l));
    worst = std::max(worst, best);
  }
  return worst;
}

std::string family_label(const QuarticFamily& f) { return to_string(f.family()) + std::to_string(f.n()); }

// 1. P family
Outcome quartic_p() {
  double worst = 0.0, slowest = 0.0;
  for (const QuarticFamily& f : family(Family::P)) {
    const auto t0 = Clock::now();
    const VerificationReport rep = verify_example(f);
    const SpectrumReport& sp = rep.spectrum;
    const double took = seconds_since(t0);
    slowest = std::max(slowest, took);
    if (!rep.passed()) return {false, family_label(f) + " failed a clause"};
    if (!sp.exact) return {false, family_label(f) + " not in exact mode"};
    const auto found = nonleading(sp);
    const auto expect = oracle_lambdas(f);
    if (found.size() != 1 || expect.size() != 1 || expect[0].real() >= 0.0)
      return {false, family_label(f) + " wrong eigenvalue count"};
    worst = std::max(worst, spectrum_gap(found, expect));
    if (took >= 5.0) return {false, family_label(f) + fmt(" took %.2f s", took)};
  }
  return {worst <= 1e-9, fmt("max |lambda - (-alpha/beta)| = %.2e, slowest %.3f s", worst, slowest)};
}

// 2. Q family
Outcome quartic_q() {
  double worst = 0.0;
  for (const QuarticFamily& f : family(Family::Q)) {
    const VerificationReport rep = verify_example(f);
    if (!rep.passed()) return {false, family_label(f) + " failed a clause"};
    const SpectrumReport& sp = rep.spectrum;
    int leading = 0;
    for (const Eigenvalue& e : sp.eigenvalues)
      if (e.kind == EigenKind::Leading && std::abs(e.lambda - 1.0) < 1e-12 && e.multiplicity == 1) ++leading;
    const auto found = nonleading(sp);
    if (leading != 1 || found.size() != 2) return {false, family_label(f) + " spectrum shape"};
    if (std::abs(found[0].lambda - std::conj(found[1].lambda)) > 1e-12 || found[0].lambda.imag() == 0.0)
      return {false, family_label(f) + " not a conjugate pair"};
    for (const Eigenvalue& e : found) {
      const double m = std::abs(e.lambda);
      if (e.multiplicity != 1 || !(m > 1.0 / sp.beta_value && m < 1.0))
        return {false, family_label(f) + " modulus or multiplicity"};
    }
    worst = std::max(worst, spectrum_gap(found, oracle_lambdas(f)));
  }
  return {worst <= 1e-9, fmt("max oracle gap %.2e", worst)};
}

// 3. R family
Outcome quartic_r() {
  double worst = 0.0;
  int digits_checked = 1 << 30;
  for (const QuarticFamily& f : family(Family::R)) {
    const BetaSpec b = beta_of(f);
    const DigitSequence d = greedy_digits(b, Rational(1), 40);
    if (d.simple_index) return {false, family_label(f) + " reported simple"};
    const int n = f.n();
    int ok = 0;
    for (std::size_t k = 0; k < d.greedy.size(); ++k) {
      const int expect = k < 2 ? n : k == 2 ? 0 : n - 1;
      if (d.greedy[k] != expect) break;
      ++ok;
    }
    digits_checked = std::min(digits_checked, ok);
    if (ok < 20) return {false, family_label(f) + " digit profile breaks at " + std::to_string(ok)};
    const VerificationReport rep = verify_example(f);
    if (!rep.passed()) return {false, family_label(f) + " failed a clause"};
    const auto found = nonleading(rep.spectrum);
    if (found.size() != 1 || found[0].multiplicity != 1 || found[0].lambda.real() >= 0.0 ||
        std::abs(found[0].lambda.imag()) > 1e-12)
      return {false, family_label(f) + " eigenvalue shape"};
    worst = std::max(worst, spectrum_gap(found, oracle_lambdas(f)));
  }
  return {worst <= 1e-9, std::to_string(digits_checked) + fmt(" digits matched, max oracle gap %.2e", worst)};
}

// 4. golden ratio
Outcome golden_empty() {
  const BetaSpec g = BetaSpec::parse("poly:1,-1,-1@(1,2)");
  const SpectrumReport r = locate_eigenvalues(g);
  const SpectrumReport d = locate_eigenvalues(BetaSpec::from_decimal("1.6180339887"));
  const bool ok = r.nonleading_count() == 0 && d.nonleading_count() == 0 && r.r_outer >= 0.95 * r.beta_value - 1e-12;
  return {ok, "non-leading counts " + std::to_string(r.nonleading_count()) + " (exact), " +
                  std::to_string(d.nonleading_count()) + " (decimal)"};
}

// 5. factorization through psi
Outcome factorization() {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> ub(1.0, 6.0), ur(0.0, 1.0), ut(0.0, 2 * M_PI);
  int violations = 0, total = 0;
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    double v = ub(rng);
    while (v <= 1.0001) v = ub(rng);
    const BetaSeries s(BetaSpec::from_double(v));
    for (int i = 0; i < 20; ++i) {
      const cplx z = std::polar(0.9 * s.beta() * std::sqrt(ur(rng)), ut(rng));
      const SeriesEval f = s.phi(z), p = s.psi(z);
      const double gap = std::abs((1.0 - f.value) - (1.0 - z) * p.value);
      const double bound = f.tail_bound + std::abs(1.0 - z) * p.tail_bound;
      worst = std::max(worst, gap / std::max(bound, 1e-300));
      ++total;
      if (gap > bound) ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(total) +
                               fmt(", worst gap/bound %.3f", worst)};
}

// 6. hat relation
Outcome hat_relation() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ur(0.0, 1.0), ut(0.0, 2 * M_PI);
  int violations = 0, total = 0;
  for (const std::vector<int>& word : {std::vector<int>{1, 1}, {2, 1}, {1, 1, 1}, {3, 2, 0, 3}, {4, 0, 3, 4}}) {
    const BetaSpec b = beta_from_digits(word);
    const BetaSeries s(b);
    const int L = s.simple_length();
    if (L != static_cast<int>(word.size())) return {false, "simple length mismatch"};
    for (int i = 0; i < 100; ++i) {
      const cplx z = std::polar(0.9 * s.beta() * std::sqrt(ur(rng)), ut(rng));
      const SeriesEval a = s.phi(z), h = s.phi_hat(z);
      const cplx wl = std::pow(z / s.beta(), L);
      const double gap = std::abs((1.0 - h.value) * (1.0 - wl) - (1.0 - a.value));
      ++total;
      if (gap > a.tail_bound + std::abs(1.0 - wl) * h.tail_bound) ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(total)};
}

// 7. zeta against the fixed-point series
Outcome zeta_cross() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ur(0.0, 1.0), ut(0.0, 2 * M_PI);
  double worst = 0.0;
  for (const char* spec : {"poly:1,-1,-1@(1,2)", "poly:1,-3,-2,0,-3@(3,4)"}) {
    const BetaSpec b = BetaSpec::parse(spec);
    for (int i = 0; i < 20; ++i) {
      const cplx z = std::polar(0.5 * std::sqrt(ur(rng)), ut(rng));
      const ZetaEval a = zeta(b, z), o = zeta_series(b, z, 6);
      const double bound = 10 * (a.bound + o.bound);
      worst = std::max(worst, std::abs(a.value - o.value) / bound);
    }
  }
  return {worst <= 1.0, fmt("worst |diff| / (10 x bounds) = %.3f", worst)};
}

// 8. F at lambda = 1
Outcome f_identity() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ub(1.05, 6.0), ux(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const BetaSpec b = BetaSpec::from_double(ub(rng));
    for (int i = 0; i < 1000; ++i) {
      const double x = ux(rng);
      worst = std::max(worst, std::abs(eval_F(b, 1.0, x).value - x));
    }
  }
  return {worst <= 1e-8, fmt("max |F_1(x) - x| = %.2e", worst)};
}

// 9. residual zero set vs located spectrum
Outcome detector() {
  int mismatched = 0;
  std::string first;
  for (const QuarticFamily& f : all_families()) {
    const BetaSpec b = beta_of(f);
    const SpectrumReport r = locate_eigenvalues(b);
    const DetectorResult d = residual_zero_set(b, 10 * r.tol, 200, 0.95, 4);
    bool ok = d.lambdas.size() == r.eigenvalues.size();
    for (const Eigenvalue& e : r.eigenvalues)
      ok = ok && std::any_of(d.lambdas.begin(), d.lambdas.end(), [&](cplx l) { return std::abs(l - e.lambda) < 1e-8; });
    if (!ok) {
      ++mismatched;
      if (first.empty()) first = " (first: " + family_label(f) + ")";
    }
  }
  return {mismatched == 0, std::to_string(mismatched) + " of 17 bases mismatched" + first};
}

// 10. transfer operator exactness
Outcome transfer_exact() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double dual = 0.0, drift = 0.0, fixed = 0.0;
  const double tol = 1e-12;
  for (const QuarticFamily& q : all_families()) {
    const BetaSpec b = beta_of(q);
    for (int i = 0; i < 100; ++i) {
      const StepFunction f = combine(b, cplx(u(rng), u(rng)), indicator(b, u(rng)), u(rng), indicator(b, u(rng)));
      const StepFunction g = combine(b, 1.0, indicator(b, u(rng)), -u(rng), indicator(b, u(rng)));
      dual = std::max(dual, duality_check(b, f, g));
      drift = std::max(drift, std::abs(integral_lebesgue(apply_L(b, f)) - integral_lebesgue(f)));
    }
    const StepFunction h = parry_density(b, tol);
    fixed = std::max(fixed, sup_norm(combine(b, 1.0, apply_L(b, h), -1.0, h)));
  }
  const bool ok = dual <= 1e-12 && drift <= 1e-12 && fixed <= 2 * tol;
  char buf[160];
  std::snprintf(buf, sizeof buf, "duality %.2e, integral drift %.2e, |Lh - h| %.2e", dual, drift, fixed);
  return {ok, buf};
}

// 11. good decay
Outcome good_decay() {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;
  for (const char* spec : {"poly:1,-3,-2,0,-3@(3,4)", "poly:1,-4,0,-3,-4@(4,5)"}) {
    const BetaSpec b = BetaSpec::parse(spec);
    const Subleading s = subleading(locate_eigenvalues(b)).value();
    ok = ok && std::all_of(s.simple.begin(), s.simple.end(), [](bool v) { return v; });
    const double m = s.modulus;
    // 1/2 and 1/3 are exceptional at one of the two bases: F_lambda(x) = x there.
    const Point x = b.point(Rational(37, 100));
    for (const Eigenvalue& e : s.eigenvalues) ok = ok && std::abs(eval_F(b, e.lambda, x).value - 0.37) > 0.1;
    const StepFunction generic = combine(b, 1.0, indicator(b, x), -0.37, constant(b));
    const DecayFit g = decay_fit(b, generic, 40, 15);
    const DecayFit c = decay_fit(b, good_decay_construct(b, s.eigenvalues), 40, 15);
    ok = ok && c.fitted_alpha < 0.9 * m && std::abs(g.fitted_alpha - m) <= 0.1 * m && g.r_squared >= 0.98 &&
         c.r_squared >= 0.98;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%sM=%.4f generic %.4f (r2 %.4f) constructed %.4f (r2 %.4f)",
                  detail.empty() ? "" : "; ", m, g.fitted_alpha, g.r_squared, c.fitted_alpha, c.r_squared);
    detail += buf;
  }
  const double took = seconds_since(t0);
  ok = ok && took < 30.0;
  return {ok, detail + fmt("; %.2f s", took)};
}

// 12. difference quotients along left Parry approximants
Outcome nondiff() {
  const BetaSpec b = BetaSpec::parse("poly:1,-3,-2,0,-3@(3,4)");
  const cplx l = nonleading(locate_eigenvalues(b)).at(0).lambda;
  const std::vector<ProbePoint> pts = nondiff_probe(b, l, 6);
  if (pts.size() != 6) return {false, "probe returned " + std::to_string(pts.size()) + " points"};
  bool ok = true;
  for (std::size_t i = 3; i < pts.size(); ++i) ok = ok && pts[i].quotient > pts[i - 1].quotient;
  ok = ok && pts.back().quotient > 10 * pts.front().quotient;
  const auto fit = fit_exponent(pts);
  const HoelderEstimate h = holder_constants(b, l, 1);
  ok = ok && fit && h.parry && *fit >= 0.75 * h.alpha0 && *fit <= 1.25 * h.alpha0;
  return {ok, fmt("quotient growth x%.1f, ", pts.back().quotient / pts.front().quotient) +
                  fmt("fit %.4f vs alpha0 %.4f", fit.value_or(NAN), h.alpha0)};
}

// 13. Lipschitz quotients at zero
Outcome lipschitz_zero() {
  const BetaSpec b = BetaSpec::parse("poly:1,-3,-2,0,-3@(3,4)");
  double worst = 0.0;
  for (cplx l : {nonleading(locate_eigenvalues(b)).at(0).lambda, cplx(0.5, 0.2)}) {
    const auto pts = lipschitz_probe(b, l, 0.0, 20);
    if (pts.size() != 20) return {false, "wrong probe count"};
    for (const auto& p : pts) {
      const double expect = std::pow(std::abs(l), -p.depth);
      worst = std::max(worst, std::abs(p.quotient - expect) / expect);
    }
  }
  return {worst <= 1e-9, fmt("max relative error %.2e", worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 14. scan determinism
Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("betaspec_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> outs;
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("scan" + std::to_string(k) + ".json");
    const std::string cmd = std::string("'") + BETASPEC_CLI_PATH +
                            "' scan --lo 1.1 --hi 2.9 --grid 64 --threads 8 --output '" + out.string() + "'";
    const int raw = std::system(cmd.c_str());
    if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) return {false, "scan run failed"};
    outs.push_back(slurp(out));
  }
  fs::remove_all(dir);
  return {!outs[0].empty() && outs[0] == outs[1], std::to_string(outs[0].size()) + " bytes per run"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"quartic P family", quartic_p},
      {"quartic Q family", quartic_q},
      {"quartic R family", quartic_r},
      {"golden ratio has no non-leading eigenvalue", golden_empty},
      {"factorization through psi", factorization},
      {"hat relation at simple Parry bases", hat_relation},
      {"zeta closed form vs fixed-point series", zeta_cross},
      {"F_1 is the identity", f_identity},
      {"residual zero set matches located spectra", detector},
      {"transfer operator exactness", transfer_exact},
      {"good-decay separation", good_decay},
      {"non-differentiability probe", nondiff},
      {"Lipschitz quotients at zero", lipschitz_zero},
      {"scan determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const Error& e) {
      o = {false, std::string("error ") + std::string(to_string(e.kind())) + ": " + e.what()};
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s %2d %s: %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
