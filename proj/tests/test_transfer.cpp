#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "betaspec/errors.hpp"
#include "betaspec/functional.hpp"
#include "betaspec/transfer.hpp"
#include "oracle.hpp"

using namespace betaspec;

namespace {
BetaSpec golden() { return BetaSpec::parse("poly:1,-1,-1@(1,2)"); }
BetaSpec p3() { return BetaSpec::parse("poly:1,-3,-2,0,-3@(3,4)"); }
BetaSpec q4() { return BetaSpec::parse("poly:1,-4,0,-3,-4@(4,5)"); }

double p3_modulus() { return std::abs(oracle::expected_nonleading(oracle::quartic(-3, -2, 0, -3)).at(0)); }

double distance(const BetaSpec& b, const StepFunction& f, const StepFunction& g) {
  return bv_norm(combine(b, 1.0, f, -1.0, g));
}

// log-linear slope of |v_n| over [lo, hi]
double rate(const std::vector<double>& v, int lo, int hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = hi - lo + 1;
  for (int n = lo; n <= hi; ++n) {
    const double y = std::log(v[static_cast<std::size_t>(n)]);
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += n * y;
  }
  return std::exp((m * sxy - sx * sy) / (m * sxx - sx * sx));
}
}  // namespace

TEST_CASE("L on the constant function") {
  const BetaSpec b = p3();
  const StepFunction g = apply_L(b, constant(b));
  REQUIRE(g.size() == 2);
  const double tau1 = b.value() - 3.0;
  CHECK(g.terms[0].x.value.to_double() == doctest::Approx(tau1).epsilon(1e-14));
  CHECK(std::abs(g.terms[0].c - 1.0 / b.value()) < 1e-15);
  CHECK(g.terms[1].x.value.to_double() == 1.0);
  CHECK(std::abs(g.terms[1].c - 3.0 / b.value()) < 1e-15);
  CHECK(apply_L(b, indicator(b, 0.0)).empty());
  CHECK(indicator(b, 0.0).empty());
}

TEST_CASE("norms and integrals") {
  const BetaSpec b = BetaSpec::from_decimal("2.5");
  const StepFunction one = constant(b);
  CHECK(variation(one) == 0.0);
  CHECK(sup_norm(one) == 1.0);
  CHECK(integral_lebesgue(one) == cplx(1.0));
  const StepFunction f = combine(b, 1.0, indicator(b, 0.5), -1.0, indicator(b, 0.25));
  CHECK(variation(f) == 2.0);
  CHECK(sup_norm(f) == 1.0);
  CHECK(bv_norm(f) == 3.0);
  CHECK(std::abs(integral_lebesgue(f) - 0.25) < 1e-16);
  CHECK(evaluate(f, 0.1) == cplx(0.0));
  CHECK(evaluate(f, 0.3) == cplx(1.0));
  CHECK(evaluate(f, 0.7) == cplx(0.0));
  CHECK(combine(b, 1.0, f, -1.0, f).empty());
}

TEST_CASE("products of step functions") {
  const BetaSpec b = BetaSpec::from_decimal("2.5");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    StepFunction f, g;
    for (int k = 0; k < 4; ++k) {
      f = combine(b, 1.0, f, 1.0, indicator(b, u(rng), cplx(u(rng) - 0.5, u(rng))));
      g = combine(b, 1.0, g, 1.0, indicator(b, u(rng), u(rng) - 0.5));
    }
    const StepFunction fg = product(b, f, g);
    for (int s = 0; s < 50; ++s) {
      const double x = u(rng);
      CHECK(std::abs(evaluate(fg, x) - evaluate(f, x) * evaluate(g, x)) < 1e-14);
    }
    CHECK(std::abs(integral_lebesgue(fg) - integral_product(f, g)) < 1e-14);
  }
}

TEST_CASE("iterates match the telescoped form") {
  for (const BetaSpec& b : {p3(), BetaSpec::from_decimal("2.7"), golden()}) {
    const Point x = b.point(0.6180339);
    const int n = 9;
    std::vector<StepFunction> chain{constant(b)};
    for (int k = 1; k <= n; ++k) chain.push_back(apply_L(b, chain.back()));
    StepFunction expect;
    Point y = x;
    double w = 1.0;
    for (int k = 1; k <= n; ++k) {
      auto [digit, next] = b.step(y);
      w /= b.value();
      expect = combine(b, 1.0, expect, digit * w, chain[static_cast<std::size_t>(n - k)]);
      y = next;
    }
    expect = combine(b, 1.0, expect, w, indicator(b, y));
    const StepFunction direct = apply_L(b, indicator(b, x), n);
    CHECK(distance(b, direct, expect) < 1e-13);
    CHECK(direct.size() <= 1 + n + 1);
  }
}

TEST_CASE("invariant density") {
  const BetaSpec g = golden();
  const StepFunction h = parry_density(g);
  REQUIRE(h.size() == 2);
  const double phi = g.value();
  CHECK(h.terms[0].x.value.to_double() == doctest::Approx(1.0 / phi).epsilon(1e-15));
  CHECK(std::abs(evaluate(h, 0.3) / evaluate(h, 0.9) - phi) < 1e-14);
  CHECK(std::abs(evaluate(h, 0.9) - 1.0 / (1.0 + 1.0 / (phi * phi))) < 1e-14);

  CHECK(parry_density(p3()).size() == 4);
  const double tol = 1e-12;
  for (const BetaSpec& b : {golden(), p3(), q4(), BetaSpec::from_decimal("2.7"), BetaSpec::from_decimal("1.3")}) {
    const StepFunction d = parry_density(b, tol);
    CHECK(std::abs(integral_lebesgue(d) - 1.0) < 1e-14);
    CHECK(sup_norm(combine(b, 1.0, apply_L(b, d), -1.0, d)) <= 2 * tol);
  }
}

TEST_CASE("dual property") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const BetaSpec& b : {p3(), q4(), golden()}) {
    CHECK(duality_check(b, indicator(b, 0.37), constant(b)) <= 1e-14);
    double worst = 0.0, drift = 0.0;
    for (int i = 0; i < 100; ++i) {
      const StepFunction f = indicator(b, u(rng), cplx(u(rng), u(rng)));
      const StepFunction gg = combine(b, 1.0, indicator(b, u(rng)), -0.5, indicator(b, u(rng)));
      worst = std::max(worst, duality_check(b, f, gg));
      drift = std::max(drift, std::abs(integral_lebesgue(apply_L(b, f)) - integral_lebesgue(f)));
    }
    CHECK(worst <= 1e-12);
    CHECK(drift <= 1e-12);
  }
  const BetaSpec b = p3();
  const double tol = 1e-12;
  const StepFunction h = parry_density(b, tol);
  for (int i = 0; i < 10; ++i) {
    const StepFunction gg = indicator(b, u(rng));
    // int h (g o tau) = int (L h) g by duality
    const cplx pulled = integral_product(apply_L(b, h), gg);
    CHECK(std::abs(pulled - integral_product(h, gg)) <= 2 * tol + duality_check(b, h, gg));
  }
}

TEST_CASE("good-decay construction") {
  const BetaSpec b = p3();
  const SpectrumReport r = locate_eigenvalues(b);
  const Subleading s = subleading(r).value();
  REQUIRE(s.eigenvalues.size() == 1);
  const std::vector<Point> x{b.unit(), b.from_word(std::vector<int>{1, 2}), b.from_word(std::vector<int>{2, 0, 1})};
  const StepFunction f = good_decay_construct(b, s.eigenvalues, x);
  REQUIRE(f.size() == 3);
  // oracle: cross product of the two constraint rows
  const cplx lam = s.eigenvalues[0].lambda;
  Eigen::Vector3d r0, r1;
  for (int i = 0; i < 3; ++i) {
    r0(i) = x[static_cast<std::size_t>(i)].value.to_double();
    r1(i) = eval_F(b, lam, x[static_cast<std::size_t>(i)]).value.real();
  }
  const Eigen::Vector3d n = r0.cross(r1);
  std::vector<cplx> c(3);
  for (const auto& t : f.terms)
    for (int i = 0; i < 3; ++i)
      if (b.compare(t.x, x[static_cast<std::size_t>(i)]) == 0) c[static_cast<std::size_t>(i)] = t.c;
  double big = 0.0;
  for (const auto& v : c) big = std::max(big, std::abs(v));
  CHECK(big == doctest::Approx(1.0));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(c[static_cast<std::size_t>(i)].imag()) < 1e-12);
  const double k = c[0].real() / n(0);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(c[static_cast<std::size_t>(i)].real() - k * n(i)) < 1e-10);
  CHECK(std::abs(integral_lebesgue(f)) < 1e-10);

  const BetaSpec q = q4();
  const Subleading sq = subleading(locate_eigenvalues(q)).value();
  REQUIRE(sq.eigenvalues.size() == 2);
  const StepFunction fq = good_decay_construct(q, sq.eigenvalues);
  REQUIRE(fq.size() == 4);
  std::vector<StepTerm> re;
  for (const auto& t : fq.terms) re.push_back({t.x, t.c.real()});
  const StepFunction fr = canonical(q, re);
  CHECK(std::abs(integral_lebesgue(fr)) < 1e-10);
  for (const Eigenvalue& e : sq.eigenvalues) {
    cplx acc(0.0);
    for (const auto& t : fr.terms) acc += t.c * eval_F(q, e.lambda, t.x).value;
    CHECK(std::abs(acc) < 1e-10);
  }

  const StepFunction fg = good_decay_construct(golden(), std::span<const Eigenvalue>{});
  CHECK(fg.size() == 2);
  CHECK(std::abs(integral_lebesgue(fg)) < 1e-12);

  Eigenvalue twice = s.eigenvalues[0];
  twice.multiplicity = 2;
  const std::vector<Eigenvalue> bad{twice};
  CHECK_THROWS_AS(good_decay_construct(b, bad), Error);
  const std::vector<Point> dup{b.unit(), b.unit(), b.point(0.5)};
  CHECK_THROWS_AS(good_decay_construct(b, s.eigenvalues, dup), Error);
}

TEST_CASE("decay rates") {
  const BetaSpec b = p3();
  const StepFunction h = parry_density(b);
  const DecayFit zero = decay_fit(b, combine(b, 1.0, h, -1.0, h), 12);
  CHECK(zero.underflow);
  for (const auto& [n, v] : zero.rates) CHECK(v == 0.0);

  const double m = p3_modulus();
  const StepFunction generic = combine(b, 1.0, indicator(b, 0.5), -0.5, constant(b));
  const DecayFit g = decay_fit(b, generic, 40, 15);
  CHECK(g.fitted_alpha == doctest::Approx(m).epsilon(0.1));
  CHECK(g.r_squared >= 0.98);

  const Subleading s = subleading(locate_eigenvalues(b)).value();
  const DecayFit c = decay_fit(b, good_decay_construct(b, s.eigenvalues), 40, 15);
  CHECK(c.fitted_alpha < 0.9 * m);
  CHECK(c.r_squared >= 0.98);
  CHECK(std::log(c.fitted_alpha) < std::log(g.fitted_alpha) - 3 * g.slope_stderr);
}

TEST_CASE("centered indicators with no subleading component") {
  const BetaSpec b = q4();
  const Subleading s = subleading(locate_eigenvalues(b)).value();
  const cplx l = s.eigenvalues.at(0).lambda;
  CHECK(std::abs(eval_F(b, l, b.point(Rational(1, 2))).value - 0.5) < 1e-12);
  const DecayFit half = decay_fit(b, combine(b, 1.0, indicator(b, 0.5), -0.5, constant(b)), 40, 15);
  CHECK(half.fitted_alpha == doctest::Approx(1.0 / b.value()).epsilon(0.01));
  const DecayFit other = decay_fit(b, combine(b, 1.0, indicator(b, 0.37), -0.37, constant(b)), 40, 15);
  CHECK(other.fitted_alpha == doctest::Approx(s.modulus).epsilon(0.02));
}

TEST_CASE("correlations") {
  const BetaSpec b = p3();
  CHECK(std::abs(correlation(b, constant(b), constant(b), 0)) < 1e-14);
  const StepFunction f = indicator(b, 0.5);
  std::vector<double> v;
  for (int n = 0; n <= 30; ++n) v.push_back(std::abs(correlation(b, f, f, n)));
  CHECK(rate(v, 10, 30) == doctest::Approx(p3_modulus()).epsilon(0.05));

  const Subleading s = subleading(locate_eigenvalues(b)).value();
  const StepFunction good = good_decay_construct(b, s.eigenvalues);
  const StepFunction gg = indicator(b, 0.77);
  const StepFunction h = parry_density(b);
  // f h with f = good / h on the support keeps the construction in the product
  for (int n = 5; n <= 30; n += 5) {
    const cplx cn = correlation(b, good, gg, n);
    CHECK(std::abs(cn) <= sup_norm(gg) * bv_norm(apply_L(b, product(b, good, h), n)) + 1e-14);
  }
}
