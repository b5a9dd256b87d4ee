#include <doctest.h>

#include <cmath>

#include "betaspec/continuity.hpp"
#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"
#include "oracle.hpp"

using namespace betaspec;

namespace {
BetaSpec p3() { return BetaSpec::parse("poly:1,-3,-2,0,-3@(3,4)"); }
BetaSpec q4() { return BetaSpec::parse("poly:1,-4,0,-3,-4@(4,5)"); }
BetaSpec r4() { return BetaSpec::parse("poly:1,-5,0,4,-3@(4,5)"); }

cplx p3_lambda() { return oracle::expected_nonleading(oracle::quartic(-3, -2, 0, -3)).at(0); }
}  // namespace

TEST_CASE("tracking the real branch at the quartic P root") {
  // The real zero disappears into complex pairs at many nearby bases, so the
  // continuation stops and flags both sides; every point it keeps is real.
  const BetaSpec b = p3();
  const double b0 = b.value();
  const EigenCurve c = track(b, p3_lambda(), b0 - 0.02, b0 + 0.02, 81);
  CHECK(std::is_sorted(c.betas.begin(), c.betas.end()));
  CHECK(c.betas.size() == c.lambdas.size());
  CHECK((c.betas.size() == 81 || c.truncated_left || c.truncated_right));
  for (std::size_t i = 0; i < c.betas.size(); ++i) {
    CHECK(std::abs(c.lambdas[i].imag()) < 1e-8);
    CHECK(c.residuals[i] <= 1e-8);
    CHECK(std::abs(c.lambdas[i]) > 1.0 / c.betas[i]);
    if (c.betas[i] == b0) continue;
    const BetaSeries s(BetaSpec::from_double(c.betas[i]));
    const Jet j = s.one_minus_phi(1.0 / c.lambdas[i]);
    CHECK(std::abs(j.f) <= 1e-8);
  }
  const auto it = std::find(c.betas.begin(), c.betas.end(), b0);
  REQUIRE(it != c.betas.end());
  CHECK(std::abs(c.lambdas[static_cast<std::size_t>(it - c.betas.begin())] - p3_lambda()) < 1e-12);
}

TEST_CASE("degenerate interval gives one point") {
  const BetaSpec b = p3();
  const EigenCurve c = track(b, p3_lambda(), b.value(), b.value(), 1);
  REQUIRE(c.betas.size() == 1);
  CHECK(std::abs(c.lambdas[0] - p3_lambda()) < 1e-12);
  CHECK_THROWS_AS(track(b, cplx(0.5, 0.5), b.value(), b.value(), 1), Error);
  CHECK_THROWS_AS(track(b, p3_lambda(), b.value() + 0.1, b.value() + 0.2, 5), Error);
}

TEST_CASE("conjugate branches at the quartic Q root") {
  const BetaSpec b = q4();
  const auto expect = oracle::expected_nonleading(oracle::quartic(-4, 0, -3, -4));
  cplx upper = expect[0].imag() > 0 ? expect[0] : expect[1];
  const double b0 = b.value();
  const EigenCurve u = track(b, upper, b0 - 0.01, b0 + 0.01, 21);
  const EigenCurve d = track(b, std::conj(upper), b0 - 0.01, b0 + 0.01, 21);
  CHECK(!u.truncated_left);
  CHECK(!u.truncated_right);
  REQUIRE(u.betas.size() == 21);
  REQUIRE(u.betas.size() == d.betas.size());
  for (std::size_t i = 0; i < u.betas.size(); ++i) {
    CHECK(u.betas[i] == d.betas[i]);
    CHECK(std::abs(u.lambdas[i] - std::conj(d.lambdas[i])) < 1e-12);
    CHECK(u.lambdas[i].imag() > 0);
  }
}

TEST_CASE("leading branch is constant") {
  const EigenCurve c = track(p3(), 1.0, p3().value() - 0.01, p3().value() + 0.01, 5);
  for (cplx l : c.lambdas) CHECK(l == cplx(1.0));
}

TEST_CASE("Hoelder constants at a Parry base") {
  const BetaSpec b = p3();
  const cplx l = p3_lambda();
  const HoelderEstimate h = holder_constants(b, l, 1);
  CHECK(h.parry);
  CHECK(h.gamma1 == 1.0);
  CHECK(h.gamma2 == 1.0);
  REQUIRE(h.alpha1);
  REQUIRE(h.alpha2);
  CHECK(*h.alpha1 == doctest::Approx(h.alpha0));
  CHECK(*h.alpha2 == doctest::Approx(h.alpha0));
  const double alpha = std::abs(l) * b.value();  // |negative quartic root|
  CHECK(std::abs(h.alpha0 - std::log(alpha) / std::log(b.value())) < 1e-12);
  CHECK(holder_constants(b, l, 2).alpha0 == doctest::Approx(h.alpha0 / 2));
}

TEST_CASE("alpha0 increases to 1 with |lambda|") {
  const BetaSpec b = p3();
  double prev = 0.0;
  for (double m = 0.3; m <= 1.0 + 1e-12; m += 0.05) {
    const double a = holder_constants(b, std::polar(m, 2.0), 1).alpha0;
    CHECK(a > prev);
    prev = a;
  }
  CHECK(prev == doctest::Approx(1.0));
  CHECK_THROWS_AS(holder_constants(b, 0.2, 1), Error);
}

TEST_CASE("Hoelder constants at a non-Parry base") {
  const BetaSpec b = BetaSpec::from_decimal("3.3");
  const SpectrumReport r = locate_eigenvalues(b);
  REQUIRE(r.nonleading_count() >= 1);
  const HoelderEstimate h = holder_constants(b, r.eigenvalues[1].lambda, 1, 64);
  CHECK(!h.parry);
  CHECK(h.gamma1 > 0.0);
  CHECK(h.gamma1 <= 1.0);
  CHECK(h.gamma2 > 0.0);
  CHECK(h.gamma2 <= 1.0);
  REQUIRE(h.alpha1);
  REQUIRE(h.alpha2);
  CHECK(*h.alpha1 <= h.alpha0);
  CHECK(*h.alpha2 <= h.alpha0);
}

TEST_CASE("left Parry approximants") {
  const BetaSpec b = r4();
  const std::vector<BetaSpec> a = left_parry_approximants(b, 3);
  REQUIRE(a.size() == 3);
  const DigitWord q = b.one().quasi_word();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value_dd() < b.value_dd());
    if (i > 0) CHECK(a[i - 1].value_dd() < a[i].value_dd());
    CHECK(a[i].one().is_simple());
    const std::vector<int> word = a[i].one().digits;
    CHECK(word == q.take(static_cast<int>(word.size())));
    CHECK(is_admissible(word, q, b.floor(), Shifts::Proper));
  }
  // (4,4,0,3,3,...): first approximant uses d_1 d_2.
  CHECK(a[0].one().digits == std::vector<int>{4, 4});

  const BetaSpec p = p3();
  const std::vector<int> depths = approximant_depths(p, 4, 4);
  CHECK(depths == std::vector<int>{4, 5, 6, 8});
  for (const BetaSpec& x : left_parry_approximants(p, depths)) CHECK(x.value_dd() < p.value_dd());
  CHECK(approximant_depths(p, 3, 15, 4) == std::vector<int>{16, 20, 24});
  CHECK(left_parry_approximants(p, 1).size() == 1);
}

TEST_CASE("difference quotients grow along approximants") {
  const BetaSpec b = p3();
  const cplx l = p3_lambda();
  const std::vector<ProbePoint> pts = nondiff_probe(b, l, 6);
  REQUIRE(pts.size() == 6);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].gap < pts[i - 1].gap);
  for (std::size_t i = 3; i < pts.size(); ++i) CHECK(pts[i].quotient > pts[i - 1].quotient);
  CHECK(pts.back().quotient > 10 * pts.front().quotient);
  const auto fit = fit_exponent(pts);
  REQUIRE(fit);
  const double a0 = holder_constants(b, l, 1).alpha0;
  CHECK(*fit >= 0.75 * a0);
  CHECK(*fit <= 1.25 * a0);

  for (const ProbePoint& p : nondiff_probe(b, 1.0, 3)) CHECK(p.quotient == 0.0);
}
