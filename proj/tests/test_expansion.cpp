#include <doctest.h>

#include <cmath>
#include <random>

#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"

using namespace betaspec;

namespace {
const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

BetaSpec golden() { return BetaSpec::parse("poly:1,-1,-1@(1,2)"); }
BetaSpec p3() { return BetaSpec::parse("poly:1,-3,-2,0,-3@(3,4)"); }
BetaSpec r4() { return BetaSpec::parse("poly:1,-5,0,4,-3@(4,5)"); }
}  // namespace

TEST_CASE("greedy digits of 1 for the golden ratio") {
  const auto s = greedy_digits(golden(), Rational(1), 10);
  CHECK(s.greedy == std::vector<int>{1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  REQUIRE(s.simple_index);
  CHECK(*s.simple_index == 2);
  CHECK(s.quasi_greedy == std::vector<int>{1, 0, 1, 0, 1, 0, 1, 0, 1, 0});
}

TEST_CASE("zero has all-zero digits") {
  const auto s = greedy_digits(p3(), Rational(0), 5);
  CHECK(s.greedy == std::vector<int>{0, 0, 0, 0, 0});
}

TEST_CASE("quartic P with n=3") {
  const BetaSpec b = p3();
  CHECK(b.floor() == 3);
  const auto s = greedy_digits(b, Rational(1), 8);
  CHECK(s.greedy == std::vector<int>{3, 2, 0, 3, 0, 0, 0, 0});
  REQUIRE(s.simple_index);
  CHECK(*s.simple_index == 4);
  const auto q = quasi_greedy_digits(b, Rational(1), 12);
  CHECK(q.quasi_greedy == std::vector<int>{3, 2, 0, 2, 3, 2, 0, 2, 3, 2, 0, 2});
  // sum of quasi-greedy digits reproduces 1
  dd sum(0.0), pw(1.0);
  const dd beta = b.value_dd();
  for (int n = 1; n <= 120; ++n) {
    pw = pw / beta;
    sum += dd(q.quasi_word.digit(n)) * pw;
  }
  CHECK(std::abs((sum - dd(1.0)).to_double()) < 1e-30);

  const auto o = orbit_of_one(b, 6);
  const double x = b.value();
  CHECK(o.forward[0] == 1.0);
  CHECK(o.forward[1] == doctest::Approx(x - 3).epsilon(1e-14));
  CHECK(o.forward[2] == doctest::Approx(x * x - 3 * x - 2).epsilon(1e-12));
  CHECK(o.forward[3] == doctest::Approx(3 / x).epsilon(1e-14));
  CHECK(o.forward[4] == 0.0);
  CHECK(o.forward[5] == 0.0);
}

TEST_CASE("quartic R with n=4 is non-simple Parry") {
  const BetaSpec b = r4();
  const OneOrbit& one = b.one();
  CHECK(one.kind == OrbitKind::EventuallyPeriodic);
  const auto s = greedy_digits(b, Rational(1), 50);
  CHECK_FALSE(s.simple_index);
  CHECK(s.greedy[0] == 4);
  CHECK(s.greedy[1] == 4);
  CHECK(s.greedy[2] == 0);
  for (int n = 3; n < 50; ++n) CHECK(s.greedy[static_cast<std::size_t>(n)] == 3);
  CHECK(s.quasi_greedy == s.greedy);
}

TEST_CASE("classify simple points") {
  const BetaSpec b = golden();
  CHECK(classify_simple(b, b.unit(), 10) == 2);
  const Point inv = b.from_word(std::vector<int>{1});
  CHECK(classify_simple(b, inv, 10) == 1);
  CHECK_FALSE(classify_simple(r4(), r4().unit(), 50));
}

TEST_CASE("reconstruction and admissibility on random points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const BetaSpec& b : {golden(), p3(), r4(), BetaSpec::from_decimal("2.71828")}) {
    const DigitWord q1 = b.one().quasi_word();
    for (int i = 0; i < 20; ++i) {
      const double x = u(rng);
      const auto s = greedy_digits(b, to_rational(x), 40);
      dd partial(0.0), pw(1.0);
      for (int n = 1; n <= 40; ++n) {
        pw = pw / b.value_dd();
        partial += dd(s.greedy[static_cast<std::size_t>(n - 1)]) * pw;
        const double gap = (dd(x) - partial).to_double();
        CHECK(gap >= 0.0);
        CHECK(gap < pw.to_double());
      }
      CHECK(is_admissible(s.greedy, q1, b.floor()));
    }
    const auto one = greedy_digits(b, Rational(1), 30);
    CHECK(is_admissible(one.greedy, q1, b.floor(), Shifts::Proper));
  }
}

TEST_CASE("monotonicity of digit words") {
  const BetaSpec b = p3();
  const auto a = greedy_digits(b, Rational(3, 10), 30).greedy;
  const auto c = greedy_digits(b, Rational(31, 100), 30).greedy;
  CHECK(a <= c);
}

TEST_CASE("admissibility checks") {
  const BetaSpec b = p3();
  const DigitWord q1 = b.one().quasi_word();
  CHECK(is_admissible(std::vector<int>{0, 0, 0}, q1, 3));
  CHECK(is_admissible(std::vector<int>{3, 2, 0, 3}, q1, 3, Shifts::Proper));
  CHECK_FALSE(is_admissible(std::vector<int>{3, 2, 0, 3}, q1, 3));
  CHECK_FALSE(is_admissible(std::vector<int>{4}, q1, 3));
  CHECK(is_admissible(std::vector<int>{3, 2, 0, 2, 3, 2, 0, 1}, q1, 3));
}

TEST_CASE("base from digit words") {
  const BetaSpec g = beta_from_digits(std::vector<int>{1, 1});
  CHECK(g.value() == doctest::Approx(kGolden).epsilon(1e-15));
  const BetaSpec b = beta_from_digits(std::vector<int>{3, 2, 0, 3});
  CHECK(std::abs((b.value_dd() - p3().value_dd()).to_double()) < 1e-29);
  CHECK_THROWS_AS(beta_from_digits(std::vector<int>{1, 2}), Error);
  try {
    beta_from_digits(std::vector<int>{1, 2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InadmissibleWord);
  }
  // round trip
  const BetaSpec t = beta_from_digits(greedy_digits(b, Rational(1), 4).greedy);
  CHECK(std::abs((t.value_dd() - b.value_dd()).to_double()) < 1e-29);
}

TEST_CASE("left limits of the orbit of 1") {
  const BetaSpec g = golden();
  const auto o = orbit_of_one(g, 4);
  CHECK(o.left_limits[0] == 1.0);
  CHECK(o.left_limits[1] == doctest::Approx(kGolden - 1).epsilon(1e-14));
  CHECK(o.left_limits[2] == doctest::Approx(1.0).epsilon(1e-14));
  const auto op = orbit_of_one(p3(), 8);
  // non-simple-orbit check: limits stay in (0, 1]
  for (double v : op.left_limits) {
    CHECK(v > 0.0);
    CHECK(v <= 1.0 + 1e-15);
  }
}

TEST_CASE("integer and invalid bases are rejected") {
  CHECK_THROWS_AS(BetaSpec::from_decimal("3"), Error);
  CHECK_THROWS_AS(BetaSpec::from_decimal("0.5"), Error);
  CHECK_THROWS_AS(BetaSpec::parse("poly:1,-3@(2,4)"), Error);
}

TEST_CASE("rational bases never close the orbit of 1") {
  const BetaSpec b = BetaSpec::from_decimal("1.5", 200);
  CHECK(b.one().kind == OrbitKind::Open);
  CHECK(b.one().computed() == 200);
  CHECK_THROWS_AS(b.one().digit(201), Error);
}
