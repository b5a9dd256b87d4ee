#pragma once

#include <optional>
#include <span>
#include <vector>

#include "betaspec/beta.hpp"

namespace betaspec {

struct DigitSequence {
  double point = 0.0;
  std::vector<int> greedy;
  std::vector<int> quasi_greedy;
  std::optional<int> simple_index;  // L(x) when the orbit hits {1/beta, ..., floor(beta)/beta}
  int horizon = 0;
  int trust_horizon = 0;
  DigitWord greedy_word;
  DigitWord quasi_word;
};

struct OrbitOfOne {
  std::vector<double> forward;
  std::vector<double> left_limits;
};

enum class Shifts { All, Proper };

DigitSequence greedy_digits(const BetaSpec& beta, const Point& x, int horizon);
DigitSequence greedy_digits(const BetaSpec& beta, const Rational& x, int horizon);
DigitSequence quasi_greedy_digits(const BetaSpec& beta, const Point& x, int horizon);
DigitSequence quasi_greedy_digits(const BetaSpec& beta, const Rational& x, int horizon);
std::optional<int> classify_simple(const BetaSpec& beta, const Point& x, int horizon);

bool is_admissible(std::span<const int> word, const DigitWord& quasi_one, int max_digit, Shifts shifts = Shifts::All);

BetaSpec beta_from_digits(std::span<const int> word, int horizon = BetaSpec::kDefaultHorizon);

OrbitOfOne orbit_of_one(const BetaSpec& beta, int horizon);

// sum_{k>=1} w_{shift+k} beta^-k, exact geometric sum on periodic tails.
dd word_value(const DigitWord& w, int shift, const dd& beta, double* tail_bound = nullptr);

}  // namespace betaspec
