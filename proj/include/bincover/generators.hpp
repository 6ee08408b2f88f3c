#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bincover/errors.hpp"
#include "bincover/model.hpp"
#include "bincover/opt.hpp"
#include "bincover/rational.hpp"

namespace bincover {

// The 28-item worked example, in release order.
inline Sequence worked_example() {
  static constexpr std::array<int, 28> hundredths{25, 80, 72, 20, 90, 45, 51, 67, 45, 60, 42, 55, 53, 28,
                                                  11, 15, 52, 15, 51, 41, 15, 35, 10, 35, 30, 30, 40, 18};
  std::vector<Rational> values;
  values.reserve(hundredths.size());
  for (int h : hundredths) values.emplace_back(h, 100);
  return Sequence::from_values(values);
}

// An 11-bin optimal covering of worked_example(), grouped as
// G_22 (2), G_2 (5), G_23 (1), G_33 (3) for k = 3.
inline Certificate worked_certificate() {
  return {{
      {12, 6},          // 0.53 0.51
      {16, 18},         // 0.52 0.51
      {4, 14},          // 0.90 0.11
      {1, 3},           // 0.80 0.20
      {2, 13},          // 0.72 0.28
      {7, 15, 27},      // 0.67 0.15 0.18
      {11, 24, 17},     // 0.55 0.30 0.15
      {9, 26},          // 0.60 0.40
      {5, 21, 20, 22},  // 0.45 0.35 0.15 0.10
      {8, 0, 23},       // 0.45 0.25 0.35
      {10, 19, 25},     // 0.42 0.41 0.30
  }};
}

struct TightnessSpec {
  std::int64_t n = 3;
  Rational big{11, 20};
  Rational small{9, 100};
};

inline std::int64_t tightness_fill(const TightnessSpec& spec) {
  if (spec.n < 0) throw DomainError("tightness family needs N >= 0");
  if (spec.big < Rational(1, 2) || spec.big >= Rational(1))
    throw DomainError("tightness big item " + spec.big.str() + " outside [1/2,1[");
  if (spec.small <= Rational(0) || spec.small >= Rational(1, 4))
    throw DomainError("tightness small item " + spec.small.str() + " must lie in ]0,1/4[");
  const Rational r = (Rational(1) - spec.big) / spec.small;
  if (r.den() != 1 || r.num() < 1)
    throw DomainError("(1 - big)/small = " + r.str() + " is not a positive integer");
  return r.num();
}

// N*r small items followed by N big items; each optimal bin is one big item
// plus r small items at load exactly 1.
inline Sequence tightness_family(const TightnessSpec& spec) {
  const std::int64_t r = tightness_fill(spec);
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(spec.n * (r + 1)));
  for (std::int64_t i = 0; i < spec.n * r; ++i) values.push_back(spec.small);
  for (std::int64_t i = 0; i < spec.n; ++i) values.push_back(spec.big);
  return Sequence::from_values(values);
}

inline Sequence tightness_family(std::int64_t n) { return tightness_family(TightnessSpec{n}); }

inline Certificate tightness_certificate(const TightnessSpec& spec) {
  const std::int64_t r = tightness_fill(spec);
  Certificate cert;
  for (std::int64_t i = 0; i < spec.n; ++i) {
    std::vector<std::size_t> bin{static_cast<std::size_t>(spec.n * r + i)};
    for (std::int64_t j = 0; j < r; ++j) bin.push_back(static_cast<std::size_t>(i * r + j));
    cert.bins.push_back(std::move(bin));
  }
  return cert;
}

struct RandomSpec {
  std::size_t n = 10;
  Rational value_min{1, 100};
  Rational value_max{99, 100};
  std::int64_t denominator_bound = 100;
  std::uint64_t seed = 1;
};

// i.i.d. uniform over the grid j/D inside [value_min, value_max].
inline Sequence random_instance(const RandomSpec& spec) {
  if (spec.value_min <= Rational(0) || spec.value_max >= Rational(1) || spec.value_min >= spec.value_max)
    throw DomainError("random instance needs 0 < value_min < value_max < 1");
  if (spec.denominator_bound < 2) throw DomainError("denominator bound must be at least 2");
  const Rational d(spec.denominator_bound);
  Rational::Int lo = (spec.value_min * d).floor();
  if (Rational(lo) < spec.value_min * d) ++lo;
  const Rational::Int hi = (spec.value_max * d).floor();
  if (lo > hi)
    throw DomainError("no grid point j/" + std::to_string(spec.denominator_bound) + " in [" +
                      spec.value_min.str() + ", " + spec.value_max.str() + "]");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<Rational::Int> pick(lo, hi);
  std::vector<Rational> values;
  values.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) values.emplace_back(pick(rng), spec.denominator_bound);
  return Sequence::from_values(values);
}

struct WorkedExampleSpec {};

using GeneratorSpec = std::variant<WorkedExampleSpec, TightnessSpec, RandomSpec>;

inline Sequence generate(const GeneratorSpec& spec) {
  struct Visitor {
    Sequence operator()(const WorkedExampleSpec&) const { return worked_example(); }
    Sequence operator()(const TightnessSpec& s) const { return tightness_family(s); }
    Sequence operator()(const RandomSpec& s) const { return random_instance(s); }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace bincover
