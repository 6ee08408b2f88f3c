#include "bincover/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bincover/generators.hpp"

namespace bincover {
namespace {

Sequence random_seq(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> pick(1, 99);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(pick(rng), 100);
  return Sequence::from_values(v);
}

TEST(SelectMthLargest, Examples) {
  EXPECT_EQ(select_mth_largest(worked_example(), 2), Rational(4, 5));
  EXPECT_EQ(select_mth_largest(worked_example(), 1), Rational(9, 10));
  EXPECT_EQ(select_mth_largest(worked_example(), 0), Rational(1));
  const std::vector<Rational> dup{Rational(3, 10), Rational(7, 10), Rational(7, 10)};
  EXPECT_EQ(select_mth_largest(Sequence::from_values(dup), 2), Rational(7, 10));
  EXPECT_THROW(select_mth_largest(Sequence::from_values(dup), 4), DomainError);
  EXPECT_THROW(select_mth_largest(Sequence::from_values(dup), -1), DomainError);
}

TEST(SelectMthLargest, AgreesWithFullSort) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto seq = random_seq(rng, 1 + trial % 30);
    std::vector<Rational> sorted = seq.values();
    std::sort(sorted.begin(), sorted.end(), std::greater<>{});
    for (std::size_t m = 1; m <= seq.size(); ++m)
      EXPECT_EQ(select_mth_largest(seq, static_cast<std::int64_t>(m)), sorted[m - 1]);
  }
}

TEST(CountTItems, Examples) {
  EXPECT_EQ(count_t_items(worked_example(), 3, 2), 10u);
  EXPECT_EQ(count_t_items(Sequence{}, 3, 2), 0u);
  // 0.25, 0.28, 0.30, 0.30 lie in [1/4, 1/3[.
  EXPECT_EQ(count_t_items(worked_example(), 4, 4), 4u);
  EXPECT_THROW(count_t_items(worked_example(), 3, 4), DomainError);
}

TEST(ComputeAdvice, WorkedExample) {
  const auto result = compute_advice(worked_example(), 3);
  EXPECT_GE(result.covered, 9u);
  ASSERT_EQ(result.sweep.size(), 11u);  // m = 0..n_2 with n_2 = 10
  EXPECT_EQ(result.sweep[2], (SweepEntry{2, Rational(4, 5), 9}));
  EXPECT_EQ(advice_dh_run(worked_example(), 3, result.m, result.x_m).covered_count, result.covered);
}

TEST(ComputeAdvice, EmptySequence) {
  const auto result = compute_advice(Sequence{}, 4);
  EXPECT_EQ(result.m, 0);
  EXPECT_EQ(result.x_m, Rational(1));
  EXPECT_EQ(result.covered, 0u);
}

TEST(ComputeAdvice, TightnessFamilyThree) {
  // 15 x 0.09 then 3 x 0.55, k = 4. Stepping the rules by hand:
  //   m=0: small bin closes after 12 smalls, one 2-bin pair      -> 2
  //   m=1: one critical fills to 1.00, one 2-bin pair            -> 2
  //   m=2: two criticals fill, the third big item is stranded    -> 2
  //   m=3: every critical gets 5 smalls and a big item, load 1.00 -> 3
  const auto result = compute_advice(tightness_family(3), 4);
  std::vector<std::size_t> covered;
  for (const auto& e : result.sweep) covered.push_back(e.covered);
  EXPECT_EQ(covered, (std::vector<std::size_t>{2, 2, 2, 3}));
  EXPECT_EQ(result.m, 3);
  EXPECT_EQ(result.covered, 3u);
}

TEST(ComputeAdvice, SmallestMaximizingMAndDominance) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const auto seq = random_seq(rng, 1 + trial % 35);
    for (int k = 2; k <= 4; ++k) {
      const auto result = compute_advice(seq, k);
      EXPECT_EQ(result.sweep.size(), count_t_items(seq, k, 2) + 1);
      for (const auto& e : result.sweep) {
        EXPECT_EQ(e.x_m, select_mth_largest(seq, e.m));
        EXPECT_EQ(e.covered, advice_dh_run(seq, k, e.m, e.x_m).covered_count);
        EXPECT_GE(result.covered, e.covered);
        if (e.m < result.m) {
          EXPECT_LT(e.covered, result.covered);
        }
      }
      EXPECT_GE(result.covered, dh_run(seq, k).covered_count);
    }
  }
}

}  // namespace
}  // namespace bincover
