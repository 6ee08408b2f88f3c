#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bincover/codec.hpp"
#include "bincover/errors.hpp"
#include "bincover/model.hpp"
#include "bincover/strategies.hpp"

namespace bincover {

struct SweepEntry {
  std::int64_t m = 0;
  Rational x_m{1};
  std::size_t covered = 0;

  friend bool operator==(const SweepEntry&, const SweepEntry&) = default;
};

struct OracleResult {
  std::int64_t m = 0;
  Rational x_m{1};
  std::size_t covered = 0;
  std::vector<SweepEntry> sweep;

  AdvicePayload payload() const { return {static_cast<std::uint64_t>(m), x_m}; }
};

// m-th largest value, duplicates kept; m == 0 yields the sentinel 1.
inline Rational select_mth_largest(const Sequence& seq, std::int64_t m) {
  if (m < 0 || static_cast<std::size_t>(m) > seq.size())
    throw DomainError("select_mth_largest: m=" + std::to_string(m) + " outside [0," +
                      std::to_string(seq.size()) + "]");
  if (m == 0) return Rational(1);
  std::vector<Rational> values = seq.values();
  auto nth = values.begin() + (m - 1);
  std::nth_element(values.begin(), nth, values.end(), std::greater<>{});
  return *nth;
}

inline std::size_t count_t_items(const Sequence& seq, int k, int t) {
  require_k(k);
  if (t < 2 || t > k)
    throw DomainError("count_t_items: t=" + std::to_string(t) + " outside [2," +
                      std::to_string(k) + "]");
  return static_cast<std::size_t>(std::count_if(seq.items.begin(), seq.items.end(), [&](const Item& it) {
    return classify(it.value, k).t == t;
  }));
}

// Emulates the advice strategy for every m in [0, n_2] and keeps the
// smallest m reaching the largest covered count.
inline OracleResult compute_advice(const Sequence& seq, int k) {
  require_k(k);
  const auto n2 = static_cast<std::int64_t>(count_t_items(seq, k, 2));
  std::vector<Rational> sorted = seq.values();
  std::sort(sorted.begin(), sorted.end(), std::greater<>{});

  OracleResult result;
  result.sweep.reserve(static_cast<std::size_t>(n2 + 1));
  for (std::int64_t m = 0; m <= n2; ++m) {
    const Rational x = m == 0 ? Rational(1) : sorted[static_cast<std::size_t>(m - 1)];
    const std::size_t covered = advice_dh_run(seq, k, m, x).covered_count;
    result.sweep.push_back({m, x, covered});
    if (m == 0 || covered > result.covered) {
      result.m = m;
      result.x_m = x;
      result.covered = covered;
    }
  }
  return result;
}

}  // namespace bincover
