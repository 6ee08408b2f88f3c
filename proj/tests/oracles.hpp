#pragma once

// Independent reference implementations used only by tests.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "bincover/model.hpp"
#include "bincover/rational.hpp"

namespace bincover::testing {

// Maximum covered bins over every set partition of the items (restricted
// growth strings), with no pruning beyond an upper bound on remaining load.
inline std::size_t naive_partition_opt(const std::vector<Rational>& values) {
  std::vector<Rational> bins;
  std::size_t best = 0;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == values.size()) {
      const auto covered = static_cast<std::size_t>(
          std::count_if(bins.begin(), bins.end(), [](const Rational& l) { return l >= Rational(1); }));
      best = std::max(best, covered);
      return;
    }
    for (std::size_t b = 0; b < bins.size(); ++b) {
      bins[b] += values[i];
      assign(i + 1);
      bins[b] -= values[i];
    }
    bins.push_back(values[i]);
    assign(i + 1);
    bins.pop_back();
  };
  assign(0);
  return best;
}

// Class by scanning t = 2..k against the interval definition.
inline int class_by_scan(const Rational& v, int k) {
  for (int t = 2; t <= k; ++t)
    if (Rational(1, t) <= v && v < Rational(1, t - 1)) return t;
  return 0;
}

}  // namespace bincover::testing
