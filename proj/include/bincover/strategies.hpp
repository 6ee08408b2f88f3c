#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bincover/errors.hpp"
#include "bincover/model.hpp"
#include "bincover/rational.hpp"

namespace bincover {

enum class Route {
  Dnf,            // plain Dual Next Fit
  ClassBin,       // t-bin or small bin of Dual Harmonic
  CriticalBig,    // rule 1: item >= x_m into a critical bin
  Overflow,       // rule 1 with every critical bin already holding its big item
  TBin,           // rule 2
  CriticalSmall,  // rule 3, critical bin still below virtual load 1
  SmallBin,       // rule 3, all critical bins saturated
};

inline const char* to_string(Route r) {
  switch (r) {
    case Route::Dnf: return "dnf";
    case Route::ClassBin: return "class-bin";
    case Route::CriticalBig: return "critical-big";
    case Route::Overflow: return "overflow";
    case Route::TBin: return "t-bin";
    case Route::CriticalSmall: return "critical-small";
    case Route::SmallBin: return "small-bin";
  }
  return "?";
}

// One placement decision as recorded by replay().
struct Placement {
  Item item;
  Route route = Route::Dnf;
  int bin_id = 0;
  Rational actual_load;
  // Virtual load for critical bins, actual load elsewhere.
  Rational virtual_load;
  bool closed = false;

  friend bool operator==(const Placement&, const Placement&) = default;
};

namespace detail {

// A single Dual Next Fit lane: one active bin, closed once covered.
class DnfLane {
 public:
  DnfLane(BinKind kind, int t) : kind_(kind), t_(t) {}

  template <typename NextId>
  Placement place(const Item& item, Route route, NextId&& next_id) {
    if (!active_) active_.emplace(next_id(), kind_, t_);
    active_->add(item);
    Placement p{item, route, active_->id(), active_->load(), active_->load(), false};
    if (active_->covered()) {
      p.closed = true;
      closed_.push_back(std::move(*active_));
      active_.reset();
    }
    return p;
  }

  void collect(std::vector<Bin>& out) const {
    out.insert(out.end(), closed_.begin(), closed_.end());
    if (active_) out.push_back(*active_);
  }

 private:
  BinKind kind_;
  int t_;
  std::optional<Bin> active_;
  std::vector<Bin> closed_;
};

}  // namespace detail

class DualNextFit {
 public:
  Placement step(const Item& item) {
    return lane_.place(item, Route::Dnf, [this] { return next_id_++; });
  }

  Covering finish() const {
    std::vector<Bin> bins;
    lane_.collect(bins);
    return make_covering(std::move(bins));
  }

 private:
  detail::DnfLane lane_{BinKind::Dnf, 0};
  int next_id_ = 0;
};

// Items split into classes 2..k and small; each class packed by its own DNF.
class DualHarmonic {
 public:
  explicit DualHarmonic(int k) : k_(k) {
    require_k(k);
    for (int t = 2; t <= k; ++t) lanes_.emplace(t, detail::DnfLane(BinKind::TBin, t));
    lanes_.emplace(0, detail::DnfLane(BinKind::SmallBin, 0));
  }

  Placement step(const Item& item) {
    const int cls = classify(item.value, k_).t;
    return lanes_.at(cls).place(item, Route::ClassBin, [this] { return next_id_++; });
  }

  Covering finish() const {
    std::vector<Bin> bins;
    for (const auto& [cls, lane] : lanes_) lane.collect(bins);
    return make_covering(std::move(bins));
  }

 private:
  int k_;
  std::map<int, detail::DnfLane> lanes_;
  int next_id_ = 0;
};

// A critical bin reserves room for one 2-item of size >= x_m. Until that item
// arrives its virtual load counts x_m in its place.
struct CriticalBin {
  Bin bin;
  Rational big_value;  // x_m until the big item arrives
  Rational small_mass;
  bool has_big_item = false;

  Rational virtual_load() const { return big_value + small_mass; }
  bool small_saturated() const { return virtual_load() >= Rational(1); }
};

// Dual Harmonic with m critical bins driven by the advice pair (m, x_m).
class AdviceDualHarmonic {
 public:
  AdviceDualHarmonic(int k, std::int64_t m, const Rational& x_m) : k_(k), x_m_(x_m) {
    require_k(k);
    if (m < 0) throw DomainError("advice m must be non-negative, got " + std::to_string(m));
    if (x_m < Rational(0) || x_m > Rational(1))
      throw DomainError("advice x_m must lie in [0,1], got " + x_m.str());
    criticals_.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i)
      criticals_.push_back({Bin(static_cast<int>(i), BinKind::Critical), x_m, Rational(0), false});
    next_id_ = static_cast<int>(m);
    for (int t = 2; t <= k; ++t) t_lanes_.emplace(t, detail::DnfLane(BinKind::TBin, t));
  }

  Placement step(const Item& item) {
    const ItemClass cls = classify(item.value, k_);
    auto next_id = [this] { return next_id_++; };

    if (cls.is_small()) {
      for (auto& c : criticals_) {
        if (c.small_saturated()) continue;
        c.bin.add(item);
        c.small_mass += item.value;
        return critical_placement(item, Route::CriticalSmall, c);
      }
      return small_lane_.place(item, Route::SmallBin, next_id);
    }

    Route route = Route::TBin;
    if (cls.t == 2 && item.value >= x_m_) {
      for (auto& c : criticals_) {
        if (c.has_big_item) continue;
        c.bin.add(item);
        c.big_value = item.value;
        c.has_big_item = true;
        return critical_placement(item, Route::CriticalBig, c);
      }
      route = Route::Overflow;
    }
    return t_lanes_.at(cls.t).place(item, route, next_id);
  }

  Covering finish() const {
    std::vector<Bin> bins;
    for (const auto& c : criticals_) bins.push_back(c.bin);
    for (const auto& [t, lane] : t_lanes_) lane.collect(bins);
    small_lane_.collect(bins);
    return make_covering(std::move(bins));
  }

  const std::vector<CriticalBin>& criticals() const { return criticals_; }

 private:
  static Placement critical_placement(const Item& item, Route route, const CriticalBin& c) {
    return {item, route, c.bin.id(), c.bin.load(), c.virtual_load(), false};
  }

  int k_;
  Rational x_m_;
  std::vector<CriticalBin> criticals_;
  std::map<int, detail::DnfLane> t_lanes_;
  detail::DnfLane small_lane_{BinKind::SmallBin, 0};
  int next_id_ = 0;
};

template <typename Strategy>
Covering run(Strategy strategy, const Sequence& seq) {
  for (const auto& item : seq.items) strategy.step(item);
  return strategy.finish();
}

inline Covering dnf_run(const Sequence& seq) { return run(DualNextFit{}, seq); }

inline Covering dh_run(const Sequence& seq, int k) { return run(DualHarmonic(k), seq); }

inline Covering advice_dh_run(const Sequence& seq, int k, std::int64_t m, const Rational& x_m) {
  return run(AdviceDualHarmonic(k, m, x_m), seq);
}

enum class StrategyKind { Dnf, Dh, Adh };

inline const char* to_string(StrategyKind s) {
  switch (s) {
    case StrategyKind::Dnf: return "dnf";
    case StrategyKind::Dh: return "dh";
    case StrategyKind::Adh: return "adh";
  }
  return "?";
}

struct StrategyConfig {
  StrategyKind kind = StrategyKind::Adh;
  int k = 4;
  std::int64_t m = 0;
  Rational x_m{1};
};

inline Covering run(const StrategyConfig& config, const Sequence& seq) {
  switch (config.kind) {
    case StrategyKind::Dnf: return dnf_run(seq);
    case StrategyKind::Dh: return dh_run(seq, config.k);
    case StrategyKind::Adh: return advice_dh_run(seq, config.k, config.m, config.x_m);
  }
  return {};
}

inline std::vector<Placement> replay(const Sequence& seq, const StrategyConfig& config) {
  std::vector<Placement> trace;
  trace.reserve(seq.size());
  auto drive = [&](auto strategy) {
    for (const auto& item : seq.items) trace.push_back(strategy.step(item));
  };
  switch (config.kind) {
    case StrategyKind::Dnf: drive(DualNextFit{}); break;
    case StrategyKind::Dh: drive(DualHarmonic(config.k)); break;
    case StrategyKind::Adh: drive(AdviceDualHarmonic(config.k, config.m, config.x_m)); break;
  }
  return trace;
}

}  // namespace bincover
