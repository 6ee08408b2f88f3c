#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bincover/generators.hpp"
#include "bincover/model.hpp"
#include "bincover/opt.hpp"
#include "bincover/oracle.hpp"
#include "bincover/strategies.hpp"

namespace bincover {

enum class OptKind { None, Exact, BoundOnly };

inline const char* to_string(OptKind k) {
  switch (k) {
    case OptKind::None: return "none";
    case OptKind::Exact: return "exact";
    case OptKind::BoundOnly: return "bound";
  }
  return "?";
}

struct OptInfo {
  OptKind kind = OptKind::None;
  // Exact optimum, or the floor-load upper bound when bound-only.
  std::size_t value = 0;
  std::optional<Certificate> certificate;
  std::int64_t floor_bound = 0;
};

// A verified certificate matching the floor-load bound pins OPT without
// search; otherwise instances within the limit are solved exactly and the
// rest fall back to the bound.
inline OptInfo determine_opt(const Sequence& seq, std::size_t limit,
                             const std::optional<Certificate>& certificate = std::nullopt) {
  OptInfo info;
  info.floor_bound = floor_load_bound(seq);
  if (certificate) {
    const std::size_t c = verify_certificate(seq, *certificate);
    if (static_cast<std::int64_t>(c) == info.floor_bound) {
      info.kind = OptKind::Exact;
      info.value = c;
      info.certificate = certificate;
      return info;
    }
  }
  if (seq.size() <= limit) {
    auto solved = opt_exact(seq, limit);
    info.kind = OptKind::Exact;
    info.value = solved.count;
    info.certificate = std::move(solved.certificate);
    return info;
  }
  info.kind = OptKind::BoundOnly;
  info.value = static_cast<std::size_t>(info.floor_bound);
  info.certificate = certificate;
  return info;
}

struct RunReport {
  std::string instance_id;
  std::size_t n = 0;
  int k = 0;
  StrategyKind strategy = StrategyKind::Adh;
  std::optional<AdvicePayload> advice;
  std::size_t covered = 0;
  OptKind opt_kind = OptKind::None;
  std::size_t opt = 0;
  std::optional<BoundSpec> bound;
  std::optional<bool> bound_ok;
  std::int64_t ms = 0;

  std::optional<Rational> ratio() const {
    if (opt_kind == OptKind::None || opt == 0) return std::nullopt;
    return Rational(static_cast<Rational::Int>(covered), static_cast<Rational::Int>(opt));
  }
};

inline constexpr const char* kCsvHeader =
    "instance_id,n,k,strategy,m,x_m_num,x_m_den,covered,opt,opt_kind,bound_ok,ratio_num,ratio_den,ms";

inline std::string csv_row(const RunReport& r) {
  std::ostringstream os;
  os << r.instance_id << ',' << r.n << ',' << r.k << ',' << to_string(r.strategy) << ',';
  if (r.advice) {
    os << r.advice->m << ',' << r.advice->x_m.num() << ',' << r.advice->x_m.den();
  } else {
    os << ",,";
  }
  os << ',' << r.covered << ',';
  if (r.opt_kind != OptKind::None) os << r.opt;
  os << ',' << to_string(r.opt_kind) << ',';
  if (r.bound_ok) {
    os << (*r.bound_ok ? 1 : 0);
  } else {
    os << "na";
  }
  os << ',';
  if (auto q = r.ratio()) os << q->num() << ',' << q->den();
  else os << ',';
  os << ',' << r.ms;
  return os.str();
}

inline void write_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  out << kCsvHeader << '\n';
  for (const auto& r : reports) out << csv_row(r) << '\n';
}

inline std::string describe(const RunReport& r) {
  std::ostringstream os;
  os << "instance " << r.instance_id << ": n=" << r.n << " k=" << r.k << " strategy=" << to_string(r.strategy);
  if (r.advice) os << " advice m=" << r.advice->m << " x_m=" << r.advice->x_m;
  os << "\ncovered " << r.covered;
  if (r.opt_kind != OptKind::None) {
    os << "\nopt " << r.opt << " (" << to_string(r.opt_kind) << ")";
    if (auto q = r.ratio()) os << " ratio " << *q;
  }
  if (r.bound && r.bound_ok) {
    os << "\nbound covered >= " << r.bound->ratio << "*OPT - " << r.bound->additive << ": "
       << (*r.bound_ok ? "holds" : "VIOLATED");
  }
  return os.str();
}

struct NamedInstance {
  std::string id;
  Sequence sequence;
  std::optional<Certificate> certificate;
};

struct VerifyOptions {
  std::vector<int> ks{2, 3, 4};
  std::size_t limit = kDefaultOptLimit;
  bool timing = false;
};

struct VerifyOutcome {
  std::vector<RunReport> reports;
  std::vector<std::string> violations;
  std::map<int, Rational> min_ratio;
  std::size_t identity_checks = 0;
  std::size_t identity_violations = 0;

  bool ok() const { return violations.empty(); }
};

// Oracle-advised strategy against the optimum for every instance and k; the
// competitive bound and the group count identities must both hold.
inline VerifyOutcome verify_bounds(const std::vector<NamedInstance>& instances, const VerifyOptions& opts) {
  VerifyOutcome out;
  for (const auto& inst : instances) {
    const OptInfo opt = determine_opt(inst.sequence, opts.limit, inst.certificate);
    for (int k : opts.ks) {
      const auto start = std::chrono::steady_clock::now();
      const OracleResult advice = compute_advice(inst.sequence, k);
      RunReport r;
      r.instance_id = inst.id;
      r.n = inst.sequence.size();
      r.k = k;
      r.strategy = StrategyKind::Adh;
      r.advice = advice.payload();
      r.covered = advice.covered;
      r.opt_kind = opt.kind;
      r.opt = opt.value;
      r.bound = bound_spec_for(k);
      if (r.bound) {
        r.bound_ok = check_bound(r.covered, r.opt, *r.bound);
        if (!*r.bound_ok)
          out.violations.push_back(inst.id + " k=" + std::to_string(k) + ": covered " +
                                   std::to_string(r.covered) + " < " + r.bound->ratio.str() + "*" +
                                   std::to_string(r.opt) + " - " + r.bound->additive.str());
      }
      if (opt.certificate) {
        const auto normalized = normalize_certificate(inst.sequence, *opt.certificate, k);
        const auto decomp = decompose(inst.sequence, normalized.certificate, k);
        const auto identities = verify_count_identities(decomp, inst.sequence);
        ++out.identity_checks;
        if (!identities.ok()) {
          ++out.identity_violations;
          out.violations.push_back(inst.id + " k=" + std::to_string(k) + ": count identity\n" +
                                   identities.diff());
        }
      }
      if (opts.timing)
        r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                   .count();
      if (auto q = r.ratio(); q && r.opt_kind == OptKind::Exact) {
        auto [it, inserted] = out.min_ratio.emplace(k, *q);
        if (!inserted && *q < it->second) it->second = *q;
      }
      out.reports.push_back(std::move(r));
    }
  }
  return out;
}

struct RandomSuiteSpec {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t n_min = 4;
  std::size_t n_max = 12;
  Rational value_min{1, 100};
  Rational value_max{99, 100};
  std::int64_t denominator_bound = 100;
  std::string prefix = "random";
};

inline std::vector<NamedInstance> random_suite(const RandomSuiteSpec& spec) {
  if (spec.n_min > spec.n_max) throw DomainError("random suite needs n_min <= n_max");
  std::mt19937_64 master(spec.seed);
  std::uniform_int_distribution<std::size_t> pick_n(spec.n_min, spec.n_max);
  std::vector<NamedInstance> out;
  out.reserve(spec.trials);
  for (std::size_t i = 0; i < spec.trials; ++i) {
    RandomSpec r;
    r.n = pick_n(master);
    r.value_min = spec.value_min;
    r.value_max = spec.value_max;
    r.denominator_bound = spec.denominator_bound;
    r.seed = master();
    out.push_back({spec.prefix + "-" + std::to_string(i), random_instance(r), std::nullopt});
  }
  return out;
}

inline std::vector<NamedInstance> tightness_suite(const std::vector<std::int64_t>& sizes,
                                                  const Rational& big = Rational(11, 20),
                                                  const Rational& small = Rational(9, 100)) {
  std::vector<NamedInstance> out;
  for (auto n : sizes) {
    const TightnessSpec spec{n, big, small};
    out.push_back({"tightness-" + std::to_string(n), tightness_family(spec), tightness_certificate(spec)});
  }
  return out;
}

}  // namespace bincover
