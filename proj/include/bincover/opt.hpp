#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bincover/errors.hpp"
#include "bincover/model.hpp"
#include "bincover/rational.hpp"

namespace bincover {

// Bins of a covering as lists of positions into a Sequence.
struct Certificate {
  std::vector<std::vector<std::size_t>> bins;

  std::size_t size() const { return bins.size(); }
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline Certificate read_certificate(std::istream& in) {
  Certificate cert;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::size_t> bin;
    std::string tok;
    while (fields >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("certificate line " + std::to_string(line_no) + ": bad index '" + tok + "'");
      bin.push_back(static_cast<std::size_t>(std::stoull(tok)));
    }
    if (!bin.empty()) cert.bins.push_back(std::move(bin));
  }
  return cert;
}

inline void write_certificate(std::ostream& out, const Certificate& cert) {
  for (const auto& bin : cert.bins) {
    for (std::size_t i = 0; i < bin.size(); ++i) out << (i ? " " : "") << bin[i];
    out << '\n';
  }
}

// floor(load) >= |OPT|: every covered bin takes at least one unit of load.
inline std::int64_t floor_load_bound(const Sequence& seq) { return total_load(seq).floor(); }

inline Rational bin_load(const Sequence& seq, const std::vector<std::size_t>& bin) {
  Rational sum;
  for (auto idx : bin) sum += seq.items[idx].value;
  return sum;
}

inline std::size_t verify_certificate(const Sequence& seq, const Certificate& cert) {
  std::vector<int> owner(seq.size(), -1);
  for (std::size_t b = 0; b < cert.bins.size(); ++b) {
    const auto& bin = cert.bins[b];
    if (bin.empty()) throw InvalidCertificate("bin " + std::to_string(b) + ": empty");
    for (auto idx : bin) {
      if (idx >= seq.size())
        throw InvalidCertificate("bin " + std::to_string(b) + ": index " + std::to_string(idx) +
                                 " out of range (n=" + std::to_string(seq.size()) + ")");
      if (owner[idx] >= 0)
        throw InvalidCertificate("bin " + std::to_string(b) + ": index " + std::to_string(idx) +
                                 " already used by bin " + std::to_string(owner[idx]));
      owner[idx] = static_cast<int>(b);
    }
    const Rational l = bin_load(seq, bin);
    if (l < Rational(1))
      throw InvalidCertificate("bin " + std::to_string(b) + ": load " + l.str() + " below 1");
  }
  return cert.bins.size();
}

struct OptResult {
  std::size_t count = 0;
  Certificate certificate;
};

inline constexpr std::size_t kDefaultOptLimit = 15;

// Exact maximum covering by dynamic programming over item subsets. Candidate
// bins are the minimal covering subsets: load >= 1 and dropping the smallest
// item falls below 1. Each state either leaves its lowest item unused or
// puts it into one such bin.
inline OptResult opt_exact(const Sequence& seq, std::size_t size_limit = kDefaultOptLimit) {
  const std::size_t n = seq.size();
  if (n > size_limit)
    throw LimitExceeded("opt_exact: n=" + std::to_string(n) + " exceeds limit " + std::to_string(size_limit));
  if (n > 24) throw LimitExceeded("opt_exact: n=" + std::to_string(n) + " is beyond subset enumeration");

  const std::uint32_t full = (n == 0) ? 0U : ((1U << n) - 1U);
  const std::size_t states = std::size_t{1} << n;
  std::vector<char> minimal(states, 0);
  {
    std::vector<Rational> load(states);
    std::vector<Rational> smallest(states);
    for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
      const int low = std::countr_zero(mask);
      const std::uint32_t rest = mask & (mask - 1);
      const Rational& v = seq.items[static_cast<std::size_t>(low)].value;
      load[mask] = load[rest] + v;
      smallest[mask] = rest == 0 ? v : std::min(smallest[rest], v);
      minimal[mask] = load[mask] >= Rational(1) && load[mask] - smallest[mask] < Rational(1);
      if (mask == full) break;
    }
  }

  std::vector<std::uint8_t> best(states, 0);
  std::vector<std::uint32_t> choice(states, 0);
  for (std::uint32_t mask = 1; mask != 0 && mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1U);
    const std::uint32_t rest = mask ^ low;
    std::uint8_t b = best[rest];
    std::uint32_t pick = 0;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t bin = sub | low;
      if (minimal[bin] && best[mask ^ bin] + 1 > b) {
        b = static_cast<std::uint8_t>(best[mask ^ bin] + 1);
        pick = bin;
      }
      if (sub == 0) break;
    }
    best[mask] = b;
    choice[mask] = pick;
    if (mask == full) break;
  }

  OptResult result;
  result.count = best[full];
  for (std::uint32_t mask = full; mask != 0;) {
    const std::uint32_t pick = choice[mask];
    if (pick == 0) {
      mask &= mask - 1;
      continue;
    }
    std::vector<std::size_t> bin;
    for (std::uint32_t bits = pick; bits != 0; bits &= bits - 1)
      bin.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
    result.certificate.bins.push_back(std::move(bin));
    mask ^= pick;
  }
  return result;
}

// --- bin groups -------------------------------------------------------------

// Sorted t-item types of one bin; small items are not part of the key.
using GroupKey = std::vector<int>;

inline std::string key_name(const GroupKey& key) {
  if (key.empty()) return "S";
  std::string s;
  for (int t : key) s += std::to_string(t);
  return s;
}

// Sum of 1/t over the key is at least 1: the t-items alone cover the bin.
inline bool is_easy(const GroupKey& key) {
  Rational sum;
  for (int t : key) sum += Rational(1, t);
  return sum >= Rational(1);
}

// Sum of 1/(t-1) is below 1: small items are mandatory to cover the bin.
inline bool is_gap(const GroupKey& key) {
  Rational sum;
  for (int t : key) sum += Rational(1, t - 1);
  return sum < Rational(1);
}

// Small-item mass every covered bin of the group must contain beyond its
// t-items: 1 - sum 1/(t-1), floored at zero.
inline Rational gap_deficit(const GroupKey& key) {
  Rational sum;
  for (int t : key) sum += Rational(1, t - 1);
  return sum < Rational(1) ? Rational(1) - sum : Rational(0);
}

// No proper sub-multiset of the key is easy.
inline bool is_canonical(const GroupKey& key) {
  if (key.empty() || !is_easy(key)) return true;
  GroupKey without_largest(key.begin(), key.end() - 1);
  return !is_easy(without_largest);
}

struct GroupDecomposition {
  int k = 2;
  std::map<GroupKey, std::size_t> groups;  // bins holding at least one t-item
  std::size_t small_only_count = 0;        // |G_S|
  std::map<int, std::size_t> t_totals;     // T_t over the whole sequence
  std::map<int, std::size_t> unassigned;   // t-items outside every bin
  std::map<GroupKey, Rational> small_mass; // empty key holds G_S

  std::size_t bin_count() const {
    std::size_t total = small_only_count;
    for (const auto& [key, count] : groups) total += count;
    return total;
  }
  bool easy(const GroupKey& key) const { return is_easy(key); }
  bool gap(const GroupKey& key) const { return is_gap(key); }
};

inline GroupKey bin_key(const Sequence& seq, const std::vector<std::size_t>& bin, int k) {
  GroupKey key;
  for (auto idx : bin) {
    const auto cls = classify(seq.items[idx].value, k);
    if (!cls.is_small()) key.push_back(cls.t);
  }
  std::sort(key.begin(), key.end());
  return key;
}

inline GroupDecomposition decompose(const Sequence& seq, const Certificate& cert, int k) {
  require_k(k);
  GroupDecomposition d;
  d.k = k;
  for (int t = 2; t <= k; ++t) {
    d.t_totals[t] = 0;
    d.unassigned[t] = 0;
  }
  std::vector<char> used(seq.size(), 0);
  for (const auto& bin : cert.bins) {
    const GroupKey key = bin_key(seq, bin, k);
    Rational smalls;
    for (auto idx : bin) {
      used[idx] = 1;
      if (classify(seq.items[idx].value, k).is_small()) smalls += seq.items[idx].value;
    }
    if (key.empty()) {
      ++d.small_only_count;
    } else {
      ++d.groups[key];
    }
    d.small_mass[key] += smalls;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto cls = classify(seq.items[i].value, k);
    if (cls.is_small()) continue;
    ++d.t_totals[cls.t];
    if (!used[i]) ++d.unassigned[cls.t];
  }
  return d;
}

struct NormalizedCertificate {
  Certificate certificate;
  // Items that could not join any bin without breaking canonical form.
  std::vector<std::size_t> unplaced;
};

// Rewrites a certificate into the canonical form the group identities
// assume: easy bins keep only a minimal easy set of t-items and no small
// items, and every other item is moved into a non-easy bin whenever the
// resulting key stays canonical. Coverage of every bin is preserved.
inline NormalizedCertificate normalize_certificate(const Sequence& seq, const Certificate& cert, int k) {
  require_k(k);
  auto t_of = [&](std::size_t idx) { return classify(seq.items[idx].value, k).t; };
  auto key_of = [&](const std::vector<std::size_t>& bin) { return bin_key(seq, bin, k); };

  std::vector<char> used(seq.size(), 0);
  std::deque<std::size_t> pool;
  std::vector<std::vector<std::size_t>> bins = cert.bins;

  for (auto& bin : bins) {
    for (auto idx : bin) used[idx] = 1;
    if (!is_easy(key_of(bin))) continue;
    std::vector<std::size_t> core;
    for (auto idx : bin) {
      if (t_of(idx) == 0) {
        pool.push_back(idx);
      } else {
        core.push_back(idx);
      }
    }
    // Drop the item of largest type while the rest stays easy.
    for (;;) {
      auto victim = std::max_element(core.begin(), core.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(t_of(a), a) < std::pair(t_of(b), b);
      });
      std::vector<std::size_t> rest(core.begin(), core.end());
      rest.erase(rest.begin() + (victim - core.begin()));
      if (!is_easy(key_of(rest))) break;
      pool.push_back(*victim);
      core = std::move(rest);
    }
    bin = std::move(core);
  }
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (!used[i]) pool.push_back(i);
  std::sort(pool.begin(), pool.end());

  NormalizedCertificate out;
  while (!pool.empty()) {
    const std::size_t idx = pool.front();
    pool.pop_front();
    const int t = t_of(idx);
    bool placed = false;
    for (auto& bin : bins) {
      GroupKey key = key_of(bin);
      if (is_easy(key)) continue;
      if (t == 0) {
        bin.push_back(idx);
        placed = true;
        break;
      }
      key.insert(std::upper_bound(key.begin(), key.end(), t), t);
      if (!is_canonical(key)) continue;
      bin.push_back(idx);
      if (is_easy(key)) {
        std::vector<std::size_t> kept;
        for (auto j : bin) {
          if (t_of(j) == 0) {
            pool.push_back(j);
          } else {
            kept.push_back(j);
          }
        }
        bin = std::move(kept);
      }
      placed = true;
      break;
    }
    if (!placed) out.unplaced.push_back(idx);
  }
  for (auto& bin : bins) std::sort(bin.begin(), bin.end());
  std::sort(out.unplaced.begin(), out.unplaced.end());
  out.certificate.bins = std::move(bins);
  return out;
}

// --- count identities -------------------------------------------------------

// Coefficient of |G_key| in the identity for T_t.
struct IdentityTerm {
  GroupKey key;
  std::size_t coefficient = 0;
};

struct IdentityForm {
  int t = 2;
  std::vector<IdentityTerm> terms;
};

// Canonical keys over types 2..k, each a sorted multiset.
inline std::vector<GroupKey> canonical_keys(int k) {
  require_k(k);
  std::vector<GroupKey> out;
  std::vector<GroupKey> frontier{GroupKey{}};
  while (!frontier.empty()) {
    std::vector<GroupKey> next;
    for (const auto& key : frontier) {
      const int from = key.empty() ? 2 : key.back();
      for (int t = from; t <= k; ++t) {
        GroupKey grown = key;
        grown.push_back(t);
        if (!is_canonical(grown)) continue;
        out.push_back(grown);
        if (!is_easy(grown)) next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Identities obtained by double counting t-items over the canonical keys.
inline std::vector<IdentityForm> derived_identities(int k) {
  std::vector<IdentityForm> forms;
  const auto keys = canonical_keys(k);
  for (int t = 2; t <= k; ++t) {
    IdentityForm form{t, {}};
    for (const auto& key : keys) {
      const auto c = static_cast<std::size_t>(std::count(key.begin(), key.end(), t));
      if (c > 0) form.terms.push_back({key, c});
    }
    forms.push_back(std::move(form));
  }
  return forms;
}

inline std::vector<IdentityForm> published_identities(int k) {
  if (k == 2) return {{2, {{{2}, 1}, {{2, 2}, 2}}}};
  if (k == 4) {
    return {
        {2, {{{2}, 1}, {{2, 2}, 2}, {{2, 3}, 1}, {{2, 4}, 1}, {{2, 3, 3}, 1}, {{2, 3, 4}, 1}, {{2, 4, 4}, 1}}},
        {3, {{{3}, 1}, {{2, 3}, 1}, {{3, 3}, 2}, {{3, 4}, 1}, {{2, 3, 3}, 2}, {{2, 3, 4}, 1},
             {{3, 3, 3}, 3}, {{3, 3, 4}, 2}, {{3, 4, 4}, 1}, {{3, 3, 4, 4}, 2}, {{3, 4, 4, 4}, 1}}},
        {4, {{{4}, 1}, {{2, 4}, 1}, {{3, 4}, 1}, {{4, 4}, 2}, {{2, 3, 4}, 1}, {{2, 4, 4}, 2},
             {{3, 3, 4}, 1}, {{3, 4, 4}, 2}, {{4, 4, 4}, 3}, {{3, 3, 4, 4}, 2}, {{3, 4, 4, 4}, 3},
             {{4, 4, 4, 4}, 4}}},
    };
  }
  return {};
}

// Published forms for k = 2 and k = 4, double-counting forms otherwise.
inline std::vector<IdentityForm> identity_forms(int k) {
  auto forms = published_identities(k);
  return forms.empty() ? derived_identities(k) : forms;
}

struct IdentityRow {
  int t = 2;
  std::size_t t_total = 0;     // T_t counted on the sequence
  std::size_t unassigned = 0;  // t-items outside every bin
  std::size_t group_sum = 0;   // weighted group counts from the identity
  bool holds() const { return t_total == group_sum + unassigned; }
};

struct IdentityReport {
  bool published = false;
  std::vector<IdentityRow> rows;

  bool ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const IdentityRow& r) { return r.holds(); });
  }
  explicit operator bool() const { return ok(); }

  std::string diff() const {
    std::ostringstream os;
    for (const auto& r : rows) {
      if (r.holds()) continue;
      os << "T_" << r.t << ": sequence has " << r.t_total << ", groups give " << r.group_sum
         << " + " << r.unassigned << " unassigned\n";
    }
    return os.str();
  }
};

inline IdentityReport verify_count_identities(const GroupDecomposition& decomp, const Sequence& seq) {
  IdentityReport report;
  report.published = !published_identities(decomp.k).empty();
  for (const auto& form : identity_forms(decomp.k)) {
    IdentityRow row;
    row.t = form.t;
    row.t_total = 0;
    for (const auto& item : seq.items)
      if (classify(item.value, decomp.k).t == form.t) ++row.t_total;
    if (auto it = decomp.unassigned.find(form.t); it != decomp.unassigned.end()) row.unassigned = it->second;
    for (const auto& term : form.terms) {
      if (auto it = decomp.groups.find(term.key); it != decomp.groups.end())
        row.group_sum += term.coefficient * it->second;
    }
    report.rows.push_back(row);
  }
  return report;
}

// --- competitive bounds -----------------------------------------------------

// covered >= ratio * OPT - additive
struct BoundSpec {
  int k = 4;
  Rational ratio;
  Rational additive;

  friend bool operator==(const BoundSpec&, const BoundSpec&) = default;
};

inline const std::vector<BoundSpec>& bound_specs() {
  static const std::vector<BoundSpec> specs{
      {2, Rational(3, 5), Rational(19, 15)},
      {3, Rational(9, 14), Rational(97, 42)},
      {4, Rational(2, 3), Rational(173, 60)},
  };
  return specs;
}

inline std::optional<BoundSpec> bound_spec_for(int k) {
  for (const auto& s : bound_specs())
    if (s.k == k) return s;
  return std::nullopt;
}

inline bool check_bound(std::size_t strategy_covered, std::size_t opt, const BoundSpec& spec) {
  return Rational(static_cast<Rational::Int>(strategy_covered)) >=
         spec.ratio * Rational(static_cast<Rational::Int>(opt)) - spec.additive;
}

}  // namespace bincover
