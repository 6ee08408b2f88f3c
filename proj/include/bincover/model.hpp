#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bincover/errors.hpp"
#include "bincover/rational.hpp"

namespace bincover {

struct Item {
  Rational value;
  std::size_t source_index = 0;

  friend bool operator==(const Item&, const Item&) = default;
};

// Size class of an item for a fixed k: t-items satisfy 1/t <= v < 1/(t-1),
// small items satisfy v < 1/k. t == 0 encodes the small class.
struct ItemClass {
  int t = 0;

  static constexpr ItemClass small() { return ItemClass{0}; }
  static constexpr ItemClass t_item(int t) { return ItemClass{t}; }
  constexpr bool is_small() const { return t == 0; }

  friend bool operator==(const ItemClass&, const ItemClass&) = default;
};

inline void require_k(int k) {
  if (k < 2) throw DomainError("k must be at least 2, got " + std::to_string(k));
}

inline ItemClass classify(const Rational& v, int k) {
  require_k(k);
  if (v <= Rational(0) || v >= Rational(1))
    throw DomainError("classify: value " + v.str() + " outside ]0,1[");
  if (v < Rational(1, k)) return ItemClass::small();
  // Smallest t with 1/t <= v is ceil(1/v); v >= 1/k keeps it <= k.
  const auto t = static_cast<int>((v.den() + v.num() - 1) / v.num());
  return ItemClass::t_item(t);
}

enum class BinKind { Dnf, Critical, TBin, SmallBin, OptBin, Prepacked };

inline const char* to_string(BinKind kind) {
  switch (kind) {
    case BinKind::Dnf: return "dnf";
    case BinKind::Critical: return "critical";
    case BinKind::TBin: return "t-bin";
    case BinKind::SmallBin: return "small";
    case BinKind::OptBin: return "opt";
    case BinKind::Prepacked: return "prepacked";
  }
  return "?";
}

class Bin {
 public:
  Bin() = default;
  Bin(int id, BinKind kind, int t = 0) : id_(id), kind_(kind), t_(t) {}

  void add(const Item& item) {
    items_.push_back(item);
    load_ += item.value;
  }

  int id() const { return id_; }
  void set_id(int id) { id_ = id; }
  BinKind kind() const { return kind_; }
  // Item type of a TBin; 0 otherwise.
  int t() const { return t_; }
  const std::vector<Item>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  const Rational& load() const { return load_; }
  bool covered() const { return load_ >= Rational(1); }

  friend bool operator==(const Bin&, const Bin&) = default;

 private:
  int id_ = 0;
  BinKind kind_ = BinKind::Dnf;
  int t_ = 0;
  std::vector<Item> items_;
  Rational load_;
};

inline Rational load(std::span<const Item> items) {
  Rational sum;
  for (const auto& item : items) sum += item.value;
  return sum;
}

inline Rational load(const Bin& bin) { return load(bin.items()); }

inline bool is_covered(const Bin& bin) { return load(bin) >= Rational(1); }

// Result of a strategy or solver. bins holds every non-empty bin ordered by
// id; leftover lists the items of the uncovered ones.
struct Covering {
  std::vector<Bin> bins;
  std::size_t covered_count = 0;
  std::vector<Item> leftover;

  friend bool operator==(const Covering&, const Covering&) = default;
};

inline Covering make_covering(std::vector<Bin> bins) {
  std::erase_if(bins, [](const Bin& b) { return b.empty(); });
  std::sort(bins.begin(), bins.end(),
            [](const Bin& a, const Bin& b) { return a.id() < b.id(); });
  Covering c;
  for (const auto& bin : bins) {
    if (bin.covered()) {
      ++c.covered_count;
    } else {
      c.leftover.insert(c.leftover.end(), bin.items().begin(), bin.items().end());
    }
  }
  c.bins = std::move(bins);
  return c;
}

struct Sequence {
  std::vector<Item> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }

  static Sequence from_values(std::span<const Rational> values) {
    Sequence seq;
    seq.items.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) seq.items.push_back({values[i], i});
    return seq;
  }

  std::vector<Rational> values() const {
    std::vector<Rational> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(item.value);
    return out;
  }
};

inline Rational total_load(const Sequence& seq) { return load(seq.items); }

struct NormalizedInput {
  Sequence sequence;
  // Values >= 1, each alone in a covered bin. Zero values ride along in the
  // first of these bins.
  std::vector<Bin> prepacked;
  // Zero values seen when no prepacked bin exists.
  std::vector<Item> discarded_zeros;
};

inline NormalizedInput normalize_sequence(std::span<const Rational> raw) {
  NormalizedInput out;
  std::vector<Item> zeros;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Item item{raw[i], i};
    if (item.value < Rational(0))
      throw DomainError("negative item value " + item.value.str() + " at index " +
                        std::to_string(i));
    if (item.value == Rational(0)) {
      zeros.push_back(item);
    } else if (item.value >= Rational(1)) {
      Bin bin(static_cast<int>(out.prepacked.size()), BinKind::Prepacked);
      bin.add(item);
      out.prepacked.push_back(std::move(bin));
    } else {
      out.sequence.items.push_back(item);
    }
  }
  if (out.prepacked.empty()) {
    out.discarded_zeros = std::move(zeros);
  } else {
    for (const auto& z : zeros) out.prepacked.front().add(z);
  }
  return out;
}

// Appends the prepacked bins after the strategy's bins, renumbering them.
inline Covering with_prepacked(const Covering& covering, const std::vector<Bin>& prepacked) {
  if (prepacked.empty()) return covering;
  std::vector<Bin> bins = covering.bins;
  int next = 0;
  for (const auto& b : bins) next = std::max(next, b.id() + 1);
  for (Bin b : prepacked) {
    b.set_id(next++);
    bins.push_back(std::move(b));
  }
  return make_covering(std::move(bins));
}

// --- instance text format ---------------------------------------------------

// Accepts `p/q` or a finite decimal such as `0.45`, `-3`, `.5`.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto fail = [&]() { return ParseError("cannot parse value '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s, bool allow_sign) -> Rational::Int {
    bool neg = false;
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw fail();
    Rational::Int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw fail();
      if (v > (INT64_MAX - (c - '0')) / 10) throw fail();
      v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(trim(text.substr(0, slash)), true);
    const auto den = parse_int(trim(text.substr(slash + 1)), false);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  bool neg = false;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw fail();
  if (frac.size() > 18) throw fail();
  const Rational::Int w = whole.empty() ? 0 : parse_int(whole, false);
  Rational::Int scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  const Rational::Int f = frac.empty() ? 0 : parse_int(frac, false);
  Rational value = Rational(w) + Rational(f, scale);
  return neg ? -value : value;
}

inline std::vector<Rational> read_instance(std::istream& in) {
  std::vector<Rational> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      values.push_back(parse_rational(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return values;
}

inline void write_instance(std::ostream& out, std::span<const Rational> values) {
  for (const auto& v : values) out << v.num() << '/' << v.den() << '\n';
}

}  // namespace bincover
