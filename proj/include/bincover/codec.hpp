#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bincover/errors.hpp"
#include "bincover/rational.hpp"

namespace bincover {

class BitString {
 public:
  BitString() = default;

  static BitString from_ascii(std::string_view text) {
    BitString s;
    for (char c : text) {
      if (c != '0' && c != '1')
        throw ParseError(std::string("bit string contains non-binary character '") + c + "'");
      s.push_back(c == '1');
    }
    return s;
  }

  std::string to_ascii() const {
    std::string out;
    out.reserve(bits_.size());
    for (bool b : bits_) out.push_back(b ? '1' : '0');
    return out;
  }

  void push_back(bool bit) { bits_.push_back(bit); }
  void append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  BitString slice(std::size_t pos, std::size_t len) const {
    BitString out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return out;
  }

  friend BitString operator+(BitString a, const BitString& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<bool> bits_;
};

class TapeCursor {
 public:
  explicit TapeCursor(BitString tape) : tape_(std::move(tape)) {}

  bool read_bit() {
    if (position_ >= tape_.size())
      throw TruncationError("advice tape exhausted at bit " + std::to_string(position_));
    return tape_[position_++];
  }

  BitString read_bits(std::size_t count) {
    if (tape_.size() - position_ < count)
      throw TruncationError("advice tape exhausted: need " + std::to_string(count) +
                            " bits at position " + std::to_string(position_) + ", have " +
                            std::to_string(tape_.size() - position_));
    BitString out = tape_.slice(position_, count);
    position_ += count;
    return out;
  }

  std::size_t position() const { return position_; }
  std::size_t remaining() const { return tape_.size() - position_; }
  const BitString& tape() const { return tape_; }

 private:
  BitString tape_;
  std::size_t position_ = 0;
};

// Binary digits of value without leading zeros; zero is the single bit 0.
inline BitString minimal_binary(std::uint64_t value) {
  BitString out;
  const int width = value == 0 ? 1 : std::bit_width(value);
  for (int i = width - 1; i >= 0; --i) out.push_back(((value >> i) & 1U) != 0);
  return out;
}

inline std::uint64_t binary_value(const BitString& bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (v >> 63 != 0) throw MalformedAdvice("binary field exceeds 64 bits");
    v = (v << 1) | (bits[i] ? 1U : 0U);
  }
  return v;
}

// e(s) = u(s) b(s) s: b(s) is the binary length of s, u(s) is |b(s)| ones
// and a terminating zero. The empty string has an empty b(s), so e() = "0".
inline BitString encode_self_delim(const BitString& s) {
  const BitString length = s.empty() ? BitString{} : minimal_binary(s.size());
  BitString out;
  for (std::size_t i = 0; i < length.size(); ++i) out.push_back(true);
  out.push_back(false);
  out.append(length);
  out.append(s);
  return out;
}

inline BitString decode_self_delim(TapeCursor& cursor) {
  std::size_t header = 0;
  while (cursor.read_bit()) ++header;
  if (header > 64) throw MalformedAdvice("self-delimited length field wider than 64 bits");
  const std::uint64_t length = header == 0 ? 0 : binary_value(cursor.read_bits(header));
  return cursor.read_bits(static_cast<std::size_t>(length));
}

struct AdvicePayload {
  std::uint64_t m = 0;
  Rational x_m{1};

  friend bool operator==(const AdvicePayload&, const AdvicePayload&) = default;
};

inline bool valid_payload(const AdvicePayload& p) {
  if (p.m == 0) return p.x_m == Rational(1);
  return p.x_m > Rational(0) && p.x_m <= Rational(1);
}

// Three self-delimited fields in fixed order: m, numerator, denominator.
inline BitString encode_advice(const AdvicePayload& p) {
  if (!valid_payload(p))
    throw DomainError("advice payload violates invariants: m=" + std::to_string(p.m) +
                      " x_m=" + p.x_m.str());
  return encode_self_delim(minimal_binary(p.m)) +
         encode_self_delim(minimal_binary(static_cast<std::uint64_t>(p.x_m.num()))) +
         encode_self_delim(minimal_binary(static_cast<std::uint64_t>(p.x_m.den())));
}

inline AdvicePayload decode_advice(TapeCursor& cursor) {
  const std::uint64_t m = binary_value(decode_self_delim(cursor));
  const std::uint64_t num = binary_value(decode_self_delim(cursor));
  const std::uint64_t den = binary_value(decode_self_delim(cursor));
  if (den == 0) throw MalformedAdvice("advice denominator is zero");
  if (num > den) throw MalformedAdvice("advice x_m exceeds 1");
  if (den > static_cast<std::uint64_t>(INT64_MAX))
    throw MalformedAdvice("advice denominator exceeds 63 bits");
  AdvicePayload p{m, Rational(static_cast<Rational::Int>(num), static_cast<Rational::Int>(den))};
  if (!valid_payload(p))
    throw MalformedAdvice("advice payload violates invariants: m=" + std::to_string(p.m) +
                          " x_m=" + p.x_m.str());
  return p;
}

inline AdvicePayload decode_advice(const BitString& tape) {
  TapeCursor cursor(tape);
  return decode_advice(cursor);
}

// --- tape files ---------------------------------------------------------------

inline void write_tape_ascii(std::ostream& out, const BitString& tape) {
  out << tape.to_ascii() << '\n';
}

inline BitString read_tape_ascii(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.pop_back();
  return BitString::from_ascii(text);
}

// 8-byte big-endian bit count, then the bits MSB-first, last byte zero-padded.
inline std::vector<std::uint8_t> pack_tape(const BitString& tape) {
  std::vector<std::uint8_t> out(8 + (tape.size() + 7) / 8, 0);
  const auto count = static_cast<std::uint64_t>(tape.size());
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(count >> (56 - 8 * i));
  for (std::size_t i = 0; i < tape.size(); ++i)
    if (tape[i]) out[8 + i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  return out;
}

inline BitString unpack_tape(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8) throw ParseError("packed tape shorter than its 8-byte header");
  std::uint64_t count = 0;
  for (int i = 0; i < 8; ++i) count = (count << 8) | bytes[static_cast<std::size_t>(i)];
  if ((bytes.size() - 8) * 8 < count || (bytes.size() - 8) != (count + 7) / 8)
    throw ParseError("packed tape body does not match its bit count " + std::to_string(count));
  BitString tape;
  for (std::uint64_t i = 0; i < count; ++i)
    tape.push_back((bytes[8 + i / 8] & (0x80U >> (i % 8))) != 0);
  return tape;
}

inline void save_tape(const std::filesystem::path& path, const BitString& tape) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open tape file " + path.string() + " for writing");
  if (path.extension() == ".bin") {
    const auto bytes = pack_tape(tape);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    write_tape_ascii(out, tape);
  }
}

inline BitString load_tape(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open tape file " + path.string());
  if (path.extension() == ".bin") {
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return unpack_tape(bytes);
  }
  return read_tape_ascii(in);
}

}  // namespace bincover
