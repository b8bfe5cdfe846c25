// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Exact fixed-point geometry on the cyclic unit interval [0,1).
///
/// Every fraction in the library is an integer count of 2^-kFracBits units
/// held in an unsigned 128-bit word. Points live in [0, kOne) and wrap
/// modulo one; masses (probabilities, lengths) live in (0, kOne].

#ifndef CACD_UNIT_INTERVAL_HPP
#define CACD_UNIT_INTERVAL_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "cacd/error.hpp"

namespace cacd {

using u128 = unsigned __int128;

inline constexpr int kFracBits = 126;
inline constexpr u128 kOne = u128{1} << kFracBits;
inline constexpr u128 kMask = kOne - 1;

/// Probabilities and shifts are quantized to this coarser grid so that p/2
/// and the left/right images of segment boundaries stay exact.
inline constexpr int kGridBits = kFracBits - 1;
inline constexpr u128 kGridUnit = u128{1} << (kFracBits - kGridBits);

/// Longest codeword the construction admits (2 * kMaxCodeLength <= kFracBits).
inline constexpr int kMaxCodeLength = 63;

constexpr int bit_width(u128 v) noexcept {
  int w = 0;
  if (v >> 64) {
    w = 64;
    v >>= 64;
  }
  auto lo = static_cast<std::uint64_t>(v);
  while (lo) {
    ++w;
    lo >>= 1;
  }
  return w;
}

inline double to_double(u128 units) noexcept {
  auto hi = static_cast<std::uint64_t>(units >> 64);
  auto lo = static_cast<std::uint64_t>(units);
  return std::ldexp(static_cast<double>(hi), 64 - kFracBits) +
         std::ldexp(static_cast<double>(lo), -kFracBits);
}

/// Nearest grid value to a double in [0,1]. Values that round to zero stay zero.
inline u128 quantize(double v) {
  if (!(v >= 0.0) || v > 1.0) throw Error(Errc::InvalidArgument, "fraction outside [0,1]");
  // v * 2^kGridBits is an integer-valued double once v >= 2^-72; below that
  // the rounding below keeps the nearest grid point.
  double scaled = std::nearbyint(std::ldexp(v, kGridBits));
  return static_cast<u128>(scaled) * kGridUnit;
}

/// Round a unit count to the nearest grid multiple.
constexpr u128 snap_to_grid(u128 units) noexcept {
  return ((units + kGridUnit / 2) / kGridUnit) * kGridUnit;
}

namespace detail {

// Multiplies a fraction (< kOne) by ten, returning the integer digit and
// leaving the new fraction in place.
constexpr int times_ten(u128& frac) noexcept {
  u128 hi = frac >> 64;
  u128 lo = frac & ~std::uint64_t{0};
  u128 lo10 = lo * 10;
  u128 hi10 = hi * 10 + (lo10 >> 64);
  constexpr int kHiBits = kFracBits - 64;
  int digit = static_cast<int>(hi10 >> kHiBits);
  hi10 &= (u128{1} << kHiBits) - 1;
  frac = (hi10 << 64) | (lo10 & ~std::uint64_t{0});
  return digit;
}

}  // namespace detail

/// Exact decimal expansion of a fraction in [0,1]. At most kFracBits digits.
inline std::string to_decimal_exact(u128 units) {
  if (units >= kOne) return units == kOne ? "1" : throw Error(Errc::InvalidArgument, "fraction > 1");
  std::string out = "0.";
  u128 frac = units;
  do {
    out.push_back(static_cast<char>('0' + detail::times_ten(frac)));
  } while (frac != 0);
  return out;
}

/// Decimal rounded half-up to `places` digits, trailing zeros trimmed, at
/// least one fractional digit ("0.0", "0.25", "1.0").
inline std::string to_decimal(u128 units, int places = 10) {
  if (units > kOne) throw Error(Errc::InvalidArgument, "fraction > 1");
  std::string digits;
  int whole = units == kOne ? 1 : 0;
  u128 frac = units == kOne ? 0 : units;
  for (int i = 0; i <= places; ++i) digits.push_back(static_cast<char>('0' + detail::times_ten(frac)));
  bool round_up = digits.back() >= '5';
  digits.pop_back();
  for (int i = places - 1; round_up && i >= 0; --i) {
    if (digits[i] == '9') {
      digits[i] = '0';
    } else {
      ++digits[i];
      round_up = false;
    }
  }
  if (round_up) whole += 1;
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (digits.empty()) digits = "0";
  return std::to_string(whole) + "." + digits;
}

/// First `places` binary digits of a fraction, e.g. "0.0000110011".
inline std::string to_binary(u128 units, int places) {
  std::string out = units >= kOne ? "1." : "0.";
  units &= kMask;
  for (int i = 1; i <= places && i <= kFracBits; ++i) out.push_back((units >> (kFracBits - i)) & 1 ? '1' : '0');
  return out;
}

/// Parses a non-negative decimal string ("0.15", "1", ".5", "2.5e-3") into
/// the nearest grid value. The value must lie in [0,1].
inline u128 parse_fraction(std::string_view text) {
  auto fail = [&] { return Error(Errc::Parse, "bad fraction '" + std::string(text) + "'"); };
  std::string mantissa;
  int exponent = 0;
  std::size_t pos = 0;
  bool seen_point = false;
  bool any_digit = false;
  int point_at = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      mantissa.push_back(c);
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
      point_at = static_cast<int>(mantissa.size());
    } else {
      break;
    }
  }
  if (!any_digit) throw fail();
  if (!seen_point) point_at = static_cast<int>(mantissa.size());
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw fail();
    ++pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) neg = text[pos++] == '-';
    if (pos == text.size()) throw fail();
    for (; pos < text.size(); ++pos) {
      if (text[pos] < '0' || text[pos] > '9' || exponent > 10000) throw fail();
      exponent = exponent * 10 + (text[pos] - '0');
    }
    if (neg) exponent = -exponent;
  }
  point_at += exponent;
  // Integer part and fractional digits relative to the shifted point.
  std::string int_part;
  std::string frac_part;
  if (point_at <= 0) {
    frac_part = std::string(static_cast<std::size_t>(-point_at), '0') + mantissa;
  } else if (point_at >= static_cast<int>(mantissa.size())) {
    int_part = mantissa + std::string(static_cast<std::size_t>(point_at) - mantissa.size(), '0');
  } else {
    int_part = mantissa.substr(0, static_cast<std::size_t>(point_at));
    frac_part = mantissa.substr(static_cast<std::size_t>(point_at));
  }
  int whole = 0;
  for (char c : int_part) {
    whole = whole * 10 + (c - '0');
    if (whole > 1) throw Error(Errc::InvalidArgument, "fraction > 1: " + std::string(text));
  }
  // Binary expansion by repeated doubling of the decimal fraction digits.
  std::string digits = frac_part;
  u128 units = 0;
  auto next_bit = [&digits] {
    int carry = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      int d = (*it - '0') * 2 + carry;
      *it = static_cast<char>('0' + d % 10);
      carry = d / 10;
    }
    return carry;
  };
  for (int i = 0; i < kGridBits; ++i) units = (units << 1) | static_cast<u128>(next_bit());
  units += static_cast<u128>(next_bit());  // round half up
  units *= kGridUnit;
  if (whole == 1) {
    if (units != 0 && units != kOne) throw Error(Errc::InvalidArgument, "fraction > 1: " + std::string(text));
    units = kOne;
  }
  return units;
}

/// A point of the cycle [0,1). Arithmetic is modulo one.
class UnitPoint {
 public:
  constexpr UnitPoint() = default;
  constexpr explicit UnitPoint(u128 units) noexcept : units_(units & kMask) {}

  static UnitPoint from_double(double v) { return UnitPoint(quantize(v - std::floor(v))); }

  constexpr u128 units() const noexcept { return units_; }
  double to_double() const noexcept { return cacd::to_double(units_); }

  /// Bit k (1-based, most significant first) of the binary fraction.
  constexpr int bit(int k) const noexcept { return static_cast<int>((units_ >> (kFracBits - k)) & 1); }

  constexpr UnitPoint operator+(UnitPoint o) const noexcept { return UnitPoint(units_ + o.units_); }
  constexpr UnitPoint operator-(UnitPoint o) const noexcept { return UnitPoint(units_ - o.units_); }
  /// Advance by a mass (0 < m <= 1).
  constexpr UnitPoint advanced(u128 mass) const noexcept { return UnitPoint(units_ + mass); }

  constexpr auto operator<=>(const UnitPoint&) const = default;

 private:
  u128 units_ = 0;
};

/// Variable-length binary codeword, most significant bit first, length 0..64.
class BitString {
 public:
  static constexpr int kMaxLength = 64;

  constexpr BitString() = default;
  constexpr BitString(std::uint64_t bits, int length) : bits_(length == 64 ? bits : bits & ((std::uint64_t{1} << length) - 1)), length_(length) {
    if (length < 0 || length > kMaxLength) throw Error(Errc::InvalidArgument, "bit string length out of range");
  }

  static BitString parse(std::string_view s) {
    if (s.size() > kMaxLength) throw Error(Errc::Parse, "bit string too long");
    std::uint64_t bits = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw Error(Errc::Parse, "bad bit string '" + std::string(s) + "'");
      bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return BitString(bits, static_cast<int>(s.size()));
  }

  /// First `length` fractional bits of a point.
  static constexpr BitString prefix_of(UnitPoint p, int length) {
    if (length == 0) return {};
    return BitString(static_cast<std::uint64_t>(p.units() >> (kFracBits - length)), length);
  }

  constexpr int size() const noexcept { return length_; }
  constexpr bool empty() const noexcept { return length_ == 0; }
  constexpr std::uint64_t value() const noexcept { return bits_; }

  /// Bit k, 1-based from the most significant end.
  constexpr int operator[](int k) const noexcept { return static_cast<int>((bits_ >> (length_ - k)) & 1); }

  /// The last `len` bits.
  constexpr BitString suffix(int len) const { return BitString(bits_, len); }
  /// The first `len` bits.
  constexpr BitString prefix(int len) const { return len == 0 ? BitString() : BitString(bits_ >> (length_ - len), len); }

  constexpr bool is_prefix_of(const BitString& o) const noexcept {
    return length_ <= o.length_ && (length_ == 0 || (o.bits_ >> (o.length_ - length_)) == bits_);
  }

  /// The point 0.b1b2...bl000...
  constexpr UnitPoint as_point() const noexcept {
    if (length_ == 0) return {};
    return UnitPoint(static_cast<u128>(bits_) << (kFracBits - length_));
  }

  std::string str() const {
    std::string s;
    for (int k = 1; k <= length_; ++k) s.push_back((*this)[k] ? '1' : '0');
    return s;
  }

  constexpr bool operator==(const BitString&) const = default;

 private:
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

/// The point whose leading bits are `head` followed by `tail` (head ⊕ tail).
constexpr UnitPoint concat(const BitString& head, const BitString& tail) {
  if (head.size() + tail.size() > kFracBits) throw Error(Errc::PrecisionExceeded, "concatenation exceeds fraction width");
  return UnitPoint(head.as_point().units() | (tail.as_point().units() >> head.size()));
}

/// Half-open cyclic arc [start, start + length). A full-cycle arc has length kOne.
struct Segment {
  UnitPoint start;
  u128 length = 0;

  constexpr UnitPoint end() const noexcept { return start.advanced(length); }

  constexpr bool contains(UnitPoint y) const noexcept { return (y - start).units() < length; }

  /// True when the arc passes through 0 (its end lies cyclically before its start).
  constexpr bool wraps() const noexcept { return start.units() + length > kOne; }

  /// True when the two arcs share at least one point.
  constexpr bool intersects(const Segment& o) const noexcept {
    if (length == 0 || o.length == 0) return false;
    return contains(o.start) || o.contains(start);
  }

  /// True when every point of `inner` lies in this arc.
  constexpr bool contains(const Segment& inner) const noexcept {
    if (inner.length > length) return false;
    return (inner.start - start).units() + inner.length <= length;
  }

  constexpr bool operator==(const Segment&) const = default;
};

}  // namespace cacd

#endif  // CACD_UNIT_INTERVAL_HPP
