// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// The continuous graph on [0,1): left(x) = x/2, right(x) = (x+1)/2,
/// backward(x) = 2x mod 1, segment images and the greedy walk function.

#ifndef CACD_CONTINUUM_HPP
#define CACD_CONTINUUM_HPP

#include <array>
#include <cstddef>

#include "cacd/unit_interval.hpp"

namespace cacd {

/// Prepends a 0 bit. The lowest fraction bit is discarded.
constexpr UnitPoint left(UnitPoint x) noexcept { return UnitPoint(x.units() >> 1); }

/// Prepends a 1 bit. The lowest fraction bit is discarded.
constexpr UnitPoint right(UnitPoint x) noexcept { return UnitPoint((x.units() >> 1) | (kOne >> 1)); }

/// Drops the most significant bit.
constexpr UnitPoint backward(UnitPoint x) noexcept { return UnitPoint(x.units() << 1); }

/// Up to two disjoint arcs; the image of a segment that straddles 0 splits.
class ArcSet {
 public:
  constexpr void add(Segment s) noexcept {
    if (s.length != 0) arcs_[count_++] = s;
  }
  constexpr std::size_t size() const noexcept { return count_; }
  constexpr const Segment& operator[](std::size_t i) const noexcept { return arcs_[i]; }
  constexpr const Segment* begin() const noexcept { return arcs_.data(); }
  constexpr const Segment* end() const noexcept { return arcs_.data() + count_; }

  constexpr u128 measure() const noexcept {
    u128 m = 0;
    for (const auto& a : *this) m += a.length;
    return m;
  }

  constexpr bool contains(UnitPoint y) const noexcept {
    for (const auto& a : *this)
      if (a.contains(y)) return true;
    return false;
  }

 private:
  std::array<Segment, 2> arcs_{};
  std::size_t count_ = 0;
};

namespace detail {

// Applies `map` to the non-wrapping pieces of s: [a, b) with b <= 1 maps to
// [map(a), map(a) + (b-a)/2) for both halving maps.
template <class Map>
constexpr ArcSet halve_image(const Segment& s, Map map) noexcept {
  ArcSet out;
  if (s.length >= kOne) {
    out.add(Segment{map(UnitPoint{}), kOne / 2});
    return out;
  }
  if (!s.wraps()) {
    out.add(Segment{map(s.start), s.length / 2});
    return out;
  }
  u128 head = kOne - s.start.units();  // [start, 1)
  out.add(Segment{map(s.start), head / 2});
  out.add(Segment{map(UnitPoint{}), (s.length - head) / 2});  // [0, end)
  return out;
}

}  // namespace detail

constexpr ArcSet image_left(const Segment& s) noexcept { return detail::halve_image(s, left); }
constexpr ArcSet image_right(const Segment& s) noexcept { return detail::halve_image(s, right); }

/// The point reached from y by applying right/left for each bit of sigma,
/// least significant bit first. The result starts with sigma.
inline UnitPoint walk_steps(const BitString& sigma, UnitPoint y) noexcept {
  for (int k = sigma.size(); k >= 1; --k) y = sigma[k] ? right(y) : left(y);
  return y;
}

/// Same as walk_steps in one shift.
constexpr UnitPoint walk(const BitString& sigma, UnitPoint y) noexcept {
  if (sigma.empty()) return y;
  return UnitPoint(sigma.as_point().units() | (y.units() >> sigma.size()));
}

}  // namespace cacd

#endif  // CACD_CONTINUUM_HPP
