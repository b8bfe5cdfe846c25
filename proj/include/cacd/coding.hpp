// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Shannon-Fano-Elias codes over exact distributions.
///
/// Symbol i gets the midpoint Fbar_i = F_{i-1} + p_i/2 of its CDF step and
/// the codeword formed by the first l_i = ceil(log2(1/p_i)) + 1 bits of
/// (Fbar_i + shift) mod 1. The code segment [cw_i, cw_i + 2^-l_i) then lies
/// inside the symbol's step, so codewords are prefix-free.

#ifndef CACD_CODING_HPP
#define CACD_CODING_HPP

#include <cstddef>
#include <vector>

#include "cacd/demand.hpp"
#include "cacd/error.hpp"
#include "cacd/unit_interval.hpp"

namespace cacd {

/// Cumulative sums F_1..F_n; F_n == kOne.
inline std::vector<u128> cdf(const Distribution& p) {
  std::vector<u128> f;
  f.reserve(p.size());
  u128 acc = 0;
  for (const Prob& q : p.probs()) {
    acc += q.units();
    f.push_back(acc);
  }
  return f;
}

/// Fbar_i for a 0-based index i.
inline UnitPoint midpoint(const Distribution& p, std::size_t i) {
  if (i >= p.size()) throw Error(Errc::InvalidArgument, "symbol index out of range");
  u128 before = 0;
  for (std::size_t j = 0; j < i; ++j) before += p[j].units();
  u128 half = p[i].units() / 2;
  return UnitPoint(before + half);
}

/// ceil(log2(1/p)) + 1, exactly. With p = u * 2^-W, ceil(log2(2^W/u)) equals
/// W + 1 - bit_width(u) for every u in [1, 2^W].
constexpr int code_length(Prob p) noexcept { return kFracBits + 2 - bit_width(p.units()); }

inline BitString codeword(UnitPoint midpoint, UnitPoint shift, int length) {
  if (length < 1 || length > BitString::kMaxLength) throw Error(Errc::PrecisionExceeded, "code length out of range");
  return BitString::prefix_of(midpoint + shift, length);
}

/// [cw, cw + 2^-l): every point having cw as a prefix.
inline Segment code_segment(const BitString& cw) {
  return Segment{cw.as_point(), u128{1} << (kFracBits - cw.size())};
}

/// L_SFE = sum p_i * l_i, in bits.
inline double expected_code_length(const Distribution& p) {
  double l = 0.0;
  for (const Prob& q : p.probs()) l += q.value() * code_length(q);
  return l;
}

struct CodeEntry {
  Prob p;
  u128 cumulative;  // F_i, exact; kOne for the last entry
  UnitPoint midpoint;
  int length = 0;
  BitString cw;
};

/// Per-symbol code data for a distribution and a shift U_I.
class CodeTable {
 public:
  CodeTable() = default;

  CodeTable(const Distribution& p, UnitPoint shift) {
    if (p.size() < 1) throw Error(Errc::InvalidDistribution, "empty distribution");
    entries_.reserve(p.size());
    u128 before = 0;
    for (const Prob& q : p.probs()) {
      CodeEntry e{q, before + q.units(), UnitPoint(before + q.units() / 2), code_length(q), {}};
      if (e.length > kMaxCodeLength) throw Error(Errc::PrecisionExceeded, "probability below 2^-62");
      e.cw = codeword(e.midpoint, shift, e.length);
      entries_.push_back(e);
      before += q.units();
    }
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const CodeEntry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  int max_length() const noexcept {
    int m = 0;
    for (const auto& e : entries_) m = std::max(m, e.length);
    return m;
  }

 private:
  std::vector<CodeEntry> entries_;
};

}  // namespace cacd

#endif  // CACD_CODING_HPP
