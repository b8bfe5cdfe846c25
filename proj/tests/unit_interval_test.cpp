// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "cacd/unit_interval.hpp"

namespace cacd {
namespace {

TEST(UnitIntervalTest, BitWidth) {
  EXPECT_EQ(bit_width(0), 0);
  EXPECT_EQ(bit_width(1), 1);
  EXPECT_EQ(bit_width(u128{1} << 64), 65);
  EXPECT_EQ(bit_width(kOne), kFracBits + 1);
  EXPECT_EQ(bit_width(kMask), kFracBits);
}

TEST(UnitIntervalTest, DecimalFormatting) {
  EXPECT_EQ(to_decimal(0), "0.0");
  EXPECT_EQ(to_decimal(kOne), "1.0");
  EXPECT_EQ(to_decimal(kOne / 4), "0.25");
  EXPECT_EQ(to_decimal(parse_fraction("0.1")), "0.1");
  EXPECT_EQ(to_decimal(parse_fraction("0.99999999999")), "1.0");
  EXPECT_EQ(to_decimal_exact(kOne / 8), "0.125");
  EXPECT_EQ(to_decimal_exact(kOne), "1");
}

TEST(UnitIntervalTest, BinaryFormatting) {
  EXPECT_EQ(to_binary(parse_fraction("0.05"), 10), "0.0000110011");
  EXPECT_EQ(to_binary(kOne / 2, 3), "0.100");
}

TEST(UnitIntervalTest, ParseFraction) {
  EXPECT_EQ(parse_fraction("0.5"), kOne / 2);
  EXPECT_EQ(parse_fraction(".5"), kOne / 2);
  EXPECT_EQ(parse_fraction("5e-1"), kOne / 2);
  EXPECT_EQ(parse_fraction("1"), kOne);
  EXPECT_EQ(parse_fraction("1.000"), kOne);
  EXPECT_EQ(parse_fraction("0"), 0);
  EXPECT_EQ(parse_fraction("0.25") % kGridUnit, 0);
  EXPECT_THROW(parse_fraction("1.5"), Error);
  EXPECT_THROW(parse_fraction("abc"), Error);
  EXPECT_THROW(parse_fraction("0.1x"), Error);
  EXPECT_THROW(parse_fraction(""), Error);
}

TEST(UnitIntervalTest, ExactDecimalRoundTripsOnTheGrid) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    u128 u = ((static_cast<u128>(rng()) << 64) | rng()) & kMask & ~(kGridUnit - 1);
    EXPECT_EQ(parse_fraction(to_decimal_exact(u)), u);
  }
}

TEST(UnitIntervalTest, QuantizeMatchesDecimalParse) {
  EXPECT_EQ(quantize(0.5), kOne / 2);
  EXPECT_EQ(quantize(1.0), kOne);
  EXPECT_THROW(quantize(-0.1), Error);
  EXPECT_NEAR(to_double(quantize(0.1)), 0.1, 1e-17);
}

TEST(UnitIntervalTest, PointsWrapModuloOne) {
  UnitPoint a(kOne - 1);
  UnitPoint b(2);
  EXPECT_EQ((a + b).units(), 1);
  EXPECT_EQ((b - a).units(), 3);
  EXPECT_EQ(UnitPoint(kOne).units(), 0);
  EXPECT_EQ(UnitPoint(kOne / 2).bit(1), 1);
  EXPECT_EQ(UnitPoint(kOne / 2).bit(2), 0);
}

TEST(UnitIntervalTest, BitStringBasics) {
  auto s = BitString::parse("1110");
  EXPECT_EQ(s.size(), 4);
  EXPECT_EQ(s.str(), "1110");
  EXPECT_EQ(s.suffix(2).str(), "10");
  EXPECT_EQ(s.prefix(3).str(), "111");
  EXPECT_EQ(s.suffix(0).size(), 0);
  EXPECT_TRUE(BitString::parse("11").is_prefix_of(s));
  EXPECT_FALSE(BitString::parse("10").is_prefix_of(s));
  EXPECT_TRUE(BitString().is_prefix_of(s));
  EXPECT_EQ(s.as_point().units(), kOne / 16 * 14);
  EXPECT_EQ(BitString::prefix_of(UnitPoint(kOne / 16 * 14), 4), s);
  EXPECT_THROW(BitString::parse("102"), Error);
}

TEST(UnitIntervalTest, ConcatPlacesHeadBits) {
  auto p = concat(BitString::parse("100"), BitString::parse("1110"));
  EXPECT_EQ(BitString::prefix_of(p, 7).str(), "1001110");
  EXPECT_EQ(p.units() & ((kOne >> 7) - 1), 0);
}

TEST(UnitIntervalTest, SegmentMembershipIsHalfOpenAndCyclic) {
  Segment s{UnitPoint(kOne / 4 * 3), kOne / 2};  // [0.75, 0.25)
  EXPECT_TRUE(s.wraps());
  EXPECT_TRUE(s.contains(UnitPoint(kOne / 4 * 3)));
  EXPECT_TRUE(s.contains(UnitPoint(0)));
  EXPECT_TRUE(s.contains(UnitPoint(kOne / 4 - 1)));
  EXPECT_FALSE(s.contains(UnitPoint(kOne / 4)));
  EXPECT_FALSE(s.contains(UnitPoint(kOne / 2)));
  EXPECT_EQ(s.end().units(), kOne / 4);

  Segment inner{UnitPoint(kOne / 8 * 7), kOne / 4};  // [0.875, 0.125)
  EXPECT_TRUE(s.contains(inner));
  EXPECT_FALSE(inner.contains(s));
  Segment touching{UnitPoint(kOne / 4), kOne / 8};
  EXPECT_FALSE(s.intersects(touching));
  EXPECT_TRUE(s.intersects(inner));
}

}  // namespace
}  // namespace cacd
