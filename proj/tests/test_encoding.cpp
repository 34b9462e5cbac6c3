#include <gtest/gtest.h>

#include "hsbit/encoding.hpp"
#include "hsbit/types.hpp"

using namespace hsbit;

TEST(Encoding, TableCodes) {
  EXPECT_EQ(encode({PP, PE}).to_string(), "011");
  EXPECT_EQ(encode({}).to_string(), "000");
  EXPECT_EQ(encode({PP, PE, PET}).to_string(), "111");
  EXPECT_EQ(encode({PE, PET}).to_string(), "110");
  EXPECT_EQ(encode({PP, PET}).to_string(), "101");
  EXPECT_EQ(encode({PET}).to_string(), "100");
  EXPECT_TRUE(encode({}).background());
}

TEST(Encoding, EncodeRejectsOutOfRangeIds) {
  EXPECT_THROW(encode({3}), UsageError);
  EXPECT_THROW(encode({-1}), UsageError);
}

TEST(Encoding, DecodeThreshold) {
  ScoreVector s{{0.9f, 0.8f, -0.7f}};
  EXPECT_EQ(decode(s, 0.5f).to_string(), "011");

  ScoreVector all_low{{-1.0f, -1.0f, -1.0f}};
  EXPECT_EQ(decode(all_low, 0.5f), Bitfield(0));

  // Strict inequality at the threshold.
  ScoreVector boundary{{0.5f, 0.5000001f, 0.4999999f}};
  const auto b = decode(boundary, 0.5f);
  EXPECT_FALSE(b.test(0));
  EXPECT_TRUE(b.test(1));
  EXPECT_FALSE(b.test(2));
}

TEST(Encoding, TargetsAndRoundtrip) {
  const auto t = bitfield_to_target(encode({PP, PE}));
  EXPECT_FLOAT_EQ(t.scores[0], 1.0f);
  EXPECT_FLOAT_EQ(t.scores[1], 1.0f);
  EXPECT_FLOAT_EQ(t.scores[2], -1.0f);

  EXPECT_EQ(index_to_bitfield(0).to_string(), "000");
  EXPECT_THROW(index_to_bitfield(8), UsageError);

  for (int i = 0; i < kNumCategories; ++i) {
    const auto b = index_to_bitfield(i);
    EXPECT_EQ(powerset_to_index(b), i);
    // Ideal-score roundtrip through the decoder.
    EXPECT_EQ(decode(bitfield_to_target(b), 0.5f), b);
  }
}

TEST(Encoding, DecodeMonotone) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  for (int trial = 0; trial < 200; ++trial) {
    ScoreVector s{{dist(rng), dist(rng), dist(rng)}};
    const auto before = decode(s, 0.5f);
    const int which = static_cast<int>(rng() % 3);
    ScoreVector raised = s;
    auto& v = raised.scores[static_cast<size_t>(which)];
    v = std::min(1.0f, v + std::uniform_real_distribution<float>(0.0f, 0.5f)(rng));
    const auto after = decode(raised, 0.5f);
    for (int i = 0; i < kNumPrimary; ++i) {
      if (before.test(i)) {
        EXPECT_TRUE(after.test(i));
      }
    }
  }
}

TEST(Encoding, MaskConversions) {
  Mask m(2, 2);
  m.at(0, 0) = 6;  // PE+PET
  EXPECT_EQ(m.bits_at(0, 0).to_string(), "110");

  Mask bg(3, 3);
  for (auto v : bg.values) EXPECT_EQ(v, 0);

  // One-hot raster roundtrip over a random mask.
  std::mt19937_64 rng(5);
  Mask r(6, 7);
  for (auto& v : r.values) v = static_cast<uint8_t>(rng() % kNumCategories);
  EXPECT_EQ(onehot_to_mask(mask_to_onehot(r)), r);

  // Targets encode +1 on active bits.
  Mask single(1, 1);
  single.at(0, 0) = 3;  // PP+PE
  auto t = mask_to_targets(single);
  EXPECT_FLOAT_EQ(t->data[0], 1.0f);
  EXPECT_FLOAT_EQ(t->data[1], 1.0f);
  EXPECT_FLOAT_EQ(t->data[2], -1.0f);
}

TEST(Encoding, CategoryNames) {
  EXPECT_STREQ(category_name(0), "Background");
  EXPECT_STREQ(category_name(3), "PP+PE");
  EXPECT_STREQ(category_name(6), "PE+PET");
  EXPECT_STREQ(category_name(7), "PP+PE+PET");
}
