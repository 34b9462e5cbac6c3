#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hsbit/common.hpp"

namespace hsbit {

// Primary polymer classes. Each owns one bit of the per-pixel label.
constexpr int kNumPrimary = 3;
constexpr int kNumCategories = 1 << kNumPrimary;  // 8 including background

enum Polymer : int { PP = 0, PE = 1, PET = 2 };

// Per-pixel multi-label: bit i set means primary class i is present.
// All bits clear denotes background.
struct Bitfield {
  uint8_t bits = 0;

  constexpr Bitfield() = default;
  constexpr explicit Bitfield(uint8_t b) : bits(b) {}

  bool test(int i) const { return (bits >> i) & 1u; }
  void set(int i) { bits = static_cast<uint8_t>(bits | (1u << i)); }
  bool background() const { return bits == 0; }
  int count() const { return (bits & 1) + ((bits >> 1) & 1) + ((bits >> 2) & 1); }

  // Powerset category index: the unsigned value of the bit vector.
  int index() const { return bits; }

  // Prints the highest bit first, so {PP, PE} renders as "011".
  std::string to_string() const {
    std::string s(kNumPrimary, '0');
    for (int i = 0; i < kNumPrimary; ++i) {
      if (test(i)) s[static_cast<size_t>(kNumPrimary - 1 - i)] = '1';
    }
    return s;
  }

  friend bool operator==(const Bitfield& a, const Bitfield& b) { return a.bits == b.bits; }
  friend bool operator!=(const Bitfield& a, const Bitfield& b) { return a.bits != b.bits; }
};

inline Bitfield encode(const std::vector<int>& classes) {
  Bitfield b;
  for (int c : classes) {
    if (c < 0 || c >= kNumPrimary) {
      throw UsageError("encode: class id " + std::to_string(c) + " outside [0, " +
                       std::to_string(kNumPrimary) + ")");
    }
    b.set(c);
  }
  return b;
}

inline Bitfield encode(std::initializer_list<int> classes) {
  return encode(std::vector<int>(classes));
}

inline int powerset_to_index(const Bitfield& b) { return b.index(); }

inline Bitfield index_to_bitfield(int index) {
  if (index < 0 || index >= kNumCategories) {
    throw UsageError("index_to_bitfield: index " + std::to_string(index) +
                     " outside [0, " + std::to_string(kNumCategories) + ")");
  }
  return Bitfield(static_cast<uint8_t>(index));
}

// Raw per-bit model scores, TanH outputs in [-1, 1].
struct ScoreVector {
  std::array<float, kNumPrimary> scores{};
};

// Threshold decoding: bit i is active iff scores[i] > threshold (strict).
inline Bitfield decode(const ScoreVector& s, float threshold = 0.5f) {
  Bitfield b;
  for (int i = 0; i < kNumPrimary; ++i) {
    if (s.scores[static_cast<size_t>(i)] > threshold) b.set(i);
  }
  return b;
}

// Regression target for the TanH head: +1 for an active bit, -1 otherwise.
inline ScoreVector bitfield_to_target(const Bitfield& b) {
  ScoreVector s;
  for (int i = 0; i < kNumPrimary; ++i) {
    s.scores[static_cast<size_t>(i)] = b.test(i) ? 1.0f : -1.0f;
  }
  return s;
}

inline const char* category_name(int index) {
  static const char* names[kNumCategories] = {"Background", "PP",     "PE",     "PP+PE",
                                              "PET",        "PP+PET", "PE+PET", "PP+PE+PET"};
  if (index < 0 || index >= kNumCategories) {
    throw UsageError("category_name: index " + std::to_string(index) + " outside [0, 8)");
  }
  return names[index];
}

// Row order used by reports: background, primaries, then overlaps.
constexpr std::array<int, kNumCategories> kCategoryDisplayOrder = {0, 1, 2, 4, 3, 5, 6, 7};

}  // namespace hsbit
