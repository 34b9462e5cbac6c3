#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hsbit/encoding.hpp"
#include "hsbit/types.hpp"

namespace hsbit {

// Pixel-count confusion tallies and derived scores for one powerset category.
struct CategoryMetrics {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  void finalize() {
    precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    f1 = f1_score(precision, recall);
  }

  static double f1_score(double precision, double recall) {
    const double denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
  }
};

struct MacroAverage {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct EvalResult {
  std::array<CategoryMetrics, kNumCategories> per_category;
  MacroAverage macro;
  int64_t pixels = 0;
};

// Pools per-pixel counts; call finalize_eval once all scenes are in.
inline void accumulate_confusion(const Mask& truth, const Mask& prediction,
                                 std::array<CategoryMetrics, kNumCategories>& counts) {
  if (truth.height != prediction.height || truth.width != prediction.width) {
    throw DimensionError("accumulate_confusion: mask sizes differ");
  }
  for (int64_t p = 0; p < truth.pixels(); ++p) {
    const uint8_t t = truth.values[static_cast<size_t>(p)];
    const uint8_t q = prediction.values[static_cast<size_t>(p)];
    if (t == q) {
      counts[t].tp += 1;
    } else {
      counts[t].fn += 1;
      counts[q].fp += 1;
    }
  }
}

// Unweighted mean over all categories.
inline MacroAverage macro_average(const std::array<CategoryMetrics, kNumCategories>& metrics) {
  MacroAverage avg;
  for (const auto& m : metrics) {
    avg.f1 += m.f1;
    avg.precision += m.precision;
    avg.recall += m.recall;
  }
  avg.f1 /= kNumCategories;
  avg.precision /= kNumCategories;
  avg.recall /= kNumCategories;
  return avg;
}

inline EvalResult finalize_eval(std::array<CategoryMetrics, kNumCategories> counts) {
  EvalResult out;
  out.per_category = counts;
  for (auto& m : out.per_category) {
    out.pixels += m.tp + m.fn;
    m.finalize();
  }
  out.macro = macro_average(out.per_category);
  return out;
}

// Recall breakdown on overlap pixels: how often the exact overlap category
// is predicted versus how often each constituent bit fires at all.
struct OverlapCategoryComposition {
  int category = 0;
  int64_t pixels = 0;
  int64_t exact = 0;  // prediction equals the overlap category
  // Per primary bit: pixels where that true constituent bit is active.
  std::array<int64_t, kNumPrimary> bit_hits{};
  // Prediction is a non-empty subset of the true constituent set.
  int64_t nonempty_subset = 0;

  double exact_recall() const {
    return pixels > 0 ? static_cast<double>(exact) / static_cast<double>(pixels) : 0.0;
  }
  double bit_recall(int bit) const {
    return pixels > 0 ? static_cast<double>(bit_hits[static_cast<size_t>(bit)]) /
                            static_cast<double>(pixels)
                      : 0.0;
  }
  // Mean recall over the category's constituent bits.
  double constituent_bit_recall() const {
    if (pixels == 0) return 0.0;
    const Bitfield b = index_to_bitfield(category);
    double acc = 0.0;
    int n = 0;
    for (int i = 0; i < kNumPrimary; ++i) {
      if (!b.test(i)) continue;
      acc += bit_recall(i);
      ++n;
    }
    return n > 0 ? acc / n : 0.0;
  }
  double subset_rate() const {
    return pixels > 0 ? static_cast<double>(nonempty_subset) / static_cast<double>(pixels) : 0.0;
  }
};

struct OverlapComposition {
  // Indexed by category; entries with pixels == 0 are absent categories.
  std::array<OverlapCategoryComposition, kNumCategories> categories;
  // Pooled over all two-way overlap pixels.
  int64_t twoway_pixels = 0;
  int64_t twoway_exact = 0;
  int64_t twoway_bit_hits = 0;  // over (pixel, true bit) pairs

  double twoway_exact_recall() const {
    return twoway_pixels > 0 ? static_cast<double>(twoway_exact) / static_cast<double>(twoway_pixels)
                             : 0.0;
  }
  double twoway_bit_recall() const {
    return twoway_pixels > 0
               ? static_cast<double>(twoway_bit_hits) / static_cast<double>(2 * twoway_pixels)
               : 0.0;
  }
};

inline void accumulate_overlap_composition(const Mask& truth, const Mask& prediction,
                                           OverlapComposition& acc) {
  if (truth.height != prediction.height || truth.width != prediction.width) {
    throw DimensionError("accumulate_overlap_composition: mask sizes differ");
  }
  for (int c = 0; c < kNumCategories; ++c) acc.categories[static_cast<size_t>(c)].category = c;
  for (int64_t p = 0; p < truth.pixels(); ++p) {
    const Bitfield t(truth.values[static_cast<size_t>(p)]);
    if (t.count() < 2) continue;  // overlap pixels only
    const Bitfield q(prediction.values[static_cast<size_t>(p)]);
    auto& cat = acc.categories[static_cast<size_t>(t.index())];
    cat.pixels += 1;
    if (q == t) cat.exact += 1;
    int hits = 0;
    for (int i = 0; i < kNumPrimary; ++i) {
      if (t.test(i) && q.test(i)) {
        cat.bit_hits[static_cast<size_t>(i)] += 1;
        ++hits;
      }
    }
    const bool subset = !q.background() && (q.bits & ~t.bits) == 0;
    if (subset) cat.nonempty_subset += 1;
    if (t.count() == 2) {
      acc.twoway_pixels += 1;
      acc.twoway_bit_hits += hits;
      if (q == t) acc.twoway_exact += 1;
    }
  }
}

}  // namespace hsbit
