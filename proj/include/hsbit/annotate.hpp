#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "hsbit/scene.hpp"
#include "hsbit/spectral.hpp"
#include "hsbit/types.hpp"

namespace hsbit {
namespace detail {

// Otsu threshold over 256 bins of [lo, hi]. Returns the bin-center cut.
inline float otsu_threshold(const std::vector<float>& values, float lo, float hi) {
  constexpr int kBins = 256;
  std::array<int64_t, kBins> hist{};
  const float span = hi - lo;
  for (float v : values) {
    int b = static_cast<int>((v - lo) / span * (kBins - 1));
    b = std::clamp(b, 0, kBins - 1);
    hist[static_cast<size_t>(b)] += 1;
  }
  const int64_t total = static_cast<int64_t>(values.size());
  double sum_all = 0.0;
  for (int b = 0; b < kBins; ++b) sum_all += static_cast<double>(b) * hist[static_cast<size_t>(b)];

  // The between-class variance is flat across empty histogram gaps; taking
  // the middle of the plateau puts the cut mid-valley instead of hugging
  // the background mode.
  double best = -1.0;
  int best_first = kBins / 2, best_last = kBins / 2;
  int64_t w0 = 0;
  double sum0 = 0.0;
  for (int b = 0; b < kBins; ++b) {
    w0 += hist[static_cast<size_t>(b)];
    if (w0 == 0) continue;
    const int64_t w1 = total - w0;
    if (w1 == 0) break;
    sum0 += static_cast<double>(b) * hist[static_cast<size_t>(b)];
    const double m0 = sum0 / w0;
    const double m1 = (sum_all - sum0) / w1;
    const double between = static_cast<double>(w0) * w1 * (m0 - m1) * (m0 - m1);
    if (between > best) {
      best = between;
      best_first = b;
      best_last = b;
    } else if (between == best) {
      best_last = b;
    }
  }
  const float best_bin = 0.5f * static_cast<float>(best_first + best_last);
  return lo + (best_bin + 0.5f) * span / kBins;
}

inline std::vector<uint8_t> dilate3x3(const std::vector<uint8_t>& in, int h, int w) {
  std::vector<uint8_t> out(in.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!in[static_cast<size_t>(y) * w + x]) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx;
          if (xx < 0 || xx >= w) continue;
          out[static_cast<size_t>(yy) * w + xx] = 1;
        }
      }
    }
  }
  return out;
}

inline std::vector<uint8_t> erode3x3(const std::vector<uint8_t>& in, int h, int w) {
  std::vector<uint8_t> out(in.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool all = true;
      for (int dy = -1; dy <= 1 && all; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int yy = y + dy, xx = x + dx;
          // Out-of-image neighbors count as background.
          if (yy < 0 || yy >= h || xx < 0 || xx >= w ||
              !in[static_cast<size_t>(yy) * w + xx]) {
            all = false;
            break;
          }
        }
      }
      out[static_cast<size_t>(y) * w + x] = all ? 1 : 0;
    }
  }
  return out;
}

// 8-connected component labels; 0 = background, components numbered from 1.
inline int label_components(const std::vector<uint8_t>& fg, int h, int w,
                            std::vector<int32_t>& labels) {
  labels.assign(fg.size(), 0);
  int next = 0;
  std::vector<int32_t> stack;
  for (int64_t start = 0; start < static_cast<int64_t>(fg.size()); ++start) {
    if (!fg[static_cast<size_t>(start)] || labels[static_cast<size_t>(start)]) continue;
    ++next;
    stack.push_back(static_cast<int32_t>(start));
    labels[static_cast<size_t>(start)] = next;
    while (!stack.empty()) {
      const int32_t p = stack.back();
      stack.pop_back();
      const int y = p / w, x = p % w;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx;
          if (xx < 0 || xx >= w) continue;
          const int32_t q = yy * w + xx;
          if (fg[static_cast<size_t>(q)] && !labels[static_cast<size_t>(q)]) {
            labels[static_cast<size_t>(q)] = next;
            stack.push_back(q);
          }
        }
      }
    }
  }
  return next;
}

}  // namespace detail

struct AnnotateConfig {
  int closing_iterations = 1;
  // Foreground/background mean separation below this is treated as an
  // all-background image (a unimodal histogram would otherwise be split).
  float min_mode_separation = 0.05f;
};

// Blob detection + morphology annotation: Otsu on the band-mean image,
// one 3x3 closing, 8-connected labeling, then nearest-reference (L2)
// category per component against pure and evenly mixed signatures.
inline Mask annotate(const HyperCube& cube, const SpectralLibrary& reference,
                     const AnnotateConfig& config = {}) {
  if (cube.bands != reference.bands) {
    throw DimensionError("annotate: cube carries " + std::to_string(cube.bands) +
                         " bands, library " + std::to_string(reference.bands));
  }
  const int h = cube.height, w = cube.width;
  Mask out(h, w);

  // Band-mean image.
  std::vector<float> mean(static_cast<size_t>(cube.pixels()));
  for (int64_t p = 0; p < cube.pixels(); ++p) {
    double acc = 0.0;
    const float* px = cube.data.data() + p * cube.bands;
    for (int b = 0; b < cube.bands; ++b) acc += px[b];
    mean[static_cast<size_t>(p)] = static_cast<float>(acc / cube.bands);
  }
  float lo = mean[0], hi = mean[0];
  for (float v : mean) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo < config.min_mode_separation) return out;  // nothing but background

  const float cut = detail::otsu_threshold(mean, lo, hi);
  std::vector<uint8_t> fg(mean.size());
  for (size_t i = 0; i < mean.size(); ++i) fg[i] = mean[i] > cut ? 1 : 0;

  for (int it = 0; it < config.closing_iterations; ++it) {
    fg = detail::erode3x3(detail::dilate3x3(fg, h, w), h, w);
  }

  std::vector<int32_t> labels;
  const int n_components = detail::label_components(fg, h, w, labels);
  if (n_components == 0) return out;

  // Component mean spectra.
  std::vector<std::vector<double>> comp_sum(static_cast<size_t>(n_components),
                                            std::vector<double>(static_cast<size_t>(cube.bands), 0.0));
  std::vector<int64_t> comp_n(static_cast<size_t>(n_components), 0);
  for (int64_t p = 0; p < cube.pixels(); ++p) {
    const int32_t l = labels[static_cast<size_t>(p)];
    if (!l) continue;
    auto& acc = comp_sum[static_cast<size_t>(l - 1)];
    const float* px = cube.data.data() + p * cube.bands;
    for (int b = 0; b < cube.bands; ++b) acc[static_cast<size_t>(b)] += px[b];
    comp_n[static_cast<size_t>(l - 1)] += 1;
  }

  // Candidate references: the seven non-background categories with mixed
  // spectra taken at the even split.
  std::array<std::vector<float>, kNumCategories> refs;
  for (int c = 1; c < kNumCategories; ++c) refs[static_cast<size_t>(c)] = reference.category_reference(c);

  std::vector<uint8_t> comp_cat(static_cast<size_t>(n_components), 0);
  for (int c = 0; c < n_components; ++c) {
    if (comp_n[static_cast<size_t>(c)] == 0) continue;
    std::vector<float> m(static_cast<size_t>(cube.bands));
    for (int b = 0; b < cube.bands; ++b) {
      m[static_cast<size_t>(b)] = static_cast<float>(comp_sum[static_cast<size_t>(c)][static_cast<size_t>(b)] /
                                                     static_cast<double>(comp_n[static_cast<size_t>(c)]));
    }
    double best = 1e300;
    int best_cat = 1;
    for (int cat = 1; cat < kNumCategories; ++cat) {
      const double dist = signature_distance(m, refs[static_cast<size_t>(cat)]);
      if (dist < best) {
        best = dist;
        best_cat = cat;
      }
    }
    comp_cat[static_cast<size_t>(c)] = static_cast<uint8_t>(best_cat);
  }

  for (int64_t p = 0; p < cube.pixels(); ++p) {
    const int32_t l = labels[static_cast<size_t>(p)];
    if (l) out.values[static_cast<size_t>(p)] = comp_cat[static_cast<size_t>(l - 1)];
  }
  return out;
}

}  // namespace hsbit
