#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hsbit/common.hpp"
#include "hsbit/encoding.hpp"
#include "hsbit/spectral.hpp"
#include "hsbit/types.hpp"

namespace hsbit {

// Blob counts per powerset category (index 0, background, must stay 0).
using BlobCounts = std::array<int, kNumCategories>;

// Default composition mirrors the reference dataset statistics:
// PP 8, PE 8, PET 9, PP+PE 2, PP+PET 3, PE+PET 3, PP+PE+PET 3.
inline BlobCounts default_blob_counts() { return {0, 8, 8, 2, 9, 3, 3, 3}; }

// Primary-only composition used for the extra training blobs: 8 PP, 8 PE, 7 PET.
inline BlobCounts primary_blob_counts() { return {0, 8, 8, 0, 7, 0, 0, 0}; }

struct SceneConfig {
  int height = 240;
  int width = 270;
  int bands = 224;
  BlobCounts blob_counts = default_blob_counts();
  float radius_min = 8.0f;
  float radius_max = 14.0f;
  float beta_lo = 0.35f;
  float beta_hi = 0.65f;
  // Blob-free border; the leading/trailing background margins that the
  // slicing step later removes.
  int margin = 14;
  // Minimum Chebyshev gap between blobs so annotation cannot merge them.
  int min_gap = 4;
  uint64_t seed = 0;
  // Per-category starting offset for the left/middle/right placement
  // rotation; lets a multi-scene dataset cover every strip with every
  // category even when per-scene counts are below 3. Staggered defaults
  // keep the first blob of each category off the same strip.
  std::array<uint8_t, kNumCategories> placement_phase = {0, 1, 2, 0, 0, 1, 2, 1};

  void validate() const {
    if (height < 32 || width < 32) throw ConfigError("scene: image extents must be >= 32");
    if (bands < 1) throw ConfigError("scene: bands must be >= 1");
    if (blob_counts[0] != 0) throw ConfigError("scene: background cannot have blobs");
    for (int c : blob_counts) {
      if (c < 0) throw ConfigError("scene: blob counts must be >= 0");
    }
    if (!(radius_min >= 2.0f && radius_max >= radius_min)) {
      throw ConfigError("scene: flake radius range invalid");
    }
    if (!(beta_lo > 0.0f && beta_hi < 1.0f && beta_lo <= beta_hi)) {
      throw ConfigError("scene: mixing range must lie inside (0, 1)");
    }
    if (margin < 0 || 2 * margin >= width || 2 * margin >= height) {
      throw ConfigError("scene: margin too large for image");
    }
  }
};

struct BlobRecord {
  Bitfield category;
  // Convex mixing weights over the primary classes (zero for absent bits).
  std::array<float, kNumPrimary> weights{};
  std::vector<int32_t> pixels;  // flat y*width + x
  int center_y = 0;
  int center_x = 0;
};

struct LabeledScene {
  HyperCube cube;
  Mask truth;
  std::vector<BlobRecord> blobs;

  std::array<int64_t, kNumCategories> category_pixel_counts() const {
    std::array<int64_t, kNumCategories> counts{};
    for (uint8_t v : truth.values) counts[v] += 1;
    return counts;
  }
};

namespace detail {

struct BlobShape {
  // Convex polygon vertices in scene coordinates (CCW).
  std::vector<std::pair<double, double>> poly;

  bool contains(double x, double y) const {
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
      const auto& a = poly[i];
      const auto& b = poly[(i + 1) % n];
      const double cross = (b.first - a.first) * (y - a.second) -
                           (b.second - a.second) * (x - a.first);
      if (cross < 0.0) return false;
    }
    return true;
  }
};

// Random convex flake outline: points on a jittered ellipse, convexified by
// a monotone-chain hull. Ellipses fall out naturally when jitter is small.
inline BlobShape random_flake(std::mt19937_64& rng, double cx, double cy, double r_lo,
                              double r_hi) {
  std::uniform_real_distribution<double> radius(r_lo, r_hi);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<int> nverts(12, 18);
  std::uniform_real_distribution<double> jitter(0.82, 1.0);

  const double rx = radius(rng), ry = radius(rng), theta = angle(rng);
  const int n = nverts(rng);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    const double j = jitter(rng);
    const double ex = rx * j * std::cos(a), ey = ry * j * std::sin(a);
    pts.emplace_back(cx + ex * std::cos(theta) - ey * std::sin(theta),
                     cy + ex * std::sin(theta) + ey * std::cos(theta));
  }
  // Monotone chain convex hull, CCW.
  std::sort(pts.begin(), pts.end());
  auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                  const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return BlobShape{std::move(hull)};
}

inline std::vector<int32_t> rasterize(const BlobShape& shape, int height, int width) {
  double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
  for (const auto& [x, y] : shape.poly) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  std::vector<int32_t> pixels;
  const int ys = std::max(0, static_cast<int>(std::floor(y0)));
  const int ye = std::min(height - 1, static_cast<int>(std::ceil(y1)));
  const int xs = std::max(0, static_cast<int>(std::floor(x0)));
  const int xe = std::min(width - 1, static_cast<int>(std::ceil(x1)));
  for (int y = ys; y <= ye; ++y) {
    for (int x = xs; x <= xe; ++x) {
      if (shape.contains(x + 0.5, y + 0.5)) {
        pixels.push_back(static_cast<int32_t>(y) * width + x);
      }
    }
  }
  return pixels;
}

}  // namespace detail

// Generates one scene: convex flakes painted with pure or convex-mixed
// signatures, per-pixel illumination jitter, per-band additive noise, and an
// exact per-pixel bitfield truth mask.
inline LabeledScene generate_scene(const SceneConfig& config, const SpectralLibrary& library) {
  config.validate();
  if (library.bands != config.bands) {
    throw DimensionError("generate_scene: library carries " + std::to_string(library.bands) +
                         " bands, scene wants " + std::to_string(config.bands));
  }

  LabeledScene scene;
  scene.cube = HyperCube(config.height, config.width, config.bands);
  scene.truth = Mask(config.height, config.width);

  // Background fill.
  for (int64_t p = 0; p < scene.cube.pixels(); ++p) {
    std::copy_n(library.background.data(), config.bands,
                scene.cube.data.data() + p * config.bands);
  }

  std::mt19937_64 place_rng(mix_seed(config.seed, 0x706c6163));
  std::vector<uint8_t> occupied(static_cast<size_t>(config.height) * config.width, 0);

  const int inner_w = config.width - 2 * config.margin;
  const int strip_w = inner_w / 3;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double rmax = config.radius_max;
  const double lo_y = config.margin + rmax;
  const double hi_y = config.height - config.margin - rmax;
  const double interior_lo_x = config.margin + rmax;
  const double interior_hi_x = config.width - config.margin - rmax;
  if (interior_hi_x <= interior_lo_x || hi_y <= lo_y) {
    throw ConfigError("generate_scene: flakes of radius " + std::to_string(config.radius_max) +
                      " do not fit inside the margins");
  }

  auto try_place = [&](int category, int strip) -> bool {
    // Prefer the category's rotation strip; fall back to anywhere in the
    // interior when the strip is crowded or too narrow.
    const double strip_lo_x = config.margin + strip * strip_w + rmax;
    const double strip_hi_x = config.margin + (strip + 1) * strip_w - rmax;
    const bool strip_feasible = strip_hi_x > strip_lo_x;
    for (int attempt = 0; attempt < 400; ++attempt) {
      const bool in_strip = strip_feasible && attempt < 200;
      const double lo_x = in_strip ? strip_lo_x : interior_lo_x;
      const double hi_x = in_strip ? strip_hi_x : interior_hi_x;
      const double cx = lo_x + unit(place_rng) * (hi_x - lo_x);
      const double cy = lo_y + unit(place_rng) * (hi_y - lo_y);
      auto shape = detail::random_flake(place_rng, cx, cy, config.radius_min, config.radius_max);
      auto pixels = detail::rasterize(shape, config.height, config.width);
      if (pixels.size() < 9) continue;

      bool clash = false;
      for (int32_t p : pixels) {
        const int y = p / config.width, x = p % config.width;
        for (int dy = -config.min_gap; dy <= config.min_gap && !clash; ++dy) {
          const int yy = y + dy;
          if (yy < 0 || yy >= config.height) continue;
          for (int dx = -config.min_gap; dx <= config.min_gap; ++dx) {
            const int xx = x + dx;
            if (xx < 0 || xx >= config.width) continue;
            if (occupied[static_cast<size_t>(yy) * config.width + xx]) {
              clash = true;
              break;
            }
          }
        }
        if (clash) break;
      }
      if (clash) continue;

      BlobRecord blob;
      blob.category = index_to_bitfield(category);
      blob.center_y = static_cast<int>(cy);
      blob.center_x = static_cast<int>(cx);
      blob.pixels = std::move(pixels);

      // Convex mixing weights for the constituents.
      const int nbits = blob.category.count();
      if (nbits == 1) {
        for (int c = 0; c < kNumPrimary; ++c) {
          blob.weights[static_cast<size_t>(c)] = blob.category.test(c) ? 1.0f : 0.0f;
        }
      } else if (nbits == 2) {
        std::uniform_real_distribution<double> beta(config.beta_lo, config.beta_hi);
        const float b = static_cast<float>(beta(place_rng));
        bool first = true;
        for (int c = 0; c < kNumPrimary; ++c) {
          if (!blob.category.test(c)) continue;
          blob.weights[static_cast<size_t>(c)] = first ? b : 1.0f - b;
          first = false;
        }
      } else {
        std::uniform_real_distribution<double> beta(config.beta_lo, config.beta_hi);
        std::array<double, kNumPrimary> raw{};
        double total = 0.0;
        for (int c = 0; c < kNumPrimary; ++c) {
          raw[static_cast<size_t>(c)] = beta(place_rng);
          total += raw[static_cast<size_t>(c)];
        }
        for (int c = 0; c < kNumPrimary; ++c) {
          blob.weights[static_cast<size_t>(c)] = static_cast<float>(raw[static_cast<size_t>(c)] / total);
        }
      }

      // Paint spectrum and truth; mark occupancy.
      std::vector<float> spectrum(static_cast<size_t>(config.bands), 0.0f);
      for (int c = 0; c < kNumPrimary; ++c) {
        const float w = blob.weights[static_cast<size_t>(c)];
        if (w == 0.0f) continue;
        const auto& s = library.signatures[static_cast<size_t>(c)];
        for (int b = 0; b < config.bands; ++b) {
          spectrum[static_cast<size_t>(b)] += w * s[static_cast<size_t>(b)];
        }
      }
      for (int32_t p : blob.pixels) {
        std::copy_n(spectrum.data(), config.bands, scene.cube.data.data() +
                                                       static_cast<int64_t>(p) * config.bands);
        scene.truth.values[static_cast<size_t>(p)] = blob.category.bits;
        occupied[static_cast<size_t>(p)] = 1;
      }
      scene.blobs.push_back(std::move(blob));
      return true;
    }
    return false;
  };

  std::vector<std::string> unplaced;
  for (int display = 0; display < kNumCategories; ++display) {
    const int category = kCategoryDisplayOrder[static_cast<size_t>(display)];
    const int count = config.blob_counts[static_cast<size_t>(category)];
    for (int i = 0; i < count; ++i) {
      const int strip =
          (config.placement_phase[static_cast<size_t>(category)] + i) % 3;
      if (!try_place(category, strip)) {
        unplaced.push_back(std::string(category_name(category)) + "#" + std::to_string(i));
      }
    }
  }
  if (!unplaced.empty()) {
    std::string msg = "generate_scene: could not place";
    for (const auto& u : unplaced) msg += " " + u;
    throw GenerationError(msg);
  }

  // Noise pass: one illumination factor per pixel, additive noise per band.
  if (library.sigma_mul != 0.0f || library.sigma_add != 0.0f) {
    std::mt19937_64 noise_rng(mix_seed(config.seed, 0x6e6f6973));
    std::normal_distribution<double> illum(1.0, library.sigma_mul);
    std::normal_distribution<double> addn(0.0, library.sigma_add);
    for (int64_t p = 0; p < scene.cube.pixels(); ++p) {
      const double gain = library.sigma_mul != 0.0f ? illum(noise_rng) : 1.0;
      float* px = scene.cube.data.data() + p * config.bands;
      for (int b = 0; b < config.bands; ++b) {
        double v = static_cast<double>(px[b]) * gain;
        if (library.sigma_add != 0.0f) v += addn(noise_rng);
        px[b] = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return scene;
}

}  // namespace hsbit
