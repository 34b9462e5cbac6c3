#pragma once

#include <cstdint>
#include <vector>

#include "hsbit/common.hpp"
#include "hsbit/encoding.hpp"
#include "hsbit/tensor.hpp"

namespace hsbit {

// H x W x B reflectance raster in [0,1], stored band-interleaved-by-pixel:
// value(y, x, b) = data[(y*W + x)*B + b].
struct HyperCube {
  int height = 0;
  int width = 0;
  int bands = 0;
  std::vector<float> data;

  HyperCube() = default;
  HyperCube(int h, int w, int b)
      : height(h), width(w), bands(b),
        data(static_cast<size_t>(h) * static_cast<size_t>(w) * static_cast<size_t>(b), 0.0f) {}

  float* pixel(int y, int x) {
    return data.data() + (static_cast<int64_t>(y) * width + x) * bands;
  }
  const float* pixel(int y, int x) const {
    return data.data() + (static_cast<int64_t>(y) * width + x) * bands;
  }

  int64_t pixels() const { return static_cast<int64_t>(height) * width; }

  // Band-planar [1, B, H, W] view for the network.
  TensorPtr to_tensor() const {
    auto t = zeros({1, bands, height, width});
    const int64_t hw = static_cast<int64_t>(height) * width;
    for (int64_t p = 0; p < hw; ++p) {
      const float* src = data.data() + p * bands;
      for (int b = 0; b < bands; ++b) t->data[static_cast<size_t>(b * hw + p)] = src[b];
    }
    return t;
  }

  HyperCube crop(int y0, int x0, int h, int w) const {
    if (y0 < 0 || x0 < 0 || y0 + h > height || x0 + w > width) {
      throw DimensionError("HyperCube::crop: window out of range");
    }
    HyperCube out(h, w, bands);
    for (int y = 0; y < h; ++y) {
      const float* src = pixel(y0 + y, x0);
      std::copy_n(src, static_cast<size_t>(w) * bands, out.pixel(y, 0));
    }
    return out;
  }
};

// H x W label raster of powerset category indices. The same byte is both the
// category index and the bitfield value, so the bitfield-mask and
// powerset-mask views share this storage.
struct Mask {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> values;

  Mask() = default;
  Mask(int h, int w) : height(h), width(w), values(static_cast<size_t>(h) * w, 0) {}

  uint8_t& at(int y, int x) { return values[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int y, int x) const { return values[static_cast<size_t>(y) * width + x]; }

  Bitfield bits_at(int y, int x) const { return Bitfield(at(y, x)); }
  void set_bits(int y, int x, Bitfield b) { at(y, x) = b.bits; }

  int64_t pixels() const { return static_cast<int64_t>(height) * width; }

  Mask crop(int y0, int x0, int h, int w) const {
    if (y0 < 0 || x0 < 0 || y0 + h > height || x0 + w > width) {
      throw DimensionError("Mask::crop: window out of range");
    }
    Mask out(h, w);
    for (int y = 0; y < h; ++y) {
      std::copy_n(values.data() + static_cast<size_t>(y0 + y) * width + x0, w,
                  out.values.data() + static_cast<size_t>(y) * w);
    }
    return out;
  }

  friend bool operator==(const Mask& a, const Mask& b) {
    return a.height == b.height && a.width == b.width && a.values == b.values;
  }
};

// One-hot class raster [1, 8, H, W] for the softmax head.
inline TensorPtr mask_to_onehot(const Mask& m) {
  auto t = zeros({1, kNumCategories, m.height, m.width});
  const int64_t hw = m.pixels();
  for (int64_t p = 0; p < hw; ++p) {
    t->data[static_cast<size_t>(m.values[static_cast<size_t>(p)] * hw + p)] = 1.0f;
  }
  return t;
}

inline Mask onehot_to_mask(const TensorPtr& t) {
  if (t->ndim() != 4 || t->dim(0) != 1 || t->dim(1) != kNumCategories) {
    throw DimensionError("onehot_to_mask: expected [1,8,H,W], got " +
                         detail::shape_string(t->shape));
  }
  Mask m(t->dim(2), t->dim(3));
  const int64_t hw = m.pixels();
  for (int64_t p = 0; p < hw; ++p) {
    int best = 0;
    float bv = t->data[static_cast<size_t>(p)];
    for (int c = 1; c < kNumCategories; ++c) {
      const float v = t->data[static_cast<size_t>(c * hw + p)];
      if (v > bv) {
        bv = v;
        best = c;
      }
    }
    m.values[static_cast<size_t>(p)] = static_cast<uint8_t>(best);
  }
  return m;
}

// Per-pixel TanH regression targets [1, K, H, W], +1 for active bits.
inline TensorPtr mask_to_targets(const Mask& m) {
  auto t = full({1, kNumPrimary, m.height, m.width}, -1.0f);
  const int64_t hw = m.pixels();
  for (int64_t p = 0; p < hw; ++p) {
    const Bitfield b(m.values[static_cast<size_t>(p)]);
    for (int i = 0; i < kNumPrimary; ++i) {
      if (b.test(i)) t->data[static_cast<size_t>(i * hw + p)] = 1.0f;
    }
  }
  return t;
}

}  // namespace hsbit
