#pragma once

#include <array>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "hsbit/common.hpp"
#include "hsbit/types.hpp"

namespace hsbit {

// Cube file "HSC1": magic, u32 H, W, B, then H*W*B little-endian float32,
// row-major and band-interleaved-by-pixel.
inline void write_cube(const HyperCube& cube, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_cube: cannot open " + path);
  os.write("HSC1", 4);
  write_u32le(os, static_cast<uint32_t>(cube.height));
  write_u32le(os, static_cast<uint32_t>(cube.width));
  write_u32le(os, static_cast<uint32_t>(cube.bands));
  write_f32le_array(os, cube.data.data(), cube.data.size());
  if (!os) throw DataError("write_cube: write failed for " + path);
}

inline HyperCube read_cube(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("read_cube: cannot open " + path);
  ByteReader r(is, path);
  r.expect_magic("HSC1");
  const uint32_t h = r.u32(), w = r.u32(), b = r.u32();
  if (h == 0 || w == 0 || b == 0 || static_cast<uint64_t>(h) * w * b > (1ull << 31)) {
    throw FormatError(path + ": implausible cube dimensions " + std::to_string(h) + "x" +
                      std::to_string(w) + "x" + std::to_string(b));
  }
  HyperCube cube(static_cast<int>(h), static_cast<int>(w), static_cast<int>(b));
  r.f32_array(cube.data.data(), cube.data.size());
  return cube;
}

// Mask file "HBM1": magic, u32 H, W, u8 K, then H*W bytes of powerset indices.
inline void write_mask(const Mask& mask, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_mask: cannot open " + path);
  os.write("HBM1", 4);
  write_u32le(os, static_cast<uint32_t>(mask.height));
  write_u32le(os, static_cast<uint32_t>(mask.width));
  write_u8(os, static_cast<uint8_t>(kNumPrimary));
  os.write(reinterpret_cast<const char*>(mask.values.data()),
           static_cast<std::streamsize>(mask.values.size()));
  if (!os) throw DataError("write_mask: write failed for " + path);
}

inline Mask read_mask(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("read_mask: cannot open " + path);
  ByteReader r(is, path);
  r.expect_magic("HBM1");
  const uint32_t h = r.u32(), w = r.u32();
  const uint8_t k = r.u8();
  if (k != kNumPrimary) {
    throw FormatError(path + ": K=" + std::to_string(k) + " masks unsupported (expected " +
                      std::to_string(kNumPrimary) + ")");
  }
  if (h == 0 || w == 0 || static_cast<uint64_t>(h) * w > (1ull << 31)) {
    throw FormatError(path + ": implausible mask dimensions");
  }
  Mask mask(static_cast<int>(h), static_cast<int>(w));
  for (size_t i = 0; i < mask.values.size(); ++i) {
    const uint64_t offset = r.offset;
    const uint8_t v = r.u8();
    if (v >= kNumCategories) {
      throw FormatError(path + ": category index " + std::to_string(v) + " >= " +
                        std::to_string(kNumCategories) + " at byte offset " +
                        std::to_string(offset));
    }
    mask.values[i] = v;
  }
  return mask;
}

// ---- P6 pixmap exports -----------------------------------------------------

inline void write_ppm(const std::string& path, int h, int w, const std::vector<uint8_t>& rgb) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_ppm: cannot open " + path);
  os << "P6\n" << w << " " << h << "\n255\n";
  os.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!os) throw DataError("write_ppm: write failed for " + path);
}

// False-color view: three bands mapped to RGB, each min-max normalized.
inline void export_cube_view(const HyperCube& cube, const std::string& path,
                             std::array<int, 3> rgb_bands) {
  for (int b : rgb_bands) {
    if (b < 0 || b >= cube.bands) {
      throw UsageError("export_cube_view: band " + std::to_string(b) + " outside [0, " +
                       std::to_string(cube.bands) + ")");
    }
  }
  std::array<float, 3> lo{}, hi{};
  for (int c = 0; c < 3; ++c) {
    lo[static_cast<size_t>(c)] = 1.0f;
    hi[static_cast<size_t>(c)] = 0.0f;
    for (int64_t p = 0; p < cube.pixels(); ++p) {
      const float v = cube.data[static_cast<size_t>(p * cube.bands + rgb_bands[static_cast<size_t>(c)])];
      lo[static_cast<size_t>(c)] = std::min(lo[static_cast<size_t>(c)], v);
      hi[static_cast<size_t>(c)] = std::max(hi[static_cast<size_t>(c)], v);
    }
  }
  std::vector<uint8_t> rgb(static_cast<size_t>(cube.pixels()) * 3);
  for (int64_t p = 0; p < cube.pixels(); ++p) {
    for (int c = 0; c < 3; ++c) {
      const float v = cube.data[static_cast<size_t>(p * cube.bands + rgb_bands[static_cast<size_t>(c)])];
      const float span = hi[static_cast<size_t>(c)] - lo[static_cast<size_t>(c)];
      const float t = span > 0.0f ? (v - lo[static_cast<size_t>(c)]) / span : 0.0f;
      rgb[static_cast<size_t>(p * 3 + c)] = static_cast<uint8_t>(t * 255.0f + 0.5f);
    }
  }
  write_ppm(path, cube.height, cube.width, rgb);
}

// Category palette: PP drives red, PE green, PET blue, so overlaps render as
// additive mixes (PP+PE = yellow, all three = white).
inline std::array<uint8_t, 3> category_color(int index) {
  const Bitfield b(static_cast<uint8_t>(index));
  return {static_cast<uint8_t>(b.test(PP) ? 255 : 0), static_cast<uint8_t>(b.test(PE) ? 255 : 0),
          static_cast<uint8_t>(b.test(PET) ? 255 : 0)};
}

inline void export_mask_view(const Mask& mask, const std::string& path) {
  std::vector<uint8_t> rgb(static_cast<size_t>(mask.pixels()) * 3);
  for (int64_t p = 0; p < mask.pixels(); ++p) {
    const auto c = category_color(mask.values[static_cast<size_t>(p)]);
    rgb[static_cast<size_t>(p * 3 + 0)] = c[0];
    rgb[static_cast<size_t>(p * 3 + 1)] = c[1];
    rgb[static_cast<size_t>(p * 3 + 2)] = c[2];
  }
  write_ppm(path, mask.height, mask.width, rgb);
}

// ---- plain-text key=value manifests ---------------------------------------

using KvList = std::vector<std::pair<std::string, std::string>>;

inline void write_kv(const KvList& kv, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_kv: cannot open " + path);
  for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
  if (!os) throw DataError("write_kv: write failed for " + path);
}

inline KvList read_kv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("read_kv: cannot open " + path);
  KvList kv;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(path + ": malformed line \"" + line + "\"");
    kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return kv;
}

inline std::string kv_get(const KvList& kv, const std::string& key) {
  for (const auto& [k, v] : kv) {
    if (k == key) return v;
  }
  throw FormatError("manifest missing key \"" + key + "\"");
}

inline std::string kv_get_or(const KvList& kv, const std::string& key, const std::string& fallback) {
  for (const auto& [k, v] : kv) {
    if (k == key) return v;
  }
  return fallback;
}

}  // namespace hsbit
