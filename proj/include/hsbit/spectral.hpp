#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "hsbit/common.hpp"
#include "hsbit/encoding.hpp"

namespace hsbit {

// Synthetic per-polymer reflectance curves plus scene noise parameters.
// Signatures are sums of five Gaussian bumps on a 0.2 baseline, clamped to
// [0,1]; the background is a low, faintly rippled floor.
struct SpectralLibrary {
  int bands = 224;
  std::array<std::vector<float>, kNumPrimary> signatures;
  std::vector<float> background;
  float sigma_add = 0.01f;
  float sigma_mul = 0.02f;
  float delta_sep = 1.0f;
  uint64_t seed = 0;

  const std::vector<float>& signature(int cls) const {
    if (cls < 0 || cls >= kNumPrimary) {
      throw UsageError("signature: class " + std::to_string(cls) + " outside [0, " +
                       std::to_string(kNumPrimary) + ")");
    }
    return signatures[static_cast<size_t>(cls)];
  }

  // Reference spectrum of a category: the even convex mix of its members.
  std::vector<float> category_reference(int index) const {
    const Bitfield b = index_to_bitfield(index);
    if (b.background()) return background;
    std::vector<float> ref(static_cast<size_t>(bands), 0.0f);
    const float w = 1.0f / static_cast<float>(b.count());
    for (int c = 0; c < kNumPrimary; ++c) {
      if (!b.test(c)) continue;
      const auto& s = signatures[static_cast<size_t>(c)];
      for (int i = 0; i < bands; ++i) ref[static_cast<size_t>(i)] += w * s[static_cast<size_t>(i)];
    }
    return ref;
  }
};

inline double signature_distance(const std::vector<float>& a, const std::vector<float>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

inline SpectralLibrary generate_library(uint64_t seed, int bands, float delta_sep = 1.0f,
                                        float sigma_add = 0.01f, float sigma_mul = 0.02f) {
  if (bands < 8) throw UsageError("generate_library: bands must be >= 8");
  SpectralLibrary lib;
  lib.bands = bands;
  lib.sigma_add = sigma_add;
  lib.sigma_mul = sigma_mul;
  lib.delta_sep = delta_sep;
  lib.seed = seed;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-0.35, 0.85);
  std::uniform_real_distribution<double> center(0.0, static_cast<double>(bands));
  std::uniform_real_distribution<double> width(static_cast<double>(bands) / 32.0,
                                               static_cast<double>(bands) / 10.0);

  auto draw_signature = [&]() {
    std::array<double, 5> a, mu, sg;
    for (int j = 0; j < 5; ++j) {
      a[static_cast<size_t>(j)] = amp(rng);
      mu[static_cast<size_t>(j)] = center(rng);
      sg[static_cast<size_t>(j)] = width(rng);
    }
    std::vector<float> s(static_cast<size_t>(bands));
    for (int b = 0; b < bands; ++b) {
      double v = 0.2;
      for (int j = 0; j < 5; ++j) {
        const double d = (static_cast<double>(b) - mu[static_cast<size_t>(j)]) /
                         sg[static_cast<size_t>(j)];
        v += a[static_cast<size_t>(j)] * std::exp(-0.5 * d * d);
      }
      s[static_cast<size_t>(b)] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
    return s;
  };

  for (int attempt = 0; attempt < 100; ++attempt) {
    for (auto& s : lib.signatures) s = draw_signature();
    bool ok = true;
    for (int i = 0; i < kNumPrimary && ok; ++i) {
      for (int j = i + 1; j < kNumPrimary; ++j) {
        if (signature_distance(lib.signatures[static_cast<size_t>(i)],
                               lib.signatures[static_cast<size_t>(j)]) < delta_sep) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      std::uniform_real_distribution<double> freq(2.0, 5.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
      const double f = freq(rng), ph = phase(rng);
      lib.background.assign(static_cast<size_t>(bands), 0.0f);
      for (int b = 0; b < bands; ++b) {
        const double v =
            0.05 + 0.015 * std::sin(2.0 * M_PI * f * static_cast<double>(b) / bands + ph);
        lib.background[static_cast<size_t>(b)] = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
      return lib;
    }
  }
  throw GenerationError("generate_library: could not reach pairwise separation " +
                        std::to_string(delta_sep) + " after 100 attempts");
}

// ---- library file "HSL1" (part of dataset directories) ---------------------

inline void write_library(const SpectralLibrary& lib, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_library: cannot open " + path);
  os.write("HSL1", 4);
  write_u32le(os, static_cast<uint32_t>(lib.bands));
  write_f32le(os, lib.sigma_add);
  write_f32le(os, lib.sigma_mul);
  write_f32le(os, lib.delta_sep);
  write_u64le(os, lib.seed);
  for (const auto& s : lib.signatures) write_f32le_array(os, s.data(), s.size());
  write_f32le_array(os, lib.background.data(), lib.background.size());
  if (!os) throw DataError("write_library: write failed for " + path);
}

inline SpectralLibrary read_library(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("read_library: cannot open " + path);
  ByteReader r(is, path);
  r.expect_magic("HSL1");
  SpectralLibrary lib;
  lib.bands = static_cast<int>(r.u32());
  if (lib.bands < 1 || lib.bands > (1 << 20)) {
    throw FormatError(path + ": implausible band count " + std::to_string(lib.bands));
  }
  lib.sigma_add = r.f32();
  lib.sigma_mul = r.f32();
  lib.delta_sep = r.f32();
  lib.seed = r.u64();
  for (auto& s : lib.signatures) {
    s.resize(static_cast<size_t>(lib.bands));
    r.f32_array(s.data(), s.size());
  }
  lib.background.resize(static_cast<size_t>(lib.bands));
  r.f32_array(lib.background.data(), lib.background.size());
  return lib;
}

}  // namespace hsbit
