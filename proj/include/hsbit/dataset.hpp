#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "hsbit/annotate.hpp"
#include "hsbit/io.hpp"
#include "hsbit/scene.hpp"

namespace hsbit {

// Vertical split of one scene into test/train/validation thirds after
// trimming the all-background margins on every side.
struct SliceResult {
  // Retained window [row0,row1) x [col0,col1) in the source image.
  int row0 = 0, row1 = 0, col0 = 0, col1 = 0;
  // Left-to-right: test, train, validation.
  std::array<LabeledScene, 3> parts;
  // Removed margins, kept so the original tiles back together exactly.
  HyperCube top_cube, bottom_cube, left_cube, right_cube;
  Mask top_mask, bottom_mask, left_mask, right_mask;
};

namespace detail {

inline LabeledScene crop_scene(const LabeledScene& s, int y0, int x0, int h, int w) {
  LabeledScene out;
  out.cube = s.cube.crop(y0, x0, h, w);
  out.truth = s.truth.crop(y0, x0, h, w);
  for (const auto& blob : s.blobs) {
    BlobRecord part;
    part.category = blob.category;
    part.weights = blob.weights;
    part.center_y = blob.center_y - y0;
    part.center_x = blob.center_x - x0;
    for (int32_t p : blob.pixels) {
      const int py = p / s.cube.width, px = p % s.cube.width;
      if (py >= y0 && py < y0 + h && px >= x0 && px < x0 + w) {
        part.pixels.push_back(static_cast<int32_t>(py - y0) * w + (px - x0));
      }
    }
    if (!part.pixels.empty()) out.blobs.push_back(std::move(part));
  }
  return out;
}

}  // namespace detail

inline SliceResult slice(const LabeledScene& scene) {
  const int h = scene.truth.height, w = scene.truth.width;
  int r0 = h, r1 = -1, c0 = w, c1 = -1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (scene.truth.at(y, x) != 0) {
        r0 = std::min(r0, y);
        r1 = std::max(r1, y);
        c0 = std::min(c0, x);
        c1 = std::max(c1, x);
      }
    }
  }
  if (r1 < 0) throw DataError("slice: image is entirely background");
  r1 += 1;
  c1 += 1;

  // Pad the window back into the removed side margins until the width splits
  // into three; if the margins run out, hand trailing columns back to the
  // right margin instead of dropping them.
  while ((c1 - c0) % 3 != 0 && c0 > 0) --c0;
  while ((c1 - c0) % 3 != 0 && c1 < w) ++c1;
  c1 -= (c1 - c0) % 3;

  SliceResult out;
  out.row0 = r0;
  out.row1 = r1;
  out.col0 = c0;
  out.col1 = c1;
  const int part_w = (c1 - c0) / 3;
  for (int i = 0; i < 3; ++i) {
    out.parts[static_cast<size_t>(i)] =
        detail::crop_scene(scene, r0, c0 + i * part_w, r1 - r0, part_w);
  }
  if (r0 > 0) {
    out.top_cube = scene.cube.crop(0, 0, r0, w);
    out.top_mask = scene.truth.crop(0, 0, r0, w);
  }
  if (r1 < h) {
    out.bottom_cube = scene.cube.crop(r1, 0, h - r1, w);
    out.bottom_mask = scene.truth.crop(r1, 0, h - r1, w);
  }
  if (c0 > 0) {
    out.left_cube = scene.cube.crop(r0, 0, r1 - r0, c0);
    out.left_mask = scene.truth.crop(r0, 0, r1 - r0, c0);
  }
  if (c1 < w) {
    out.right_cube = scene.cube.crop(r0, c1, r1 - r0, w - c1);
    out.right_mask = scene.truth.crop(r0, c1, r1 - r0, w - c1);
  }
  return out;
}

// Tiles the slices and margins back into the original image.
inline std::pair<HyperCube, Mask> reconstruct(const SliceResult& s) {
  const int mid_h = s.row1 - s.row0;
  const int part_w = s.parts[0].cube.width;
  const int w = s.col0 + 3 * part_w + (s.right_cube.width > 0 ? s.right_cube.width : 0);
  const int h = s.row0 + mid_h + (s.bottom_cube.height > 0 ? s.bottom_cube.height : 0);
  const int bands = s.parts[0].cube.bands;

  HyperCube cube(h, w, bands);
  Mask mask(h, w);
  auto paste_cube = [&](const HyperCube& src, int y0, int x0) {
    for (int y = 0; y < src.height; ++y) {
      std::copy_n(src.pixel(y, 0), static_cast<size_t>(src.width) * bands,
                  cube.pixel(y0 + y, x0));
    }
  };
  auto paste_mask = [&](const Mask& src, int y0, int x0) {
    for (int y = 0; y < src.height; ++y) {
      std::copy_n(src.values.data() + static_cast<size_t>(y) * src.width, src.width,
                  mask.values.data() + static_cast<size_t>(y0 + y) * w + x0);
    }
  };
  if (s.top_cube.height > 0) {
    paste_cube(s.top_cube, 0, 0);
    paste_mask(s.top_mask, 0, 0);
  }
  if (s.bottom_cube.height > 0) {
    paste_cube(s.bottom_cube, s.row0 + mid_h, 0);
    paste_mask(s.bottom_mask, s.row0 + mid_h, 0);
  }
  if (s.left_cube.width > 0) {
    paste_cube(s.left_cube, s.row0, 0);
    paste_mask(s.left_mask, s.row0, 0);
  }
  if (s.right_cube.width > 0) {
    paste_cube(s.right_cube, s.row0, s.col0 + 3 * part_w);
    paste_mask(s.right_mask, s.row0, s.col0 + 3 * part_w);
  }
  for (int i = 0; i < 3; ++i) {
    paste_cube(s.parts[static_cast<size_t>(i)].cube, s.row0, s.col0 + i * part_w);
    paste_mask(s.parts[static_cast<size_t>(i)].truth, s.row0, s.col0 + i * part_w);
  }
  return {std::move(cube), std::move(mask)};
}

// ---- dataset directories ----------------------------------------------------

struct DatasetConfig {
  uint64_t seed = 7;
  int num_scenes = 4;        // all-category scenes feeding all three splits
  int num_extra_scenes = 1;  // primary-only scenes, training data only
  SceneConfig scene;         // geometry/noise template; seeds filled per scene
  BlobCounts extra_counts = primary_blob_counts();
  // The primary-only scenes carry fewer blobs, so they use larger flakes to
  // keep a comparable foreground share in the training patches.
  float extra_radius_min = 12.0f;
  float extra_radius_max = 20.0f;
  float delta_sep = 1.0f;
  float sigma_add = 0.01f;
  float sigma_mul = 0.02f;
  // Splits smaller than this are rejected and the dataset re-seeded, so the
  // default training patch always fits.
  int min_slice_extent = 64;
};

struct Dataset {
  DatasetConfig config;
  SpectralLibrary library;
  std::vector<LabeledScene> test, train, val;
  std::vector<LabeledScene> extra_train;
  std::array<int64_t, kNumCategories> blob_counts_main{};
  std::array<int64_t, kNumCategories> blob_counts_extra{};
  int placement_attempt = 0;

  const std::vector<LabeledScene>& split(const std::string& name) const {
    if (name == "test") return test;
    if (name == "train") return train;
    if (name == "val") return val;
    if (name == "extra") return extra_train;
    throw UsageError("dataset: unknown split \"" + name + "\"");
  }
};

namespace detail {

inline std::array<int64_t, kNumCategories> pixel_counts(const std::vector<LabeledScene>& scenes) {
  std::array<int64_t, kNumCategories> counts{};
  for (const auto& s : scenes) {
    const auto c = s.category_pixel_counts();
    for (int i = 0; i < kNumCategories; ++i) counts[static_cast<size_t>(i)] += c[static_cast<size_t>(i)];
  }
  return counts;
}

}  // namespace detail

// Generates the synthetic corpus: per-scene placement phases rotate each
// category through the left/middle/right strips so every split sees every
// category, which the vertical-slice protocol presumes. Re-seeds and retries
// if a draw still leaves a split without some category.
inline Dataset build_dataset(const DatasetConfig& config) {
  Dataset ds;
  ds.config = config;
  ds.library = generate_library(mix_seed(config.seed, 0x6c696272), config.scene.bands,
                                config.delta_sep, config.sigma_add, config.sigma_mul);

  for (int attempt = 0; attempt < 8; ++attempt) {
    ds.test.clear();
    ds.train.clear();
    ds.val.clear();
    ds.blob_counts_main = {};
    std::array<uint8_t, kNumCategories> phase = config.scene.placement_phase;
    bool ok = true;
    for (int s = 0; s < config.num_scenes && ok; ++s) {
      SceneConfig sc = config.scene;
      sc.seed = mix_seed(config.seed, 0x1000u + static_cast<uint64_t>(attempt) * 64 +
                                          static_cast<uint64_t>(s));
      sc.placement_phase = phase;
      auto scene = generate_scene(sc, ds.library);
      for (int c = 0; c < kNumCategories; ++c) {
        ds.blob_counts_main[static_cast<size_t>(c)] += sc.blob_counts[static_cast<size_t>(c)];
        phase[static_cast<size_t>(c)] = static_cast<uint8_t>(
            (phase[static_cast<size_t>(c)] + sc.blob_counts[static_cast<size_t>(c)]) % 3);
      }
      auto sliced = slice(scene);
      for (const auto& part : sliced.parts) {
        if (part.cube.width < config.min_slice_extent ||
            part.cube.height < config.min_slice_extent) {
          ok = false;
        }
      }
      ds.test.push_back(std::move(sliced.parts[0]));
      ds.train.push_back(std::move(sliced.parts[1]));
      ds.val.push_back(std::move(sliced.parts[2]));
    }
    if (ok) {
      // Every split must carry pixels of every category.
      for (const auto* split : {&ds.test, &ds.train, &ds.val}) {
        const auto counts = detail::pixel_counts(*split);
        for (int c = 0; c < kNumCategories; ++c) {
          if (counts[static_cast<size_t>(c)] == 0) ok = false;
        }
      }
    }
    if (ok) {
      ds.placement_attempt = attempt;
      break;
    }
    if (attempt == 7) {
      throw GenerationError(
          "build_dataset: could not cover every split with every category after 8 attempts; "
          "enlarge the image or blob counts");
    }
  }

  for (int s = 0; s < config.num_extra_scenes; ++s) {
    SceneConfig sc = config.scene;
    sc.blob_counts = config.extra_counts;
    sc.radius_min = config.extra_radius_min;
    sc.radius_max = config.extra_radius_max;
    sc.margin = std::max(sc.margin, static_cast<int>(config.extra_radius_max) / 2);
    sc.seed = mix_seed(config.seed, 0x2000u + static_cast<uint64_t>(s));
    ds.extra_train.push_back(generate_scene(sc, ds.library));
    for (int c = 0; c < kNumCategories; ++c) {
      ds.blob_counts_extra[static_cast<size_t>(c)] += config.extra_counts[static_cast<size_t>(c)];
    }
  }
  return ds;
}

namespace detail {

inline std::string scene_file(const std::string& dir, const std::string& split, int index,
                              const char* ext) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", index);
  return dir + "/" + split + "/scene_" + buf + ext;
}

}  // namespace detail

inline KvList dataset_manifest(const Dataset& ds) {
  KvList kv;
  auto add = [&kv](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
  auto add_i = [&add](const std::string& k, int64_t v) { add(k, std::to_string(v)); };
  add("format", "hsbit-dataset/1");
  add_i("seed", static_cast<int64_t>(ds.config.seed));
  add_i("num_scenes", ds.config.num_scenes);
  add_i("num_extra_scenes", ds.config.num_extra_scenes);
  add_i("bands", ds.config.scene.bands);
  add_i("height", ds.config.scene.height);
  add_i("width", ds.config.scene.width);
  add("radius_min", std::to_string(ds.config.scene.radius_min));
  add("radius_max", std::to_string(ds.config.scene.radius_max));
  add("beta_lo", std::to_string(ds.config.scene.beta_lo));
  add("beta_hi", std::to_string(ds.config.scene.beta_hi));
  add_i("margin", ds.config.scene.margin);
  add_i("min_gap", ds.config.scene.min_gap);
  add("sigma_add", std::to_string(ds.library.sigma_add));
  add("sigma_mul", std::to_string(ds.library.sigma_mul));
  add("delta_sep", std::to_string(ds.config.delta_sep));
  add_i("min_slice_extent", ds.config.min_slice_extent);
  add_i("placement_attempt", ds.placement_attempt);
  for (int c = 0; c < kNumCategories; ++c) {
    add_i("scene_blobs_" + std::string(category_name(c)), ds.config.scene.blob_counts[static_cast<size_t>(c)]);
    add_i("blobs_main_" + std::string(category_name(c)), ds.blob_counts_main[static_cast<size_t>(c)]);
    add_i("blobs_extra_" + std::string(category_name(c)), ds.blob_counts_extra[static_cast<size_t>(c)]);
  }
  for (const auto& split : {std::string("test"), std::string("train"), std::string("val")}) {
    const auto counts = detail::pixel_counts(ds.split(split));
    for (int c = 0; c < kNumCategories; ++c) {
      add_i("pixels_" + split + "_" + category_name(c), counts[static_cast<size_t>(c)]);
    }
  }
  const auto extra_counts = detail::pixel_counts(ds.extra_train);
  for (int c = 0; c < kNumCategories; ++c) {
    add_i("pixels_extra_" + std::string(category_name(c)), extra_counts[static_cast<size_t>(c)]);
  }
  return kv;
}

inline void write_dataset(const Dataset& ds, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const char* split : {"test", "train", "val", "extra"}) {
    fs::create_directories(fs::path(dir) / split);
  }
  write_library(ds.library, dir + "/library.hsl");
  auto write_split = [&](const std::vector<LabeledScene>& scenes, const std::string& split) {
    for (size_t i = 0; i < scenes.size(); ++i) {
      write_cube(scenes[i].cube, detail::scene_file(dir, split, static_cast<int>(i), ".hsc"));
      write_mask(scenes[i].truth, detail::scene_file(dir, split, static_cast<int>(i), ".hbm"));
    }
  };
  write_split(ds.test, "test");
  write_split(ds.train, "train");
  write_split(ds.val, "val");
  write_split(ds.extra_train, "extra");
  write_kv(dataset_manifest(ds), dir + "/manifest.txt");
}

// Loads a dataset directory back. Blob registries are not persisted by the
// cube/mask formats, so loaded scenes carry truth masks only.
inline Dataset read_dataset(const std::string& dir) {
  Dataset ds;
  const auto kv = read_kv(dir + "/manifest.txt");
  if (kv_get(kv, "format") != "hsbit-dataset/1") {
    throw FormatError(dir + "/manifest.txt: not a dataset manifest");
  }
  ds.config.seed = static_cast<uint64_t>(std::stoull(kv_get(kv, "seed")));
  ds.config.num_scenes = std::stoi(kv_get(kv, "num_scenes"));
  ds.config.num_extra_scenes = std::stoi(kv_get(kv, "num_extra_scenes"));
  ds.config.scene.bands = std::stoi(kv_get(kv, "bands"));
  ds.config.scene.height = std::stoi(kv_get(kv, "height"));
  ds.config.scene.width = std::stoi(kv_get(kv, "width"));
  ds.config.min_slice_extent = std::stoi(kv_get_or(kv, "min_slice_extent", "64"));
  for (int c = 0; c < kNumCategories; ++c) {
    ds.blob_counts_main[static_cast<size_t>(c)] =
        std::stoll(kv_get(kv, "blobs_main_" + std::string(category_name(c))));
    ds.blob_counts_extra[static_cast<size_t>(c)] =
        std::stoll(kv_get(kv, "blobs_extra_" + std::string(category_name(c))));
  }
  ds.library = read_library(dir + "/library.hsl");

  auto read_split = [&](std::vector<LabeledScene>& out, const std::string& split, int count) {
    for (int i = 0; i < count; ++i) {
      LabeledScene s;
      s.cube = read_cube(detail::scene_file(dir, split, i, ".hsc"));
      s.truth = read_mask(detail::scene_file(dir, split, i, ".hbm"));
      if (s.cube.height != s.truth.height || s.cube.width != s.truth.width) {
        throw FormatError(dir + ": cube/mask size mismatch in " + split + " scene " +
                          std::to_string(i));
      }
      out.push_back(std::move(s));
    }
  };
  read_split(ds.test, "test", ds.config.num_scenes);
  read_split(ds.train, "train", ds.config.num_scenes);
  read_split(ds.val, "val", ds.config.num_scenes);
  read_split(ds.extra_train, "extra", ds.config.num_extra_scenes);
  return ds;
}

}  // namespace hsbit
