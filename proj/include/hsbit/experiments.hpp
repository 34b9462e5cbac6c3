#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "hsbit/dataset.hpp"
#include "hsbit/metrics.hpp"
#include "hsbit/model.hpp"
#include "hsbit/optim.hpp"

namespace hsbit {

enum class PresetKind { Baseline, BaselineBitfield, Bitfield };

inline const char* preset_name(PresetKind k) {
  switch (k) {
    case PresetKind::Baseline: return "baseline";
    case PresetKind::BaselineBitfield: return "baseline-bitfield";
    case PresetKind::Bitfield: return "bitfield";
  }
  throw UsageError("unknown preset kind");
}

inline PresetKind preset_from_name(const std::string& name) {
  if (name == "baseline") return PresetKind::Baseline;
  if (name == "baseline-bitfield") return PresetKind::BaselineBitfield;
  if (name == "bitfield") return PresetKind::Bitfield;
  throw UsageError("unknown preset \"" + name +
                   "\" (expected baseline|baseline-bitfield|bitfield)");
}

// One experiment configuration. The head/loss/corpus combination is fixed
// per preset kind; the remaining knobs are free.
struct ExperimentPreset {
  PresetKind kind = PresetKind::Baseline;
  HeadType head = HeadType::Baseline;
  bool use_mse = false;              // false: cross-entropy on logits
  bool primary_only_training = false;
  float threshold = 0.5f;
  int epochs = 15;         // make_preset raises this for the softmax baseline
  int steps_per_epoch = 16;
  int patch = 64;
  int batch = 4;
  // Half of each batch is centered on seeded draws from the non-background
  // pixel pool, category-stratified, so rare overlap classes keep gradient
  // mass against the background majority.
  bool stratified_patches = true;
  float lr = 1e-3f;
  // Linear learning-rate ramp over the first steps; keeps the TanH head out
  // of deep saturation while the output is still near its best constant.
  int warmup_steps = 80;
  uint64_t seed = 7;
  ModelSpec model;  // bands overwritten from the dataset

  void validate() const {
    const bool baseline_ok = kind != PresetKind::Baseline ||
                             (head == HeadType::Baseline && !use_mse && !primary_only_training);
    const bool bb_ok = kind != PresetKind::BaselineBitfield ||
                       (head == HeadType::Bitfield && use_mse && !primary_only_training);
    const bool bf_ok = kind != PresetKind::Bitfield ||
                       (head == HeadType::Bitfield && use_mse && primary_only_training);
    if (!baseline_ok || !bb_ok || !bf_ok) {
      throw ConfigError(std::string("preset ") + preset_name(kind) +
                        ": head/loss/corpus combination violates the preset contract");
    }
    if (epochs < 0 || steps_per_epoch < 1 || batch < 1) {
      throw ConfigError("preset: epochs must be >= 0, steps and batch >= 1");
    }
    if (patch < 8) throw ConfigError("preset: patch must be >= 8");
    if (!(threshold > -1.0f && threshold < 1.0f)) {
      throw ConfigError("preset: threshold must lie in (-1, 1)");
    }
  }
};

inline ExperimentPreset make_preset(PresetKind kind, uint64_t seed = 7) {
  ExperimentPreset p;
  p.kind = kind;
  p.seed = seed;
  switch (kind) {
    case PresetKind::Baseline:
      p.head = HeadType::Baseline;
      p.use_mse = false;
      p.primary_only_training = false;
      // The 8-way softmax needs longer to carve out the rare overlap
      // classes than the per-bit heads do.
      p.epochs = 30;
      break;
    case PresetKind::BaselineBitfield:
      p.head = HeadType::Bitfield;
      p.use_mse = true;
      p.primary_only_training = false;
      break;
    case PresetKind::Bitfield:
      p.head = HeadType::Bitfield;
      p.use_mse = true;
      p.primary_only_training = true;
      break;
  }
  // Desk-scale network: half the reference widths trains several times
  // faster on one CPU core and saturates this task.
  p.model.head = p.head;
  p.model.seed = seed;
  p.model.reduction_channels = 16;
  p.model.encoder_channels = {16, 32, 64};
  return p;
}

struct TrainHistory {
  std::vector<float> train_loss;
  std::vector<float> val_loss;
  std::vector<double> val_macro_f1;
  int best_epoch = -1;
};

struct TrainResult {
  Model model;
  TrainHistory history;
};

namespace detail {

inline int worker_count() {
  const char* env = std::getenv("HSBIT_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

// Crops [1,C,H2,W2] scores to the top-left [1,C,H,W] window.
inline TensorPtr crop_spatial(const TensorPtr& t, int h, int w) {
  const int c = t->dim(1), h2 = t->dim(2), w2 = t->dim(3);
  if (h == h2 && w == w2) return t;
  auto out = zeros({1, c, h, w});
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < h; ++y) {
      std::copy_n(t->data.data() + (static_cast<int64_t>(ch) * h2 + y) * w2, w,
                  out->data.data() + (static_cast<int64_t>(ch) * h + y) * w);
    }
  }
  return out;
}

// Activated scores for a whole slice, mirror-padded through the network and
// cropped back to the slice extents.
inline TensorPtr infer_scores(const Model& model, const HyperCube& cube) {
  auto x = pad_reflect_to_multiple(cube.to_tensor(), model.spec().pool_factor());
  auto scores = model.forward(nullptr, x);
  return crop_spatial(scores, cube.height, cube.width);
}

inline Mask decode_scores(const TensorPtr& scores, HeadType head, float threshold) {
  const int h = scores->dim(2), w = scores->dim(3);
  const int64_t hw = static_cast<int64_t>(h) * w;
  Mask mask(h, w);
  if (head == HeadType::Bitfield) {
    for (int64_t p = 0; p < hw; ++p) {
      ScoreVector s;
      for (int c = 0; c < kNumPrimary; ++c) {
        s.scores[static_cast<size_t>(c)] = scores->data[static_cast<size_t>(c * hw + p)];
      }
      mask.values[static_cast<size_t>(p)] = decode(s, threshold).bits;
    }
  } else {
    const int classes = scores->dim(1);
    for (int64_t p = 0; p < hw; ++p) {
      int best = 0;
      float bv = scores->data[static_cast<size_t>(p)];
      for (int c = 1; c < classes; ++c) {
        const float v = scores->data[static_cast<size_t>(c * hw + p)];
        if (v > bv) {
          bv = v;
          best = c;
        }
      }
      mask.values[static_cast<size_t>(p)] = static_cast<uint8_t>(best);
    }
  }
  return mask;
}

inline std::vector<int32_t> mask_to_classes(const Mask& m) {
  std::vector<int32_t> idx(m.values.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = m.values[i];
  return idx;
}

}  // namespace detail

// Pixel-pooled per-category metrics over truth-labeled scenes. Scene-level
// work can fan out over HSBIT_THREADS workers; counts merge in scene order
// so the result does not depend on the worker count.
inline EvalResult evaluate(const Model& model, const std::vector<LabeledScene>& scenes,
                           float threshold) {
  if (scenes.empty()) throw UsageError("evaluate: no scenes");
  std::vector<std::array<CategoryMetrics, kNumCategories>> per_scene(scenes.size());

  const int workers =
      std::min<int>(detail::worker_count(), static_cast<int>(scenes.size()));
  auto run_range = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const Mask pred = model.predict(scenes[i].cube, threshold);
      accumulate_confusion(scenes[i].truth, pred, per_scene[i]);
    }
  };
  if (workers <= 1) {
    run_range(0, scenes.size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (scenes.size() + workers - 1) / static_cast<size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const size_t begin = static_cast<size_t>(w) * chunk;
      const size_t end = std::min(scenes.size(), begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  std::array<CategoryMetrics, kNumCategories> counts{};
  for (const auto& s : per_scene) {
    for (int c = 0; c < kNumCategories; ++c) {
      counts[static_cast<size_t>(c)].tp += s[static_cast<size_t>(c)].tp;
      counts[static_cast<size_t>(c)].fp += s[static_cast<size_t>(c)].fp;
      counts[static_cast<size_t>(c)].fn += s[static_cast<size_t>(c)].fn;
    }
  }
  return finalize_eval(counts);
}

// Recall structure on overlap pixels (exact category vs constituent bits).
inline OverlapComposition overlap_composition_analysis(const Model& model,
                                                       const std::vector<LabeledScene>& scenes,
                                                       float threshold) {
  OverlapComposition acc;
  for (const auto& s : scenes) {
    const Mask pred = model.predict(s.cube, threshold);
    accumulate_overlap_composition(s.truth, pred, acc);
  }
  return acc;
}

// Trains a preset on its corpus: the main training slices, or the dedicated
// primary-only scenes for the bitfield preset. Validation runs after every
// epoch on the untouched validation slices; the returned model carries the
// parameters of the best validation macro-F1 epoch.
inline TrainResult train(const ExperimentPreset& preset, const Dataset& dataset) {
  preset.validate();
  const auto& corpus = preset.primary_only_training ? dataset.extra_train : dataset.train;
  if (corpus.empty()) {
    throw UsageError(std::string("preset ") + preset_name(preset.kind) +
                     ": training corpus is empty after category filtering");
  }

  ModelSpec spec = preset.model;
  spec.head = preset.head;
  spec.bands = corpus.front().cube.bands;
  spec.seed = preset.seed;
  Model model = Model::build(spec);

  const int pf = spec.pool_factor();
  if (preset.patch % pf != 0) {
    throw ConfigError("train: patch size " + std::to_string(preset.patch) +
                      " must be divisible by " + std::to_string(pf));
  }
  for (const auto& s : corpus) {
    if (s.cube.height < preset.patch || s.cube.width < preset.patch) {
      throw UsageError("train: corpus scene " + std::to_string(s.cube.height) + "x" +
                       std::to_string(s.cube.width) + " is smaller than the " +
                       std::to_string(preset.patch) + "px patch");
    }
    if (s.cube.bands != spec.bands) throw DimensionError("train: corpus band count varies");
  }

  TrainResult result{std::move(model), {}};
  if (preset.epochs == 0) return result;

  result.model.set_training(true);
  auto params = result.model.parameters();
  AdamState adam;
  adam.lr = preset.lr;
  adam.init(params);

  std::mt19937_64 rng(mix_seed(preset.seed, 0x7472616eull));
  const int b = preset.batch, ph = preset.patch;
  const int bands = spec.bands;
  int64_t global_step = 0;

  // Per-scene, per-category foreground pixel pools for stratified draws.
  struct CategoryPool {
    int scene;
    std::vector<int32_t> pixels;
  };
  std::array<std::vector<CategoryPool>, kNumCategories> pools;
  if (preset.stratified_patches) {
    for (size_t si = 0; si < corpus.size(); ++si) {
      std::array<std::vector<int32_t>, kNumCategories> per_cat;
      const auto& truth = corpus[si].truth;
      for (int64_t pp = 0; pp < truth.pixels(); ++pp) {
        const uint8_t v = truth.values[static_cast<size_t>(pp)];
        if (v != 0) per_cat[v].push_back(static_cast<int32_t>(pp));
      }
      for (int cat = 1; cat < kNumCategories; ++cat) {
        if (!per_cat[static_cast<size_t>(cat)].empty()) {
          pools[static_cast<size_t>(cat)].push_back(
              {static_cast<int>(si), std::move(per_cat[static_cast<size_t>(cat)])});
        }
      }
    }
  }
  std::vector<int> present_categories;
  for (int cat = 1; cat < kNumCategories; ++cat) {
    if (!pools[static_cast<size_t>(cat)].empty()) present_categories.push_back(cat);
  }

  std::vector<std::vector<float>> best_params;
  double best_f1 = -1.0;

  for (int epoch = 0; epoch < preset.epochs; ++epoch) {
    double epoch_loss = 0.0;
    for (int step = 0; step < preset.steps_per_epoch; ++step, ++global_step) {
      adam.lr = preset.lr;
      if (preset.warmup_steps > 0 && global_step < preset.warmup_steps) {
        adam.lr = preset.lr * static_cast<double>(global_step + 1) / preset.warmup_steps;
      }
      auto x = zeros({b, bands, ph, ph});
      std::vector<Mask> patches;
      patches.reserve(static_cast<size_t>(b));
      for (int i = 0; i < b; ++i) {
        const bool stratified =
            preset.stratified_patches && !present_categories.empty() && i % 2 == 1;
        size_t scene_idx;
        int y0, x0;
        if (stratified) {
          const int cat = present_categories[rng() % present_categories.size()];
          const auto& pool = pools[static_cast<size_t>(cat)];
          const auto& entry = pool[rng() % pool.size()];
          const int32_t px = entry.pixels[rng() % entry.pixels.size()];
          scene_idx = static_cast<size_t>(entry.scene);
          const auto& sc = corpus[scene_idx];
          const int cy = px / sc.cube.width, cx = px % sc.cube.width;
          y0 = std::clamp(cy - ph / 2, 0, sc.cube.height - ph);
          x0 = std::clamp(cx - ph / 2, 0, sc.cube.width - ph);
        } else {
          scene_idx = rng() % corpus.size();
          const auto& sc = corpus[scene_idx];
          y0 = static_cast<int>(rng() % static_cast<uint64_t>(sc.cube.height - ph + 1));
          x0 = static_cast<int>(rng() % static_cast<uint64_t>(sc.cube.width - ph + 1));
        }
        const auto& s = corpus[scene_idx];
        for (int y = 0; y < ph; ++y) {
          const float* src = s.cube.pixel(y0 + y, x0);
          for (int xx = 0; xx < ph; ++xx) {
            for (int band = 0; band < bands; ++band) {
              x->data[static_cast<size_t>(((static_cast<int64_t>(i) * bands + band) * ph + y) * ph +
                                          xx)] = src[static_cast<int64_t>(xx) * bands + band];
            }
          }
        }
        patches.push_back(s.truth.crop(y0, x0, ph, ph));
      }

      Graph g;
      TensorPtr loss;
      if (preset.use_mse) {
        auto scores = tanh_act(&g, result.model.logits(&g, x));
        auto targets = zeros({b, kNumPrimary, ph, ph});
        const int64_t hw = static_cast<int64_t>(ph) * ph;
        for (int i = 0; i < b; ++i) {
          for (int64_t p = 0; p < hw; ++p) {
            const Bitfield bits(patches[static_cast<size_t>(i)].values[static_cast<size_t>(p)]);
            for (int c = 0; c < kNumPrimary; ++c) {
              targets->data[static_cast<size_t>((static_cast<int64_t>(i) * kNumPrimary + c) * hw +
                                                p)] = bits.test(c) ? 1.0f : -1.0f;
            }
          }
        }
        loss = mse_loss(&g, scores, targets);
      } else {
        auto logits = result.model.logits(&g, x);
        std::vector<int32_t> classes;
        classes.reserve(static_cast<size_t>(b) * ph * ph);
        for (int i = 0; i < b; ++i) {
          for (uint8_t v : patches[static_cast<size_t>(i)].values) classes.push_back(v);
        }
        loss = cross_entropy(&g, logits, classes);
      }
      if (!std::isfinite(loss->item())) {
        throw NumericalError("train: non-finite loss at epoch " + std::to_string(epoch) +
                             " step " + std::to_string(step));
      }
      epoch_loss += loss->item();
      for (auto& p : params) p->zero_grad();
      g.backward(loss);
      adam_step(params, adam);
    }
    result.history.train_loss.push_back(
        static_cast<float>(epoch_loss / preset.steps_per_epoch));

    // Validation pass: loss and macro-F1 from one forward per slice.
    double val_loss = 0.0;
    std::array<CategoryMetrics, kNumCategories> counts{};
    for (const auto& s : dataset.val) {
      auto scores = detail::infer_scores(result.model, s.cube);
      if (preset.use_mse) {
        val_loss += mse_loss(nullptr, scores, mask_to_targets(s.truth))->item();
        accumulate_confusion(s.truth,
                             detail::decode_scores(scores, preset.head, preset.threshold), counts);
      } else {
        // Scores are softmax probabilities; evaluate the NLL of the truth.
        const int64_t hw = s.truth.pixels();
        double nll = 0.0;
        for (int64_t p = 0; p < hw; ++p) {
          const float prob =
              scores->data[static_cast<size_t>(s.truth.values[static_cast<size_t>(p)] * hw + p)];
          nll -= std::log(std::max(1e-12, static_cast<double>(prob)));
        }
        val_loss += nll / static_cast<double>(hw);
        accumulate_confusion(s.truth,
                             detail::decode_scores(scores, preset.head, preset.threshold), counts);
      }
    }
    val_loss /= static_cast<double>(dataset.val.empty() ? 1 : dataset.val.size());
    const auto val = finalize_eval(counts);
    result.history.val_loss.push_back(static_cast<float>(val_loss));
    result.history.val_macro_f1.push_back(val.macro.f1);
    if (val.macro.f1 > best_f1) {
      best_f1 = val.macro.f1;
      result.history.best_epoch = epoch;
      best_params = result.model.snapshot();
    }
  }

  if (!best_params.empty()) result.model.restore(best_params);
  result.model.set_training(false);
  result.model.meta.seed = preset.seed;
  result.model.meta.epochs = static_cast<uint32_t>(preset.epochs);
  result.model.meta.final_train_loss = result.history.train_loss.back();
  result.model.meta.final_val_loss = result.history.val_loss.back();
  result.model.meta.best_epoch = result.history.best_epoch;
  result.model.meta.best_val_f1 = static_cast<float>(best_f1);
  return result;
}

// ---- report files -----------------------------------------------------------

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

inline void write_report_csv(const EvalResult& eval,
                             const std::array<int64_t, kNumCategories>& blob_counts,
                             const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_report_csv: cannot open " + path);
  os << "category,encoding,blobs,f1,precision,recall\n";
  for (int row = 0; row < kNumCategories; ++row) {
    const int c = kCategoryDisplayOrder[static_cast<size_t>(row)];
    const auto& m = eval.per_category[static_cast<size_t>(c)];
    os << category_name(c) << "," << index_to_bitfield(c).to_string() << ","
       << (c == 0 ? std::string("-") : std::to_string(blob_counts[static_cast<size_t>(c)])) << ","
       << detail::fmt(m.f1) << "," << detail::fmt(m.precision) << "," << detail::fmt(m.recall)
       << "\n";
  }
  os << "Average,,," << detail::fmt(eval.macro.f1) << "," << detail::fmt(eval.macro.precision)
     << "," << detail::fmt(eval.macro.recall) << "\n";
  if (!os) throw DataError("write_report_csv: write failed for " + path);
}

inline void write_history_csv(const TrainHistory& h, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_history_csv: cannot open " + path);
  os << "epoch,train_loss,val_loss,val_macro_f1\n";
  for (size_t e = 0; e < h.train_loss.size(); ++e) {
    os << e << "," << detail::fmt(h.train_loss[e]) << "," << detail::fmt(h.val_loss[e]) << ","
       << detail::fmt(h.val_macro_f1[e]) << "\n";
  }
  os << "# best_epoch=" << h.best_epoch << "\n";
}

inline void write_overlap_csv(const OverlapComposition& oc, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("write_overlap_csv: cannot open " + path);
  os << "category,encoding,pixels,exact_recall,constituent_bit_recall,nonempty_subset_rate\n";
  for (int c = 0; c < kNumCategories; ++c) {
    const auto& cat = oc.categories[static_cast<size_t>(c)];
    if (index_to_bitfield(c).count() < 2) continue;
    if (cat.pixels == 0) {
      os << category_name(c) << "," << index_to_bitfield(c).to_string() << ",0,absent,absent,absent\n";
      continue;
    }
    os << category_name(c) << "," << index_to_bitfield(c).to_string() << "," << cat.pixels << ","
       << detail::fmt(cat.exact_recall()) << "," << detail::fmt(cat.constituent_bit_recall())
       << "," << detail::fmt(cat.subset_rate()) << "\n";
  }
  os << "twoway_pooled,," << oc.twoway_pixels << "," << detail::fmt(oc.twoway_exact_recall())
     << "," << detail::fmt(oc.twoway_bit_recall()) << ",\n";
}

struct RunResult {
  TrainResult train_result;
  EvalResult eval;
  OverlapComposition overlap;
};

inline KvList preset_manifest(const ExperimentPreset& preset) {
  KvList kv;
  kv.emplace_back("preset", preset_name(preset.kind));
  kv.emplace_back("head", preset.head == HeadType::Bitfield ? "bitfield" : "softmax");
  kv.emplace_back("loss", preset.use_mse ? "mse" : "cross-entropy");
  kv.emplace_back("training_set",
                  preset.primary_only_training ? "primary-only-extra" : "all-categories");
  kv.emplace_back("threshold", detail::fmt(preset.threshold));
  kv.emplace_back("epochs", std::to_string(preset.epochs));
  kv.emplace_back("steps_per_epoch", std::to_string(preset.steps_per_epoch));
  kv.emplace_back("patch", std::to_string(preset.patch));
  kv.emplace_back("batch", std::to_string(preset.batch));
  kv.emplace_back("stratified_patches", preset.stratified_patches ? "true" : "false");
  kv.emplace_back("lr", detail::fmt(preset.lr));
  kv.emplace_back("warmup_steps", std::to_string(preset.warmup_steps));
  kv.emplace_back("seed", std::to_string(preset.seed));
  return kv;
}

// Full preset run against a dataset directory: train, evaluate on the test
// slices, and write checkpoint, per-category report, history, overlap
// analysis, and a manifest carrying the resolved configuration.
inline RunResult run_preset(const ExperimentPreset& preset, const std::string& dataset_dir,
                            const std::string& out_dir) {
  auto dataset = read_dataset(dataset_dir);
  RunResult run{train(preset, dataset), {}, {}};
  run.eval = evaluate(run.train_result.model, dataset.test, preset.threshold);
  run.overlap = overlap_composition_analysis(run.train_result.model, dataset.test,
                                             preset.threshold);

  std::filesystem::create_directories(out_dir);
  run.train_result.model.save(out_dir + "/checkpoint.hsbm");
  write_report_csv(run.eval, dataset.blob_counts_main, out_dir + "/report.csv");
  write_history_csv(run.train_result.history, out_dir + "/history.csv");
  write_overlap_csv(run.overlap, out_dir + "/overlap.csv");

  KvList kv = preset_manifest(preset);
  kv.emplace_back("dataset_dir", dataset_dir);
  kv.emplace_back("dataset_hash", hex64(fnv1a64_file(dataset_dir + "/manifest.txt")));
  const auto& corpus = preset.primary_only_training ? dataset.extra_train : dataset.train;
  const auto corpus_counts = detail::pixel_counts(corpus);
  for (int c = 0; c < kNumCategories; ++c) {
    kv.emplace_back("pixels_corpus_" + std::string(category_name(c)),
                    std::to_string(corpus_counts[static_cast<size_t>(c)]));
  }
  kv.emplace_back("best_epoch", std::to_string(run.train_result.history.best_epoch));
  kv.emplace_back("best_val_macro_f1", detail::fmt(run.train_result.model.meta.best_val_f1));
  kv.emplace_back("test_macro_f1", detail::fmt(run.eval.macro.f1));
  kv.emplace_back("test_macro_precision", detail::fmt(run.eval.macro.precision));
  kv.emplace_back("test_macro_recall", detail::fmt(run.eval.macro.recall));
  write_kv(kv, out_dir + "/run_manifest.txt");
  return run;
}

// Merges the three per-preset reports into one comparison table shaped like
// the published one: category rows, three metric columns per run.
inline void write_merged_report(const std::vector<std::string>& run_dirs,
                                const std::string& out_path) {
  struct Parsed {
    std::string name;
    std::vector<std::array<std::string, 6>> rows;
  };
  std::vector<Parsed> runs;
  for (const auto& dir : run_dirs) {
    Parsed p;
    if (std::filesystem::exists(dir + "/run_manifest.txt")) {
      p.name = kv_get(read_kv(dir + "/run_manifest.txt"), "preset");
    } else if (std::filesystem::exists(dir + "/eval_manifest.txt")) {
      p.name = "eval_" + std::filesystem::path(dir).filename().string();
    } else {
      throw DataError("write_merged_report: no run or eval manifest in " + dir);
    }
    std::ifstream is(dir + "/report.csv");
    if (!is) throw DataError("write_merged_report: cannot open " + dir + "/report.csv");
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
      std::array<std::string, 6> cells;
      size_t start = 0;
      for (int c = 0; c < 6; ++c) {
        const size_t comma = line.find(',', start);
        cells[static_cast<size_t>(c)] =
            line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        start = comma == std::string::npos ? line.size() : comma + 1;
      }
      p.rows.push_back(cells);
    }
    if (p.rows.size() != kNumCategories + 1) {
      throw FormatError(dir + "/report.csv: expected 9 rows, got " + std::to_string(p.rows.size()));
    }
    runs.push_back(std::move(p));
  }

  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw DataError("write_merged_report: cannot open " + out_path);
  os << "blobs,encoding,category";
  for (const auto& r : runs) {
    os << "," << r.name << "_f1," << r.name << "_precision," << r.name << "_recall";
  }
  os << "\n";
  for (size_t row = 0; row < kNumCategories + 1; ++row) {
    const auto& first = runs.front().rows[row];
    os << first[2] << "," << first[1] << "," << first[0];
    for (const auto& r : runs) {
      os << "," << r.rows[row][3] << "," << r.rows[row][4] << "," << r.rows[row][5];
    }
    os << "\n";
  }
  if (!os) throw DataError("write_merged_report: write failed for " + out_path);
}

}  // namespace hsbit
