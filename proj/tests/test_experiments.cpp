#include <gtest/gtest.h>

#include <filesystem>

#include "hsbit/experiments.hpp"

using namespace hsbit;

namespace {

constexpr int kBands = 20;

// Small, fast dataset shared by the suite.
DatasetConfig tiny_dataset_config(uint64_t seed = 7) {
  DatasetConfig cfg;
  cfg.seed = seed;
  cfg.num_scenes = 1;
  cfg.num_extra_scenes = 1;
  cfg.scene.height = 150;
  cfg.scene.width = 180;
  cfg.scene.bands = kBands;
  cfg.scene.blob_counts = {0, 3, 3, 3, 3, 3, 3, 3};
  cfg.scene.radius_min = 6.0f;
  cfg.scene.radius_max = 10.0f;
  cfg.scene.margin = 12;
  cfg.extra_counts = {0, 3, 3, 0, 2, 0, 0, 0};
  cfg.min_slice_extent = 32;
  return cfg;
}

ExperimentPreset tiny_preset(PresetKind kind, uint64_t seed = 7) {
  auto p = make_preset(kind, seed);
  p.patch = 32;
  p.batch = 2;
  p.epochs = 2;
  p.steps_per_epoch = 3;
  p.model.reduction_channels = 8;
  p.model.encoder_channels = {8, 12, 16};
  return p;
}

const Dataset& shared_dataset() {
  static Dataset ds = build_dataset(tiny_dataset_config());
  return ds;
}

TEST(Presets, ContractCombinations) {
  auto base = make_preset(PresetKind::Baseline);
  EXPECT_EQ(base.head, HeadType::Baseline);
  EXPECT_FALSE(base.use_mse);
  EXPECT_FALSE(base.primary_only_training);

  auto bb = make_preset(PresetKind::BaselineBitfield);
  EXPECT_EQ(bb.head, HeadType::Bitfield);
  EXPECT_TRUE(bb.use_mse);
  EXPECT_FALSE(bb.primary_only_training);

  auto bf = make_preset(PresetKind::Bitfield);
  EXPECT_TRUE(bf.primary_only_training);
  EXPECT_TRUE(bf.use_mse);

  // Violating the contract is rejected.
  auto broken = make_preset(PresetKind::Baseline);
  broken.use_mse = true;
  EXPECT_THROW(broken.validate(), ConfigError);

  EXPECT_EQ(preset_from_name("baseline-bitfield"), PresetKind::BaselineBitfield);
  EXPECT_THROW(preset_from_name("unknown"), UsageError);
}

TEST(Train, ZeroEpochsReturnsInitializedModel) {
  auto preset = tiny_preset(PresetKind::BaselineBitfield);
  preset.epochs = 0;
  auto r = train(preset, shared_dataset());
  EXPECT_TRUE(r.history.train_loss.empty());
  EXPECT_EQ(r.history.best_epoch, -1);

  // Parameters equal a freshly built model with the same seed.
  ModelSpec spec = preset.model;
  spec.head = preset.head;
  spec.bands = kBands;
  spec.seed = preset.seed;
  auto fresh = Model::build(spec);
  EXPECT_EQ(r.model.param("reduce.w")->data, fresh.param("reduce.w")->data);
}

TEST(Train, DeterministicHistoryForFixedSeed) {
  auto preset = tiny_preset(PresetKind::BaselineBitfield);
  auto a = train(preset, shared_dataset());
  auto b = train(preset, shared_dataset());
  EXPECT_EQ(a.history.train_loss, b.history.train_loss);
  EXPECT_EQ(a.history.val_loss, b.history.val_loss);
  EXPECT_EQ(a.history.val_macro_f1, b.history.val_macro_f1);
  EXPECT_EQ(a.model.param("head.w")->data, b.model.param("head.w")->data);

  auto c = train(tiny_preset(PresetKind::BaselineBitfield, 8), shared_dataset());
  EXPECT_NE(a.history.train_loss, c.history.train_loss);
}

TEST(Train, HistoryLengthMatchesEpochsRun) {
  auto preset = tiny_preset(PresetKind::Baseline);
  preset.epochs = 3;
  auto r = train(preset, shared_dataset());
  EXPECT_EQ(r.history.train_loss.size(), 3u);
  EXPECT_EQ(r.history.val_loss.size(), 3u);
  EXPECT_EQ(r.history.val_macro_f1.size(), 3u);
  EXPECT_GE(r.history.best_epoch, 0);
  EXPECT_LT(r.history.best_epoch, 3);
}

TEST(Train, OverfitsASinglePatch) {
  // One 32x32 scene as the whole corpus: 200 steps drive the training loss
  // under 0.05.
  Dataset ds;
  ds.library = generate_library(3, kBands);
  SceneConfig sc;
  sc.height = 64;
  sc.width = 64;
  sc.bands = kBands;
  sc.blob_counts = {0, 1, 1, 0, 0, 0, 0, 0};
  sc.radius_min = 6.0f;
  sc.radius_max = 9.0f;
  sc.margin = 8;
  sc.seed = 5;
  auto scene = generate_scene(sc, ds.library);
  LabeledScene patch;
  patch.cube = scene.cube.crop(8, 8, 32, 32);
  patch.truth = scene.truth.crop(8, 8, 32, 32);
  ds.train.push_back(std::move(patch));
  ds.val.push_back(ds.train.front());

  auto preset = tiny_preset(PresetKind::BaselineBitfield);
  preset.patch = 32;
  preset.batch = 1;
  preset.epochs = 4;
  preset.steps_per_epoch = 50;
  preset.model = ModelSpec{};  // default widths
  preset.model.seed = preset.seed;
  auto r = train(preset, ds);
  EXPECT_LT(r.history.train_loss.back(), 0.05f);
}

TEST(Train, EmptyCorpusRejected) {
  Dataset ds;
  ds.library = shared_dataset().library;
  ds.val = shared_dataset().val;
  auto preset = tiny_preset(PresetKind::Bitfield);
  EXPECT_THROW(train(preset, ds), UsageError);
}

TEST(Evaluate, SelfPredictionScoresAllOnes) {
  // Scoring a model's own predictions as truth yields perfect metrics.
  const auto& ds = shared_dataset();
  auto preset = tiny_preset(PresetKind::BaselineBitfield);
  preset.epochs = 1;
  auto r = train(preset, ds);

  std::vector<LabeledScene> self;
  for (const auto& s : ds.test) {
    LabeledScene copy;
    copy.cube = s.cube;
    copy.truth = r.model.predict(s.cube, preset.threshold);
    self.push_back(std::move(copy));
  }
  auto eval = evaluate(r.model, self, preset.threshold);
  int present = 0;
  for (int c = 0; c < kNumCategories; ++c) {
    const auto& m = eval.per_category[static_cast<size_t>(c)];
    if (m.tp + m.fn == 0) continue;  // absent categories score 0 by convention
    ++present;
    EXPECT_DOUBLE_EQ(m.precision, 1.0);
    EXPECT_DOUBLE_EQ(m.recall, 1.0);
    EXPECT_DOUBLE_EQ(m.f1, 1.0);
  }
  EXPECT_GT(present, 0);
  EXPECT_DOUBLE_EQ(eval.macro.f1, present / 8.0);
}

TEST(Evaluate, SceneOrderInvariant) {
  const auto& ds = shared_dataset();
  auto preset = tiny_preset(PresetKind::Baseline);
  preset.epochs = 1;
  auto r = train(preset, ds);

  std::vector<LabeledScene> fwd = ds.test;
  std::vector<LabeledScene> rev(ds.test.rbegin(), ds.test.rend());
  auto a = evaluate(r.model, fwd, 0.5f);
  auto b = evaluate(r.model, rev, 0.5f);
  for (int c = 0; c < kNumCategories; ++c) {
    EXPECT_EQ(a.per_category[static_cast<size_t>(c)].tp, b.per_category[static_cast<size_t>(c)].tp);
    EXPECT_EQ(a.per_category[static_cast<size_t>(c)].fp, b.per_category[static_cast<size_t>(c)].fp);
  }
  EXPECT_DOUBLE_EQ(a.macro.f1, b.macro.f1);
}

TEST(RunPreset, WritesReportCheckpointAndManifest) {
  namespace fs = std::filesystem;
  const auto root = fs::temp_directory_path() / "hsbit_run_preset_test";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto data_dir = (root / "data").string();
  write_dataset(shared_dataset(), data_dir);

  auto preset = tiny_preset(PresetKind::Bitfield);
  preset.epochs = 1;
  const auto out_dir = (root / "run").string();
  auto run = run_preset(preset, data_dir, out_dir);

  // Report: 8 category rows + Average.
  std::ifstream rep(out_dir + "/report.csv");
  ASSERT_TRUE(rep.good());
  std::string line;
  int rows = 0;
  std::getline(rep, line);
  EXPECT_EQ(line, "category,encoding,blobs,f1,precision,recall");
  while (std::getline(rep, line)) ++rows;
  EXPECT_EQ(rows, 9);

  // Bitfield preset trains on zero overlap-category pixels.
  const auto kv = read_kv(out_dir + "/run_manifest.txt");
  EXPECT_EQ(kv_get(kv, "pixels_corpus_PP+PE"), "0");
  EXPECT_EQ(kv_get(kv, "pixels_corpus_PP+PET"), "0");
  EXPECT_EQ(kv_get(kv, "pixels_corpus_PE+PET"), "0");
  EXPECT_EQ(kv_get(kv, "pixels_corpus_PP+PE+PET"), "0");
  EXPECT_NE(kv_get(kv, "pixels_corpus_PP"), "0");
  EXPECT_EQ(kv_get(kv, "training_set"), "primary-only-extra");

  // Checkpoint loads back.
  auto m = Model::load(out_dir + "/checkpoint.hsbm");
  EXPECT_EQ(m.spec().bands, kBands);
  (void)run;

  // Merged report over three copies has the comparison shape.
  write_merged_report({out_dir, out_dir, out_dir}, (root / "merged.csv").string());
  std::ifstream merged(root / "merged.csv");
  int mrows = 0;
  while (std::getline(merged, line)) ++mrows;
  EXPECT_EQ(mrows, 10);  // header + 8 categories + Average
  fs::remove_all(root);
}

TEST(OverlapAnalysis, PerfectAndConstructedPredictors) {
  const auto& ds = shared_dataset();
  // Perfect predictor: use truth as prediction via direct accumulation.
  OverlapComposition perfect;
  for (const auto& s : ds.test) accumulate_overlap_composition(s.truth, s.truth, perfect);
  EXPECT_GT(perfect.twoway_pixels, 0);
  EXPECT_DOUBLE_EQ(perfect.twoway_bit_recall(), 1.0);

  // Constructed predictor: keep only the lowest active bit per pixel.
  OverlapComposition lowest;
  for (const auto& s : ds.test) {
    Mask pred = s.truth;
    for (auto& v : pred.values) {
      if (v != 0) v = static_cast<uint8_t>(v & static_cast<uint8_t>(-v));  // lowest set bit
    }
    accumulate_overlap_composition(s.truth, pred, lowest);
  }
  EXPECT_DOUBLE_EQ(lowest.twoway_exact_recall(), 0.0);
  // The kept constituent's bit recall is 1, the pooled bit recall is 0.5.
  EXPECT_DOUBLE_EQ(lowest.twoway_bit_recall(), 0.5);
  for (int c : {3, 5, 6}) {
    if (lowest.categories[static_cast<size_t>(c)].pixels == 0) continue;
    EXPECT_DOUBLE_EQ(lowest.categories[static_cast<size_t>(c)].subset_rate(), 1.0);
  }
}

}  // namespace
