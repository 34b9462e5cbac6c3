// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failed criteria.
//
// Needs scratch space (HSBIT_ACCEPT_DIR, default /tmp/hsbit_acceptance) and
// the CLI binary path (compiled in as HSBIT_CLI_PATH) for the determinism
// checks.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hsbit/hsbit.hpp"
#include "../oracles.hpp"
#include "../reference_table.hpp"

namespace fs = std::filesystem;
using namespace hsbit;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back("FAIL: " + why);
  }
  void note(const std::string& what) { notes.push_back(what); }
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// ---- C1: gradient correctness ----------------------------------------------

void run_gradient_correctness(Criterion& c) {
  const auto t0 = Clock::now();
  const double kOpTol = 1e-4;

  for (uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);

    {  // conv2d
      auto x = uniform({1, 2, 5, 5}, -1.0f, 1.0f, rng);
      auto k = uniform({3, 2, 3, 3}, -1.0f, 1.0f, rng);
      auto b = uniform({3}, -0.5f, 0.5f, rng);
      auto r = finite_diff_check(
          [](Graph* g, const std::vector<TensorPtr>& in) {
            return mse_loss(g, conv2d(g, in[0], in[1], in[2], 1, 1),
                            zeros({1, 3, 5, 5}));
          },
          {x, k, b});
      c.check(r.ok(kOpTol), "conv2d seed " + std::to_string(seed) + " rel err " +
                                fmt(r.max_rel_error));
    }
    {  // conv_transpose2d
      auto x = uniform({1, 3, 4, 4}, -1.0f, 1.0f, rng);
      auto k = uniform({3, 2, 2, 2}, -1.0f, 1.0f, rng);
      auto b = uniform({2}, -0.5f, 0.5f, rng);
      auto r = finite_diff_check(
          [](Graph* g, const std::vector<TensorPtr>& in) {
            return mse_loss(g, conv_transpose2d(g, in[0], in[1], in[2], 2, 0),
                            zeros({1, 2, 8, 8}));
          },
          {x, k, b});
      c.check(r.ok(kOpTol), "conv_transpose2d seed " + std::to_string(seed) + " rel err " +
                                fmt(r.max_rel_error));
    }
    {  // maxpool (tie-free by construction)
      std::vector<float> vals(1 * 2 * 6 * 6);
      std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
      for (size_t i = 0; i < vals.size(); ++i) {
        vals[i] = dist(rng) + 0.003f * static_cast<float>(i);
      }
      auto x = make_tensor({1, 2, 6, 6}, vals);
      auto target = uniform({1, 2, 3, 3}, -0.5f, 0.5f, rng);
      auto r = finite_diff_check(
          [&target](Graph* g, const std::vector<TensorPtr>& in) {
            return mse_loss(g, maxpool2d(g, in[0], 2, 2).output, target);
          },
          {x});
      c.check(r.ok(kOpTol), "maxpool2d seed " + std::to_string(seed) + " rel err " +
                                fmt(r.max_rel_error));
    }
    {  // tanh / relu / softmax / losses
      auto x = uniform({3, 6}, -2.0f, 2.0f, rng);
      auto r = finite_diff_check(
          [](Graph* g, const std::vector<TensorPtr>& in) {
            auto y = tanh_act(g, in[0]);
            return scale(g, sum(g, y), 1.0f / 18.0f);
          },
          {x});
      c.check(r.ok(kOpTol), "tanh seed " + std::to_string(seed) + " rel err " +
                                fmt(r.max_rel_error));

      auto x2 = uniform({2, 8}, -2.0f, 2.0f, rng);
      auto r2 = finite_diff_check(
          [](Graph* g, const std::vector<TensorPtr>& in) {
            return mse_loss(g, softmax(g, in[0], 1), zeros({2, 8}));
          },
          {x2});
      c.check(r2.ok(kOpTol), "softmax seed " + std::to_string(seed) + " rel err " +
                                 fmt(r2.max_rel_error));

      auto x3 = uniform({2, 7}, -1.5f, 1.5f, rng);
      auto shifted = uniform({2, 7}, -0.5f, 0.5f, rng);
      auto r3 = finite_diff_check(
          [&shifted](Graph* g, const std::vector<TensorPtr>& in) {
            return mse_loss(g, relu(g, in[0]), shifted);
          },
          {x3});
      c.check(r3.ok(kOpTol), "relu seed " + std::to_string(seed) + " rel err " +
                                 fmt(r3.max_rel_error));

      auto logits = uniform({2, 4, 2, 2}, -1.0f, 1.0f, rng);
      std::vector<int32_t> idx(8);
      for (auto& v : idx) v = static_cast<int32_t>(rng() % 4);
      auto r4 = finite_diff_check(
          [&idx](Graph* g, const std::vector<TensorPtr>& in) {
            return cross_entropy(g, in[0], idx);
          },
          {logits});
      c.check(r4.ok(kOpTol), "cross_entropy seed " + std::to_string(seed) + " rel err " +
                                 fmt(r4.max_rel_error));
    }
    {  // full-model spot check, looser 1e-3 bar at float32
      ModelSpec spec;
      spec.bands = 6;
      spec.reduction_channels = 4;
      spec.encoder_channels = {4, 6, 8};
      spec.seed = seed;
      auto model = Model::build(spec);
      model.set_training(true);
      auto x = uniform({1, 6, 8, 8}, 0.0f, 1.0f, rng);
      auto target = uniform({1, 3, 8, 8}, -0.9f, 0.9f, rng);

      auto loss_of = [&]() {
        Graph g;
        auto loss = mse_loss(&g, model.forward(&g, x), target);
        return std::make_pair(loss, std::move(g));
      };
      auto [loss, graph] = loss_of();
      for (auto& p : model.parameters()) {
        p->grad.clear();
        p->ensure_grad();
      }
      graph.backward(loss);

      const double h = 1e-3;
      int idx = 0;
      for (const char* pname : {"reduce.w", "bottleneck.w", "head.w"}) {
        auto p = model.param(pname);
        const size_t j = (p->data.size() / 3) * static_cast<size_t>(idx % 3);
        const float saved = p->data[j];
        const double analytic = p->grad[j];
        p->data[j] = static_cast<float>(saved + h);
        const double fp = loss_of().first->item_precise();
        p->data[j] = static_cast<float>(saved - h);
        const double fm = loss_of().first->item_precise();
        p->data[j] = saved;
        const double numeric = (fp - fm) / (2.0 * h);
        const double rel = std::abs(analytic - numeric) /
                           std::max({1.0, std::abs(analytic), std::abs(numeric)});
        c.check(rel < 1e-3, std::string("model param ") + pname + " seed " +
                                std::to_string(seed) + " rel err " + fmt(rel));
        ++idx;
      }
    }
  }
  const double dt = seconds_since(t0);
  c.check(dt < 60.0, "runtime " + fmt(dt) + "s exceeds 60s");
  c.note("5 seeded instances per op, runtime " + fmt(dt) + "s");
}

// ---- C2: oracle equivalence --------------------------------------------------

void run_oracle_equivalence(Criterion& c) {
  std::mt19937_64 rng(2024);
  int64_t cases = 0;
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (int ch = 1; ch <= 4; ++ch) {
      for (int h = 3; h <= 8; h += (h < 5 ? 1 : 3)) {
        for (int w = 3; w <= 8; w += (w < 5 ? 1 : 3)) {
          for (int f : {1, 3}) {
            for (int k : {1, 2, 3}) {
              for (int stride : {1, 2}) {
                for (int pad : {0, 1}) {
                  if (k > h + 2 * pad || k > w + 2 * pad) continue;
                  auto x = uniform({n, ch, h, w}, -1.0f, 1.0f, rng);
                  auto kk = uniform({f, ch, k, k}, -1.0f, 1.0f, rng);
                  auto b = uniform({f}, -0.5f, 0.5f, rng);
                  auto got = conv2d(nullptr, x, kk, b, stride, pad);
                  auto want = oracle::conv2d_loop(x, kk, b, stride, pad);
                  worst = std::max(worst, oracle::max_abs_diff(got, want));

                  auto kt = uniform({ch, f, k, k}, -1.0f, 1.0f, rng);
                  auto gt = conv_transpose2d(nullptr, x, kt, b, stride, pad);
                  auto wt = oracle::conv_transpose2d_loop(x, kt, b, stride, pad);
                  worst = std::max(worst, oracle::max_abs_diff(gt, wt));
                  cases += 2;
                }
              }
            }
          }
          for (int win : {2, 3}) {
            for (int stride : {1, 2}) {
              if (win > h || win > w) continue;
              auto x = uniform({n, ch, h, w}, -1.0f, 1.0f, rng);
              auto got = maxpool2d(nullptr, x, win, stride).output;
              auto want = oracle::maxpool2d_loop(x, win, stride);
              if (got->data != want->data) {
                c.fail("maxpool mismatch at " + detail::shape_string(x->shape));
              }
              ++cases;
            }
          }
        }
      }
    }
  }
  c.check(worst < 1e-6, "conv vs loop oracle worst diff " + std::to_string(worst));
  c.note(std::to_string(cases) + " cases, conv worst abs diff " + std::to_string(worst));
}

// ---- C3: encoding fixtures ---------------------------------------------------

void run_encoding_fixtures(Criterion& c) {
  c.check(encode({PP, PE}).to_string() == "011", "encode {PP,PE} != 011");
  c.check(encode({PE, PET}).to_string() == "110", "encode {PE,PET} != 110");
  c.check(encode({PP, PE, PET}).to_string() == "111", "encode {PP,PE,PET} != 111");
  c.check(encode({}).to_string() == "000", "encode {} != 000");
  for (int i = 0; i < kNumCategories; ++i) {
    const auto b = index_to_bitfield(i);
    c.check(powerset_to_index(b) == i, "powerset roundtrip broken at " + std::to_string(i));
    c.check(decode(bitfield_to_target(b), 0.5f) == b,
            "target/decode roundtrip broken at " + std::to_string(i));
    const auto& ref = reftable::runs()[0].rows[static_cast<size_t>(
        std::distance(kCategoryDisplayOrder.begin(),
                      std::find(kCategoryDisplayOrder.begin(), kCategoryDisplayOrder.end(), i)))];
    c.check(b.to_string() == ref.encoding,
            "printed code mismatch at category " + std::to_string(i));
  }
  c.note("all 8 codes roundtrip and match the printed encodings");
}

// ---- C4: metric arithmetic vs the published table ----------------------------

void run_metric_arithmetic(Criterion& c) {
  int consistent = 0;
  for (const auto& run : reftable::runs()) {
    double sum_f1 = 0.0, sum_p = 0.0, sum_r = 0.0;
    for (const auto& row : run.rows) {
      const double f1 = CategoryMetrics::f1_score(row.precision, row.recall);
      if (std::abs(f1 - row.f1) <= 0.001) {
        ++consistent;
      } else {
        c.fail(std::string(run.name) + "/" + row.category + ": F1 from (P,R) = " + fmt(f1) +
               " vs printed " + fmt(row.f1) + " (|diff| > 0.001; source table inconsistency)");
      }
      sum_f1 += row.f1;
      sum_p += row.precision;
      sum_r += row.recall;
    }
    const double mf1 = sum_f1 / 8, mp = sum_p / 8, mr = sum_r / 8;
    if (std::abs(mf1 - run.avg_f1) > 0.001) {
      c.fail(std::string(run.name) + ": macro F1 " + fmt(mf1) + " vs printed average " +
             fmt(run.avg_f1));
    }
    if (std::abs(mp - run.avg_precision) > 0.001) {
      c.fail(std::string(run.name) + ": macro precision " + fmt(mp) + " vs printed average " +
             fmt(run.avg_precision));
    }
    if (std::abs(mr - run.avg_recall) > 0.001) {
      c.fail(std::string(run.name) + ": macro recall " + fmt(mr) + " vs printed average " +
             fmt(run.avg_recall));
    }
  }
  c.note(std::to_string(consistent) + "/24 rows have F1 consistent with their (P,R) pair");
}

// ---- C5/C6: synthetic experiments --------------------------------------------

ExperimentPreset experiment_preset(PresetKind kind, uint64_t seed) {
  return make_preset(kind, seed);  // tuned desk-scale defaults
}

std::string dataset_dir_for_seed(const std::string& root, uint64_t seed) {
  const auto dir = root + "/data_seed" + std::to_string(seed);
  if (!fs::exists(dir + "/manifest.txt")) {
    DatasetConfig cfg;
    cfg.seed = seed;
    auto ds = build_dataset(cfg);
    write_dataset(ds, dir);
  }
  return dir;
}

void run_experiment_a(Criterion& c, const std::string& root) {
  const auto t0 = Clock::now();
  const auto data = dataset_dir_for_seed(root, 7);

  for (auto kind : {PresetKind::Baseline, PresetKind::BaselineBitfield}) {
    auto preset = experiment_preset(kind, 7);
    auto run = run_preset(preset, data, root + "/runA_" + preset_name(kind));
    c.note(std::string(preset_name(kind)) + ": test macro-F1 " + fmt(run.eval.macro.f1));
    c.check(run.eval.macro.f1 >= 0.90,
            std::string(preset_name(kind)) + " macro-F1 " + fmt(run.eval.macro.f1) + " < 0.90");
    for (int cat : {1, 2, 4}) {
      const double f1 = run.eval.per_category[static_cast<size_t>(cat)].f1;
      c.check(f1 >= 0.95, std::string(preset_name(kind)) + " " + category_name(cat) + " F1 " +
                              fmt(f1) + " < 0.95");
    }
  }
  const double dt = seconds_since(t0);
  c.check(dt < 900.0, "runtime " + fmt(dt) + "s exceeds 15 minutes");
  c.note("runtime " + fmt(dt) + "s (budget 900s)");
}

void run_experiment_b(Criterion& c, const std::string& root) {
  int passing_seeds = 0;
  std::vector<std::string> seed_notes;
  for (uint64_t seed : {7ull, 13ull, 42ull}) {
    const auto data = dataset_dir_for_seed(root, seed);
    auto preset = experiment_preset(PresetKind::Bitfield, seed);
    auto run = run_preset(preset, data, root + "/runB_seed" + std::to_string(seed));

    bool ok = true;
    std::ostringstream note;
    note << "seed " << seed << ":";
    for (int cat : {1, 2, 4}) {
      const double recall = run.eval.per_category[static_cast<size_t>(cat)].recall;
      note << " " << category_name(cat) << " recall " << fmt(recall);
      if (recall < 0.90) ok = false;
    }
    const double bit = run.overlap.twoway_bit_recall();
    const double exact = run.overlap.twoway_exact_recall();
    note << ", two-way bit recall " << fmt(bit) << " vs exact " << fmt(exact);
    if (!(bit > exact)) ok = false;
    note << (ok ? " [ok]" : " [not ok]");
    seed_notes.push_back(note.str());
    if (ok) ++passing_seeds;
  }
  for (const auto& n : seed_notes) c.note(n);
  c.check(passing_seeds >= 2, "only " + std::to_string(passing_seeds) +
                                  " of 3 seeds satisfy the recall and composition bars");
  c.note(std::to_string(passing_seeds) + "/3 seeds pass (2 required)");
}

// ---- C7: CLI determinism ------------------------------------------------------

#ifndef HSBIT_CLI_PATH
#define HSBIT_CLI_PATH "hsbit"
#endif

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HSBIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

bool files_identical(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::istreambuf_iterator<char> ia(fa), ib(fb), end;
  while (ia != end && ib != end) {
    if (*ia++ != *ib++) return false;
  }
  return ia == end && ib == end;
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
  }
  std::sort(rel.begin(), rel.end());
  std::vector<fs::path> rel_b;
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) rel_b.push_back(fs::relative(e.path(), b));
  }
  std::sort(rel_b.begin(), rel_b.end());
  if (rel != rel_b) {
    why = "file lists differ";
    return false;
  }
  for (const auto& r : rel) {
    if (!files_identical(a / r, b / r)) {
      why = "byte difference in " + r.string();
      return false;
    }
  }
  return true;
}

void run_determinism(Criterion& c, const std::string& root) {
  const std::string small =
      "--bands 16 --scenes 1 --extra-scenes 1 --blobs 3,3,3,3,3,3,3 --extra-blobs 3,3,2,0,0,0,0 "
      "--height 150 --width 180 --radius-min 6 --radius-max 10 --margin 12 --min-slice 32";
  const auto d1 = root + "/det_data1", d2 = root + "/det_data2";
  c.check(run_cli("generate --seed 11 --out " + d1 + " " + small) == 0, "generate run 1 failed");
  c.check(run_cli("generate --seed 11 --out " + d2 + " " + small) == 0, "generate run 2 failed");
  std::string why;
  c.check(dirs_identical(d1, d2, why), "generate outputs differ: " + why);

  const std::string train_flags =
      " --preset bitfield --seed 11 --epochs 2 --steps 4 --patch 32 --reduction 8 --channels "
      "8,12,16";
  const auto r1 = root + "/det_run1", r2 = root + "/det_run2";
  c.check(run_cli("train --data " + d1 + train_flags + " --out " + r1) == 0, "train run 1 failed");
  c.check(run_cli("train --data " + d1 + train_flags + " --out " + r2) == 0, "train run 2 failed");
  c.check(files_identical(r1 + "/checkpoint.hsbm", r2 + "/checkpoint.hsbm"),
          "checkpoints differ between identical train runs");
  c.check(files_identical(r1 + "/report.csv", r2 + "/report.csv"), "train reports differ");

  const auto e1 = root + "/det_eval1", e2 = root + "/det_eval2";
  c.check(run_cli("eval --data " + d1 + " --model " + r1 + "/checkpoint.hsbm --out " + e1) == 0,
          "eval run 1 failed");
  c.check(run_cli("eval --data " + d1 + " --model " + r1 + "/checkpoint.hsbm --out " + e2) == 0,
          "eval run 2 failed");
  c.check(files_identical(e1 + "/report.csv", e2 + "/report.csv"), "eval reports differ");
  c.note("generate/train/eval byte-identical across repeated runs");
}

// ---- C8: format roundtrips ----------------------------------------------------

void run_format_roundtrips(Criterion& c, const std::string& root) {
  fs::create_directories(root + "/fmt");
  auto lib = generate_library(3, 32);
  SceneConfig sc;
  sc.height = 96;
  sc.width = 120;
  sc.bands = 32;
  sc.blob_counts = {0, 2, 1, 1, 1, 0, 0, 0};
  sc.radius_min = 6.0f;
  sc.radius_max = 9.0f;
  sc.margin = 10;
  sc.seed = 3;
  auto scene = generate_scene(sc, lib);

  const auto cube_path = root + "/fmt/cube.hsc";
  write_cube(scene.cube, cube_path);
  auto cube2 = read_cube(cube_path);
  c.check(cube2.data == scene.cube.data && cube2.height == scene.cube.height,
          "HSC1 roundtrip not bit-exact");

  const auto mask_path = root + "/fmt/mask.hbm";
  write_mask(scene.truth, mask_path);
  c.check(read_mask(mask_path) == scene.truth, "HBM1 roundtrip not bit-exact");

  ModelSpec spec;
  spec.bands = 32;
  spec.reduction_channels = 6;
  spec.encoder_channels = {6, 8, 10};
  spec.seed = 5;
  auto model = Model::build(spec);
  const auto ckpt = root + "/fmt/model.hsbm";
  model.save(ckpt);
  auto model2 = Model::load(ckpt);
  bool same = true;
  for (size_t i = 0; i < model.named_parameters().size(); ++i) {
    same = same &&
           model.named_parameters()[i].second->data == model2.named_parameters()[i].second->data;
  }
  c.check(same, "checkpoint roundtrip not bit-exact");

  // Corruption: magic and truncation must be rejected with format errors.
  auto corrupt_magic = [&](const std::string& path) {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("XXXX", 4);
  };
  for (const auto& [path, kind] :
       std::vector<std::pair<std::string, int>>{{cube_path, 0}, {mask_path, 1}, {ckpt, 2}}) {
    corrupt_magic(path);
    bool threw = false;
    try {
      if (kind == 0) read_cube(path);
      if (kind == 1) read_mask(path);
      if (kind == 2) Model::load(path);
    } catch (const FormatError&) {
      threw = true;
    }
    c.check(threw, path + ": corrupted magic not rejected");
  }
  write_cube(scene.cube, cube_path);
  fs::resize_file(cube_path, fs::file_size(cube_path) / 2);
  bool threw = false;
  try {
    read_cube(cube_path);
  } catch (const FormatError&) {
    threw = true;
  }
  c.check(threw, "truncated cube not rejected");
  c.note("HSC1/HBM1/checkpoint bit-exact; corruption rejected");
}

// ---- C9: annotation agreement ---------------------------------------------------

void run_annotation_agreement(Criterion& c) {
  for (uint64_t seed : {7ull, 13ull}) {
    DatasetConfig cfg;
    cfg.seed = seed;
    SceneConfig sc = cfg.scene;  // default geometry and noise
    sc.seed = mix_seed(seed, 0xa0a0);
    auto lib = generate_library(mix_seed(seed, 0x6c696272), sc.bands, cfg.delta_sep);
    auto scene = generate_scene(sc, lib);
    auto mask = annotate(scene.cube, lib);

    const int h = scene.truth.height, w = scene.truth.width;
    std::vector<uint8_t> near_border(static_cast<size_t>(h) * w, 0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const uint8_t v = scene.truth.at(y, x);
        bool edge = false;
        for (int dy = -1; dy <= 1 && !edge; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int yy = y + dy, xx = x + dx;
            if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
            if (scene.truth.at(yy, xx) != v) {
              edge = true;
              break;
            }
          }
        }
        if (!edge) continue;
        for (int dy = -2; dy <= 2; ++dy) {
          for (int dx = -2; dx <= 2; ++dx) {
            const int yy = y + dy, xx = x + dx;
            if (yy >= 0 && yy < h && xx >= 0 && xx < w) {
              near_border[static_cast<size_t>(yy) * w + xx] = 1;
            }
          }
        }
      }
    }

    int64_t agree = 0, disagree = 0, near = 0;
    for (int64_t p = 0; p < scene.truth.pixels(); ++p) {
      if (mask.values[static_cast<size_t>(p)] == scene.truth.values[static_cast<size_t>(p)]) {
        ++agree;
      } else {
        ++disagree;
        if (near_border[static_cast<size_t>(p)]) ++near;
      }
    }
    const double agreement = static_cast<double>(agree) / (agree + disagree);
    c.check(agreement >= 0.95, "seed " + std::to_string(seed) + " agreement " + fmt(agreement) +
                                   " < 0.95");
    if (disagree > 0) {
      const double frac = static_cast<double>(near) / disagree;
      c.check(frac >= 0.9, "seed " + std::to_string(seed) + " only " + fmt(frac) +
                               " of disagreements within 2px of region borders");
      c.note("seed " + std::to_string(seed) + ": agreement " + fmt(agreement) + ", " +
             std::to_string(disagree) + " disagreements, " + fmt(frac) + " near borders");
    } else {
      c.note("seed " + std::to_string(seed) + ": agreement 1.0000 (no disagreements)");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::string root = "/tmp/hsbit_acceptance";
  if (const char* env = std::getenv("HSBIT_ACCEPT_DIR")) root = env;
  if (argc > 1) root = argv[1];
  fs::create_directories(root);

  std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"gradient-correctness", [](Criterion& c) { run_gradient_correctness(c); }},
      {"oracle-equivalence", [](Criterion& c) { run_oracle_equivalence(c); }},
      {"encoding-fixtures", [](Criterion& c) { run_encoding_fixtures(c); }},
      {"metric-arithmetic-fixtures", [](Criterion& c) { run_metric_arithmetic(c); }},
      {"experiment-a-baselines", [&root](Criterion& c) { run_experiment_a(c, root); }},
      {"experiment-b-bitfield", [&root](Criterion& c) { run_experiment_b(c, root); }},
      {"determinism", [&root](Criterion& c) { run_determinism(c, root); }},
      {"format-roundtrips", [&root](Criterion& c) { run_format_roundtrips(c, root); }},
      {"annotation-agreement", [](Criterion& c) { run_annotation_agreement(c); }},
  };

  int failures = 0;
  for (auto& [name, fn] : criteria) {
    Criterion c;
    c.name = name;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << name << "\n";
    for (const auto& n : c.notes) std::cout << "       " << n << "\n";
    std::cout.flush();
    if (!c.pass) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed\n");
  return failures;
}
