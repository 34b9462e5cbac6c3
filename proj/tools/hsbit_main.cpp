// hsbit: synthetic hyperspectral plastic-flake segmentation toolkit.
//
// Subcommands: generate | train | eval | predict | export | report.
// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical
// failure.

#include <array>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsbit/hsbit.hpp"

namespace {

using namespace hsbit;

std::array<int, 3> parse_three_ints(const std::string& csv, const std::string& flag) {
  std::array<int, 3> out{};
  size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const size_t comma = csv.find(',', start);
    if ((comma == std::string::npos) != (i == 2)) {
      throw UsageError(flag + ": expected three comma-separated integers, got \"" + csv + "\"");
    }
    out[static_cast<size_t>(i)] = std::stoi(csv.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

// Blob counts in display order: PP,PE,PET,PP+PE,PP+PET,PE+PET,PP+PE+PET.
BlobCounts parse_blob_counts(const std::string& csv, const std::string& flag) {
  BlobCounts counts{};
  size_t start = 0;
  std::vector<int> vals;
  while (true) {
    const size_t comma = csv.find(',', start);
    vals.push_back(std::stoi(csv.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.size() != 7) {
    throw UsageError(flag + ": expected seven comma-separated counts, got \"" + csv + "\"");
  }
  const std::array<int, 7> order = {1, 2, 4, 3, 5, 6, 7};
  for (int i = 0; i < 7; ++i) {
    counts[static_cast<size_t>(order[static_cast<size_t>(i)])] = vals[static_cast<size_t>(i)];
  }
  return counts;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> vals;
  size_t start = 0;
  while (true) {
    const size_t comma = csv.find(',', start);
    vals.push_back(std::stoi(csv.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return vals;
}

struct GenerateArgs {
  std::string out;
  uint64_t seed = 7;
  int bands = 224;
  int scenes = 4;
  int extra_scenes = 1;
  int height = 240;
  int width = 270;
  std::string blobs = "8,8,9,2,3,3,3";
  std::string extra_blobs = "8,8,7,0,0,0,0";
  float radius_min = 8.0f, radius_max = 14.0f;
  float extra_radius_min = 12.0f, extra_radius_max = 20.0f;
  float beta_lo = 0.35f, beta_hi = 0.65f;
  int margin = 14, min_gap = 4;
  float sigma_add = 0.01f, sigma_mul = 0.02f, delta_sep = 1.0f;
  int min_slice = 64;
};

void run_generate(const GenerateArgs& a) {
  DatasetConfig cfg;
  cfg.seed = a.seed;
  cfg.num_scenes = a.scenes;
  cfg.num_extra_scenes = a.extra_scenes;
  cfg.scene.bands = a.bands;
  cfg.scene.height = a.height;
  cfg.scene.width = a.width;
  cfg.scene.blob_counts = parse_blob_counts(a.blobs, "--blobs");
  cfg.extra_counts = parse_blob_counts(a.extra_blobs, "--extra-blobs");
  cfg.scene.radius_min = a.radius_min;
  cfg.scene.radius_max = a.radius_max;
  cfg.extra_radius_min = a.extra_radius_min;
  cfg.extra_radius_max = a.extra_radius_max;
  cfg.scene.beta_lo = a.beta_lo;
  cfg.scene.beta_hi = a.beta_hi;
  cfg.scene.margin = a.margin;
  cfg.scene.min_gap = a.min_gap;
  cfg.sigma_add = a.sigma_add;
  cfg.sigma_mul = a.sigma_mul;
  cfg.delta_sep = a.delta_sep;
  cfg.min_slice_extent = a.min_slice;
  auto ds = build_dataset(cfg);
  write_dataset(ds, a.out);
  std::cout << "dataset written to " << a.out << " (" << cfg.num_scenes << " scenes + "
            << cfg.num_extra_scenes << " primary-only)\n";
}

struct TrainArgs {
  std::string data;
  std::string preset = "baseline-bitfield";
  std::string out;
  uint64_t seed = 7;
  // Negative/empty values mean "keep the preset default".
  float threshold = -2.0f;
  int epochs = -1;
  int steps = -1;
  int patch = -1;
  int batch = -1;
  float lr = -1.0f;
  int warmup = -1;
  int reduction = -1;
  std::string channels;
};

ExperimentPreset preset_from_args(const TrainArgs& a) {
  auto preset = make_preset(preset_from_name(a.preset), a.seed);
  if (a.threshold > -1.0f) preset.threshold = a.threshold;
  if (a.epochs >= 0) preset.epochs = a.epochs;
  if (a.steps > 0) preset.steps_per_epoch = a.steps;
  if (a.patch > 0) preset.patch = a.patch;
  if (a.batch > 0) preset.batch = a.batch;
  if (a.lr > 0.0f) preset.lr = a.lr;
  if (a.warmup >= 0) preset.warmup_steps = a.warmup;
  if (a.reduction > 0) preset.model.reduction_channels = a.reduction;
  if (!a.channels.empty()) {
    preset.model.encoder_channels = parse_int_list(a.channels);
    preset.model.depth = static_cast<int>(preset.model.encoder_channels.size()) - 1;
  }
  return preset;
}

void run_train(const TrainArgs& a) {
  auto preset = preset_from_args(a);
  auto run = run_preset(preset, a.data, a.out);
  std::cout << "preset " << a.preset << ": best val macro-F1 "
            << run.train_result.model.meta.best_val_f1 << " (epoch "
            << run.train_result.history.best_epoch << "), test macro-F1 " << run.eval.macro.f1
            << "\nreport: " << a.out << "/report.csv\n";
}

struct EvalArgs {
  std::string data;
  std::string model;
  std::string out;
  float threshold = 0.5f;
};

void run_eval(const EvalArgs& a) {
  auto model = Model::load(a.model);
  auto ds = read_dataset(a.data);
  auto eval = evaluate(model, ds.test, a.threshold);
  auto overlap = overlap_composition_analysis(model, ds.test, a.threshold);
  std::filesystem::create_directories(a.out);
  write_report_csv(eval, ds.blob_counts_main, a.out + "/report.csv");
  write_overlap_csv(overlap, a.out + "/overlap.csv");
  KvList kv;
  kv.emplace_back("command", "eval");
  kv.emplace_back("model", a.model);
  kv.emplace_back("dataset_dir", a.data);
  kv.emplace_back("dataset_hash", hex64(fnv1a64_file(a.data + "/manifest.txt")));
  kv.emplace_back("threshold", std::to_string(a.threshold));
  kv.emplace_back("test_macro_f1", std::to_string(eval.macro.f1));
  kv.emplace_back("test_macro_precision", std::to_string(eval.macro.precision));
  kv.emplace_back("test_macro_recall", std::to_string(eval.macro.recall));
  write_kv(kv, a.out + "/eval_manifest.txt");
  std::cout << "test macro-F1 " << eval.macro.f1 << ", report: " << a.out << "/report.csv\n";
}

struct PredictArgs {
  std::string cube;
  std::string model;
  std::string out;
  std::string view;
  float threshold = 0.5f;
};

void run_predict(const PredictArgs& a) {
  auto model = Model::load(a.model);
  auto cube = read_cube(a.cube);
  auto mask = model.predict(cube, a.threshold);
  write_mask(mask, a.out);
  if (!a.view.empty()) export_mask_view(mask, a.view);
  KvList kv;
  kv.emplace_back("command", "predict");
  kv.emplace_back("cube", a.cube);
  kv.emplace_back("model", a.model);
  kv.emplace_back("threshold", std::to_string(a.threshold));
  kv.emplace_back("out", a.out);
  write_kv(kv, a.out + ".manifest.txt");
  std::cout << "mask written to " << a.out << "\n";
}

struct ExportArgs {
  std::string cube;
  std::string mask;
  std::string out;
  std::string rgb = "";
};

void run_export(const ExportArgs& a) {
  if (a.cube.empty() == a.mask.empty()) {
    throw UsageError("export: pass exactly one of --cube or --mask");
  }
  if (!a.cube.empty()) {
    auto cube = read_cube(a.cube);
    std::array<int, 3> bands = {cube.bands / 6, cube.bands / 2, (5 * cube.bands) / 6};
    if (!a.rgb.empty()) bands = parse_three_ints(a.rgb, "--rgb");
    export_cube_view(cube, a.out, bands);
  } else {
    export_mask_view(read_mask(a.mask), a.out);
  }
  KvList kv;
  kv.emplace_back("command", "export");
  kv.emplace_back("source", a.cube.empty() ? a.mask : a.cube);
  kv.emplace_back("rgb", a.rgb.empty() ? "auto" : a.rgb);
  write_kv(kv, a.out + ".manifest.txt");
  std::cout << "view written to " << a.out << "\n";
}

struct ReportArgs {
  std::vector<std::string> runs;
  std::string out;
};

void run_report(const ReportArgs& a) {
  if (a.runs.empty()) throw UsageError("report: pass at least one --runs directory");
  write_merged_report(a.runs, a.out);
  KvList kv;
  kv.emplace_back("command", "report");
  for (size_t i = 0; i < a.runs.size(); ++i) {
    kv.emplace_back("run_" + std::to_string(i), a.runs[i]);
  }
  write_kv(kv, a.out + ".manifest.txt");
  std::cout << "merged report written to " << a.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperspectral bitfield segmentation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "plain-text config file (key=value); flags take precedence");

  GenerateArgs gen;
  auto* cgen = app.add_subcommand("generate", "generate a synthetic dataset directory");
  cgen->add_option("--out", gen.out, "output dataset directory")->required();
  cgen->add_option("--seed", gen.seed, "master seed");
  cgen->add_option("--bands", gen.bands, "spectral bands");
  cgen->add_option("--scenes", gen.scenes, "number of all-category scenes");
  cgen->add_option("--extra-scenes", gen.extra_scenes, "number of primary-only scenes");
  cgen->add_option("--height", gen.height, "scene height");
  cgen->add_option("--width", gen.width, "scene width");
  cgen->add_option("--blobs", gen.blobs,
                   "per-scene blob counts: PP,PE,PET,PP+PE,PP+PET,PE+PET,PP+PE+PET");
  cgen->add_option("--extra-blobs", gen.extra_blobs, "blob counts for primary-only scenes");
  cgen->add_option("--radius-min", gen.radius_min, "minimum flake radius (px)");
  cgen->add_option("--radius-max", gen.radius_max, "maximum flake radius (px)");
  cgen->add_option("--extra-radius-min", gen.extra_radius_min,
                   "minimum flake radius in primary-only scenes (px)");
  cgen->add_option("--extra-radius-max", gen.extra_radius_max,
                   "maximum flake radius in primary-only scenes (px)");
  cgen->add_option("--beta-lo", gen.beta_lo, "overlap mixing lower bound");
  cgen->add_option("--beta-hi", gen.beta_hi, "overlap mixing upper bound");
  cgen->add_option("--margin", gen.margin, "blob-free border (px)");
  cgen->add_option("--min-gap", gen.min_gap, "minimum gap between flakes (px)");
  cgen->add_option("--sigma-add", gen.sigma_add, "additive noise sigma");
  cgen->add_option("--sigma-mul", gen.sigma_mul, "illumination noise sigma");
  cgen->add_option("--delta-sep", gen.delta_sep, "minimum signature separation");
  cgen->add_option("--min-slice", gen.min_slice, "minimum split extent (px)");

  TrainArgs tr;
  auto* ctr = app.add_subcommand("train", "train an experiment preset");
  ctr->add_option("--data", tr.data, "dataset directory")->required();
  ctr->add_option("--preset", tr.preset, "baseline|baseline-bitfield|bitfield")->required();
  ctr->add_option("--out", tr.out, "run output directory")->required();
  ctr->add_option("--seed", tr.seed, "training seed");
  ctr->add_option("--threshold", tr.threshold, "decoding threshold");
  ctr->add_option("--epochs", tr.epochs, "training epochs");
  ctr->add_option("--steps", tr.steps, "steps per epoch");
  ctr->add_option("--patch", tr.patch, "training patch size");
  ctr->add_option("--batch", tr.batch, "batch size");
  ctr->add_option("--lr", tr.lr, "learning rate");
  ctr->add_option("--warmup", tr.warmup, "learning-rate warmup steps");
  ctr->add_option("--reduction", tr.reduction, "spectral reduction channels");
  ctr->add_option("--channels", tr.channels, "encoder channel widths, e.g. 32,64,128");

  EvalArgs ev;
  auto* cev = app.add_subcommand("eval", "evaluate a checkpoint on a dataset's test split");
  cev->add_option("--data", ev.data, "dataset directory")->required();
  cev->add_option("--model", ev.model, "checkpoint file")->required();
  cev->add_option("--out", ev.out, "output directory")->required();
  cev->add_option("--threshold", ev.threshold, "decoding threshold");

  PredictArgs pr;
  auto* cpr = app.add_subcommand("predict", "predict a mask for one cube");
  cpr->add_option("--cube", pr.cube, "input cube (.hsc)")->required();
  cpr->add_option("--model", pr.model, "checkpoint file")->required();
  cpr->add_option("--out", pr.out, "output mask (.hbm)")->required();
  cpr->add_option("--view", pr.view, "optional color view (.ppm)");
  cpr->add_option("--threshold", pr.threshold, "decoding threshold");

  ExportArgs ex;
  auto* cex = app.add_subcommand("export", "export a cube or mask as a P6 pixmap");
  cex->add_option("--cube", ex.cube, "input cube (.hsc)");
  cex->add_option("--mask", ex.mask, "input mask (.hbm)");
  cex->add_option("--out", ex.out, "output pixmap (.ppm)")->required();
  cex->add_option("--rgb", ex.rgb, "three band indices for RGB, e.g. 30,110,190");

  ReportArgs rp;
  auto* crp = app.add_subcommand("report", "merge preset runs into one comparison table");
  crp->add_option("--runs", rp.runs, "run directories (space separated)")->required();
  crp->add_option("--out", rp.out, "output csv path")->required();

  try {
    app.parse(argc, argv);
    if (cgen->parsed()) run_generate(gen);
    if (ctr->parsed()) run_train(tr);
    if (cev->parsed()) run_eval(ev);
    if (cpr->parsed()) run_predict(pr);
    if (cex->parsed()) run_export(ex);
    if (crp->parsed()) run_report(rp);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
