#pragma once

#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hsbit/common.hpp"
#include "hsbit/encoding.hpp"
#include "hsbit/nn.hpp"
#include "hsbit/tensor.hpp"
#include "hsbit/types.hpp"

namespace hsbit {

enum class HeadType : uint8_t { Bitfield = 0, Baseline = 1 };

// Topology description for the band-reduction U-net. encoder_channels lists
// the channel width at each encoder scale plus the bottleneck, so its length
// is depth + 1.
struct ModelSpec {
  int bands = 224;
  HeadType head = HeadType::Bitfield;
  int reduction_channels = 32;
  std::vector<int> encoder_channels = {32, 64, 128};
  int depth = 2;
  uint64_t seed = 0;

  int head_channels() const { return head == HeadType::Bitfield ? kNumPrimary : kNumCategories; }
  int pool_factor() const { return 1 << depth; }

  void validate() const {
    if (bands < 1) throw ConfigError("model: bands must be >= 1, got " + std::to_string(bands));
    if (reduction_channels < 1) throw ConfigError("model: reduction_channels must be >= 1");
    if (depth < 1) throw ConfigError("model: depth must be >= 1");
    if (encoder_channels.size() != static_cast<size_t>(depth) + 1) {
      throw ConfigError("model: encoder_channels needs depth+1 = " + std::to_string(depth + 1) +
                        " entries, got " + std::to_string(encoder_channels.size()));
    }
    for (int c : encoder_channels) {
      if (c < 1) throw ConfigError("model: encoder channel widths must be >= 1");
    }
  }
};

struct TrainingMeta {
  uint64_t seed = 0;
  uint32_t epochs = 0;
  float final_train_loss = 0.0f;
  float final_val_loss = 0.0f;
  int32_t best_epoch = -1;
  float best_val_f1 = 0.0f;
};

// U-net over band-reduced cubes: 1x1 spectral reduction, one 3x3 conv block
// per scale with max-pool downsampling, transposed-conv upsampling with skip
// concatenations, and a 1x1 head (TanH scores or softmax logits).
class Model {
 public:
  static Model build(const ModelSpec& spec) {
    spec.validate();
    Model m;
    m.spec_ = spec;
    m.meta.seed = spec.seed;
    std::mt19937_64 rng(spec.seed);

    const int r = spec.reduction_channels;
    m.add_conv_param(rng, "reduce", r, spec.bands, 1, 1);
    int in_ch = r;
    for (int d = 0; d < spec.depth; ++d) {
      const int out_ch = spec.encoder_channels[static_cast<size_t>(d)];
      m.add_conv_param(rng, "enc" + std::to_string(d), out_ch, in_ch, 3, 3);
      in_ch = out_ch;
    }
    const int bott = spec.encoder_channels[static_cast<size_t>(spec.depth)];
    m.add_conv_param(rng, "bottleneck", bott, in_ch, 3, 3);
    in_ch = bott;
    for (int d = spec.depth - 1; d >= 0; --d) {
      const int out_ch = spec.encoder_channels[static_cast<size_t>(d)];
      // Transposed kernels are stored [C_in, C_out, kh, kw].
      m.add_param(rng, "up" + std::to_string(d) + ".w", {in_ch, out_ch, 2, 2}, in_ch * 4,
                  out_ch * 4);
      m.add_zero_param("up" + std::to_string(d) + ".b", {out_ch});
      m.add_conv_param(rng, "dec" + std::to_string(d), out_ch, out_ch * 2, 3, 3);
      in_ch = out_ch;
    }
    m.add_conv_param(rng, "head", spec.head_channels(), in_ch, 1, 1);
    return m;
  }

  const ModelSpec& spec() const { return spec_; }

  // Pre-activation head output [N, C, H, W].
  TensorPtr logits(Graph* g, const TensorPtr& x) const {
    if (x->ndim() != 4 || x->dim(1) != spec_.bands) {
      throw DimensionError("model: input " + detail::shape_string(x->shape) + " does not carry " +
                           std::to_string(spec_.bands) + " bands");
    }
    const int f = spec_.pool_factor();
    if (x->dim(2) % f != 0 || x->dim(3) % f != 0) {
      throw DimensionError("model: spatial extents of " + detail::shape_string(x->shape) +
                           " must be divisible by " + std::to_string(f));
    }

    auto t = relu(g, conv2d(g, x, param("reduce.w"), param("reduce.b"), 1, 0));
    std::vector<TensorPtr> skips;
    for (int d = 0; d < spec_.depth; ++d) {
      t = relu(g, conv2d(g, t, param("enc" + std::to_string(d) + ".w"),
                         param("enc" + std::to_string(d) + ".b"), 1, 1));
      skips.push_back(t);
      t = maxpool2d(g, t, 2, 2).output;
    }
    t = relu(g, conv2d(g, t, param("bottleneck.w"), param("bottleneck.b"), 1, 1));
    for (int d = spec_.depth - 1; d >= 0; --d) {
      t = relu(g, conv_transpose2d(g, t, param("up" + std::to_string(d) + ".w"),
                                   param("up" + std::to_string(d) + ".b"), 2, 0));
      t = concat_channels(g, t, skips[static_cast<size_t>(d)]);
      t = relu(g, conv2d(g, t, param("dec" + std::to_string(d) + ".w"),
                         param("dec" + std::to_string(d) + ".b"), 1, 1));
    }
    return conv2d(g, t, param("head.w"), param("head.b"), 1, 0);
  }

  // Activated score raster: TanH per bit, or per-pixel softmax over classes.
  TensorPtr forward(Graph* g, const TensorPtr& x) const {
    auto z = logits(g, x);
    return spec_.head == HeadType::Bitfield ? tanh_act(g, z) : softmax(g, z, 1);
  }

  // Threshold-decoded bitfield mask (TanH head) or argmax powerset mask
  // (softmax head, ties to the lowest class index). Inputs of any spatial
  // size are mirror-padded to the pooling multiple and cropped back.
  Mask predict(const HyperCube& cube, float threshold = 0.5f) const {
    auto x = pad_reflect_to_multiple(cube.to_tensor(), spec_.pool_factor());
    auto scores = spec_.head == HeadType::Bitfield ? tanh_act(nullptr, logits(nullptr, x))
                                                   : logits(nullptr, x);
    const int h2 = scores->dim(2), w2 = scores->dim(3);
    const int64_t hw = static_cast<int64_t>(h2) * w2;
    Mask mask(cube.height, cube.width);
    for (int y = 0; y < cube.height; ++y) {
      for (int xx = 0; xx < cube.width; ++xx) {
        const int64_t p = static_cast<int64_t>(y) * w2 + xx;
        if (spec_.head == HeadType::Bitfield) {
          ScoreVector s;
          for (int c = 0; c < kNumPrimary; ++c) {
            s.scores[static_cast<size_t>(c)] = scores->data[static_cast<size_t>(c * hw + p)];
          }
          mask.set_bits(y, xx, decode(s, threshold));
        } else {
          int best = 0;
          float bv = scores->data[static_cast<size_t>(p)];
          for (int c = 1; c < kNumCategories; ++c) {
            const float v = scores->data[static_cast<size_t>(c * hw + p)];
            if (v > bv) {
              bv = v;
              best = c;
            }
          }
          mask.at(y, xx) = static_cast<uint8_t>(best);
        }
      }
    }
    return mask;
  }

  std::vector<TensorPtr> parameters() const {
    std::vector<TensorPtr> out;
    out.reserve(params_.size());
    for (const auto& [name, t] : params_) out.push_back(t);
    return out;
  }

  const std::vector<std::pair<std::string, TensorPtr>>& named_parameters() const {
    return params_;
  }

  TensorPtr param(const std::string& name) const {
    for (const auto& [n, t] : params_) {
      if (n == name) return t;
    }
    throw UsageError("model: unknown parameter \"" + name + "\"");
  }

  void set_training(bool on) {
    for (auto& [name, t] : params_) t->requires_grad = on;
  }

  // Deep copies of the parameter payloads, for best-epoch snapshots.
  std::vector<std::vector<float>> snapshot() const {
    std::vector<std::vector<float>> s;
    s.reserve(params_.size());
    for (const auto& [n, t] : params_) s.push_back(t->data);
    return s;
  }

  void restore(const std::vector<std::vector<float>>& s) {
    if (s.size() != params_.size()) throw UsageError("model: snapshot size mismatch");
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i].size() != params_[i].second->data.size()) {
        throw UsageError("model: snapshot shape mismatch at " + params_[i].first);
      }
      params_[i].second->data = s[i];
    }
  }

  // ---- checkpoint file "HSBM" ----------------------------------------------

  void save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("model save: cannot open " + path);
    os.write("HSBM", 4);
    write_u16le(os, 1);  // format version
    write_u8(os, static_cast<uint8_t>(spec_.head));
    write_u32le(os, static_cast<uint32_t>(spec_.bands));
    write_u32le(os, static_cast<uint32_t>(spec_.reduction_channels));
    write_u32le(os, static_cast<uint32_t>(spec_.depth));
    write_u8(os, static_cast<uint8_t>(spec_.encoder_channels.size()));
    for (int c : spec_.encoder_channels) write_u32le(os, static_cast<uint32_t>(c));
    write_u64le(os, spec_.seed);
    write_u64le(os, meta.seed);
    write_u32le(os, meta.epochs);
    write_f32le(os, meta.final_train_loss);
    write_f32le(os, meta.final_val_loss);
    write_u32le(os, static_cast<uint32_t>(meta.best_epoch));
    write_f32le(os, meta.best_val_f1);
    write_u32le(os, static_cast<uint32_t>(params_.size()));
    for (const auto& [name, t] : params_) {
      write_u32le(os, static_cast<uint32_t>(name.size()));
      os.write(name.data(), static_cast<std::streamsize>(name.size()));
      write_u8(os, static_cast<uint8_t>(t->ndim()));
      for (int d : t->shape) write_u32le(os, static_cast<uint32_t>(d));
      write_f32le_array(os, t->data.data(), t->data.size());
    }
    if (!os) throw DataError("model save: write failed for " + path);
  }

  static Model load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("model load: cannot open " + path);
    ByteReader r(is, path);
    r.expect_magic("HSBM");
    const uint16_t version = r.u16();
    if (version != 1) {
      throw FormatError(path + ": unsupported checkpoint version " + std::to_string(version));
    }
    ModelSpec spec;
    const uint8_t head = r.u8();
    if (head > 1) throw FormatError(path + ": unknown head type " + std::to_string(head));
    spec.head = static_cast<HeadType>(head);
    spec.bands = static_cast<int>(r.u32());
    spec.reduction_channels = static_cast<int>(r.u32());
    spec.depth = static_cast<int>(r.u32());
    const uint8_t nch = r.u8();
    spec.encoder_channels.assign(nch, 0);
    for (auto& c : spec.encoder_channels) c = static_cast<int>(r.u32());
    spec.seed = r.u64();

    Model m = build(spec);
    m.meta.seed = r.u64();
    m.meta.epochs = r.u32();
    m.meta.final_train_loss = r.f32();
    m.meta.final_val_loss = r.f32();
    m.meta.best_epoch = static_cast<int32_t>(r.u32());
    m.meta.best_val_f1 = r.f32();
    const uint32_t count = r.u32();
    if (count != m.params_.size()) {
      throw FormatError(path + ": checkpoint stores " + std::to_string(count) +
                        " tensors, topology needs " + std::to_string(m.params_.size()));
    }
    for (auto& [name, t] : m.params_) {
      const uint32_t len = r.u32();
      if (len > 256) throw FormatError(path + ": implausible tensor name length");
      std::string stored(len, '\0');
      r.raw(stored.data(), len);
      if (stored != name) {
        throw FormatError(path + ": tensor \"" + stored + "\" does not match expected \"" + name +
                          "\"");
      }
      const uint8_t ndim = r.u8();
      std::vector<int> shape(ndim);
      for (auto& d : shape) d = static_cast<int>(r.u32());
      if (shape != t->shape) {
        throw FormatError(path + ": tensor \"" + name + "\" has shape " +
                          detail::shape_string(shape) + ", expected " +
                          detail::shape_string(t->shape));
      }
      r.f32_array(t->data.data(), t->data.size());
    }
    return m;
  }

  TrainingMeta meta;

 private:
  // Xavier-uniform weight plus zero bias under the given name.
  void add_conv_param(std::mt19937_64& rng, const std::string& name, int f, int c, int kh, int kw) {
    add_param(rng, name + ".w", {f, c, kh, kw}, c * kh * kw, f * kh * kw);
    add_zero_param(name + ".b", {f});
  }

  void add_param(std::mt19937_64& rng, const std::string& name, const std::vector<int>& shape,
                 int fan_in, int fan_out) {
    const float a = std::sqrt(6.0f / static_cast<float>(fan_in + fan_out));
    params_.emplace_back(name, uniform(shape, -a, a, rng, true));
  }

  void add_zero_param(const std::string& name, const std::vector<int>& shape) {
    params_.emplace_back(name, zeros(shape, true));
  }

  ModelSpec spec_;
  std::vector<std::pair<std::string, TensorPtr>> params_;
};

}  // namespace hsbit
