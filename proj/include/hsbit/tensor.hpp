#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "hsbit/common.hpp"

namespace hsbit {

// Dense row-major float32 array. Gradient storage is allocated lazily on the
// first accumulation so inference tensors stay lean.
struct Tensor {
  std::vector<int> shape;
  std::vector<float> data;
  bool requires_grad = false;
  std::vector<float> grad;
  // Reductions keep their double accumulation here; the gradient checker
  // reads it to stay above the float32 noise floor.
  double scalar_double = std::numeric_limits<double>::quiet_NaN();

  Tensor() = default;
  Tensor(std::vector<int> s, std::vector<float> d, bool rg = false)
      : shape(std::move(s)), data(std::move(d)), requires_grad(rg) {
    if (numel_of(shape) != static_cast<int64_t>(data.size())) {
      throw DimensionError("tensor data length " + std::to_string(data.size()) +
                           " does not match shape " + detail::shape_string(shape));
    }
  }

  static int64_t numel_of(const std::vector<int>& s) {
    int64_t n = 1;
    for (int e : s) {
      if (e <= 0) throw DimensionError("non-positive extent in shape " + detail::shape_string(s));
      n *= e;
    }
    return n;
  }

  int64_t numel() const { return static_cast<int64_t>(data.size()); }
  int dim(int i) const { return shape[static_cast<size_t>(i)]; }
  int ndim() const { return static_cast<int>(shape.size()); }

  float item() const {
    if (numel() != 1) throw UsageError("item() requires a scalar tensor");
    return data[0];
  }

  double item_precise() const {
    if (numel() != 1) throw UsageError("item_precise() requires a scalar tensor");
    return std::isnan(scalar_double) ? static_cast<double>(data[0]) : scalar_double;
  }

  void ensure_grad() {
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0f);
  }

  void zero_grad() {
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0f);
  }

  void accumulate_grad(const std::vector<float>& g) {
    if (!requires_grad) return;
    if (g.size() != data.size()) {
      throw DimensionError("gradient length mismatch: " + std::to_string(g.size()) + " vs " +
                           std::to_string(data.size()));
    }
    ensure_grad();
    for (size_t i = 0; i < g.size(); ++i) grad[i] += g[i];
  }
};

using TensorPtr = std::shared_ptr<Tensor>;

inline TensorPtr make_tensor(std::vector<int> shape, std::vector<float> data, bool rg = false) {
  return std::make_shared<Tensor>(std::move(shape), std::move(data), rg);
}

inline TensorPtr zeros(const std::vector<int>& shape, bool rg = false) {
  return make_tensor(shape, std::vector<float>(static_cast<size_t>(Tensor::numel_of(shape)), 0.0f),
                     rg);
}

inline TensorPtr full(const std::vector<int>& shape, float v, bool rg = false) {
  return make_tensor(shape, std::vector<float>(static_cast<size_t>(Tensor::numel_of(shape)), v),
                     rg);
}

inline TensorPtr ones(const std::vector<int>& shape, bool rg = false) {
  return full(shape, 1.0f, rg);
}

inline TensorPtr uniform(const std::vector<int>& shape, float lo, float hi, std::mt19937_64& rng,
                         bool rg = false) {
  std::vector<float> d(static_cast<size_t>(Tensor::numel_of(shape)));
  std::uniform_real_distribution<float> dist(lo, hi);
  for (auto& v : d) v = dist(rng);
  return make_tensor(shape, std::move(d), rg);
}

inline TensorPtr detach(const TensorPtr& t) {
  return make_tensor(t->shape, t->data, false);
}

// Records the operations of one forward pass in creation order. backward()
// replays them in reverse, which is a valid topological order by
// construction: every consumer of a tensor is recorded after its producer.
class Graph {
 public:
  void record(std::function<void()> backward_fn) { nodes_.push_back(std::move(backward_fn)); }

  size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }

  void backward(const TensorPtr& loss) {
    if (!loss) throw UsageError("backward: null loss tensor");
    if (loss->numel() != 1) {
      throw UsageError("backward requires a scalar loss, got shape " +
                       detail::shape_string(loss->shape));
    }
    if (!loss->requires_grad) {
      throw UsageError("backward: loss does not require gradients");
    }
    loss->ensure_grad();
    loss->grad[0] += 1.0f;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) (*it)();
  }

 private:
  std::vector<std::function<void()>> nodes_;
};

namespace detail {

inline bool wants_grad(const TensorPtr& a) { return a && a->requires_grad; }

inline void check_same_shape(const TensorPtr& a, const TensorPtr& b, const char* op) {
  if (a->shape != b->shape) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_string(a->shape) + " vs " +
                         shape_string(b->shape));
  }
}

}  // namespace detail

// ---- elementwise arithmetic ------------------------------------------------

inline TensorPtr add(Graph* g, const TensorPtr& a, const TensorPtr& b) {
  detail::check_same_shape(a, b, "add");
  std::vector<float> d(a->data.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = a->data[i] + b->data[i];
  auto out = make_tensor(a->shape, std::move(d), a->requires_grad || b->requires_grad);
  if (g && out->requires_grad) {
    g->record([a, b, out]() {
      if (a->requires_grad) a->accumulate_grad(out->grad);
      if (b->requires_grad) b->accumulate_grad(out->grad);
    });
  }
  return out;
}

inline TensorPtr mul(Graph* g, const TensorPtr& a, const TensorPtr& b) {
  detail::check_same_shape(a, b, "mul");
  std::vector<float> d(a->data.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = a->data[i] * b->data[i];
  auto out = make_tensor(a->shape, std::move(d), a->requires_grad || b->requires_grad);
  if (g && out->requires_grad) {
    g->record([a, b, out]() {
      if (a->requires_grad) {
        std::vector<float> ga(a->data.size());
        for (size_t i = 0; i < ga.size(); ++i) ga[i] = b->data[i] * out->grad[i];
        a->accumulate_grad(ga);
      }
      if (b->requires_grad) {
        std::vector<float> gb(b->data.size());
        for (size_t i = 0; i < gb.size(); ++i) gb[i] = a->data[i] * out->grad[i];
        b->accumulate_grad(gb);
      }
    });
  }
  return out;
}

inline TensorPtr scale(Graph* g, const TensorPtr& a, float c) {
  std::vector<float> d(a->data.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = a->data[i] * c;
  auto out = make_tensor(a->shape, std::move(d), a->requires_grad);
  if (a->numel() == 1 && !std::isnan(a->scalar_double)) {
    out->scalar_double = a->scalar_double * static_cast<double>(c);
  }
  if (g && out->requires_grad) {
    g->record([a, out, c]() {
      std::vector<float> ga(a->data.size());
      for (size_t i = 0; i < ga.size(); ++i) ga[i] = c * out->grad[i];
      a->accumulate_grad(ga);
    });
  }
  return out;
}

inline TensorPtr sum(Graph* g, const TensorPtr& a) {
  double s = 0.0;
  for (float v : a->data) s += v;
  auto out = make_tensor({1}, {static_cast<float>(s)}, a->requires_grad);
  out->scalar_double = s;
  if (g && out->requires_grad) {
    g->record([a, out]() {
      std::vector<float> ga(a->data.size(), out->grad[0]);
      a->accumulate_grad(ga);
    });
  }
  return out;
}

// ---- activations -----------------------------------------------------------

// Largest float strictly below 1; keeps TanH outputs inside the open
// interval even when the double result would round to 1.0f.
constexpr float kTanhBound = 0.99999994f;

inline TensorPtr tanh_act(Graph* g, const TensorPtr& a) {
  std::vector<float> d(a->data.size());
  for (size_t i = 0; i < d.size(); ++i) {
    float y = static_cast<float>(std::tanh(static_cast<double>(a->data[i])));
    d[i] = std::clamp(y, -kTanhBound, kTanhBound);
  }
  auto out = make_tensor(a->shape, std::move(d), a->requires_grad);
  if (g && out->requires_grad) {
    g->record([a, out]() {
      std::vector<float> ga(a->data.size());
      for (size_t i = 0; i < ga.size(); ++i) {
        float y = out->data[i];
        ga[i] = (1.0f - y * y) * out->grad[i];
      }
      a->accumulate_grad(ga);
    });
  }
  return out;
}

inline TensorPtr relu(Graph* g, const TensorPtr& a) {
  std::vector<float> d(a->data.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = a->data[i] > 0.0f ? a->data[i] : 0.0f;
  auto out = make_tensor(a->shape, std::move(d), a->requires_grad);
  if (g && out->requires_grad) {
    g->record([a, out]() {
      std::vector<float> ga(a->data.size());
      for (size_t i = 0; i < ga.size(); ++i) ga[i] = a->data[i] > 0.0f ? out->grad[i] : 0.0f;
      a->accumulate_grad(ga);
    });
  }
  return out;
}

// Softmax along one axis, computed with max subtraction. Slices along the
// axis sum to 1 within float rounding.
inline TensorPtr softmax(Graph* g, const TensorPtr& a, int axis) {
  if (axis < 0 || axis >= a->ndim()) {
    throw UsageError("softmax: axis " + std::to_string(axis) + " out of range for shape " +
                     detail::shape_string(a->shape));
  }
  const int n_axis = a->dim(axis);
  int64_t inner = 1, outer = 1;
  for (int i = axis + 1; i < a->ndim(); ++i) inner *= a->dim(i);
  for (int i = 0; i < axis; ++i) outer *= a->dim(i);

  std::vector<float> d(a->data.size());
  const float* src = a->data.data();
  float* dst = d.data();
  for (int64_t o = 0; o < outer; ++o) {
    for (int64_t in = 0; in < inner; ++in) {
      const int64_t base = o * n_axis * inner + in;
      float m = src[base];
      for (int c = 1; c < n_axis; ++c) m = std::max(m, src[base + c * inner]);
      double z = 0.0;
      for (int c = 0; c < n_axis; ++c) {
        const double e = std::exp(static_cast<double>(src[base + c * inner] - m));
        dst[base + c * inner] = static_cast<float>(e);
        z += e;
      }
      const double inv = 1.0 / z;
      for (int c = 0; c < n_axis; ++c) {
        dst[base + c * inner] = static_cast<float>(dst[base + c * inner] * inv);
      }
    }
  }
  auto out = make_tensor(a->shape, std::move(d), a->requires_grad);
  if (g && out->requires_grad) {
    g->record([a, out, n_axis, inner, outer]() {
      std::vector<float> ga(a->data.size());
      for (int64_t o = 0; o < outer; ++o) {
        for (int64_t in = 0; in < inner; ++in) {
          const int64_t base = o * n_axis * inner + in;
          double dot = 0.0;
          for (int c = 0; c < n_axis; ++c) {
            dot += static_cast<double>(out->grad[base + c * inner]) * out->data[base + c * inner];
          }
          for (int c = 0; c < n_axis; ++c) {
            const int64_t i = base + c * inner;
            ga[static_cast<size_t>(i)] =
                out->data[i] * (out->grad[i] - static_cast<float>(dot));
          }
        }
      }
      a->accumulate_grad(ga);
    });
  }
  return out;
}

// ---- losses ----------------------------------------------------------------

inline TensorPtr mse_loss(Graph* g, const TensorPtr& pred, const TensorPtr& target) {
  detail::check_same_shape(pred, target, "mse_loss");
  const int64_t n = pred->numel();
  double acc = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    const double diff = static_cast<double>(pred->data[static_cast<size_t>(i)]) -
                        static_cast<double>(target->data[static_cast<size_t>(i)]);
    acc += diff * diff;
  }
  auto out = make_tensor({1}, {static_cast<float>(acc / static_cast<double>(n))},
                         pred->requires_grad || target->requires_grad);
  out->scalar_double = acc / static_cast<double>(n);
  if (g && out->requires_grad) {
    g->record([pred, target, out, n]() {
      const float go = out->grad[0];
      const float s = 2.0f / static_cast<float>(n);
      if (pred->requires_grad) {
        std::vector<float> gp(pred->data.size());
        for (int64_t i = 0; i < n; ++i) {
          gp[static_cast<size_t>(i)] =
              s * (pred->data[static_cast<size_t>(i)] - target->data[static_cast<size_t>(i)]) * go;
        }
        pred->accumulate_grad(gp);
      }
      if (target->requires_grad) {
        std::vector<float> gt(target->data.size());
        for (int64_t i = 0; i < n; ++i) {
          gt[static_cast<size_t>(i)] =
              -s * (pred->data[static_cast<size_t>(i)] - target->data[static_cast<size_t>(i)]) * go;
        }
        target->accumulate_grad(gt);
      }
    });
  }
  return out;
}

// Mean negative log softmax probability of the true class. Logits are
// [N, C] or [N, C, H, W]; class indices are given per pixel in raster order.
inline TensorPtr cross_entropy(Graph* g, const TensorPtr& logits,
                               const std::vector<int32_t>& classes) {
  if (logits->ndim() != 2 && logits->ndim() != 4) {
    throw DimensionError("cross_entropy: logits must be [N,C] or [N,C,H,W], got " +
                         detail::shape_string(logits->shape));
  }
  const int n = logits->dim(0);
  const int c = logits->dim(1);
  const int64_t inner = logits->numel() / (static_cast<int64_t>(n) * c);
  const int64_t pixels = static_cast<int64_t>(n) * inner;
  if (static_cast<int64_t>(classes.size()) != pixels) {
    throw DimensionError("cross_entropy: " + std::to_string(classes.size()) +
                         " class indices for " + std::to_string(pixels) + " pixels");
  }
  for (int32_t t : classes) {
    if (t < 0 || t >= c) {
      throw DimensionError("cross_entropy: class index " + std::to_string(t) + " outside [0, " +
                           std::to_string(c) + ")");
    }
  }

  const float* src = logits->data.data();
  double acc = 0.0;
  for (int64_t px = 0; px < pixels; ++px) {
    const int64_t batch = px / inner;
    const int64_t in = px % inner;
    const int64_t base = batch * c * inner + in;
    float m = src[base];
    for (int k = 1; k < c; ++k) m = std::max(m, src[base + k * inner]);
    double z = 0.0;
    for (int k = 0; k < c; ++k) z += std::exp(static_cast<double>(src[base + k * inner] - m));
    const double lse = static_cast<double>(m) + std::log(z);
    acc += lse - static_cast<double>(src[base + classes[static_cast<size_t>(px)] * inner]);
  }
  auto out = make_tensor({1}, {static_cast<float>(acc / static_cast<double>(pixels))},
                         logits->requires_grad);
  out->scalar_double = acc / static_cast<double>(pixels);
  if (g && out->requires_grad) {
    g->record([logits, out, classes, c, inner, pixels]() {
      const float go = out->grad[0];
      const float invp = 1.0f / static_cast<float>(pixels);
      std::vector<float> gl(logits->data.size());
      const float* src = logits->data.data();
      for (int64_t px = 0; px < pixels; ++px) {
        const int64_t batch = px / inner;
        const int64_t in = px % inner;
        const int64_t base = batch * c * inner + in;
        float m = src[base];
        for (int k = 1; k < c; ++k) m = std::max(m, src[base + k * inner]);
        double z = 0.0;
        for (int k = 0; k < c; ++k) z += std::exp(static_cast<double>(src[base + k * inner] - m));
        const double inv = 1.0 / z;
        for (int k = 0; k < c; ++k) {
          const double p = std::exp(static_cast<double>(src[base + k * inner] - m)) * inv;
          const float onehot = (k == classes[static_cast<size_t>(px)]) ? 1.0f : 0.0f;
          gl[static_cast<size_t>(base + k * inner)] =
              (static_cast<float>(p) - onehot) * invp * go;
        }
      }
      logits->accumulate_grad(gl);
    });
  }
  return out;
}

inline bool all_finite(const TensorPtr& t) {
  for (float v : t->data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace hsbit
