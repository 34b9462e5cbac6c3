#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hsbit/tensor.hpp"

namespace hsbit {
namespace detail {

// Lowered convolution input, k-major: cols[k*P + p] with k = (c*kh + i)*kw + j
// and p = ho*w_out + wo. Out-of-range taps (padding) are zero.
inline void im2col_kmajor(const float* x, int c_in, int h, int w, int kh, int kw, int stride,
                          int pad, int h_out, int w_out, float* cols) {
  const int64_t p_total = static_cast<int64_t>(h_out) * w_out;
  for (int c = 0; c < c_in; ++c) {
    const float* xc = x + static_cast<int64_t>(c) * h * w;
    for (int i = 0; i < kh; ++i) {
      for (int j = 0; j < kw; ++j) {
        float* row = cols + (static_cast<int64_t>((c * kh + i) * kw + j)) * p_total;
        for (int ho = 0; ho < h_out; ++ho) {
          const int hi = ho * stride - pad + i;
          float* dst = row + static_cast<int64_t>(ho) * w_out;
          if (hi < 0 || hi >= h) {
            std::fill(dst, dst + w_out, 0.0f);
            continue;
          }
          const float* src = xc + static_cast<int64_t>(hi) * w;
          for (int wo = 0; wo < w_out; ++wo) {
            const int wi = wo * stride - pad + j;
            dst[wo] = (wi < 0 || wi >= w) ? 0.0f : src[wi];
          }
        }
      }
    }
  }
}

// Same lowering but p-major: colsT[p*K + k]. Used by the weight-gradient GEMM
// so its inner loop runs over contiguous memory.
inline void im2col_pmajor(const float* x, int c_in, int h, int w, int kh, int kw, int stride,
                          int pad, int h_out, int w_out, float* cols_t) {
  const int k_total = c_in * kh * kw;
  for (int ho = 0; ho < h_out; ++ho) {
    for (int wo = 0; wo < w_out; ++wo) {
      float* row = cols_t + (static_cast<int64_t>(ho) * w_out + wo) * k_total;
      int k = 0;
      for (int c = 0; c < c_in; ++c) {
        const float* xc = x + static_cast<int64_t>(c) * h * w;
        for (int i = 0; i < kh; ++i) {
          const int hi = ho * stride - pad + i;
          for (int j = 0; j < kw; ++j, ++k) {
            const int wi = wo * stride - pad + j;
            row[k] = (hi < 0 || hi >= h || wi < 0 || wi >= w)
                         ? 0.0f
                         : xc[static_cast<int64_t>(hi) * w + wi];
          }
        }
      }
    }
  }
}

// acc[m*n_cols + :] += a_scalar * b_row[:], the building block of every GEMM
// here. Accumulation runs in double so results match a double-precision
// reference loop to within one float rounding of the output.
inline void axpy_f32_to_f64(double* acc, const float* row, float a, int64_t n) {
  const double ad = static_cast<double>(a);
  for (int64_t i = 0; i < n; ++i) acc[i] += ad * static_cast<double>(row[i]);
}

struct Conv2dDims {
  int n, c_in, h, w, f, kh, kw, h_out, w_out;
  int64_t p_total, k_total;
};

inline Conv2dDims conv2d_dims(const TensorPtr& input, const TensorPtr& kernel,
                              const TensorPtr& bias, int stride, int padding) {
  if (input->ndim() != 4 || kernel->ndim() != 4) {
    throw DimensionError("conv2d: expected input [N,C,H,W] and kernel [F,C,kh,kw], got " +
                         shape_string(input->shape) + " and " + shape_string(kernel->shape));
  }
  if (stride < 1) throw UsageError("conv2d: stride must be >= 1");
  if (padding < 0) throw UsageError("conv2d: padding must be >= 0");
  Conv2dDims d{};
  d.n = input->dim(0);
  d.c_in = input->dim(1);
  d.h = input->dim(2);
  d.w = input->dim(3);
  d.f = kernel->dim(0);
  d.kh = kernel->dim(2);
  d.kw = kernel->dim(3);
  if (kernel->dim(1) != d.c_in) {
    throw DimensionError("conv2d: input channels do not match kernel channels, input " +
                         shape_string(input->shape) + " kernel " + shape_string(kernel->shape));
  }
  if (bias && (bias->ndim() != 1 || bias->dim(0) != d.f)) {
    throw DimensionError("conv2d: bias shape " + shape_string(bias->shape) + " does not match " +
                         std::to_string(d.f) + " filters");
  }
  if (d.kh > d.h + 2 * padding || d.kw > d.w + 2 * padding) {
    throw DimensionError("conv2d: kernel " + shape_string(kernel->shape) +
                         " larger than padded input " + shape_string(input->shape));
  }
  d.h_out = (d.h + 2 * padding - d.kh) / stride + 1;
  d.w_out = (d.w + 2 * padding - d.kw) / stride + 1;
  d.p_total = static_cast<int64_t>(d.h_out) * d.w_out;
  d.k_total = static_cast<int64_t>(d.c_in) * d.kh * d.kw;
  return d;
}

}  // namespace detail

// 2D cross-correlation over [N,C,H,W] with kernel [F,C,kh,kw] and optional
// bias [F]. H' = (H + 2*padding - kh)/stride + 1 (floor).
inline TensorPtr conv2d(Graph* g, const TensorPtr& input, const TensorPtr& kernel,
                        const TensorPtr& bias, int stride = 1, int padding = 0) {
  const auto d = detail::conv2d_dims(input, kernel, bias, stride, padding);
  auto out = zeros({d.n, d.f, d.h_out, d.w_out},
                   input->requires_grad || kernel->requires_grad ||
                       (bias && bias->requires_grad));

  std::vector<float> cols(static_cast<size_t>(d.k_total * d.p_total));
  std::vector<double> acc(static_cast<size_t>(d.f) * static_cast<size_t>(d.p_total));
  const int64_t in_stride = static_cast<int64_t>(d.c_in) * d.h * d.w;
  const int64_t out_stride = static_cast<int64_t>(d.f) * d.p_total;
  for (int n = 0; n < d.n; ++n) {
    detail::im2col_kmajor(input->data.data() + n * in_stride, d.c_in, d.h, d.w, d.kh, d.kw, stride,
                          padding, d.h_out, d.w_out, cols.data());
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int f = 0; f < d.f; ++f) {
      double* arow = acc.data() + static_cast<int64_t>(f) * d.p_total;
      const float* wrow = kernel->data.data() + static_cast<int64_t>(f) * d.k_total;
      for (int64_t k = 0; k < d.k_total; ++k) {
        detail::axpy_f32_to_f64(arow, cols.data() + k * d.p_total, wrow[k], d.p_total);
      }
    }
    float* dst = out->data.data() + n * out_stride;
    for (int f = 0; f < d.f; ++f) {
      const double b = bias ? static_cast<double>(bias->data[static_cast<size_t>(f)]) : 0.0;
      const double* arow = acc.data() + static_cast<int64_t>(f) * d.p_total;
      for (int64_t p = 0; p < d.p_total; ++p) {
        dst[f * d.p_total + p] = static_cast<float>(arow[p] + b);
      }
    }
  }

  if (g && out->requires_grad) {
    g->record([input, kernel, bias, out, d, stride, padding]() {
      const int64_t in_stride = static_cast<int64_t>(d.c_in) * d.h * d.w;
      const int64_t out_stride = static_cast<int64_t>(d.f) * d.p_total;

      if (bias && bias->requires_grad) {
        std::vector<float> db(static_cast<size_t>(d.f));
        for (int f = 0; f < d.f; ++f) {
          double s = 0.0;
          for (int n = 0; n < d.n; ++n) {
            const float* gy = out->grad.data() + n * out_stride + f * d.p_total;
            for (int64_t p = 0; p < d.p_total; ++p) s += gy[p];
          }
          db[static_cast<size_t>(f)] = static_cast<float>(s);
        }
        bias->accumulate_grad(db);
      }

      if (kernel->requires_grad) {
        std::vector<float> cols_t(static_cast<size_t>(d.k_total * d.p_total));
        std::vector<double> accw(kernel->data.size(), 0.0);
        for (int n = 0; n < d.n; ++n) {
          detail::im2col_pmajor(input->data.data() + n * in_stride, d.c_in, d.h, d.w, d.kh, d.kw,
                                stride, padding, d.h_out, d.w_out, cols_t.data());
          for (int f = 0; f < d.f; ++f) {
            double* arow = accw.data() + static_cast<int64_t>(f) * d.k_total;
            const float* gy = out->grad.data() + n * out_stride + f * d.p_total;
            for (int64_t p = 0; p < d.p_total; ++p) {
              detail::axpy_f32_to_f64(arow, cols_t.data() + p * d.k_total, gy[p], d.k_total);
            }
          }
        }
        std::vector<float> dw(kernel->data.size());
        for (size_t i = 0; i < dw.size(); ++i) dw[i] = static_cast<float>(accw[i]);
        kernel->accumulate_grad(dw);
      }

      if (input->requires_grad) {
        std::vector<double> acc_cols(static_cast<size_t>(d.k_total * d.p_total));
        std::vector<double> acc_x(static_cast<size_t>(in_stride));
        std::vector<float> dx(input->data.size());
        for (int n = 0; n < d.n; ++n) {
          std::fill(acc_cols.begin(), acc_cols.end(), 0.0);
          for (int64_t k = 0; k < d.k_total; ++k) {
            double* arow = acc_cols.data() + k * d.p_total;
            for (int f = 0; f < d.f; ++f) {
              detail::axpy_f32_to_f64(arow, out->grad.data() + n * out_stride + f * d.p_total,
                                      kernel->data[static_cast<size_t>(f * d.k_total + k)],
                                      d.p_total);
            }
          }
          // col2im: scatter lowered gradients back onto input pixels.
          std::fill(acc_x.begin(), acc_x.end(), 0.0);
          for (int c = 0; c < d.c_in; ++c) {
            for (int i = 0; i < d.kh; ++i) {
              for (int j = 0; j < d.kw; ++j) {
                const double* row =
                    acc_cols.data() + (static_cast<int64_t>((c * d.kh + i) * d.kw + j)) * d.p_total;
                for (int ho = 0; ho < d.h_out; ++ho) {
                  const int hi = ho * stride - padding + i;
                  if (hi < 0 || hi >= d.h) continue;
                  double* dstrow = acc_x.data() + (static_cast<int64_t>(c) * d.h + hi) * d.w;
                  const double* srcrow = row + static_cast<int64_t>(ho) * d.w_out;
                  for (int wo = 0; wo < d.w_out; ++wo) {
                    const int wi = wo * stride - padding + j;
                    if (wi < 0 || wi >= d.w) continue;
                    dstrow[wi] += srcrow[wo];
                  }
                }
              }
            }
          }
          float* dxn = dx.data() + n * in_stride;
          for (int64_t i = 0; i < in_stride; ++i) dxn[i] = static_cast<float>(acc_x[static_cast<size_t>(i)]);
        }
        input->accumulate_grad(dx);
      }
    });
  }
  return out;
}

// Transposed convolution (the adjoint of conv2d) over [N,C,H,W] with kernel
// [C,F,kh,kw]. H' = (H-1)*stride - 2*padding + kh. With a 2x2 kernel and
// stride 2 it exactly doubles the spatial extent.
inline TensorPtr conv_transpose2d(Graph* g, const TensorPtr& input, const TensorPtr& kernel,
                                  const TensorPtr& bias, int stride = 1, int padding = 0) {
  if (input->ndim() != 4 || kernel->ndim() != 4) {
    throw DimensionError("conv_transpose2d: expected input [N,C,H,W] and kernel [C,F,kh,kw], got " +
                         detail::shape_string(input->shape) + " and " +
                         detail::shape_string(kernel->shape));
  }
  if (stride < 1) throw UsageError("conv_transpose2d: stride must be >= 1");
  if (padding < 0) throw UsageError("conv_transpose2d: padding must be >= 0");
  const int n = input->dim(0), c_in = input->dim(1), h = input->dim(2), w = input->dim(3);
  const int f = kernel->dim(1), kh = kernel->dim(2), kw = kernel->dim(3);
  if (kernel->dim(0) != c_in) {
    throw DimensionError("conv_transpose2d: input channels do not match kernel channels, input " +
                         detail::shape_string(input->shape) + " kernel " +
                         detail::shape_string(kernel->shape));
  }
  if (bias && (bias->ndim() != 1 || bias->dim(0) != f)) {
    throw DimensionError("conv_transpose2d: bias shape " + detail::shape_string(bias->shape) +
                         " does not match " + std::to_string(f) + " filters");
  }
  const int h_out = (h - 1) * stride - 2 * padding + kh;
  const int w_out = (w - 1) * stride - 2 * padding + kw;
  if (h_out < 1 || w_out < 1) {
    throw DimensionError("conv_transpose2d: non-positive output extent for input " +
                         detail::shape_string(input->shape));
  }

  auto out = zeros({n, f, h_out, w_out}, input->requires_grad || kernel->requires_grad ||
                                             (bias && bias->requires_grad));
  const int64_t in_stride = static_cast<int64_t>(c_in) * h * w;
  const int64_t out_stride = static_cast<int64_t>(f) * h_out * w_out;
  std::vector<double> acc(static_cast<size_t>(out_stride));
  for (int b = 0; b < n; ++b) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int c = 0; c < c_in; ++c) {
      const float* xc = input->data.data() + b * in_stride + static_cast<int64_t>(c) * h * w;
      for (int fo = 0; fo < f; ++fo) {
        const float* kcf = kernel->data.data() + (static_cast<int64_t>(c) * f + fo) * kh * kw;
        double* af = acc.data() + static_cast<int64_t>(fo) * h_out * w_out;
        for (int y = 0; y < h; ++y) {
          for (int x = 0; x < w; ++x) {
            const double xv = static_cast<double>(xc[static_cast<int64_t>(y) * w + x]);
            if (xv == 0.0) continue;
            for (int i = 0; i < kh; ++i) {
              const int oy = y * stride - padding + i;
              if (oy < 0 || oy >= h_out) continue;
              for (int j = 0; j < kw; ++j) {
                const int ox = x * stride - padding + j;
                if (ox < 0 || ox >= w_out) continue;
                af[static_cast<int64_t>(oy) * w_out + ox] +=
                    xv * static_cast<double>(kcf[i * kw + j]);
              }
            }
          }
        }
      }
    }
    float* dst = out->data.data() + b * out_stride;
    for (int fo = 0; fo < f; ++fo) {
      const double bv = bias ? static_cast<double>(bias->data[static_cast<size_t>(fo)]) : 0.0;
      const double* af = acc.data() + static_cast<int64_t>(fo) * h_out * w_out;
      for (int64_t p = 0; p < static_cast<int64_t>(h_out) * w_out; ++p) {
        dst[fo * static_cast<int64_t>(h_out) * w_out + p] = static_cast<float>(af[p] + bv);
      }
    }
  }

  if (g && out->requires_grad) {
    g->record([input, kernel, bias, out, n, c_in, h, w, f, kh, kw, h_out, w_out, stride,
               padding]() {
      const int64_t in_stride = static_cast<int64_t>(c_in) * h * w;
      const int64_t out_stride = static_cast<int64_t>(f) * h_out * w_out;

      if (bias && bias->requires_grad) {
        std::vector<float> db(static_cast<size_t>(f));
        for (int fo = 0; fo < f; ++fo) {
          double s = 0.0;
          for (int b = 0; b < n; ++b) {
            const float* gy =
                out->grad.data() + b * out_stride + static_cast<int64_t>(fo) * h_out * w_out;
            for (int64_t p = 0; p < static_cast<int64_t>(h_out) * w_out; ++p) s += gy[p];
          }
          db[static_cast<size_t>(fo)] = static_cast<float>(s);
        }
        bias->accumulate_grad(db);
      }

      if (input->requires_grad) {
        std::vector<float> dx(input->data.size());
        for (int b = 0; b < n; ++b) {
          for (int c = 0; c < c_in; ++c) {
            float* dxc = dx.data() + b * in_stride + static_cast<int64_t>(c) * h * w;
            for (int y = 0; y < h; ++y) {
              for (int x = 0; x < w; ++x) {
                double s = 0.0;
                for (int fo = 0; fo < f; ++fo) {
                  const float* kcf =
                      kernel->data.data() + (static_cast<int64_t>(c) * f + fo) * kh * kw;
                  const float* gy =
                      out->grad.data() + b * out_stride + static_cast<int64_t>(fo) * h_out * w_out;
                  for (int i = 0; i < kh; ++i) {
                    const int oy = y * stride - padding + i;
                    if (oy < 0 || oy >= h_out) continue;
                    for (int j = 0; j < kw; ++j) {
                      const int ox = x * stride - padding + j;
                      if (ox < 0 || ox >= w_out) continue;
                      s += static_cast<double>(kcf[i * kw + j]) *
                           static_cast<double>(gy[static_cast<int64_t>(oy) * w_out + ox]);
                    }
                  }
                }
                dxc[static_cast<int64_t>(y) * w + x] = static_cast<float>(s);
              }
            }
          }
        }
        input->accumulate_grad(dx);
      }

      if (kernel->requires_grad) {
        std::vector<double> acck(kernel->data.size(), 0.0);
        for (int b = 0; b < n; ++b) {
          for (int c = 0; c < c_in; ++c) {
            const float* xc = input->data.data() + b * in_stride + static_cast<int64_t>(c) * h * w;
            for (int fo = 0; fo < f; ++fo) {
              double* kcf = acck.data() + (static_cast<int64_t>(c) * f + fo) * kh * kw;
              const float* gy =
                  out->grad.data() + b * out_stride + static_cast<int64_t>(fo) * h_out * w_out;
              for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                  const double xv = static_cast<double>(xc[static_cast<int64_t>(y) * w + x]);
                  if (xv == 0.0) continue;
                  for (int i = 0; i < kh; ++i) {
                    const int oy = y * stride - padding + i;
                    if (oy < 0 || oy >= h_out) continue;
                    for (int j = 0; j < kw; ++j) {
                      const int ox = x * stride - padding + j;
                      if (ox < 0 || ox >= w_out) continue;
                      kcf[i * kw + j] +=
                          xv * static_cast<double>(gy[static_cast<int64_t>(oy) * w_out + ox]);
                    }
                  }
                }
              }
            }
          }
        }
        std::vector<float> dk(kernel->data.size());
        for (size_t i = 0; i < dk.size(); ++i) dk[i] = static_cast<float>(acck[i]);
        kernel->accumulate_grad(dk);
      }
    });
  }
  return out;
}

struct MaxPool2dResult {
  TensorPtr output;
  // Flat index into the input tensor of each output element's maximum.
  std::vector<int64_t> argmax;
};

// Per-window maximum over [N,C,H,W]. Ties resolve to the first element in
// scan order; the index map routes gradients in the backward pass.
inline MaxPool2dResult maxpool2d(Graph* g, const TensorPtr& input, int window, int stride) {
  if (input->ndim() != 4) {
    throw DimensionError("maxpool2d: expected [N,C,H,W], got " +
                         detail::shape_string(input->shape));
  }
  if (window < 1 || stride < 1) throw UsageError("maxpool2d: window and stride must be >= 1");
  const int n = input->dim(0), c = input->dim(1), h = input->dim(2), w = input->dim(3);
  if (window > h || window > w) {
    throw DimensionError("maxpool2d: window " + std::to_string(window) +
                         " exceeds spatial extents of " + detail::shape_string(input->shape));
  }
  const int h_out = (h - window) / stride + 1;
  const int w_out = (w - window) / stride + 1;

  auto out = zeros({n, c, h_out, w_out}, input->requires_grad);
  std::vector<int64_t> argmax(static_cast<size_t>(out->numel()));
  int64_t o = 0;
  for (int b = 0; b < n; ++b) {
    for (int ch = 0; ch < c; ++ch) {
      const float* xc =
          input->data.data() + (static_cast<int64_t>(b) * c + ch) * static_cast<int64_t>(h) * w;
      const int64_t base = (static_cast<int64_t>(b) * c + ch) * static_cast<int64_t>(h) * w;
      for (int ho = 0; ho < h_out; ++ho) {
        for (int wo = 0; wo < w_out; ++wo, ++o) {
          const int hi0 = ho * stride, wi0 = wo * stride;
          float best = xc[static_cast<int64_t>(hi0) * w + wi0];
          int64_t best_idx = base + static_cast<int64_t>(hi0) * w + wi0;
          for (int i = 0; i < window; ++i) {
            for (int j = 0; j < window; ++j) {
              const int64_t idx = base + static_cast<int64_t>(hi0 + i) * w + (wi0 + j);
              const float v = input->data[static_cast<size_t>(idx)];
              if (v > best) {
                best = v;
                best_idx = idx;
              }
            }
          }
          out->data[static_cast<size_t>(o)] = best;
          argmax[static_cast<size_t>(o)] = best_idx;
        }
      }
    }
  }

  if (g && out->requires_grad) {
    auto indices = argmax;  // routing copy owned by the closure
    g->record([input, out, indices]() {
      std::vector<float> dx(input->data.size(), 0.0f);
      for (size_t i = 0; i < indices.size(); ++i) {
        dx[static_cast<size_t>(indices[i])] += out->grad[i];
      }
      input->accumulate_grad(dx);
    });
  }
  return {out, std::move(argmax)};
}

// Concatenate two [N,C,H,W] tensors along the channel axis.
inline TensorPtr concat_channels(Graph* g, const TensorPtr& a, const TensorPtr& b) {
  if (a->ndim() != 4 || b->ndim() != 4 || a->dim(0) != b->dim(0) || a->dim(2) != b->dim(2) ||
      a->dim(3) != b->dim(3)) {
    throw DimensionError("concat_channels: incompatible shapes " + detail::shape_string(a->shape) +
                         " and " + detail::shape_string(b->shape));
  }
  const int n = a->dim(0), ca = a->dim(1), cb = b->dim(1), h = a->dim(2), w = a->dim(3);
  const int64_t hw = static_cast<int64_t>(h) * w;
  auto out = zeros({n, ca + cb, h, w}, a->requires_grad || b->requires_grad);
  for (int bn = 0; bn < n; ++bn) {
    std::copy_n(a->data.data() + bn * ca * hw, ca * hw, out->data.data() + bn * (ca + cb) * hw);
    std::copy_n(b->data.data() + bn * cb * hw, cb * hw,
                out->data.data() + bn * (ca + cb) * hw + ca * hw);
  }
  if (g && out->requires_grad) {
    g->record([a, b, out, n, ca, cb, hw]() {
      if (a->requires_grad) {
        std::vector<float> ga(a->data.size());
        for (int bn = 0; bn < n; ++bn) {
          std::copy_n(out->grad.data() + bn * (ca + cb) * hw, ca * hw, ga.data() + bn * ca * hw);
        }
        a->accumulate_grad(ga);
      }
      if (b->requires_grad) {
        std::vector<float> gb(b->data.size());
        for (int bn = 0; bn < n; ++bn) {
          std::copy_n(out->grad.data() + bn * (ca + cb) * hw + ca * hw, cb * hw,
                      gb.data() + bn * cb * hw);
        }
        b->accumulate_grad(gb);
      }
    });
  }
  return out;
}

// Mirror-pad the bottom/right of [N,C,H,W] so spatial extents hit a target
// multiple. Inference-only helper (no gradient).
inline TensorPtr pad_reflect_to_multiple(const TensorPtr& x, int multiple) {
  const int n = x->dim(0), c = x->dim(1), h = x->dim(2), w = x->dim(3);
  const int ph = (multiple - h % multiple) % multiple;
  const int pw = (multiple - w % multiple) % multiple;
  if (ph == 0 && pw == 0) return x;
  if (ph >= h || pw >= w) {
    throw DimensionError("pad_reflect_to_multiple: input " + detail::shape_string(x->shape) +
                         " too small to mirror-pad to a multiple of " + std::to_string(multiple));
  }
  const int h2 = h + ph, w2 = w + pw;
  auto out = zeros({n, c, h2, w2});
  for (int b = 0; b < n; ++b) {
    for (int ch = 0; ch < c; ++ch) {
      const float* src = x->data.data() + (static_cast<int64_t>(b) * c + ch) * h * w;
      float* dst = out->data.data() + (static_cast<int64_t>(b) * c + ch) * h2 * w2;
      for (int y = 0; y < h2; ++y) {
        const int sy = y < h ? y : 2 * h - 1 - y;
        for (int xx = 0; xx < w2; ++xx) {
          const int sx = xx < w ? xx : 2 * w - 1 - xx;
          dst[static_cast<int64_t>(y) * w2 + xx] = src[static_cast<int64_t>(sy) * w + sx];
        }
      }
    }
  }
  return out;
}

}  // namespace hsbit
