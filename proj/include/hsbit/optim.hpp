#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hsbit/tensor.hpp"

namespace hsbit {

// Adam with bias correction. Moments are zero-initialized at step 0 and
// shaped like each registered parameter.
struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int64_t step = 0;
  std::vector<std::vector<float>> first_moment;
  std::vector<std::vector<float>> second_moment;

  void init(const std::vector<TensorPtr>& params) {
    first_moment.clear();
    second_moment.clear();
    step = 0;
    for (const auto& p : params) {
      first_moment.emplace_back(p->data.size(), 0.0f);
      second_moment.emplace_back(p->data.size(), 0.0f);
    }
  }
};

// One update from the gradients stored on the parameters.
inline void adam_step(const std::vector<TensorPtr>& params, AdamState& state) {
  if (state.first_moment.size() != params.size()) {
    throw DimensionError("adam_step: state tracks " + std::to_string(state.first_moment.size()) +
                         " parameters, got " + std::to_string(params.size()));
  }
  state.step += 1;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    auto& p = *params[i];
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    if (m.size() != p.data.size()) {
      throw DimensionError("adam_step: moment length " + std::to_string(m.size()) +
                           " does not match parameter shape " + detail::shape_string(p.shape));
    }
    p.ensure_grad();
    for (size_t j = 0; j < p.data.size(); ++j) {
      const double gj = p.grad[j];
      const double mj = state.beta1 * m[j] + (1.0 - state.beta1) * gj;
      const double vj = state.beta2 * v[j] + (1.0 - state.beta2) * gj * gj;
      m[j] = static_cast<float>(mj);
      v[j] = static_cast<float>(vj);
      const double mhat = mj / c1;
      const double vhat = vj / c2;
      p.data[j] = static_cast<float>(p.data[j] - state.lr * mhat / (std::sqrt(vhat) + state.epsilon));
    }
  }
}

}  // namespace hsbit
