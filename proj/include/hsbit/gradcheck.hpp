#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hsbit/tensor.hpp"

namespace hsbit {

struct GradCheckReport {
  double max_rel_error = 0.0;
  // Location of the worst element: input index and flat element offset.
  size_t worst_input = 0;
  int64_t worst_element = -1;
  double analytic = 0.0;
  double numeric = 0.0;

  bool ok(double tolerance) const { return max_rel_error < tolerance; }
};

// Compares tape gradients against central finite differences for a scalar
// function of the given inputs. The relative error uses a unit floor in the
// denominator, so near-zero gradients are held to an absolute bar instead.
inline GradCheckReport finite_diff_check(
    const std::function<TensorPtr(Graph*, const std::vector<TensorPtr>&)>& fn,
    const std::vector<TensorPtr>& inputs, double h = 1e-3) {
  for (const auto& in : inputs) in->requires_grad = true;

  Graph graph;
  auto loss = fn(&graph, inputs);
  if (loss->numel() != 1) {
    throw UsageError("finite_diff_check: function under test must return a scalar");
  }
  for (const auto& in : inputs) {
    in->grad.clear();
    in->ensure_grad();
  }
  graph.backward(loss);

  std::vector<std::vector<float>> analytic;
  analytic.reserve(inputs.size());
  for (const auto& in : inputs) analytic.push_back(in->grad);

  GradCheckReport report;
  for (size_t which = 0; which < inputs.size(); ++which) {
    auto& t = *inputs[which];
    for (size_t j = 0; j < t.data.size(); ++j) {
      const float saved = t.data[j];
      const float xp = static_cast<float>(static_cast<double>(saved) + h);
      const float xm = static_cast<float>(static_cast<double>(saved) - h);

      t.data[j] = xp;
      const double fp = fn(nullptr, inputs)->item_precise();
      t.data[j] = xm;
      const double fm = fn(nullptr, inputs)->item_precise();
      t.data[j] = saved;

      const double numeric = (fp - fm) / (static_cast<double>(xp) - static_cast<double>(xm));
      const double exact = analytic[which][j];
      const double denom = std::max({1.0, std::abs(exact), std::abs(numeric)});
      const double rel = std::abs(exact - numeric) / denom;
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_input = which;
        report.worst_element = static_cast<int64_t>(j);
        report.analytic = exact;
        report.numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace hsbit
