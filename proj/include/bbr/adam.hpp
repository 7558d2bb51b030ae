// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BBR_ADAM_HPP
#define BBR_ADAM_HPP

#include <cstdint>
#include <vector>

namespace bbr::autodiff {

struct AdamConfig {
  double lr = 1e-3;
  double weight_decay = 1e-4;  // L2 term added to the gradient
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment
  std::int64_t step = 0;
};

/// One bias-corrected Adam update in place. State is sized lazily on the
/// first call; shapes must match thereafter.
void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state, const AdamConfig& cfg);

}  // namespace bbr::autodiff

#endif  // BBR_ADAM_HPP
