// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BBR_REPROGRAM_HPP
#define BBR_REPROGRAM_HPP

#include <cstddef>
#include <vector>

#include "bbr/tensor.hpp"

namespace bbr::reprogram {

using autodiff::Tape;
using autodiff::Tensor;

enum class ReprogramMode { concat_two_sided, masked_add };

/// Learnable waveform-level parameters. `w` is zero-initialized (silence)
/// and is the gradient-required leaf during adaptation training.
struct ReprogramParams {
  ReprogramMode mode = ReprogramMode::concat_two_sided;
  std::vector<double> w;
  std::vector<double> mask;  // masked_add only; entries in {0,1}, length == padded input
  bool clip_unit_range = false;

  std::size_t size() const { return w.size(); }
  /// Clamp w to [-1, 1] when clip_unit_range is set.
  void clip();
};

ReprogramParams init_params(std::size_t n, ReprogramMode mode = ReprogramMode::concat_two_sided);

/// Two-sided concatenation: [w_1..w_{n/2}, x_1..x_l, w_{n/2+1}..w_n].
/// Odd n puts floor(n/2) samples in front. `w` must be a tensor over
/// p.w (leaf while training, constant at inference); n == 0 returns x.
Tensor apply_concat(Tape& tape, const Tensor& x, const Tensor& w);

/// Eq-style masked addition: zero-pad x (centered) to target_len and add
/// w (.) mask.
Tensor apply_masked_add(Tape& tape, const Tensor& x, const Tensor& w,
                        const std::vector<double>& mask, std::size_t target_len);

/// Mask that is 0 over the centered support of an l-sample input and 1
/// elsewhere; with it, masked_add reproduces a concat-style placement.
std::vector<double> complement_mask(std::size_t target_len, std::size_t input_len);

}  // namespace bbr::reprogram

#endif  // BBR_REPROGRAM_HPP
