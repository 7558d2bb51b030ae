// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#include "bbr/reprogram.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bbr::reprogram {

void ReprogramParams::clip() {
  if (!clip_unit_range) return;
  for (double& v : w) v = std::clamp(v, -1.0, 1.0);
}

ReprogramParams init_params(std::size_t n, ReprogramMode mode) {
  ReprogramParams p;
  p.mode = mode;
  p.w.assign(n, 0.0);
  return p;
}

Tensor apply_concat(Tape& tape, const Tensor& x, const Tensor& w) {
  if (x.rank() != 1 || w.rank() != 1) throw std::invalid_argument("apply_concat expects rank-1 tensors");
  const std::size_t n = w.size();
  if (n == 0) return x;
  const std::size_t front = n / 2;
  std::vector<Tensor> parts;
  if (front > 0) parts.push_back(autodiff::slice1d(tape, w, 0, front));
  parts.push_back(x);
  if (n - front > 0) parts.push_back(autodiff::slice1d(tape, w, front, n - front));
  return autodiff::concat(tape, parts, 0);
}

std::vector<double> complement_mask(std::size_t target_len, std::size_t input_len) {
  if (input_len > target_len) throw std::invalid_argument("complement_mask: input longer than target");
  std::vector<double> m(target_len, 1.0);
  const std::size_t start = (target_len - input_len) / 2;
  std::fill(m.begin() + start, m.begin() + start + input_len, 0.0);
  return m;
}

Tensor apply_masked_add(Tape& tape, const Tensor& x, const Tensor& w,
                        const std::vector<double>& mask, std::size_t target_len) {
  if (x.rank() != 1 || w.rank() != 1) throw std::invalid_argument("apply_masked_add expects rank-1 tensors");
  const std::size_t l = x.size();
  if (target_len < l) {
    throw std::invalid_argument("masked_add target_len " + std::to_string(target_len) +
                                " < input length " + std::to_string(l));
  }
  if (w.size() != target_len || mask.size() != target_len) {
    throw std::invalid_argument("masked_add: w and mask must have length target_len");
  }
  for (double v : mask) {
    if (v != 0.0 && v != 1.0) throw std::invalid_argument("masked_add: mask entries must be 0 or 1");
  }

  // center x in the padded buffer
  const std::size_t front = (target_len - l) / 2;
  const std::size_t back = target_len - l - front;
  std::vector<Tensor> parts;
  if (front > 0) parts.push_back(autodiff::constant({front}, std::vector<double>(front, 0.0)));
  parts.push_back(x);
  if (back > 0) parts.push_back(autodiff::constant({back}, std::vector<double>(back, 0.0)));
  Tensor padded = parts.size() == 1 ? x : autodiff::concat(tape, parts, 0);

  Tensor masked_w = autodiff::mul(tape, w, autodiff::constant({target_len}, mask));
  return autodiff::add(tape, padded, masked_w);
}

}  // namespace bbr::reprogram
