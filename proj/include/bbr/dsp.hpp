// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BBR_DSP_HPP
#define BBR_DSP_HPP

#include <cstddef>
#include <vector>

#include "bbr/tensor.hpp"

namespace bbr::dsp {

using autodiff::Tape;
using autodiff::Tensor;

/// Waveform-to-feature frontend configuration. Desk-scale defaults; the
/// 16 kHz / 64-mel setup is plain configuration.
struct FbankConfig {
  double sample_rate = 4000.0;
  std::size_t frame_length = 128;
  std::size_t hop = 64;
  std::size_t fft_size = 128;  // power of two >= frame_length
  std::size_t n_mels = 24;
  double f_min = 0.0;
  double f_max = 2000.0;
  double log_floor = 1e-8;

  void validate() const;
};

bool is_power_of_two(std::size_t n);

/// In-place radix-2 complex FFT, unnormalized; inverse flips the twiddle
/// sign and applies no 1/N.
void fft_radix2(std::vector<double>& re, std::vector<double>& im, bool inverse);

/// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// n_mels + 2 mel-uniform band edge/peak frequencies in Hz, from f_min to
/// f_max. Interior points are the triangular filter peaks.
std::vector<double> mel_points(const FbankConfig& cfg);

/// [n_mels, fft_size/2+1] triangular filterbank. Rows are nonnegative with
/// positive sum; degenerate bands raise.
Tensor mel_matrix(const FbankConfig& cfg);

/// Slice x:[T] into [n_frames, frame_length] with n_frames =
/// 1 + floor((T - frame_length)/hop).
Tensor frame_signal(Tape& tape, const Tensor& x, const FbankConfig& cfg);

std::size_t n_frames_for(std::size_t samples, const FbankConfig& cfg);

/// Squared-magnitude half spectrum [n, fft_size/2+1] of each row.
Tensor rfft_magsq(Tape& tape, const Tensor& frames, std::size_t fft_size);

/// Full differentiable chain: frame -> Hann window -> zero pad -> |FFT|^2
/// -> mel -> floored log. Output [n_frames, n_mels].
Tensor log_fbank(Tape& tape, const Tensor& x, const FbankConfig& cfg);

/// log_fbank on raw samples with no tape bookkeeping.
Tensor log_fbank_values(const std::vector<double>& samples, const FbankConfig& cfg);

}  // namespace bbr::dsp

#endif  // BBR_DSP_HPP
