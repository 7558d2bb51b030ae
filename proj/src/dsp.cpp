// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#include "bbr/dsp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bbr::dsp {

using autodiff::Shape;

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void FbankConfig::validate() const {
  if (sample_rate <= 0) throw std::invalid_argument("fbank: sample_rate must be positive");
  if (frame_length == 0 || hop == 0) throw std::invalid_argument("fbank: frame_length and hop must be positive");
  if (!is_power_of_two(fft_size)) {
    throw std::invalid_argument("fbank: fft_size " + std::to_string(fft_size) + " is not a power of two");
  }
  if (fft_size < frame_length) throw std::invalid_argument("fbank: fft_size must be >= frame_length");
  if (n_mels < 2) throw std::invalid_argument("fbank: n_mels must be >= 2");
  if (!(0.0 <= f_min && f_min < f_max && f_max <= sample_rate / 2.0)) {
    throw std::invalid_argument("fbank: need 0 <= f_min < f_max <= sample_rate/2");
  }
  if (log_floor <= 0) throw std::invalid_argument("fbank: log_floor must be positive");
}

void fft_radix2(std::vector<double>& re, std::vector<double>& im, bool inverse) {
  const std::size_t n = re.size();
  if (n != im.size()) throw std::invalid_argument("fft: re/im size mismatch");
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("fft: length " + std::to_string(n) + " is not a power of two");
  }
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const double wr = std::cos(ang), wi = std::sin(ang);
    for (std::size_t i = 0; i < n; i += len) {
      double cr = 1.0, ci = 0.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::size_t a = i + k, b = i + k + len / 2;
        const double tr = re[b] * cr - im[b] * ci;
        const double ti = re[b] * ci + im[b] * cr;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
        const double ncr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = ncr;
      }
    }
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> mel_points(const FbankConfig& cfg) {
  cfg.validate();
  const double lo = hz_to_mel(cfg.f_min), hi = hz_to_mel(cfg.f_max);
  std::vector<double> pts(cfg.n_mels + 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = mel_to_hz(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cfg.n_mels + 1));
  }
  return pts;
}

Tensor mel_matrix(const FbankConfig& cfg) {
  const std::vector<double> pts = mel_points(cfg);
  const std::size_t bins = cfg.fft_size / 2 + 1;
  std::vector<double> w(cfg.n_mels * bins, 0.0);
  const double hz_per_bin = cfg.sample_rate / static_cast<double>(cfg.fft_size);
  for (std::size_t m = 0; m < cfg.n_mels; ++m) {
    const double left = pts[m], peak = pts[m + 1], right = pts[m + 2];
    double row_sum = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = hz_per_bin * static_cast<double>(k);
      double v = 0.0;
      if (f > left && f < peak) {
        v = (f - left) / (peak - left);
      } else if (f == peak) {
        v = 1.0;
      } else if (f > peak && f < right) {
        v = (right - f) / (right - peak);
      }
      w[m * bins + k] = v;
      row_sum += v;
    }
    if (row_sum <= 0.0) {
      throw std::invalid_argument(
          "mel filter " + std::to_string(m) + " covers no FFT bin between " + std::to_string(left) +
          " Hz and " + std::to_string(right) + " Hz; increase fft_size or reduce n_mels");
    }
  }
  return autodiff::constant({cfg.n_mels, bins}, std::move(w));
}

std::size_t n_frames_for(std::size_t samples, const FbankConfig& cfg) {
  if (samples < cfg.frame_length) {
    throw std::invalid_argument("signal length " + std::to_string(samples) +
                                " shorter than frame_length " + std::to_string(cfg.frame_length));
  }
  return 1 + (samples - cfg.frame_length) / cfg.hop;
}

Tensor frame_signal(Tape& tape, const Tensor& x, const FbankConfig& cfg) {
  if (x.rank() != 1) throw std::invalid_argument("frame_signal expects rank-1 waveform");
  const std::size_t n = n_frames_for(x.size(), cfg);
  std::vector<std::size_t> idx(n * cfg.frame_length);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < cfg.frame_length; ++j) idx[t * cfg.frame_length + j] = t * cfg.hop + j;
  }
  return autodiff::gather(tape, x, std::move(idx), {n, cfg.frame_length});
}

Tensor rfft_magsq(Tape& tape, const Tensor& frames, std::size_t fft_size) {
  if (frames.rank() != 2) throw std::invalid_argument("rfft_magsq expects [n, fft_size] frames");
  if (!is_power_of_two(fft_size)) {
    throw std::invalid_argument("rfft_magsq: fft_size " + std::to_string(fft_size) +
                                " is not a power of two");
  }
  if (frames.shape[1] != fft_size) {
    throw std::invalid_argument("rfft_magsq: rows must be zero-padded to fft_size");
  }
  const std::size_t rows = frames.shape[0];
  const std::size_t bins = fft_size / 2 + 1;

  auto spec_re = std::make_shared<std::vector<double>>(rows * fft_size);
  auto spec_im = std::make_shared<std::vector<double>>(rows * fft_size);
  std::vector<double> out(rows * bins);
  std::vector<double> re(fft_size), im(fft_size);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < fft_size; ++j) {
      re[j] = (*frames.data)[r * fft_size + j];
      im[j] = 0.0;
    }
    fft_radix2(re, im, false);
    for (std::size_t j = 0; j < fft_size; ++j) {
      (*spec_re)[r * fft_size + j] = re[j];
      (*spec_im)[r * fft_size + j] = im[j];
    }
    for (std::size_t k = 0; k < bins; ++k) out[r * bins + k] = re[k] * re[k] + im[k] * im[k];
  }

  // d|X_k|^2/dx_j = 2 Re(X_k e^{+2 pi i jk/N}) summed over used bins, which
  // is an inverse transform of g_k * X_k zero-extended to the full spectrum.
  return tape.record(
      {rows, bins}, std::move(out), {frames.node},
      [rows, fft_size, bins, spec_re, spec_im](const std::vector<double>& g,
                                               const std::vector<std::vector<double>*>& pg) {
        if (!pg[0]) return;
        std::vector<double> hr(fft_size), hi(fft_size);
        for (std::size_t r = 0; r < rows; ++r) {
          std::fill(hr.begin(), hr.end(), 0.0);
          std::fill(hi.begin(), hi.end(), 0.0);
          for (std::size_t k = 0; k < bins; ++k) {
            const double gk = g[r * bins + k];
            hr[k] = gk * (*spec_re)[r * fft_size + k];
            hi[k] = gk * (*spec_im)[r * fft_size + k];
          }
          fft_radix2(hr, hi, true);
          for (std::size_t j = 0; j < fft_size; ++j) (*pg[0])[r * fft_size + j] += 2.0 * hr[j];
        }
      });
}

namespace {

Tensor hann_window(std::size_t len) {
  std::vector<double> w(len);
  for (std::size_t i = 0; i < len; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(len));
  }
  return autodiff::constant({len}, std::move(w));
}

}  // namespace

Tensor log_fbank(Tape& tape, const Tensor& x, const FbankConfig& cfg) {
  cfg.validate();
  Tensor frames = frame_signal(tape, x, cfg);
  Tensor windowed = autodiff::mul(tape, frames, hann_window(cfg.frame_length));
  if (cfg.fft_size > cfg.frame_length) {
    Tensor pad = autodiff::constant({frames.shape[0], cfg.fft_size - cfg.frame_length},
                                    std::vector<double>(frames.shape[0] * (cfg.fft_size - cfg.frame_length), 0.0));
    std::vector<Tensor> parts{windowed, pad};
    windowed = autodiff::concat(tape, parts, 1);
  }
  Tensor magsq = rfft_magsq(tape, windowed, cfg.fft_size);
  Tensor mel_t = autodiff::transpose(tape, mel_matrix(cfg));  // [bins, n_mels]
  Tensor energies = autodiff::matmul(tape, magsq, mel_t);
  return autodiff::log_floored(tape, energies, cfg.log_floor);
}

Tensor log_fbank_values(const std::vector<double>& samples, const FbankConfig& cfg) {
  Tape scratch;
  Tensor x = autodiff::constant({samples.size()}, samples);
  return log_fbank(scratch, x, cfg);
}

}  // namespace bbr::dsp
