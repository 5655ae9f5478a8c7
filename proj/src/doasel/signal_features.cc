// doasel/signal_features.cc

// Copyright 2026  doasel authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "doasel/signal_features.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "doasel/common.h"
#include "doasel/fft.h"

namespace doasel {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPhatFloor = 1e-8;
}  // namespace

SpectroTensor Stft(const StereoClip& clip, const StftOptions& opts) {
  const int n = static_cast<int>(clip.length());
  if (n < opts.frame_len)
    throw std::invalid_argument("Stft: clip shorter than one frame");
  if (clip.ch0.size() != clip.ch1.size())
    throw std::invalid_argument("Stft: channel length mismatch");

  SpectroTensor out;
  out.frame_len = opts.frame_len;
  out.hop_len = opts.hop_len;
  out.sample_rate = clip.sample_rate;
  out.frames = (n - opts.frame_len) / opts.hop_len + 1;
  out.bins = opts.frame_len / 2 + 1;
  out.real.assign(2ull * out.frames * out.bins, 0.0);
  out.imag.assign(2ull * out.frames * out.bins, 0.0);

  std::vector<double> window(opts.frame_len);
  for (int i = 0; i < opts.frame_len; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / opts.frame_len);

  std::vector<std::complex<double>> buf(opts.frame_len);
  for (int ch = 0; ch < 2; ++ch) {
    const std::vector<double>& x = (ch == 0) ? clip.ch0 : clip.ch1;
    for (int t = 0; t < out.frames; ++t) {
      const int start = t * opts.hop_len;
      for (int i = 0; i < opts.frame_len; ++i)
        buf[i] = {x[start + i] * window[i], 0.0};
      Fft(&buf, false);
      for (int f = 0; f < out.bins; ++f) {
        out.Re(ch, t, f) = buf[f].real();
        out.Im(ch, t, f) = buf[f].imag();
      }
    }
  }
  return out;
}

double GccPhatTdoa(const StereoClip& clip, int max_lag) {
  const size_t n = clip.length();
  if (n == 0 || clip.ch1.size() != n)
    throw std::invalid_argument("GccPhatTdoa: need two equal-length channels");
  double e0 = 0.0, e1 = 0.0;
  for (double v : clip.ch0) e0 += v * v;
  for (double v : clip.ch1) e1 += v * v;
  if (!(e0 > 0.0) || !(e1 > 0.0))
    throw std::invalid_argument("GccPhatTdoa: zero-energy channel");

  const size_t nfft = NextPow2(2 * n);
  auto x0 = RealFft(clip.ch0, nfft);
  auto x1 = RealFft(clip.ch1, nfft);

  // Phase transform: unit-magnitude cross spectrum, floored to avoid
  // division blowups in empty bands.
  std::vector<std::complex<double>> cross(nfft);
  for (size_t k = 0; k < nfft; ++k) {
    const std::complex<double> s = x0[k] * std::conj(x1[k]);
    cross[k] = s / std::max(std::abs(s), kPhatFloor);
  }
  Fft(&cross, true);

  // cross[l] now holds the whitened correlation at lag l, where positive l
  // means channel 0 is delayed by l samples. Negative lags wrap.
  if (max_lag <= 0 || static_cast<size_t>(max_lag) >= nfft / 2)
    throw std::invalid_argument("GccPhatTdoa: bad max_lag");
  auto at = [&](int lag) {
    const size_t idx = lag >= 0 ? static_cast<size_t>(lag) : nfft + lag;
    return cross[idx].real();
  };
  int best = -max_lag;
  double best_v = at(best);
  for (int l = -max_lag; l <= max_lag; ++l) {
    const double v = at(l);
    if (v > best_v) {
      best_v = v;
      best = l;
    }
  }

  // Parabolic refinement around the integer peak.
  double delta = 0.0;
  if (best > -max_lag && best < max_lag) {
    const double ym = at(best - 1), y0 = at(best), yp = at(best + 1);
    const double denom = ym - 2.0 * y0 + yp;
    if (std::abs(denom) > 1e-12) {
      delta = 0.5 * (ym - yp) / denom;
      delta = std::min(0.5, std::max(-0.5, delta));
    }
  }
  return static_cast<double>(best) + delta;
}

int DefaultMaxLag(double mic_distance_m, int sample_rate) {
  return static_cast<int>(
             std::ceil(mic_distance_m / kSpeedOfSound * sample_rate)) + 2;
}

double TdoaToAzimuth(double lag_samples, double mic_distance_m,
                     int sample_rate) {
  double c = lag_samples * kSpeedOfSound /
             (static_cast<double>(sample_rate) * mic_distance_m);
  c = std::min(1.0, std::max(-1.0, c));
  return std::acos(c) * 180.0 / kPi;
}

}  // namespace doasel
