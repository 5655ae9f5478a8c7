// doasel/signal_features.h

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

#ifndef DOASEL_SIGNAL_FEATURES_H_
#define DOASEL_SIGNAL_FEATURES_H_

#include <vector>

#include "doasel/audio.h"

namespace doasel {

// Complex STFT of a stereo clip, split into real and imaginary parts.
// Layout is row-major [channel][frame][bin] with F = frame_len / 2 + 1.
struct SpectroTensor {
  std::vector<double> real;  // [2, T, F]
  std::vector<double> imag;  // [2, T, F]
  int frames = 0;            // T
  int bins = 0;              // F
  int frame_len = 1024;
  int hop_len = 512;
  int sample_rate = 16000;

  double& Re(int ch, int t, int f) { return real[(ch * frames + t) * bins + f]; }
  double& Im(int ch, int t, int f) { return imag[(ch * frames + t) * bins + f]; }
  double Re(int ch, int t, int f) const { return real[(ch * frames + t) * bins + f]; }
  double Im(int ch, int t, int f) const { return imag[(ch * frames + t) * bins + f]; }
};

struct StftOptions {
  int frame_len = 1024;  // 64 ms at 16 kHz
  int hop_len = 512;     // 32 ms at 16 kHz
};

// Hann-windowed STFT, no centering or padding:
// T = floor((len - frame_len) / hop_len) + 1. Throws if the clip is shorter
// than one frame.
SpectroTensor Stft(const StereoClip& clip, const StftOptions& opts = {});

// GCC-PHAT lag between the two channels, in (fractional) samples, searched
// over [-max_lag, +max_lag] with parabolic sub-sample interpolation.
// Sign convention: the lag is the delay of channel 0 relative to channel 1,
// i.e. positive when channel 1 leads. A source closer to mic 1 (azimuth 0)
// therefore gives a positive lag, matching TdoaToAzimuth below.
double GccPhatTdoa(const StereoClip& clip, int max_lag);

// Default search range: ceil(mic_distance / c * sample_rate) + 2.
int DefaultMaxLag(double mic_distance_m, int sample_rate);

// Far-field inversion: acos(lag * c / (fs * mic_distance)) in degrees,
// argument clamped to [-1, 1].
double TdoaToAzimuth(double lag_samples, double mic_distance_m, int sample_rate);

}  // namespace doasel

#endif  // DOASEL_SIGNAL_FEATURES_H_
