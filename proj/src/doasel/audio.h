// doasel/audio.h

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

#ifndef DOASEL_AUDIO_H_
#define DOASEL_AUDIO_H_

#include <optional>
#include <string>
#include <vector>

namespace doasel {

// Single-channel clip. Samples are nominally in [-1, 1].
struct MonoClip {
  std::vector<double> samples;
  int sample_rate = 16000;
  std::optional<int> label;     // sound-event category id
  std::optional<int> instance;  // instance id within the category
};

// Two-channel clip with an optional ground-truth azimuth class in [1, 180].
struct StereoClip {
  std::vector<double> ch0;
  std::vector<double> ch1;
  int sample_rate = 16000;
  std::optional<int> label;
  std::optional<int> azimuth_deg;

  size_t length() const { return ch0.size(); }
  double Energy() const {
    double e = 0.0;
    for (double v : ch0) e += v * v;
    for (double v : ch1) e += v * v;
    return e;
  }
};

inline MonoClip Downmix(const StereoClip& clip) {
  MonoClip m;
  m.sample_rate = clip.sample_rate;
  m.label = clip.label;
  m.samples.resize(clip.length());
  for (size_t i = 0; i < clip.length(); ++i)
    m.samples[i] = 0.5 * (clip.ch0[i] + clip.ch1[i]);
  return m;
}

// RIFF/WAV, 16-bit PCM. Rounding is deterministic (half away from zero),
// values are clamped to the representable range.
void WriteWav(const std::string& path, const StereoClip& clip);
void WriteWavMono(const std::string& path, const MonoClip& clip);
StereoClip ReadWav(const std::string& path);      // accepts 1 or 2 channels
MonoClip ReadWavMono(const std::string& path);    // requires 1 channel

}  // namespace doasel

#endif  // DOASEL_AUDIO_H_
