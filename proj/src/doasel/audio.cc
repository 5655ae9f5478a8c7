// doasel/audio.cc

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

#include "doasel/audio.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace doasel {

namespace {

int16_t QuantizeSample(double v) {
  double scaled = v * 32768.0;
  double rounded = scaled >= 0.0 ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
  if (rounded > 32767.0) rounded = 32767.0;
  if (rounded < -32768.0) rounded = -32768.0;
  return static_cast<int16_t>(rounded);
}

void PutU32(std::string* s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void PutU16(std::string* s, uint16_t v) {
  for (int i = 0; i < 2; ++i) s->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void WritePcm(const std::string& path, const std::vector<const std::vector<double>*>& chans,
              int sample_rate) {
  const uint16_t num_channels = static_cast<uint16_t>(chans.size());
  const uint32_t num_frames = static_cast<uint32_t>(chans[0]->size());
  const uint32_t data_bytes = num_frames * num_channels * 2;

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, num_channels);
  PutU32(&out, static_cast<uint32_t>(sample_rate));
  PutU32(&out, static_cast<uint32_t>(sample_rate) * num_channels * 2);
  PutU16(&out, num_channels * 2);
  PutU16(&out, 16);
  out += "data";
  PutU32(&out, data_bytes);
  for (uint32_t i = 0; i < num_frames; ++i) {
    for (const auto* ch : chans) {
      int16_t q = QuantizeSample((*ch)[i]);
      out.push_back(static_cast<char>(q & 0xff));
      out.push_back(static_cast<char>((q >> 8) & 0xff));
    }
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("short write: " + path);
}

uint32_t GetU32(const std::string& s, size_t off) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[off + i]);
  return v;
}
uint16_t GetU16(const std::string& s, size_t off) {
  return static_cast<uint16_t>(static_cast<unsigned char>(s[off]) |
                               (static_cast<unsigned char>(s[off + 1]) << 8));
}

}  // namespace

void WriteWav(const std::string& path, const StereoClip& clip) {
  if (clip.ch0.size() != clip.ch1.size())
    throw std::invalid_argument("WriteWav: channel length mismatch");
  WritePcm(path, {&clip.ch0, &clip.ch1}, clip.sample_rate);
}

void WriteWavMono(const std::string& path, const MonoClip& clip) {
  WritePcm(path, {&clip.samples}, clip.sample_rate);
}

StereoClip ReadWav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open wav: " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0)
    throw std::runtime_error("not a RIFF/WAVE file: " + path);

  // Walk chunks; require PCM16.
  size_t pos = 12;
  int sample_rate = 0;
  uint16_t channels = 0;
  size_t data_off = 0, data_len = 0;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const uint32_t len = GetU32(bytes, pos + 4);
    if (id == "fmt ") {
      if (GetU16(bytes, pos + 8) != 1 || GetU16(bytes, pos + 22) != 16)
        throw std::runtime_error("wav must be 16-bit PCM: " + path);
      channels = GetU16(bytes, pos + 10);
      sample_rate = static_cast<int>(GetU32(bytes, pos + 12));
    } else if (id == "data") {
      data_off = pos + 8;
      data_len = len;
    }
    pos += 8 + len + (len & 1);
  }
  if (channels == 0 || data_off == 0)
    throw std::runtime_error("wav missing fmt/data chunk: " + path);
  if (channels != 1 && channels != 2)
    throw std::runtime_error("wav must have 1 or 2 channels: " + path);
  if (data_off + data_len > bytes.size())
    throw std::runtime_error("wav data chunk truncated: " + path);

  const size_t frames = data_len / (2 * channels);
  StereoClip clip;
  clip.sample_rate = sample_rate;
  clip.ch0.resize(frames);
  clip.ch1.resize(frames);
  for (size_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      const size_t off = data_off + (i * channels + c) * 2;
      int16_t q = static_cast<int16_t>(
          static_cast<unsigned char>(bytes[off]) |
          (static_cast<unsigned char>(bytes[off + 1]) << 8));
      const double v = static_cast<double>(q) / 32768.0;
      if (c == 0) clip.ch0[i] = v;
      if (channels == 1)
        clip.ch1[i] = v;
      else if (c == 1)
        clip.ch1[i] = v;
    }
  }
  return clip;
}

MonoClip ReadWavMono(const std::string& path) {
  StereoClip s = ReadWav(path);
  MonoClip m;
  m.sample_rate = s.sample_rate;
  m.samples = std::move(s.ch0);
  return m;
}

}  // namespace doasel
