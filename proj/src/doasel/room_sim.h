// doasel/room_sim.h

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

#ifndef DOASEL_ROOM_SIM_H_
#define DOASEL_ROOM_SIM_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "doasel/audio.h"

namespace doasel {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double Norm(const Vec3& a) { return std::sqrt(Dot(a, a)); }
inline double Distance(const Vec3& a, const Vec3& b) { return Norm(a - b); }

// Shoebox room with a fixed two-microphone pair and a single static source.
// Ranges follow the dataset recipe: floor area 18-32 m^2, T60 0.1-0.2 s,
// source distance [1, 2) m, azimuth uniform over [0, 180] degrees,
// inter-mic distance 0.2 m.
struct RoomScene {
  Vec3 room_dims;                     // width (x), depth (y), height (z), m
  std::array<Vec3, 2> mic_positions;  // exactly two microphones
  Vec3 source_position;
  double t60 = 0.15;  // seconds
  uint64_t seed = 0;
};

struct RIRPair {
  std::array<std::vector<double>, 2> taps;
  int sample_rate = 16000;
  std::array<int, 2> direct_path_delays = {0, 0};  // samples
};

// Throws std::invalid_argument describing the first violated invariant.
void ValidateScene(const RoomScene& scene);

// Deterministic scene sampler; identical seed yields an identical scene.
RoomScene SampleRoomScene(uint64_t seed);

struct RirOptions {
  int sample_rate = 16000;
  // Images whose propagation time exceeds t60 * 1.2 are dropped. A
  // non-negative max_reflection_order additionally caps the number of wall
  // bounces (0 keeps only the direct path); -1 means no order cap.
  int max_reflection_order = -1;
};

// Image-source construction: 1/d distance attenuation, frequency-flat wall
// reflection coefficient from Sabine's formula, 81-tap Hann-windowed sinc
// fractional delays.
RIRPair SimulateRir(const RoomScene& scene, const RirOptions& opts = {});

// Reflection coefficient beta = sqrt(1 - 0.1611 * V / (S * t60)), argument
// clamped to (0, 1).
double ReflectionCoefficient(const RoomScene& scene);

// Full linear convolution with each RIR channel, truncated to the clip
// length. The azimuth label is not set here; callers that know the scene
// attach it (see SpatializeScene).
StereoClip Spatialize(const MonoClip& clip, const RIRPair& rir);

// Convenience: simulate the scene RIR, convolve, attach the azimuth label.
StereoClip SpatializeScene(const MonoClip& clip, const RoomScene& scene,
                           const RirOptions& opts = {});

// Rescales the interferer so 10*log10(E_target / E_interferer) == snr_db
// (energies summed over both channels), then sums. Keeps the target's
// azimuth label. Throws on zero-energy interferer or length/rate mismatch.
StereoClip MixAtSnr(const StereoClip& target, const StereoClip& interferer,
                    double snr_db);

// Angle in degrees between the mic axis (mic0 -> mic1) and the vector from
// the mic-pair midpoint to the source, as a continuous value in [0, 180].
double AzimuthDegrees(const RoomScene& scene);

// Same angle rounded half-up and clamped to the integer classes [1, 180].
int AzimuthOf(const RoomScene& scene);

// ---------------------------------------------------------------------------
// Dataset construction

struct DatasetRecord {
  int id = 0;
  std::string mixture_path;  // relative to the manifest
  std::string clean_path;
  int azimuth_deg = 0;  // target azimuth class
  int target_category = 0;
  int target_instance = 0;
  int prompt_category = 0;
  int prompt_instance = 0;
  int interferer_category = 0;
  int interferer_instance = 0;
  int interferer_azimuth_deg = 0;
  uint64_t scene_seed = 0;             // target scene
  uint64_t interferer_scene_seed = 0;
  uint64_t record_seed = 0;
  double mix_gain = 1.0;  // applied to both written files
  double snr_db = 0.0;
};

struct DatasetConfig {
  int num_records = 32;
  double snr_db = 0.0;
  std::string out_dir;
  int sample_rate = 16000;
};

// In-memory product of one record synthesis, before quantization.
struct SynthesizedRecord {
  StereoClip mixture;          // mix_gain applied
  StereoClip clean_target;     // mix_gain applied
  StereoClip scaled_interferer;  // mix_gain applied; mixture = clean + this
  DatasetRecord record;
};

// Pool = labeled mono clips; every clip needs label and instance set.
// Records are emitted in mirrored pairs: the two records of a pair swap the
// roles of the same two spatialized sources, so at 0 dB the pair shares one
// mixture waveform with two different targets.
SynthesizedRecord SynthesizeRecord(const std::vector<MonoClip>& pool,
                                   uint64_t dataset_seed, int record_index,
                                   double snr_db);

// Writes WAVs plus manifest.jsonl into config.out_dir and returns the
// records. Throws if the pool has fewer than two categories.
std::vector<DatasetRecord> BuildDataset(const std::vector<MonoClip>& pool,
                                        const DatasetConfig& config,
                                        uint64_t seed);

// Manifest I/O (line-delimited JSON; first line is a header record).
void WriteManifest(const std::string& path,
                   const std::vector<DatasetRecord>& records,
                   const DatasetConfig& config, uint64_t seed);
struct Manifest {
  std::vector<DatasetRecord> records;
  std::string dir;  // directory of the manifest file; paths are relative to it
  double snr_db = 0.0;
  uint64_t seed = 0;
  int sample_rate = 16000;
};
Manifest ReadManifest(const std::string& path);

}  // namespace doasel

#endif  // DOASEL_ROOM_SIM_H_
