// doasel/room_sim.cc

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

#include "doasel/room_sim.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "doasel/common.h"
#include "doasel/rng.h"

namespace doasel {

namespace {

constexpr double kMicSpacing = 0.2;      // m
constexpr double kMicHeight = 1.5;       // m
constexpr double kWallMargin = 0.05;     // m, strict-interior slack
constexpr double kMaxSourceDist = 2.0;   // m, exclusive upper bound
constexpr int kSincHalf = 40;            // 81-tap windowed sinc
constexpr double kPi = 3.14159265358979323846;

bool InsideRoom(const Vec3& p, const Vec3& dims) {
  return p.x > 0.0 && p.x < dims.x && p.y > 0.0 && p.y < dims.y &&
         p.z > 0.0 && p.z < dims.z;
}

}  // namespace

void ValidateScene(const RoomScene& scene) {
  const Vec3& d = scene.room_dims;
  if (!(d.x > 0 && d.y > 0 && d.z > 0))
    throw std::invalid_argument("scene: non-positive room dimensions");
  const double area = d.x * d.y;
  if (area < 18.0 - 1e-9 || area > 32.0 + 1e-9)
    throw std::invalid_argument("scene: floor area outside [18, 32] m^2");
  if (scene.t60 < 0.1 - 1e-9 || scene.t60 > 0.2 + 1e-9)
    throw std::invalid_argument("scene: t60 outside [0.1, 0.2] s");
  for (const Vec3& m : scene.mic_positions)
    if (!InsideRoom(m, d)) throw std::invalid_argument("scene: mic outside room");
  if (!InsideRoom(scene.source_position, d))
    throw std::invalid_argument("scene: source outside room");
  const double spacing = Distance(scene.mic_positions[0], scene.mic_positions[1]);
  if (std::abs(spacing - kMicSpacing) > 1e-9)
    throw std::invalid_argument("scene: inter-mic distance must be 0.2 m");
  Vec3 mid = {(scene.mic_positions[0].x + scene.mic_positions[1].x) / 2,
              (scene.mic_positions[0].y + scene.mic_positions[1].y) / 2,
              (scene.mic_positions[0].z + scene.mic_positions[1].z) / 2};
  Vec3 rel = scene.source_position - mid;
  const double horiz = std::sqrt(rel.x * rel.x + rel.y * rel.y);
  if (horiz < 1.0 - 1e-9 || horiz >= 2.0)
    throw std::invalid_argument("scene: source distance outside [1, 2) m");
}

RoomScene SampleRoomScene(uint64_t seed) {
  Rng rng(DeriveSeed(seed, "room_scene"));
  RoomScene scene;
  scene.seed = seed;

  // Sources reach up to kMaxSourceDist from the mic midpoint, so the
  // midpoint needs that much clearance from every wall. The width range
  // below keeps both footprint dimensions >= 2 * (reach + margin) for every
  // admissible floor area.
  const double clearance = kMaxSourceDist + kWallMargin;
  const double area = rng.Uniform(18.0, 32.0);
  const double min_dim = 2.0 * clearance;  // 4.1 m
  const double width = rng.Uniform(min_dim, area / min_dim);
  const double depth = area / width;
  const double height = rng.Uniform(2.5, 4.0);
  scene.room_dims = {width, depth, height};
  scene.t60 = rng.Uniform(0.1, 0.2);

  // Mic pair axis is parallel to the x wall; midpoint sits at the room
  // center, jittered up to +-0.5 m where the source clearance allows it.
  const double jx = std::max(0.0, std::min(0.5, width / 2.0 - clearance));
  const double jy = std::max(0.0, std::min(0.5, depth / 2.0 - clearance));
  Vec3 mid = {width / 2.0 + rng.Uniform(-jx, jx),
              depth / 2.0 + rng.Uniform(-jy, jy), kMicHeight};
  scene.mic_positions[0] = {mid.x - kMicSpacing / 2.0, mid.y, mid.z};
  scene.mic_positions[1] = {mid.x + kMicSpacing / 2.0, mid.y, mid.z};

  const double azimuth = rng.Uniform(0.0, 180.0);
  const double dist = rng.Uniform(1.0, 2.0);
  const double a = azimuth * kPi / 180.0;
  scene.source_position = {mid.x + dist * std::cos(a),
                           mid.y + dist * std::sin(a), kMicHeight};
  return scene;
}

double ReflectionCoefficient(const RoomScene& scene) {
  const Vec3& d = scene.room_dims;
  const double volume = d.x * d.y * d.z;
  const double surface = 2.0 * (d.x * d.y + d.x * d.z + d.y * d.z);
  double arg = 1.0 - 0.1611 * volume / (surface * scene.t60);
  arg = std::min(std::max(arg, 1e-9), 1.0 - 1e-9);
  return std::sqrt(arg);
}

RIRPair SimulateRir(const RoomScene& scene, const RirOptions& opts) {
  ValidateScene(scene);
  for (const Vec3& m : scene.mic_positions)
    if (Distance(m, scene.source_position) < 1e-6)
      throw std::invalid_argument("SimulateRir: source coincides with a mic");

  const double fs = static_cast<double>(opts.sample_rate);
  const double beta = ReflectionCoefficient(scene);
  const double max_time = scene.t60 * 1.2;
  const double max_dist = max_time * kSpeedOfSound;
  const int rir_len = static_cast<int>(std::ceil(max_time * fs)) + 2 * kSincHalf + 2;

  RIRPair rir;
  rir.sample_rate = opts.sample_rate;
  rir.taps[0].assign(rir_len, 0.0);
  rir.taps[1].assign(rir_len, 0.0);
  for (int k = 0; k < 2; ++k) {
    const double d = Distance(scene.source_position, scene.mic_positions[k]);
    rir.direct_path_delays[k] =
        static_cast<int>(RoundHalfUp(d / kSpeedOfSound * fs));
  }

  // Hann window over the 81-tap sinc kernel, w(t) = 0.5 (1 + cos(pi t / H)).
  // The cosine is split over fixed per-tap tables:
  //   cos(pi (k - frac) / H) = cos(pi k / H) cos(pi frac / H)
  //                          + sin(pi k / H) sin(pi frac / H).
  const double kH = kSincHalf + 1.0;
  std::array<double, 2 * kSincHalf + 1> wc, ws;
  for (int k = -kSincHalf; k <= kSincHalf; ++k) {
    wc[k + kSincHalf] = std::cos(kPi * k / kH);
    ws[k + kSincHalf] = std::sin(kPi * k / kH);
  }

  // Per-axis image coordinates and bounce counts. Even image index n gives
  // coordinate n*L + s, odd gives (n+1)*L - s, with |n| wall hits.
  struct AxisImage {
    double coord;
    int hits;
  };
  auto axis_images = [&](double room_len, double src, double mic) {
    std::vector<AxisImage> out;
    const int n_max = static_cast<int>(std::ceil((max_dist + room_len) / room_len)) + 1;
    for (int n = -n_max; n <= n_max; ++n) {
      const double c = (n % 2 == 0) ? n * room_len + src : (n + 1) * room_len - src;
      if (std::abs(c - mic) <= max_dist + kMicSpacing) {
        if (opts.max_reflection_order >= 0 && std::abs(n) > opts.max_reflection_order)
          continue;
        out.push_back({c, std::abs(n)});
      }
    }
    return out;
  };

  Vec3 mic_mid = {(scene.mic_positions[0].x + scene.mic_positions[1].x) / 2,
                  (scene.mic_positions[0].y + scene.mic_positions[1].y) / 2,
                  (scene.mic_positions[0].z + scene.mic_positions[1].z) / 2};
  const auto xs = axis_images(scene.room_dims.x, scene.source_position.x, mic_mid.x);
  const auto ys = axis_images(scene.room_dims.y, scene.source_position.y, mic_mid.y);
  const auto zs = axis_images(scene.room_dims.z, scene.source_position.z, mic_mid.z);

  for (const auto& xi : xs) {
    for (const auto& yi : ys) {
      const double dxy0 = (xi.coord - scene.mic_positions[0].x) * (xi.coord - scene.mic_positions[0].x) +
                          (yi.coord - scene.mic_positions[0].y) * (yi.coord - scene.mic_positions[0].y);
      const double dxy1 = (xi.coord - scene.mic_positions[1].x) * (xi.coord - scene.mic_positions[1].x) +
                          (yi.coord - scene.mic_positions[1].y) * (yi.coord - scene.mic_positions[1].y);
      if (std::min(dxy0, dxy1) > max_dist * max_dist) continue;
      for (const auto& zi : zs) {
        const int hits = xi.hits + yi.hits + zi.hits;
        if (opts.max_reflection_order >= 0 && hits > opts.max_reflection_order)
          continue;
        const double gain_refl = std::pow(beta, hits);
        for (int k = 0; k < 2; ++k) {
          const Vec3& mic = scene.mic_positions[k];
          const double dz = zi.coord - mic.z;
          const double d2 = (k == 0 ? dxy0 : dxy1) + dz * dz;
          const double dist = std::sqrt(d2);
          if (dist > max_dist || dist < 1e-9) continue;
          const double tau = dist / kSpeedOfSound * fs;  // fractional samples
          const double amp = gain_refl / dist;
          const int center = static_cast<int>(RoundHalfUp(tau));
          const double frac = tau - center;  // in [-0.5, 0.5]
          // sinc(t - tau) at integer t: sin(pi (t - tau)) = +-sin(pi frac).
          const double sp = std::sin(kPi * frac);
          const double cwf = std::cos(kPi * frac / kH);
          const double swf = std::sin(kPi * frac / kH);
          std::vector<double>& taps = rir.taps[k];
          for (int j = -kSincHalf; j <= kSincHalf; ++j) {
            const int idx = center + j;
            if (idx < 0 || idx >= rir_len) continue;
            const double t_off = j - frac;
            double sinc;
            if (std::abs(t_off) < 1e-9) {
              sinc = 1.0;
            } else {
              const double sign = (j % 2 == 0) ? 1.0 : -1.0;
              sinc = sign * -sp / (kPi * t_off);
            }
            const double win =
                0.5 * (1.0 + wc[j + kSincHalf] * cwf + ws[j + kSincHalf] * swf);
            taps[idx] += amp * sinc * win;
          }
        }
      }
    }
  }

  for (int k = 0; k < 2; ++k) {
    double e = 0.0;
    for (double v : rir.taps[k]) e += v * v;
    if (!(e > 0.0)) throw std::runtime_error("SimulateRir: zero-energy channel");
  }
  return rir;
}

StereoClip Spatialize(const MonoClip& clip, const RIRPair& rir) {
  if (clip.sample_rate != rir.sample_rate)
    throw std::invalid_argument("Spatialize: sample-rate mismatch");
  StereoClip out;
  out.sample_rate = clip.sample_rate;
  out.label = clip.label;
  const size_t n = clip.samples.size();
  for (int k = 0; k < 2; ++k) {
    std::vector<double>& y = (k == 0) ? out.ch0 : out.ch1;
    y.assign(n, 0.0);
    const std::vector<double>& h = rir.taps[k];
    const size_t hn = h.size();
    for (size_t j = 0; j < hn; ++j) {
      const double hj = h[j];
      if (hj == 0.0) continue;
      const size_t limit = n > j ? n - j : 0;
      const double* x = clip.samples.data();
      double* yy = y.data() + j;
      for (size_t i = 0; i < limit; ++i) yy[i] += hj * x[i];
    }
  }
  return out;
}

StereoClip SpatializeScene(const MonoClip& clip, const RoomScene& scene,
                           const RirOptions& opts) {
  StereoClip out = Spatialize(clip, SimulateRir(scene, opts));
  out.azimuth_deg = AzimuthOf(scene);
  return out;
}

StereoClip MixAtSnr(const StereoClip& target, const StereoClip& interferer,
                    double snr_db) {
  if (target.sample_rate != interferer.sample_rate)
    throw std::invalid_argument("MixAtSnr: sample-rate mismatch");
  if (target.length() != interferer.length())
    throw std::invalid_argument("MixAtSnr: length mismatch (zero-pad first)");
  const double e_target = target.Energy();
  const double e_interferer = interferer.Energy();
  if (!(e_interferer > 0.0))
    throw std::invalid_argument("MixAtSnr: interferer has zero energy");
  const double scale =
      std::sqrt(e_target / e_interferer * std::pow(10.0, -snr_db / 10.0));
  StereoClip out;
  out.sample_rate = target.sample_rate;
  out.label = target.label;
  out.azimuth_deg = target.azimuth_deg;
  const size_t n = target.length();
  out.ch0.resize(n);
  out.ch1.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.ch0[i] = target.ch0[i] + scale * interferer.ch0[i];
    out.ch1[i] = target.ch1[i] + scale * interferer.ch1[i];
  }
  return out;
}

double AzimuthDegrees(const RoomScene& scene) {
  Vec3 axis = scene.mic_positions[1] - scene.mic_positions[0];
  Vec3 mid = {(scene.mic_positions[0].x + scene.mic_positions[1].x) / 2,
              (scene.mic_positions[0].y + scene.mic_positions[1].y) / 2,
              (scene.mic_positions[0].z + scene.mic_positions[1].z) / 2};
  Vec3 to_src = scene.source_position - mid;
  const double denom = Norm(axis) * Norm(to_src);
  if (denom < 1e-12) return 90.0;
  double c = Dot(axis, to_src) / denom;
  c = std::min(1.0, std::max(-1.0, c));
  return std::acos(c) * 180.0 / kPi;
}

int AzimuthOf(const RoomScene& scene) {
  return AzimuthToClass(AzimuthDegrees(scene));
}

// ---------------------------------------------------------------------------
// Dataset construction

namespace {

// Groups pool indices by category.
std::map<int, std::vector<int>> PoolByCategory(const std::vector<MonoClip>& pool) {
  std::map<int, std::vector<int>> by_cat;
  for (size_t i = 0; i < pool.size(); ++i) {
    if (!pool[i].label.has_value() || !pool[i].instance.has_value())
      throw std::invalid_argument("pool clip missing label or instance id");
    by_cat[*pool[i].label].push_back(static_cast<int>(i));
  }
  return by_cat;
}

double Peak(const StereoClip& c) {
  double p = 0.0;
  for (double v : c.ch0) p = std::max(p, std::abs(v));
  for (double v : c.ch1) p = std::max(p, std::abs(v));
  return p;
}

void ScaleClip(StereoClip* c, double g) {
  for (double& v : c->ch0) v *= g;
  for (double& v : c->ch1) v *= g;
}

}  // namespace

SynthesizedRecord SynthesizeRecord(const std::vector<MonoClip>& pool,
                                   uint64_t dataset_seed, int record_index,
                                   double snr_db) {
  auto by_cat = PoolByCategory(pool);
  if (by_cat.size() < 2)
    throw std::invalid_argument("pool must contain at least two categories");
  std::vector<int> cats;
  for (const auto& [c, _] : by_cat) cats.push_back(c);

  // Records come in mirrored pairs: pair p draws two sources and two scenes
  // once; record 2p localizes the first source, record 2p+1 the second.
  const int pair = record_index / 2;
  const bool swapped = (record_index % 2) == 1;
  const uint64_t pair_seed = DeriveSeed(dataset_seed, "pair", static_cast<uint64_t>(pair));
  Rng rng(pair_seed);

  const int cat_a = cats[rng.Below(cats.size())];
  int cat_b = cat_a;
  while (cat_b == cat_a) cat_b = cats[rng.Below(cats.size())];
  const int idx_a = by_cat[cat_a][rng.Below(by_cat[cat_a].size())];
  const int idx_b = by_cat[cat_b][rng.Below(by_cat[cat_b].size())];
  const uint64_t scene_seed_a = DeriveSeed(pair_seed, "scene_a");
  const uint64_t scene_seed_b = DeriveSeed(pair_seed, "scene_b");

  // Per-record prompt draw (kept outside the swap so the two records of a
  // pair get independent prompt instances).
  Rng prompt_rng(DeriveSeed(dataset_seed, "prompt", static_cast<uint64_t>(record_index)));

  const int tgt_idx = swapped ? idx_b : idx_a;
  const int itf_idx = swapped ? idx_a : idx_b;
  const uint64_t tgt_scene_seed = swapped ? scene_seed_b : scene_seed_a;
  const uint64_t itf_scene_seed = swapped ? scene_seed_a : scene_seed_b;

  const MonoClip& tgt_clip = pool[tgt_idx];
  const MonoClip& itf_clip = pool[itf_idx];
  const auto& tgt_cat_pool = by_cat[*tgt_clip.label];
  if (tgt_cat_pool.size() < 2)
    throw std::invalid_argument("target category needs >= 2 instances for prompting");
  int prompt_idx = tgt_idx;
  while (prompt_idx == tgt_idx)
    prompt_idx = tgt_cat_pool[prompt_rng.Below(tgt_cat_pool.size())];

  const RoomScene tgt_scene = SampleRoomScene(tgt_scene_seed);
  const RoomScene itf_scene = SampleRoomScene(itf_scene_seed);

  StereoClip tgt = SpatializeScene(tgt_clip, tgt_scene);
  StereoClip itf = SpatializeScene(itf_clip, itf_scene);
  const size_t n = std::max(tgt.length(), itf.length());
  tgt.ch0.resize(n, 0.0);
  tgt.ch1.resize(n, 0.0);
  itf.ch0.resize(n, 0.0);
  itf.ch1.resize(n, 0.0);

  StereoClip mixture = MixAtSnr(tgt, itf, snr_db);
  const double scale =
      std::sqrt(tgt.Energy() / itf.Energy() * std::pow(10.0, -snr_db / 10.0));
  StereoClip scaled_itf = itf;
  ScaleClip(&scaled_itf, scale);

  const double peak = std::max({Peak(mixture), Peak(tgt), 1e-9});
  const double gain = 0.9 / peak;
  ScaleClip(&mixture, gain);
  ScaleClip(&tgt, gain);
  ScaleClip(&scaled_itf, gain);

  SynthesizedRecord out;
  out.mixture = std::move(mixture);
  out.clean_target = std::move(tgt);
  out.scaled_interferer = std::move(scaled_itf);
  DatasetRecord& r = out.record;
  r.id = record_index;
  r.azimuth_deg = AzimuthOf(tgt_scene);
  r.target_category = *tgt_clip.label;
  r.target_instance = *tgt_clip.instance;
  r.prompt_category = *pool[prompt_idx].label;
  r.prompt_instance = *pool[prompt_idx].instance;
  r.interferer_category = *itf_clip.label;
  r.interferer_instance = *itf_clip.instance;
  r.interferer_azimuth_deg = AzimuthOf(itf_scene);
  r.scene_seed = tgt_scene_seed;
  r.interferer_scene_seed = itf_scene_seed;
  r.record_seed = pair_seed;
  r.mix_gain = gain;
  r.snr_db = snr_db;
  return out;
}

std::vector<DatasetRecord> BuildDataset(const std::vector<MonoClip>& pool,
                                        const DatasetConfig& config,
                                        uint64_t seed) {
  auto by_cat = PoolByCategory(pool);
  if (by_cat.size() < 2)
    throw std::invalid_argument("BuildDataset: pool must have >= 2 categories");

  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);

  std::vector<DatasetRecord> records;
  records.reserve(config.num_records);
  char name[64];
  for (int i = 0; i < config.num_records; ++i) {
    SynthesizedRecord s = SynthesizeRecord(pool, seed, i, config.snr_db);
    std::snprintf(name, sizeof(name), "mix_%04d.wav", i);
    s.record.mixture_path = name;
    WriteWav((fs::path(config.out_dir) / name).string(), s.mixture);
    std::snprintf(name, sizeof(name), "clean_%04d.wav", i);
    s.record.clean_path = name;
    WriteWav((fs::path(config.out_dir) / name).string(), s.clean_target);
    records.push_back(s.record);
  }
  WriteManifest((fs::path(config.out_dir) / "manifest.jsonl").string(), records,
                config, seed);
  return records;
}

void WriteManifest(const std::string& path,
                   const std::vector<DatasetRecord>& records,
                   const DatasetConfig& config, uint64_t seed) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write manifest: " + path);
  nlohmann::json header = {
      {"type", "header"},
      {"format", "doasel-dataset"},
      {"version", kToolVersion},
      {"sample_rate", config.sample_rate},
      {"snr_db", config.snr_db},
      {"seed", seed},
      {"num_records", records.size()},
  };
  f << header.dump() << "\n";
  for (const DatasetRecord& r : records) {
    nlohmann::json j = {
        {"type", "record"},
        {"id", r.id},
        {"mixture", r.mixture_path},
        {"clean", r.clean_path},
        {"azimuth_deg", r.azimuth_deg},
        {"target_category", r.target_category},
        {"target_instance", r.target_instance},
        {"prompt_category", r.prompt_category},
        {"prompt_instance", r.prompt_instance},
        {"interferer_category", r.interferer_category},
        {"interferer_instance", r.interferer_instance},
        {"interferer_azimuth_deg", r.interferer_azimuth_deg},
        {"scene_seed", r.scene_seed},
        {"interferer_scene_seed", r.interferer_scene_seed},
        {"record_seed", r.record_seed},
        {"mix_gain", r.mix_gain},
        {"snr_db", r.snr_db},
    };
    f << j.dump() << "\n";
  }
}

Manifest ReadManifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read manifest: " + path);
  Manifest m;
  m.dir = std::filesystem::path(path).parent_path().string();
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    const std::string type = j.value("type", "record");
    if (type == "header") {
      m.snr_db = j.value("snr_db", 0.0);
      m.seed = j.value("seed", uint64_t{0});
      m.sample_rate = j.value("sample_rate", 16000);
      continue;
    }
    DatasetRecord r;
    r.id = j.at("id").get<int>();
    r.mixture_path = j.at("mixture").get<std::string>();
    r.clean_path = j.at("clean").get<std::string>();
    r.azimuth_deg = j.at("azimuth_deg").get<int>();
    r.target_category = j.at("target_category").get<int>();
    r.target_instance = j.at("target_instance").get<int>();
    r.prompt_category = j.at("prompt_category").get<int>();
    r.prompt_instance = j.at("prompt_instance").get<int>();
    r.interferer_category = j.at("interferer_category").get<int>();
    r.interferer_instance = j.at("interferer_instance").get<int>();
    r.interferer_azimuth_deg = j.at("interferer_azimuth_deg").get<int>();
    r.scene_seed = j.at("scene_seed").get<uint64_t>();
    r.interferer_scene_seed = j.at("interferer_scene_seed").get<uint64_t>();
    r.record_seed = j.at("record_seed").get<uint64_t>();
    r.mix_gain = j.at("mix_gain").get<double>();
    r.snr_db = j.at("snr_db").get<double>();
    m.records.push_back(std::move(r));
  }
  if (m.records.empty())
    throw std::runtime_error("manifest has no records: " + path);
  return m;
}

}  // namespace doasel
