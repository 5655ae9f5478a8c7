// doasel/common.h

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

#ifndef DOASEL_COMMON_H_
#define DOASEL_COMMON_H_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace doasel {

inline constexpr const char* kToolVersion = "0.1.0";

// Speed of sound used throughout the simulator, m/s.
inline constexpr double kSpeedOfSound = 343.0;

inline constexpr int kNumDoaClasses = 180;

// Round half-up to the nearest integer (0.5 -> 1, 1.5 -> 2, -0.5 -> 0).
inline int64_t RoundHalfUp(double x) {
  return static_cast<int64_t>(std::floor(x + 0.5));
}

// Azimuth class convention: integer classes 1..180, exact 0 degrees maps
// to class 1.
inline int AzimuthToClass(double azimuth_deg) {
  int64_t c = RoundHalfUp(azimuth_deg);
  if (c < 1) c = 1;
  if (c > kNumDoaClasses) c = kNumDoaClasses;
  return static_cast<int>(c);
}

}  // namespace doasel

#endif  // DOASEL_COMMON_H_
