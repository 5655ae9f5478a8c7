// doasel/doa_codec.h

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

#ifndef DOASEL_DOA_CODEC_H_
#define DOASEL_DOA_CODEC_H_

#include <string>
#include <utility>
#include <vector>

namespace doasel {

// Length-180 nonnegative vector over integer azimuth classes 1..180.
// kind == kLabel holds the Gaussian-like encoding of a ground truth (max
// value exactly 1, unnormalized); kind == kPosterior holds a model output
// (sums to 1).
struct DoADistribution {
  enum Kind { kLabel, kPosterior };
  std::vector<double> probs;  // probs[j - 1] is the mass of class j
  Kind kind = kLabel;
};

// probs[j] = exp(-|j - theta| / sigma), unnormalized. theta in [1, 180].
DoADistribution EncodeDoa(int theta, double sigma);

// Argmax class; ties break toward the smallest class index.
int DecodeDoa(const DoADistribution& dist);

// Mean absolute angular error in degrees over (truth, prediction) class
// pairs. Plain linear distance; the half-plane geometry has no wraparound.
double MeanAbsoluteError(const std::vector<std::pair<int, int>>& pairs);

// Percentage of pairs with |truth - prediction| <= rho (inclusive).
double Accuracy(const std::vector<std::pair<int, int>>& pairs, double rho = 5.0);

// Line-delimited evaluation report record: {n, mae_deg, acc_pct, rho}.
std::string FormatEvalReport(size_t n, double mae_deg, double acc_pct,
                             double rho);

}  // namespace doasel

#endif  // DOASEL_DOA_CODEC_H_
