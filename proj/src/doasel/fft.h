// doasel/fft.h

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

#ifndef DOASEL_FFT_H_
#define DOASEL_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace doasel {

// In-place iterative radix-2 FFT. data.size() must be a power of two.
// inverse=true applies the conjugate transform and scales by 1/N.
void Fft(std::vector<std::complex<double>>* data, bool inverse);

// Forward FFT of a real signal zero-padded to nfft (power of two).
std::vector<std::complex<double>> RealFft(const std::vector<double>& x,
                                          size_t nfft);

size_t NextPow2(size_t n);

}  // namespace doasel

#endif  // DOASEL_FFT_H_
