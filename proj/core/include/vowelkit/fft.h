// core/include/vowelkit/fft.h

// Copyright 2026  VowelKit Authors

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

#ifndef VOWELKIT_FFT_H_
#define VOWELKIT_FFT_H_

#include <complex>
#include <span>
#include <vector>

#include "vowelkit/common.h"

namespace vowelkit {

/// In-place iterative radix-2 FFT. data->size() must be a power of two.
void Fft(std::vector<std::complex<double>>* data, bool inverse = false);

/// One-sided power spectrum |X_k|^2, k = 0..nfft/2, of a real frame
/// zero-padded (or truncated) to nfft samples. nfft must be a power of two.
Vec PowerSpectrum(std::span<const double> frame, int nfft);

}  // namespace vowelkit

#endif  // VOWELKIT_FFT_H_
