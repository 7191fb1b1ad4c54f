// core/src/fft.cc

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

#include "vowelkit/fft.h"

#include <cmath>

namespace vowelkit {

namespace {

bool IsPowerOfTwo(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

void Fft(std::vector<std::complex<double>>* data, bool inverse) {
  auto& a = *data;
  const size_t n = a.size();
  Require(IsPowerOfTwo(n), "Fft: size must be a power of two");

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    double angle = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

Vec PowerSpectrum(std::span<const double> frame, int nfft) {
  Require(nfft > 0 && IsPowerOfTwo(static_cast<size_t>(nfft)),
          "PowerSpectrum: nfft must be a positive power of two");
  std::vector<std::complex<double>> buf(static_cast<size_t>(nfft));
  const size_t copy = std::min(frame.size(), static_cast<size_t>(nfft));
  for (size_t i = 0; i < copy; ++i) buf[i] = frame[i];
  Fft(&buf);
  Vec power(static_cast<size_t>(nfft) / 2 + 1);
  for (size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
  return power;
}

}  // namespace vowelkit
