// core/include/vowelkit/audio.h

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

#ifndef VOWELKIT_AUDIO_H_
#define VOWELKIT_AUDIO_H_

#include <string>
#include <vector>

#include "vowelkit/common.h"

namespace vowelkit {

/// Mono audio, amplitudes normalized to [-1, 1].
struct AudioBuffer {
  Vec samples;
  int sample_rate = 8000;

  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Validates sample_rate > 0 and sample finiteness; throws on violation.
void ValidateAudio(const AudioBuffer& audio);

/// Reads a PCM 16-bit signed little-endian mono WAV file. Any deviation
/// (format tag, channel count, bit depth, sample rate != expected_rate)
/// raises an error naming the offending field.
AudioBuffer ReadWav(const std::string& path, int expected_rate = 8000);

/// Writes PCM 16-bit mono. Samples are clamped to [-1, 1] and quantized
/// with round-to-nearest, so a read-back differs by at most one LSB.
void WriteWav(const std::string& path, const AudioBuffer& audio);

}  // namespace vowelkit

#endif  // VOWELKIT_AUDIO_H_
