// core/include/vowelkit/feature-extraction.h

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

#ifndef VOWELKIT_FEATURE_EXTRACTION_H_
#define VOWELKIT_FEATURE_EXTRACTION_H_

#include <string>
#include <vector>

#include "vowelkit/audio.h"
#include "vowelkit/common.h"

namespace vowelkit {

/// Telephone-band analysis setup: 8 kHz input, 1 - 0.98 z^-1 pre-emphasis,
/// 25 ms Hamming windows every 12.5 ms, 23 mel filters over 0-4000 Hz with
/// a 256-point FFT, cepstra c1..c12, two-frame regression deltas, and a
/// 300-2500 Hz vowel band for the band-pass energy ratio.
struct DspConfig {
  int sample_rate = 8000;
  double pre_emphasis = 0.98;
  int frame_length = 200;
  int frame_shift = 100;
  int fft_size = 256;
  int num_mel_filters = 23;
  int num_cepstra = 12;
  int delta_span = 2;
  double band_low_hz = 300.0;
  double band_high_hz = 2500.0;
  double log_floor = 1e-10;

  int ClassifierDimension() const { return 2 * num_cepstra + 1; }
};

/// Fixed-length windows cut every frame_shift samples, already multiplied by
/// the Hamming window. Frame k starts at sample k * frame_shift.
struct FrameSequence {
  Rows frames;
  int frame_length = 0;
  int frame_shift = 0;
};

/// One frame's observation: cepstra, their deltas, the delta of log-energy
/// (together the 25-dimensional classifier vector) and the band-pass energy
/// ratio kept separate for score fusion.
struct FeatureVector {
  int frame_index = 0;
  Vec mfcc;        // c1..c12
  Vec delta_mfcc;  // same length as mfcc
  double delta_log_energy = 0.0;
  double bandpass_energy = 0.0;  // in [0, 1]

  /// mfcc ++ delta_mfcc ++ delta_log_energy.
  Vec Classifier() const;
};

/// y[0] = x[0], y[n] = x[n] - coeff * x[n-1]. Errors on empty input.
AudioBuffer PreEmphasize(const AudioBuffer& signal, double coeff = 0.98);

/// Cuts floor((N - frame_length) / frame_shift) + 1 Hamming-windowed frames.
/// Errors when the signal is shorter than one frame.
FrameSequence FrameAndWindow(const AudioBuffer& signal, const DspConfig& config);

/// Per-frame rows of num_cepstra mel cepstra followed by the frame
/// log-energy (natural log, floored).
Rows MfccWithLogEnergy(const FrameSequence& frames, const DspConfig& config);

/// Mel filterbank energies (before log/DCT) of a single windowed frame.
Vec MelFilterbankEnergies(std::span<const double> frame, const DspConfig& config);

/// Regression delta over +-span frames, edges clamped by repeating the
/// boundary rows: d[t] = sum_k k*(x[t+k]-x[t-k]) / (2*sum_k k^2).
Rows DeltaFeatures(const Rows& series, int span);

/// Fraction of the windowed frame's spectral energy inside the vowel band;
/// in [0, 1] by construction (the denominator carries the energy floor).
double BandPassEnergy(std::span<const double> windowed_frame,
                      const DspConfig& config);

/// Full front end. Pure function of (audio, config): pre-emphasis, framing,
/// cepstra + deltas, and band-pass energy measured on the un-pre-emphasized
/// frames so the ratio reflects the frame as heard.
std::vector<FeatureVector> ExtractFeatures(const AudioBuffer& audio,
                                           const DspConfig& config);

/// CSV dump: frame_index, mfcc.., delta_mfcc.., delta_log_energy, bandpass_energy.
void WriteFeatureCsv(const std::string& path,
                     const std::vector<FeatureVector>& features);

}  // namespace vowelkit

#endif  // VOWELKIT_FEATURE_EXTRACTION_H_
