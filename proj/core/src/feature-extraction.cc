// core/src/feature-extraction.cc

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

#include "vowelkit/feature-extraction.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "vowelkit/fft.h"

namespace vowelkit {

namespace {

double MelScale(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double InverseMelScale(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Triangular mel filters as (first_bin, weights) pairs over the one-sided
// spectrum, spanning 0 Hz to the Nyquist frequency.
struct MelFilterbank {
  std::vector<int> first_bin;
  std::vector<Vec> weights;
};

MelFilterbank BuildFilterbank(const DspConfig& config) {
  const int num_bins = config.fft_size / 2 + 1;
  const double bin_hz =
      static_cast<double>(config.sample_rate) / config.fft_size;
  const double mel_high = MelScale(config.sample_rate / 2.0);

  std::vector<double> edges_hz(config.num_mel_filters + 2);
  for (int j = 0; j < config.num_mel_filters + 2; ++j) {
    double mel = mel_high * j / (config.num_mel_filters + 1);
    edges_hz[j] = InverseMelScale(mel);
  }

  MelFilterbank bank;
  bank.first_bin.resize(config.num_mel_filters);
  bank.weights.resize(config.num_mel_filters);
  for (int m = 0; m < config.num_mel_filters; ++m) {
    const double lo = edges_hz[m], center = edges_hz[m + 1], hi = edges_hz[m + 2];
    int first = -1;
    Vec w;
    for (int k = 0; k < num_bins; ++k) {
      double f = k * bin_hz;
      double weight = 0.0;
      if (f > lo && f < center) {
        weight = (f - lo) / (center - lo);
      } else if (f >= center && f < hi) {
        weight = (hi - f) / (hi - center);
      }
      if (weight > 0.0) {
        if (first < 0) first = k;
        w.push_back(weight);
      } else if (first >= 0) {
        break;
      }
    }
    Require(first >= 0, "mel filterbank: empty filter; fft_size too small");
    bank.first_bin[m] = first;
    bank.weights[m] = std::move(w);
  }
  return bank;
}

Vec FilterbankEnergies(const Vec& power, const MelFilterbank& bank) {
  Vec energies(bank.weights.size());
  for (size_t m = 0; m < bank.weights.size(); ++m) {
    double acc = 0.0;
    const auto& w = bank.weights[m];
    for (size_t i = 0; i < w.size(); ++i)
      acc += w[i] * power[bank.first_bin[m] + i];
    energies[m] = acc;
  }
  return energies;
}

// DCT-II of the log filterbank energies, coefficients 1..num_cepstra
// (c0 excluded), orthonormal scale.
Vec CepstraFromLogEnergies(const Vec& log_energies, int num_cepstra) {
  const int m = static_cast<int>(log_energies.size());
  Vec cepstra(num_cepstra);
  const double scale = std::sqrt(2.0 / m);
  for (int n = 1; n <= num_cepstra; ++n) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += log_energies[j] * std::cos(kPi * n * (j + 0.5) / m);
    cepstra[n - 1] = scale * acc;
  }
  return cepstra;
}

}  // namespace

Vec FeatureVector::Classifier() const {
  Vec row;
  row.reserve(mfcc.size() + delta_mfcc.size() + 1);
  row.insert(row.end(), mfcc.begin(), mfcc.end());
  row.insert(row.end(), delta_mfcc.begin(), delta_mfcc.end());
  row.push_back(delta_log_energy);
  return row;
}

AudioBuffer PreEmphasize(const AudioBuffer& signal, double coeff) {
  Require(!signal.samples.empty(), "pre_emphasize: empty input");
  AudioBuffer out;
  out.sample_rate = signal.sample_rate;
  out.samples.resize(signal.samples.size());
  out.samples[0] = signal.samples[0];
  for (size_t n = 1; n < signal.samples.size(); ++n)
    out.samples[n] = signal.samples[n] - coeff * signal.samples[n - 1];
  return out;
}

FrameSequence FrameAndWindow(const AudioBuffer& signal, const DspConfig& config) {
  const int n = static_cast<int>(signal.samples.size());
  const int len = config.frame_length;
  const int shift = config.frame_shift;
  Require(len > 1 && shift > 0, "frame_and_window: bad frame geometry");
  if (n < len)
    throw std::invalid_argument(
        "frame_and_window: signal of " + std::to_string(n) +
        " samples is shorter than one frame (" + std::to_string(len) + ")");

  Vec window(len);
  for (int i = 0; i < len; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * kPi * i / (len - 1));

  FrameSequence seq;
  seq.frame_length = len;
  seq.frame_shift = shift;
  const int num_frames = (n - len) / shift + 1;
  seq.frames.resize(num_frames);
  for (int k = 0; k < num_frames; ++k) {
    Vec& frame = seq.frames[k];
    frame.resize(len);
    const int start = k * shift;
    for (int i = 0; i < len; ++i)
      frame[i] = signal.samples[start + i] * window[i];
  }
  return seq;
}

Vec MelFilterbankEnergies(std::span<const double> frame, const DspConfig& config) {
  MelFilterbank bank = BuildFilterbank(config);
  Vec power = PowerSpectrum(frame, config.fft_size);
  return FilterbankEnergies(power, bank);
}

Rows MfccWithLogEnergy(const FrameSequence& frames, const DspConfig& config) {
  MelFilterbank bank = BuildFilterbank(config);
  Rows out;
  out.reserve(frames.frames.size());
  for (const Vec& frame : frames.frames) {
    Vec power = PowerSpectrum(frame, config.fft_size);
    Vec energies = FilterbankEnergies(power, bank);
    for (double& e : energies) e = std::log(std::max(e, config.log_floor));
    Vec row = CepstraFromLogEnergies(energies, config.num_cepstra);

    double frame_energy = 0.0;
    for (double s : frame) frame_energy += s * s;
    row.push_back(std::log(std::max(frame_energy, config.log_floor)));
    out.push_back(std::move(row));
  }
  return out;
}

Rows DeltaFeatures(const Rows& series, int span) {
  Require(!series.empty(), "delta_features: empty series");
  Require(span >= 1, "delta_features: span must be >= 1");
  const int t_max = static_cast<int>(series.size()) - 1;
  const size_t dim = series[0].size();
  double denom = 0.0;
  for (int k = 1; k <= span; ++k) denom += static_cast<double>(k) * k;
  denom *= 2.0;

  Rows deltas(series.size(), Vec(dim, 0.0));
  auto clamped = [&](int t) -> const Vec& {
    return series[static_cast<size_t>(std::clamp(t, 0, t_max))];
  };
  for (int t = 0; t <= t_max; ++t) {
    for (size_t d = 0; d < dim; ++d) {
      double acc = 0.0;
      for (int k = 1; k <= span; ++k)
        acc += k * (clamped(t + k)[d] - clamped(t - k)[d]);
      deltas[t][d] = acc / denom;
    }
  }
  return deltas;
}

double BandPassEnergy(std::span<const double> windowed_frame,
                      const DspConfig& config) {
  Vec power = PowerSpectrum(windowed_frame, config.fft_size);
  const double bin_hz =
      static_cast<double>(config.sample_rate) / config.fft_size;
  double in_band = 0.0, total = 0.0;
  for (size_t k = 0; k < power.size(); ++k) {
    total += power[k];
    const double f = k * bin_hz;
    if (f >= config.band_low_hz && f <= config.band_high_hz) in_band += power[k];
  }
  return in_band / (total + config.log_floor);
}

std::vector<FeatureVector> ExtractFeatures(const AudioBuffer& audio,
                                           const DspConfig& config) {
  ValidateAudio(audio);
  Require(audio.sample_rate == config.sample_rate,
          "extract: audio sample rate " + std::to_string(audio.sample_rate) +
              " does not match configured " +
              std::to_string(config.sample_rate));

  AudioBuffer emphasized = PreEmphasize(audio, config.pre_emphasis);
  FrameSequence frames = FrameAndWindow(emphasized, config);
  FrameSequence raw_frames = FrameAndWindow(audio, config);

  Rows mfcc_loge = MfccWithLogEnergy(frames, config);
  Rows mfcc_only(mfcc_loge.size());
  Rows loge_only(mfcc_loge.size());
  for (size_t t = 0; t < mfcc_loge.size(); ++t) {
    mfcc_only[t].assign(mfcc_loge[t].begin(), mfcc_loge[t].end() - 1);
    loge_only[t].assign(1, mfcc_loge[t].back());
  }
  Rows delta_mfcc = DeltaFeatures(mfcc_only, config.delta_span);
  Rows delta_loge = DeltaFeatures(loge_only, config.delta_span);

  std::vector<FeatureVector> features(mfcc_loge.size());
  for (size_t t = 0; t < features.size(); ++t) {
    FeatureVector& fv = features[t];
    fv.frame_index = static_cast<int>(t);
    fv.mfcc = std::move(mfcc_only[t]);
    fv.delta_mfcc = std::move(delta_mfcc[t]);
    fv.delta_log_energy = delta_loge[t][0];
    fv.bandpass_energy = BandPassEnergy(raw_frames.frames[t], config);
  }
  return features;
}

void WriteFeatureCsv(const std::string& path,
                     const std::vector<FeatureVector>& features) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("feature csv: cannot write " + path);
  out << "frame_index";
  const size_t nc = features.empty() ? 12 : features[0].mfcc.size();
  for (size_t i = 1; i <= nc; ++i) out << ",mfcc" << i;
  for (size_t i = 1; i <= nc; ++i) out << ",delta_mfcc" << i;
  out << ",delta_log_energy,bandpass_energy\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const FeatureVector& fv : features) {
    out << fv.frame_index;
    for (double v : fv.mfcc) put(v);
    for (double v : fv.delta_mfcc) put(v);
    put(fv.delta_log_energy);
    put(fv.bandpass_energy);
    out << '\n';
  }
}

}  // namespace vowelkit
