// core/src/corpus.cc

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

#include "vowelkit/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace vowelkit {

namespace {

constexpr std::array<double, 3> kFormantBandwidthsHz = {60.0, 90.0, 120.0};

// Two-pole resonator bank with per-sample coefficient update (formant
// glides change the target frequency continuously).
class ResonatorCascade {
 public:
  explicit ResonatorCascade(int sample_rate) : sample_rate_(sample_rate) {}

  double Step(double input, const std::array<double, 3>& formants_hz) {
    double x = input;
    for (int r = 0; r < 3; ++r) {
      const double radius =
          std::exp(-kPi * kFormantBandwidthsHz[r] / sample_rate_);
      const double theta = 2.0 * kPi * formants_hz[r] / sample_rate_;
      const double a1 = 2.0 * radius * std::cos(theta);
      const double a2 = -radius * radius;
      const double gain = 1.0 - radius;
      const double y = gain * x + a1 * state_[r][0] + a2 * state_[r][1];
      state_[r][1] = state_[r][0];
      state_[r][0] = y;
      x = y;
    }
    return x;
  }

 private:
  int sample_rate_;
  double state_[3][2] = {{0, 0}, {0, 0}, {0, 0}};
};

void ScaleToPeak(Vec* samples, double peak) {
  double max_abs = 0.0;
  for (double s : *samples) max_abs = std::max(max_abs, std::abs(s));
  if (max_abs <= 0.0) return;
  const double gain = peak / max_abs;
  for (double& s : *samples) s *= gain;
}

double Rms(const Vec& samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : samples) acc += s * s;
  return std::sqrt(acc / samples.size());
}

// The endpoint vowels of the two diphthong glides.
std::optional<std::pair<VowelClass, VowelClass>> GlideEndpoints(VowelClass v) {
  if (v == VowelClass::kAu) return std::make_pair(VowelClass::kA, VowelClass::kU);
  if (v == VowelClass::kEi) return std::make_pair(VowelClass::kE, VowelClass::kI);
  return std::nullopt;
}

enum class FillerKind { kSilence, kNoiseBurst, kFricative };

Vec MakeFiller(FillerKind kind, int num_samples, RandomStream* rng) {
  Vec samples(num_samples, 0.0);
  switch (kind) {
    case FillerKind::kSilence:
      for (double& s : samples) s = 1e-3 * rng->Gaussian();
      break;
    case FillerKind::kNoiseBurst:
      for (double& s : samples) s = 0.08 * rng->Gaussian();
      break;
    case FillerKind::kFricative: {
      // First difference of white noise: energy pushed above the vowel band.
      double prev = 0.0;
      for (double& s : samples) {
        const double x = rng->Gaussian();
        s = 0.08 * (x - prev);
        prev = x;
      }
      break;
    }
  }
  return samples;
}

std::string UtteranceId(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "utt_%03d", index);
  return buf;
}

[[noreturn]] void LabelError(const std::string& path, int line,
                             const std::string& what) {
  throw std::runtime_error("labels: " + path + ":" + std::to_string(line) +
                           ": " + what);
}

}  // namespace

AudioBuffer SynthesizeVowel(const SynthSpec& spec, uint64_t seed) {
  const double nyquist = spec.sample_rate / 2.0;
  for (int r = 0; r < 3; ++r) {
    Require(spec.formants_hz[r] < nyquist && spec.formants_end_hz[r] < nyquist,
            "synthesize_vowel: formant at or above the Nyquist frequency");
    if (r > 0) {
      Require(spec.formants_hz[r] > spec.formants_hz[r - 1] &&
                  spec.formants_end_hz[r] > spec.formants_end_hz[r - 1],
              "synthesize_vowel: formants must be strictly increasing");
    }
  }
  Require(spec.duration_s > 0.0, "synthesize_vowel: duration must be positive");
  Require(spec.pitch_hz > 0.0, "synthesize_vowel: pitch must be positive");

  const int n = static_cast<int>(std::lround(spec.duration_s * spec.sample_rate));
  Require(n > 0, "synthesize_vowel: duration rounds to zero samples");

  RandomStream rng(seed);
  ResonatorCascade cascade(spec.sample_rate);
  Vec voiced(n, 0.0);
  double phase = 1.0;  // excite at t = 0
  for (int t = 0; t < n; ++t) {
    double excitation = 0.0;
    if (phase >= 1.0) {
      excitation = 1.0;
      phase -= 1.0;
    }
    phase += spec.pitch_hz / spec.sample_rate;
    const double mix = n > 1 ? static_cast<double>(t) / (n - 1) : 0.0;
    std::array<double, 3> formants;
    for (int r = 0; r < 3; ++r)
      formants[r] = spec.formants_hz[r] +
                    mix * (spec.formants_end_hz[r] - spec.formants_hz[r]);
    voiced[t] = cascade.Step(excitation, formants);
  }
  ScaleToPeak(&voiced, 0.5);

  // 5 ms raised-cosine fades avoid switching clicks at segment joins.
  const int fade = std::min(n / 2, spec.sample_rate / 200);
  for (int t = 0; t < fade; ++t) {
    const double w = 0.5 * (1.0 - std::cos(kPi * t / fade));
    voiced[t] *= w;
    voiced[n - 1 - t] *= w;
  }

  const double signal_rms = Rms(voiced);
  const double noise_rms =
      signal_rms / std::pow(10.0, spec.noise_snr_db / 20.0);
  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(n);
  for (int t = 0; t < n; ++t)
    out.samples[t] = voiced[t] + noise_rms * rng.Gaussian();
  return out;
}

std::vector<LabeledUtterance> GenerateCorpus(const CorpusConfig& config,
                                             uint64_t seed) {
  Require(config.num_utterances >= 1, "generate_corpus: need >= 1 utterance");
  Require(!config.vowels.empty(), "generate_corpus: empty vowel list");

  std::vector<LabeledUtterance> corpus;
  corpus.reserve(config.num_utterances);
  for (int u = 0; u < config.num_utterances; ++u) {
    RandomStream rng(MixSeed(seed, "utterance-" + std::to_string(u)));
    const double pitch = rng.Uniform(config.pitch_min_hz, config.pitch_max_hz);

    std::vector<VowelClass> order = config.vowels;
    rng.Shuffle(&order);

    LabeledUtterance utt;
    utt.id = UtteranceId(u);
    utt.audio.sample_rate = config.sample_rate;

    auto append_filler = [&] {
      const double dur =
          rng.Uniform(config.filler_duration_min_s, config.filler_duration_max_s);
      const auto kind = static_cast<FillerKind>(rng.UniformInt(3));
      Vec filler = MakeFiller(
          kind, static_cast<int>(std::lround(dur * config.sample_rate)), &rng);
      utt.audio.samples.insert(utt.audio.samples.end(), filler.begin(),
                               filler.end());
    };

    auto formants_for = [&](VowelClass v) {
      auto it = config.formants_hz.find(v);
      Require(it != config.formants_hz.end(),
              "generate_corpus: no formant targets for " + ToString(v));
      std::array<double, 3> f = it->second;
      for (double& x : f)
        x *= 1.0 + rng.Uniform(-config.formant_jitter, config.formant_jitter);
      return f;
    };

    append_filler();
    for (VowelClass v : order) {
      SynthSpec spec;
      spec.vowel = v;
      spec.sample_rate = config.sample_rate;
      spec.pitch_hz = pitch * (1.0 + rng.Uniform(-0.05, 0.05));
      spec.duration_s =
          rng.Uniform(config.vowel_duration_min_s, config.vowel_duration_max_s);
      spec.noise_snr_db = config.noise_snr_db;
      if (auto glide = GlideEndpoints(v)) {
        spec.formants_hz = formants_for(glide->first);
        spec.formants_end_hz = formants_for(glide->second);
        // Keep the glide well-formed even under jitter.
        for (int r = 1; r < 3; ++r) {
          spec.formants_hz[r] =
              std::max(spec.formants_hz[r], spec.formants_hz[r - 1] + 50.0);
          spec.formants_end_hz[r] = std::max(spec.formants_end_hz[r],
                                             spec.formants_end_hz[r - 1] + 50.0);
        }
      } else {
        spec.formants_hz = formants_for(v);
        for (int r = 1; r < 3; ++r)
          spec.formants_hz[r] =
              std::max(spec.formants_hz[r], spec.formants_hz[r - 1] + 50.0);
        spec.formants_end_hz = spec.formants_hz;
      }

      const AudioBuffer vowel_audio =
          SynthesizeVowel(spec, rng.UniformInt(std::numeric_limits<uint64_t>::max() - 1));
      const double start =
          static_cast<double>(utt.audio.samples.size()) / config.sample_rate;
      utt.audio.samples.insert(utt.audio.samples.end(),
                               vowel_audio.samples.begin(),
                               vowel_audio.samples.end());
      const double end =
          static_cast<double>(utt.audio.samples.size()) / config.sample_rate;
      utt.labels.push_back(LabelInterval{start, end, v});
      append_filler();
    }
    corpus.push_back(std::move(utt));
  }
  return corpus;
}

std::pair<std::vector<LabeledUtterance>, std::vector<LabeledUtterance>>
SplitCorpus(const std::vector<LabeledUtterance>& corpus, double train_fraction,
            uint64_t seed) {
  Require(train_fraction > 0.0 && train_fraction < 1.0,
          "split: train fraction must be in (0, 1)");
  const size_t n = corpus.size();
  Require(n >= 2, "split: need at least two utterances");

  size_t n_train = static_cast<size_t>(std::lround(train_fraction * n));
  n_train = std::clamp<size_t>(n_train, 1, n - 1);

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  RandomStream rng(MixSeed(seed, "corpus-split"));
  rng.Shuffle(&order);

  auto classes_of = [&](const std::vector<size_t>& part) {
    std::array<bool, kNumVowelClasses> seen{};
    for (size_t i : part)
      for (const LabelInterval& label : corpus[i].labels)
        if (label.vowel.has_value())
          seen[static_cast<size_t>(*label.vowel)] = true;
    return seen;
  };
  std::array<bool, kNumVowelClasses> all_classes{};
  for (const LabeledUtterance& utt : corpus)
    for (const LabelInterval& label : utt.labels)
      if (label.vowel.has_value())
        all_classes[static_cast<size_t>(*label.vowel)] = true;

  // Try rotations of the shuffled order until both parts cover every class
  // that appears in the corpus at all.
  for (size_t rotation = 0; rotation < n; ++rotation) {
    std::vector<size_t> train_idx(order.begin(), order.begin() + n_train);
    std::vector<size_t> test_idx(order.begin() + n_train, order.end());
    const auto train_seen = classes_of(train_idx);
    const auto test_seen = classes_of(test_idx);
    bool ok = true;
    for (int c = 0; c < kNumVowelClasses; ++c)
      if (all_classes[c] && (!train_seen[c] || !test_seen[c])) ok = false;
    if (ok) {
      std::sort(train_idx.begin(), train_idx.end());
      std::sort(test_idx.begin(), test_idx.end());
      std::vector<LabeledUtterance> train, test;
      for (size_t i : train_idx) train.push_back(corpus[i]);
      for (size_t i : test_idx) test.push_back(corpus[i]);
      return {std::move(train), std::move(test)};
    }
    std::rotate(order.begin(), order.begin() + 1, order.end());
  }
  throw std::runtime_error(
      "split: could not stratify; some vowel class is too rare for this "
      "fraction");
}

std::vector<LabelInterval> ParseLabelFile(const std::string& path,
                                          double audio_duration_s) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("labels: cannot open " + path);
  std::vector<LabelInterval> labels;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

    std::istringstream fields(line);
    std::string start_text, end_text, label_text;
    if (!std::getline(fields, start_text, '\t') ||
        !std::getline(fields, end_text, '\t') ||
        !std::getline(fields, label_text))
      LabelError(path, line_number,
                 "expected start_s<TAB>end_s<TAB>label, got '" + line + "'");
    while (!label_text.empty() &&
           (label_text.back() == '\r' || label_text.back() == ' '))
      label_text.pop_back();

    LabelInterval interval;
    try {
      interval.start_s = std::stod(start_text);
      interval.end_s = std::stod(end_text);
    } catch (const std::exception&) {
      LabelError(path, line_number, "unparseable time field");
    }
    if (!(interval.end_s > interval.start_s))
      LabelError(path, line_number, "end time must exceed start time");
    if (interval.start_s < 0.0 ||
        interval.end_s > audio_duration_s + 1e-9)
      LabelError(path, line_number, "interval outside the audio duration");
    if (label_text == "nonvowel" || label_text == "-") {
      interval.vowel = std::nullopt;
    } else {
      const auto vowel = ParseVowel(label_text);
      if (!vowel.has_value())
        LabelError(path, line_number, "unknown label '" + label_text + "'");
      interval.vowel = vowel;
    }
    labels.push_back(interval);
  }

  for (size_t i = 1; i < labels.size(); ++i) {
    if (labels[i].start_s < labels[i - 1].start_s)
      throw std::runtime_error("labels: " + path +
                               ": intervals must be sorted by start time");
    if (labels[i].start_s < labels[i - 1].end_s - 1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "labels: %s: overlapping intervals [%.6f, %.6f] and "
                    "[%.6f, %.6f]",
                    path.c_str(), labels[i - 1].start_s, labels[i - 1].end_s,
                    labels[i].start_s, labels[i].end_s);
      throw std::runtime_error(buf);
    }
  }
  return labels;
}

void WriteLabelFile(const std::string& path,
                    const std::vector<LabelInterval>& labels) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("labels: cannot write " + path);
  out << "# start_s\tend_s\tlabel\n";
  char buf[96];
  for (const LabelInterval& label : labels) {
    std::snprintf(buf, sizeof buf, "%.6f\t%.6f\t", label.start_s, label.end_s);
    out << buf
        << (label.vowel.has_value() ? ToString(*label.vowel) : "nonvowel")
        << '\n';
  }
}

LabeledUtterance LoadLabeledWav(const std::string& wav_path,
                                const std::string& label_path,
                                int expected_rate) {
  LabeledUtterance utt;
  utt.id = std::filesystem::path(wav_path).stem().string();
  utt.audio = ReadWav(wav_path, expected_rate);
  utt.labels = ParseLabelFile(label_path, utt.audio.DurationSeconds());
  return utt;
}

void SaveUtterance(const std::string& dir, const LabeledUtterance& utterance) {
  const std::filesystem::path base = std::filesystem::path(dir) / utterance.id;
  WriteWav(base.string() + ".wav", utterance.audio);
  WriteLabelFile(base.string() + ".lab", utterance.labels);
}

void WriteCorpusManifest(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& wav_label_pairs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("manifest: cannot write " + path);
  out << "# wav_path\tlabel_path\n";
  for (const auto& [wav, label] : wav_label_pairs)
    out << wav << '\t' << label << '\n';
}

std::vector<std::pair<std::string, std::string>> ReadCorpusManifest(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("manifest: cannot open " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("manifest: " + path + ":" +
                               std::to_string(line_number) +
                               ": expected wav_path<TAB>label_path");
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return pairs;
}

std::vector<LabeledUtterance> LoadManifest(const std::string& manifest_path,
                                           int expected_rate) {
  std::vector<LabeledUtterance> corpus;
  const auto base = std::filesystem::path(manifest_path).parent_path();
  for (const auto& [wav, label] : ReadCorpusManifest(manifest_path)) {
    auto resolve = [&](const std::string& p) {
      std::filesystem::path fp(p);
      return fp.is_absolute() ? fp.string() : (base / fp).string();
    };
    corpus.push_back(LoadLabeledWav(resolve(wav), resolve(label), expected_rate));
  }
  return corpus;
}

}  // namespace vowelkit
