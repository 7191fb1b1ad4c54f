// core/src/config.cc

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

#include "vowelkit/config.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vowelkit {

using nlohmann::json;

namespace {

// Reads a field when present, keeping the default otherwise; unknown keys
// are rejected by ParseSection so typos cannot silently fall back.
template <typename T>
void Get(const json& j, const char* key, T* out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

void CheckKeys(const json& j, std::initializer_list<const char*> known,
               const std::string& section) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) ok = true;
    if (!ok)
      throw std::runtime_error("config: unknown key '" + item.key() +
                               "' in section '" + section + "'");
  }
}

json DspToJson(const DspConfig& c) {
  return json{{"sample_rate", c.sample_rate},
              {"pre_emphasis", c.pre_emphasis},
              {"frame_length", c.frame_length},
              {"frame_shift", c.frame_shift},
              {"fft_size", c.fft_size},
              {"num_mel_filters", c.num_mel_filters},
              {"num_cepstra", c.num_cepstra},
              {"delta_span", c.delta_span},
              {"band_low_hz", c.band_low_hz},
              {"band_high_hz", c.band_high_hz},
              {"log_floor", c.log_floor}};
}

DspConfig DspFromJson(const json& j) {
  DspConfig c;
  CheckKeys(j,
            {"sample_rate", "pre_emphasis", "frame_length", "frame_shift",
             "fft_size", "num_mel_filters", "num_cepstra", "delta_span",
             "band_low_hz", "band_high_hz", "log_floor"},
            "dsp");
  Get(j, "sample_rate", &c.sample_rate);
  Get(j, "pre_emphasis", &c.pre_emphasis);
  Get(j, "frame_length", &c.frame_length);
  Get(j, "frame_shift", &c.frame_shift);
  Get(j, "fft_size", &c.fft_size);
  Get(j, "num_mel_filters", &c.num_mel_filters);
  Get(j, "num_cepstra", &c.num_cepstra);
  Get(j, "delta_span", &c.delta_span);
  Get(j, "band_low_hz", &c.band_low_hz);
  Get(j, "band_high_hz", &c.band_high_hz);
  Get(j, "log_floor", &c.log_floor);
  return c;
}

}  // namespace

GmmTrainConfig GmmSectionConfig::TrainConfig(uint64_t seed) const {
  GmmTrainConfig c;
  c.max_iterations = max_iterations;
  c.tolerance = tolerance;
  c.variance_floor = variance_floor;
  c.kmeans_iterations = kmeans_iterations;
  c.seed = seed;
  return c;
}

void PipelineConfig::Validate() const {
  Require(dsp.sample_rate > 0, "config: dsp.sample_rate must be positive");
  Require(dsp.frame_length > 1 && dsp.frame_shift > 0,
          "config: bad frame geometry");
  Require(dsp.fft_size >= dsp.frame_length,
          "config: fft_size must cover a frame");
  Require(dsp.num_cepstra >= 1 && dsp.num_mel_filters > dsp.num_cepstra,
          "config: need more mel filters than cepstra");
  Require(dsp.band_high_hz > dsp.band_low_hz && dsp.band_low_hz >= 0.0,
          "config: bad band-pass band");
  Require(gmm.vowel_mixtures >= 1 && gmm.nonvowel_mixtures >= 1,
          "config: mixture counts must be positive");
  Require(gmm.soft_context_frames >= 0, "config: negative soft context");
  fusion.Validate();
  Require(detector.smoothing_frames >= 1 && detector.min_duration_frames >= 1,
          "config: bad detector post-processing");
  Require(gating.target_ambiguous_fraction > 0.0 &&
              gating.target_ambiguous_fraction <= 1.0,
          "config: target ambiguous fraction must be in (0, 1]");
  Require(train_fraction > 0.0 && train_fraction < 1.0,
          "config: train fraction must be in (0, 1)");
  Require(svm.max_training_frames >= 2 && svm.cv_max_frames >= 2,
          "config: svm frame caps must be at least 2");
  Require(recognizer.mixtures_per_vowel >= 1,
          "config: mixtures_per_vowel must be positive");
}

PipelineConfig DefaultConfig() { return PipelineConfig{}; }

PipelineConfig SyntheticDefaultConfig() {
  PipelineConfig config;
  config.gmm.vowel_mixtures = 8;
  config.gmm.nonvowel_mixtures = 17;
  return config;
}

std::string ConfigToJson(const PipelineConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["train_fraction"] = c.train_fraction;
  j["dsp"] = DspToJson(c.dsp);
  j["gmm"] = json{{"vowel_mixtures", c.gmm.vowel_mixtures},
                  {"nonvowel_mixtures", c.gmm.nonvowel_mixtures},
                  {"soft_context_frames", c.gmm.soft_context_frames},
                  {"variance_floor", c.gmm.variance_floor},
                  {"tolerance", c.gmm.tolerance},
                  {"max_iterations", c.gmm.max_iterations},
                  {"kmeans_iterations", c.gmm.kmeans_iterations}};
  j["svm"] = json{{"c_grid", c.svm.grid.c_values},
                  {"sigma_grid", c.svm.grid.sigma_values},
                  {"folds", c.svm.grid.folds},
                  {"tolerance", c.svm.tolerance},
                  {"max_training_frames", c.svm.max_training_frames},
                  {"cv_max_frames", c.svm.cv_max_frames},
                  {"report_ungated", c.svm.report_ungated}};
  j["gating"] = json{
      {"target_ambiguous_fraction", c.gating.target_ambiguous_fraction}};
  if (c.gating.priors.has_value())
    j["gating"]["priors"] =
        json::array({c.gating.priors->first, c.gating.priors->second});
  j["fusion"] = json{{"weight_energy", c.fusion.energy},
                     {"weight_gmm", c.fusion.gmm},
                     {"weight_svm", c.fusion.svm}};
  j["detector"] = json{{"smoothing_frames", c.detector.smoothing_frames},
                       {"threshold", c.detector.threshold},
                       {"min_duration_frames", c.detector.min_duration_frames},
                       {"merge_gap_frames", c.detector.merge_gap_frames}};
  j["recognizer"] =
      json{{"mixtures_per_vowel", c.recognizer.mixtures_per_vowel},
           {"min_segments_per_class", c.recognizer.min_segments_per_class},
           {"use_pairwise_svm", c.recognizer.use_pairwise_svm},
           {"pairwise_max_frames", c.recognizer.pairwise_max_frames}};

  json formants = json::object();
  for (const auto& [vowel, f] : c.corpus.formants_hz)
    formants[ToString(vowel)] = json::array({f[0], f[1], f[2]});
  json vowels = json::array();
  for (VowelClass v : c.corpus.vowels) vowels.push_back(ToString(v));
  j["corpus"] = json{{"num_utterances", c.corpus.num_utterances},
                     {"vowels", vowels},
                     {"formants_hz", formants},
                     {"formant_jitter", c.corpus.formant_jitter},
                     {"pitch_min_hz", c.corpus.pitch_min_hz},
                     {"pitch_max_hz", c.corpus.pitch_max_hz},
                     {"vowel_duration_min_s", c.corpus.vowel_duration_min_s},
                     {"vowel_duration_max_s", c.corpus.vowel_duration_max_s},
                     {"filler_duration_min_s", c.corpus.filler_duration_min_s},
                     {"filler_duration_max_s", c.corpus.filler_duration_max_s},
                     {"noise_snr_db", c.corpus.noise_snr_db},
                     {"sample_rate", c.corpus.sample_rate}};
  return j.dump(2) + "\n";
}

PipelineConfig ConfigFromJson(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  CheckKeys(j,
            {"seed", "train_fraction", "dsp", "gmm", "svm", "gating", "fusion",
             "detector", "recognizer", "corpus"},
            "(top level)");
  PipelineConfig c;
  Get(j, "seed", &c.seed);
  Get(j, "train_fraction", &c.train_fraction);
  if (j.contains("dsp")) c.dsp = DspFromJson(j.at("dsp"));
  if (j.contains("gmm")) {
    const json& g = j.at("gmm");
    CheckKeys(g,
              {"vowel_mixtures", "nonvowel_mixtures", "soft_context_frames",
               "variance_floor", "tolerance", "max_iterations",
               "kmeans_iterations"},
              "gmm");
    Get(g, "vowel_mixtures", &c.gmm.vowel_mixtures);
    Get(g, "nonvowel_mixtures", &c.gmm.nonvowel_mixtures);
    Get(g, "soft_context_frames", &c.gmm.soft_context_frames);
    Get(g, "variance_floor", &c.gmm.variance_floor);
    Get(g, "tolerance", &c.gmm.tolerance);
    Get(g, "max_iterations", &c.gmm.max_iterations);
    Get(g, "kmeans_iterations", &c.gmm.kmeans_iterations);
  }
  if (j.contains("svm")) {
    const json& s = j.at("svm");
    CheckKeys(s,
              {"c_grid", "sigma_grid", "folds", "tolerance",
               "max_training_frames", "cv_max_frames", "report_ungated"},
              "svm");
    Get(s, "c_grid", &c.svm.grid.c_values);
    Get(s, "sigma_grid", &c.svm.grid.sigma_values);
    Get(s, "folds", &c.svm.grid.folds);
    Get(s, "tolerance", &c.svm.tolerance);
    Get(s, "max_training_frames", &c.svm.max_training_frames);
    Get(s, "cv_max_frames", &c.svm.cv_max_frames);
    Get(s, "report_ungated", &c.svm.report_ungated);
  }
  if (j.contains("gating")) {
    const json& g = j.at("gating");
    CheckKeys(g, {"target_ambiguous_fraction", "priors"}, "gating");
    Get(g, "target_ambiguous_fraction", &c.gating.target_ambiguous_fraction);
    if (g.contains("priors")) {
      const auto p = g.at("priors").get<std::vector<double>>();
      Require(p.size() == 2, "config: gating.priors must be [p_vowel, p_nonvowel]");
      c.gating.priors = std::make_pair(p[0], p[1]);
    }
  }
  if (j.contains("fusion")) {
    const json& f = j.at("fusion");
    CheckKeys(f, {"weight_energy", "weight_gmm", "weight_svm"}, "fusion");
    Get(f, "weight_energy", &c.fusion.energy);
    Get(f, "weight_gmm", &c.fusion.gmm);
    Get(f, "weight_svm", &c.fusion.svm);
  }
  if (j.contains("detector")) {
    const json& d = j.at("detector");
    CheckKeys(d,
              {"smoothing_frames", "threshold", "min_duration_frames",
               "merge_gap_frames"},
              "detector");
    Get(d, "smoothing_frames", &c.detector.smoothing_frames);
    Get(d, "threshold", &c.detector.threshold);
    Get(d, "min_duration_frames", &c.detector.min_duration_frames);
    Get(d, "merge_gap_frames", &c.detector.merge_gap_frames);
  }
  if (j.contains("recognizer")) {
    const json& r = j.at("recognizer");
    CheckKeys(r,
              {"mixtures_per_vowel", "min_segments_per_class",
               "use_pairwise_svm", "pairwise_max_frames"},
              "recognizer");
    Get(r, "mixtures_per_vowel", &c.recognizer.mixtures_per_vowel);
    Get(r, "min_segments_per_class", &c.recognizer.min_segments_per_class);
    Get(r, "use_pairwise_svm", &c.recognizer.use_pairwise_svm);
    Get(r, "pairwise_max_frames", &c.recognizer.pairwise_max_frames);
  }
  if (j.contains("corpus")) {
    const json& k = j.at("corpus");
    CheckKeys(k,
              {"num_utterances", "vowels", "formants_hz", "formant_jitter",
               "pitch_min_hz", "pitch_max_hz", "vowel_duration_min_s",
               "vowel_duration_max_s", "filler_duration_min_s",
               "filler_duration_max_s", "noise_snr_db", "sample_rate"},
              "corpus");
    Get(k, "num_utterances", &c.corpus.num_utterances);
    if (k.contains("vowels")) {
      c.corpus.vowels.clear();
      for (const auto& name : k.at("vowels")) {
        const auto vowel = ParseVowel(name.get<std::string>());
        Require(vowel.has_value(),
                "config: unknown vowel '" + name.get<std::string>() + "'");
        c.corpus.vowels.push_back(*vowel);
      }
    }
    if (k.contains("formants_hz")) {
      c.corpus.formants_hz.clear();
      for (const auto& item : k.at("formants_hz").items()) {
        const auto vowel = ParseVowel(item.key());
        Require(vowel.has_value(), "config: unknown vowel '" + item.key() + "'");
        const auto f = item.value().get<std::vector<double>>();
        Require(f.size() == 3, "config: formants must be [F1, F2, F3]");
        c.corpus.formants_hz[*vowel] = {f[0], f[1], f[2]};
      }
    }
    Get(k, "formant_jitter", &c.corpus.formant_jitter);
    Get(k, "pitch_min_hz", &c.corpus.pitch_min_hz);
    Get(k, "pitch_max_hz", &c.corpus.pitch_max_hz);
    Get(k, "vowel_duration_min_s", &c.corpus.vowel_duration_min_s);
    Get(k, "vowel_duration_max_s", &c.corpus.vowel_duration_max_s);
    Get(k, "filler_duration_min_s", &c.corpus.filler_duration_min_s);
    Get(k, "filler_duration_max_s", &c.corpus.filler_duration_max_s);
    Get(k, "noise_snr_db", &c.corpus.noise_snr_db);
    Get(k, "sample_rate", &c.corpus.sample_rate);
  }
  c.Validate();
  return c;
}

PipelineConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ConfigFromJson(buffer.str());
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config: " + path + ": " + e.what());
  }
}

void SaveConfig(const std::string& path, const PipelineConfig& config) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("config: cannot write " + path);
  out << ConfigToJson(config);
}

std::string DspConfigHash(const DspConfig& config) {
  const std::string canonical = DspToJson(config).dump();
  uint64_t h = 1469598103934665603ull;
  for (char ch : canonical) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vowelkit
